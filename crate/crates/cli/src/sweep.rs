//! Config-driven sweeps over groups and experiments.

use std::fs;
use std::path::Path;

use serde::Serialize;

use qrmix_core::{rng, ActionKind};

use crate::config::{Experiment, ExperimentConfig};
use crate::experiments::{
    mixing_rows, opt_degree, recurrence_rows, vdc_rows, DegreesRecord, GroupContext, MixingRow, RecurrenceRow, Row,
    VdcRow,
};
use crate::fmt_float;

/// One flattened result. Fields that do not apply to an experiment are
/// empty in CSV and `null` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub group: String,
    pub order: usize,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    pub experiment: &'static str,
    pub action: Option<String>,
    pub trial: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub epsilon: Option<f64>,
    pub bound: Option<f64>,
    pub measured: Option<f64>,
    pub ci: Option<f64>,
    pub bound_case_i: Option<f64>,
    pub measured_case_i: Option<f64>,
    pub bound_case_ii: Option<f64>,
    pub measured_case_ii: Option<f64>,
    pub pass: bool,
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

impl Row for SweepRow {
    const HEADER: &'static [&'static str] = &[
        "group",
        "order",
        "D",
        "experiment",
        "action",
        "trial",
        "seed",
        "mode",
        "epsilon",
        "bound",
        "measured",
        "ci",
        "bound_case_i",
        "measured_case_i",
        "bound_case_ii",
        "measured_case_ii",
        "pass",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.order.to_string(),
            opt_degree(self.d),
            self.experiment.to_string(),
            self.action.clone().unwrap_or_default(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.mode.to_string(),
            opt_float(self.epsilon),
            opt_float(self.bound),
            opt_float(self.measured),
            opt_float(self.ci),
            opt_float(self.bound_case_i),
            opt_float(self.measured_case_i),
            opt_float(self.bound_case_ii),
            opt_float(self.measured_case_ii),
            self.pass.to_string(),
        ]
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

impl SweepRow {
    fn degrees(rec: &DegreesRecord, seed: u64) -> Self {
        Self {
            group: rec.group.clone(),
            order: rec.order,
            d: rec.d,
            experiment: Experiment::Degrees.name(),
            action: None,
            trial: 0,
            seed: rng::derive_seed(seed, &rec.group, Experiment::Degrees.name(), 0),
            mode: "exact",
            epsilon: None,
            bound: None,
            measured: None,
            ci: None,
            bound_case_i: None,
            measured_case_i: None,
            bound_case_ii: None,
            measured_case_ii: None,
            pass: rec.consistent(),
        }
    }
}

impl From<MixingRow> for SweepRow {
    fn from(r: MixingRow) -> Self {
        Self {
            epsilon: Some(r.d.map_or(0.0, |d| 1.0 / (d as f64).sqrt())),
            group: r.group,
            order: r.order,
            d: r.d,
            experiment: Experiment::Mixing.name(),
            action: Some(r.action),
            trial: r.trial,
            seed: r.seed,
            mode: r.mode,
            bound: Some(r.bound),
            measured: Some(r.measured),
            ci: r.ci,
            bound_case_i: None,
            measured_case_i: None,
            bound_case_ii: None,
            measured_case_ii: None,
            pass: r.pass,
        }
    }
}

impl From<RecurrenceRow> for SweepRow {
    fn from(r: RecurrenceRow) -> Self {
        Self {
            group: r.group,
            order: r.order,
            d: r.d,
            experiment: Experiment::Recurrence.name(),
            action: None,
            trial: r.trial,
            seed: r.seed,
            mode: r.mode,
            epsilon: Some(r.epsilon),
            bound: Some(r.bound_total),
            measured: Some(r.measured_total),
            ci: None,
            bound_case_i: Some(r.bound_case_i),
            measured_case_i: Some(r.measured_case_i),
            bound_case_ii: Some(r.bound_case_ii),
            measured_case_ii: Some(r.measured_case_ii),
            pass: r.pass,
        }
    }
}

impl From<VdcRow> for SweepRow {
    fn from(r: VdcRow) -> Self {
        Self {
            group: r.group,
            order: r.order,
            d: r.d,
            experiment: Experiment::Vdc.name(),
            action: None,
            trial: r.trial,
            seed: r.seed,
            mode: r.mode,
            epsilon: Some(r.epsilon_lhs),
            bound: Some(r.bound),
            measured: Some(r.rhs_integral),
            ci: None,
            bound_case_i: None,
            measured_case_i: None,
            bound_case_ii: None,
            measured_case_ii: None,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub experiment: &'static str,
    pub rows: usize,
    pub pass_count: usize,
    /// Largest bound over the rows.
    pub bound: Option<f64>,
    pub measured_max: Option<f64>,
    /// Set when the experiment could not run on this group.
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub group: String,
    pub order: Option<usize>,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    /// Set when the group or its character data could not be built.
    pub error: Option<String>,
    pub experiments: Vec<ExperimentSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub trials: u64,
    pub all_pass: bool,
    pub errors: usize,
    pub groups: Vec<GroupSummary>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub rows: Vec<SweepRow>,
    pub summary: Summary,
}

impl SweepOutput {
    /// 0 when every row passes and nothing failed to run, 1 on any bound
    /// violation, 2 when only construction errors occurred.
    pub fn exit_code(&self) -> u8 {
        if !self.summary.all_pass {
            1
        } else if self.summary.errors > 0 {
            2
        } else {
            0
        }
    }

    pub fn results_csv(&self) -> String {
        crate::experiments::to_csv(&self.rows)
    }

    pub fn summary_json(&self) -> String {
        crate::experiments::to_json(&self.summary)
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("results.csv"), self.results_csv())?;
        fs::write(dir.join("summary.json"), self.summary_json())
    }
}

fn run_experiment(
    ctx: &GroupContext,
    experiment: Experiment,
    config: &ExperimentConfig,
) -> qrmix_core::Result<Vec<SweepRow>> {
    let th = config.thresholds();
    let (trials, seed) = (config.trials, config.seed);
    Ok(match experiment {
        Experiment::Degrees => vec![SweepRow::degrees(&DegreesRecord::new(ctx), seed)],
        Experiment::Mixing => {
            mixing_rows(ctx, &ActionKind::BUILT_IN, trials, seed, th)?.into_iter().map(Into::into).collect()
        }
        Experiment::Recurrence => recurrence_rows(ctx, trials, seed, th)?.into_iter().map(Into::into).collect(),
        Experiment::Vdc => vdc_rows(ctx, trials, seed, th)?.into_iter().map(Into::into).collect(),
    })
}

fn summarize(experiment: Experiment, rows: &[SweepRow]) -> ExperimentSummary {
    let max = |f: fn(&SweepRow) -> Option<f64>| rows.iter().filter_map(f).reduce(f64::max);
    ExperimentSummary {
        experiment: experiment.name(),
        rows: rows.len(),
        pass_count: rows.iter().filter(|r| r.pass).count(),
        bound: max(|r| r.bound),
        measured_max: max(|r| r.measured),
        error: None,
    }
}

/// Runs every (group, experiment) pair in config order. Failures to build a
/// group or run an experiment are recorded in the summary and the sweep
/// continues.
pub fn run_sweep(config: &ExperimentConfig, degree_offset: u64) -> SweepOutput {
    let mut rows = Vec::new();
    let mut groups = Vec::new();
    let mut errors = 0;
    for desc in &config.groups {
        let ctx = match GroupContext::build(desc, degree_offset) {
            Ok(ctx) => ctx,
            Err(e) => {
                errors += 1;
                groups.push(GroupSummary {
                    group: desc.clone(),
                    order: None,
                    d: None,
                    error: Some(e.to_string()),
                    experiments: Vec::new(),
                });
                continue;
            }
        };
        let mut experiments = Vec::new();
        for &experiment in &config.experiments {
            match run_experiment(&ctx, experiment, config) {
                Ok(new_rows) => {
                    experiments.push(summarize(experiment, &new_rows));
                    rows.extend(new_rows);
                }
                Err(e) => {
                    errors += 1;
                    let mut s = summarize(experiment, &[]);
                    s.error = Some(e.to_string());
                    experiments.push(s);
                }
            }
        }
        groups.push(GroupSummary {
            group: ctx.descriptor(),
            order: Some(ctx.order()),
            d: ctx.degree.value(),
            error: None,
            experiments,
        });
    }
    let all_pass = rows.iter().all(|r| r.pass);
    SweepOutput { rows, summary: Summary { seed: config.seed, trials: config.trials, all_pass, errors, groups } }
}
