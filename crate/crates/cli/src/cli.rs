//! Command-line interface.
//!
//! Exit status: 0 when every check passes, 1 on any bound violation, 2 on
//! usage, configuration or construction errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use qrmix_core::ActionKind;

use crate::config::ExperimentConfig;
use crate::experiments::{
    mixing_rows, recurrence_rows, to_csv, to_json, vdc_rows, DegreesRecord, GroupContext, Row, Thresholds,
};
use crate::verify::{run_suite, SuiteOptions, CRITERIA};

#[derive(Debug, Parser)]
#[command(name = "qrmix", version, about = "Quasirandom groups: character degrees, mixing and triple recurrence")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    /// Group descriptor, e.g. `sl2:13` or `product:cyclic:2,symmetric:3`
    #[arg(short, long)]
    pub group: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    /// Monte Carlo samples, used only above the exact-evaluation order
    #[arg(long, default_value_t = Thresholds::default().mc_samples)]
    pub mc: u64,
    /// Write the table into this directory instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON instead of CSV
    #[arg(long)]
    pub json: bool,
    /// Add this to D in every bound (fault injection)
    #[arg(long, default_value_t = 0, hide = true)]
    pub degree_offset: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Irreducible character degrees and D as JSON
    Degrees {
        #[arg(short, long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accepted for symmetry; output is always JSON
        #[arg(long)]
        json: bool,
    },
    /// Mixing error against the D^(-1/2) bound
    Mixing {
        #[command(flatten)]
        common: TrialArgs,
        /// right, left or conjugation; all three when omitted
        #[arg(long)]
        action: Option<ActionKind>,
    },
    /// Triple recurrence error with its case split
    Recurrence {
        #[command(flatten)]
        common: TrialArgs,
    },
    /// Van der Corput inequality on correlation families
    Vdc {
        #[command(flatten)]
        common: TrialArgs,
    },
    /// Run a JSON-configured sweep, writing results.csv and summary.json
    Sweep {
        /// Config file
        config: PathBuf,
        /// Overrides `out` from the config
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0, hide = true)]
        degree_offset: u64,
    },
    /// Aggregate a results.csv into plot-ready rows
    Plotdata {
        results: PathBuf,
        /// Write plot.csv into this directory instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and print one line per criterion
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the suite's tables and summary into this directory
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated criterion numbers; all when omitted
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=11))]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = 0, hide = true)]
        degree_offset: u64,
    },
}

fn emit(out: Option<&Path>, file: &str, text: &str) -> anyhow::Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
            let path = dir.join(file);
            fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_rows<R: Row>(common: &TrialArgs, name: &str, rows: &[R]) -> anyhow::Result<bool> {
    let out = common.out.as_deref();
    if common.json {
        emit(out, &format!("{name}.json"), &to_json(rows))?;
    } else {
        emit(out, &format!("{name}.csv"), &to_csv(rows))?;
    }
    Ok(rows.iter().all(Row::pass))
}

fn context(common: &TrialArgs) -> anyhow::Result<GroupContext> {
    GroupContext::build(&common.group, common.degree_offset).with_context(|| format!("group {}", common.group))
}

fn thresholds(common: &TrialArgs) -> Thresholds {
    Thresholds { mc_samples: common.mc, ..Thresholds::default() }
}

/// Runs a command; `Ok(true)` when everything passed.
pub fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Degrees { group, out, json: _ } => {
            let ctx = GroupContext::build(&group, 0).with_context(|| format!("group {group}"))?;
            let rec = DegreesRecord::new(&ctx);
            let mut text = serde_json::to_string(&rec)?;
            text.push('\n');
            emit(out.as_deref(), "degrees.json", &text)?;
            Ok(rec.consistent())
        }
        Command::Mixing { common, action } => {
            let ctx = context(&common)?;
            let kinds = action.map_or(ActionKind::BUILT_IN.to_vec(), |k| vec![k]);
            let rows = mixing_rows(&ctx, &kinds, common.trials, common.seed, thresholds(&common))?;
            emit_rows(&common, "mixing", &rows)
        }
        Command::Recurrence { common } => {
            let ctx = context(&common)?;
            let rows = recurrence_rows(&ctx, common.trials, common.seed, thresholds(&common))?;
            emit_rows(&common, "recurrence", &rows)
        }
        Command::Vdc { common } => {
            let ctx = context(&common)?;
            let rows = vdc_rows(&ctx, common.trials, common.seed, thresholds(&common))?;
            emit_rows(&common, "vdc", &rows)
        }
        Command::Sweep { config, out, degree_offset } => {
            let mut config = ExperimentConfig::load(&config)?;
            if let Some(out) = out {
                config.out = out;
            }
            let output = crate::sweep::run_sweep(&config, degree_offset);
            output.write(&config.out).with_context(|| format!("cannot write to {}", config.out.display()))?;
            for g in &output.summary.groups {
                if let Some(e) = &g.error {
                    eprintln!("{}: {e}", g.group);
                }
                for e in &g.experiments {
                    match &e.error {
                        Some(err) => eprintln!("{} {}: {err}", g.group, e.experiment),
                        None => println!("{} {}: {}/{} pass", g.group, e.experiment, e.pass_count, e.rows),
                    }
                }
            }
            match output.exit_code() {
                0 => Ok(true),
                1 => Ok(false),
                _ => anyhow::bail!("{} group or experiment errors", output.summary.errors),
            }
        }
        Command::Plotdata { results, out } => {
            let text = crate::plotdata::emit_plot_data(&results)?;
            emit(out.as_deref(), "plot.csv", &text)?;
            Ok(true)
        }
        Command::Verify { seed, out, criteria, degree_offset } => {
            let criteria =
                if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria.into_iter().collect() };
            let opts = SuiteOptions { seed, degree_offset, criteria };
            let run = run_suite(&opts, |c| println!("{}", c.line()));
            if let Some(dir) = out {
                for (name, text) in &run.artifacts {
                    emit(Some(&dir), name, text)?;
                }
            }
            let failed = run.criteria.iter().filter(|c| !c.ok()).count();
            println!("{} of {} criteria passed", run.criteria.len() - failed, run.criteria.len());
            Ok(failed == 0)
        }
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
