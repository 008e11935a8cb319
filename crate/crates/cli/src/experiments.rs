//! Per-group experiments and their row types.

use serde::Serialize;

use qrmix_core::action::{invariant_projection, ActionTable};
use qrmix_core::character::{class_constants, degrees_from_class_data, MAX_CLASSES};
use qrmix_core::conjugacy::conjugacy_classes;
use qrmix_core::group::build_group;
use qrmix_core::mixing::{mixing_bound_check, EXACT_MAX_ORDER};
use qrmix_core::recurrence::{correlation_family, recurrence_check, trial_triple, vdc_check, VDC_EXACT_MAX_ORDER};
use qrmix_core::{rng, ActionKind, DegreeMultiset, Error, GroupTable, QuasirandomDegree};

use crate::fmt_float;

/// A built group with its character data.
#[derive(Debug, Clone)]
pub struct GroupContext {
    pub group: GroupTable,
    pub classes: usize,
    pub degrees: DegreeMultiset,
    /// `D` used for bounds; differs from the computed one only when a fault
    /// is planted with a degree offset.
    pub degree: QuasirandomDegree,
}

impl GroupContext {
    pub fn build(descriptor: &str, degree_offset: u64) -> qrmix_core::Result<Self> {
        let group = build_group(descriptor)?;
        let classes = conjugacy_classes(&group);
        if classes.class_count() > MAX_CLASSES {
            return Err(Error::Precondition(format!(
                "{} conjugacy classes exceed the limit of {MAX_CLASSES}",
                classes.class_count()
            )));
        }
        let constants = class_constants(&group, &classes);
        let degrees = degrees_from_class_data(&group, &classes, &constants)?;
        let degree = degrees.quasirandom_degree().inflated(degree_offset);
        Ok(Self { classes: classes.class_count(), group, degrees, degree })
    }

    pub fn descriptor(&self) -> String {
        self.group.descriptor()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }
}

/// Where exact evaluation stops. Exact evaluation is always used up to
/// order 3000 regardless of the configured value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    pub exact_max_order: usize,
    pub mc_samples: u64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self { exact_max_order: EXACT_MAX_ORDER, mc_samples: 2000 }
    }
}

impl Thresholds {
    fn sampling(&self, order: usize) -> Option<u64> {
        (order > self.exact_max_order.max(EXACT_MAX_ORDER)).then_some(self.mc_samples)
    }
}

/// A fixed-schema output row.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn record(&self) -> Vec<String>;
    fn pass(&self) -> bool;
}

pub fn to_csv<R: Row>(rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(R::HEADER).expect("in-memory write");
    for r in rows {
        w.write_record(r.record()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreesRecord {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    pub degrees: Vec<u64>,
    /// `null` for the trivial group.
    #[serde(rename = "D")]
    pub d: Option<u64>,
}

impl DegreesRecord {
    pub fn new(ctx: &GroupContext) -> Self {
        Self {
            group: ctx.descriptor(),
            order: ctx.order(),
            classes: ctx.classes,
            degrees: ctx.degrees.degrees().to_vec(),
            d: ctx.degrees.quasirandom_degree().value(),
        }
    }

    /// `sum d^2 = |G|` and one degree per class.
    pub fn consistent(&self) -> bool {
        self.degrees.iter().map(|d| d * d).sum::<u64>() == self.order as u64 && self.degrees.len() == self.classes
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixingRow {
    pub group: String,
    pub order: usize,
    pub action: String,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    pub trial: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub bound: f64,
    pub measured: f64,
    pub ci: Option<f64>,
    pub pass: bool,
}

impl Row for MixingRow {
    const HEADER: &'static [&'static str] = &["group", "order", "action", "D", "trial", "bound", "measured", "ci", "pass"];

    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.order.to_string(),
            self.action.clone(),
            opt_degree(self.d),
            self.trial.to_string(),
            fmt_float(self.bound),
            fmt_float(self.measured),
            self.ci.map(fmt_float).unwrap_or_default(),
            self.pass.to_string(),
        ]
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceRow {
    pub group: String,
    pub order: usize,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    pub trial: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub epsilon: f64,
    pub bound_case_i: f64,
    pub measured_case_i: f64,
    pub bound_case_ii: f64,
    pub measured_case_ii: f64,
    pub bound_total: f64,
    pub measured_total: f64,
    pub pass: bool,
}

impl Row for RecurrenceRow {
    const HEADER: &'static [&'static str] = &[
        "group",
        "order",
        "D",
        "epsilon",
        "bound_case_i",
        "measured_case_i",
        "bound_case_ii",
        "measured_case_ii",
        "bound_total",
        "measured_total",
        "pass",
    ];

    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.order.to_string(),
            opt_degree(self.d),
            fmt_float(self.epsilon),
            fmt_float(self.bound_case_i),
            fmt_float(self.measured_case_i),
            fmt_float(self.bound_case_ii),
            fmt_float(self.measured_case_ii),
            fmt_float(self.bound_total),
            fmt_float(self.measured_total),
            self.pass.to_string(),
        ]
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VdcRow {
    pub group: String,
    pub order: usize,
    #[serde(rename = "D")]
    pub d: Option<u64>,
    pub trial: u64,
    pub seed: u64,
    pub mode: &'static str,
    pub epsilon_lhs: f64,
    pub rhs_integral: f64,
    pub bound: f64,
    pub pass: bool,
}

impl Row for VdcRow {
    const HEADER: &'static [&'static str] =
        &["group", "order", "D", "trial", "epsilon_lhs", "rhs_integral", "bound", "pass"];

    fn record(&self) -> Vec<String> {
        vec![
            self.group.clone(),
            self.order.to_string(),
            opt_degree(self.d),
            self.trial.to_string(),
            fmt_float(self.epsilon_lhs),
            fmt_float(self.rhs_integral),
            fmt_float(self.bound),
            self.pass.to_string(),
        ]
    }

    fn pass(&self) -> bool {
        self.pass
    }
}

/// `D` as printed in CSV files; `inf` for the trivial group.
pub(crate) fn opt_degree(d: Option<u64>) -> String {
    d.map_or_else(|| QuasirandomDegree::Unbounded.to_string(), |d| d.to_string())
}

pub fn mixing_rows(
    ctx: &GroupContext,
    kinds: &[ActionKind],
    trials: u64,
    seed: u64,
    thresholds: Thresholds,
) -> qrmix_core::Result<Vec<MixingRow>> {
    let mut rows = Vec::new();
    for &kind in kinds {
        let action = ActionTable::new(&ctx.group, kind)?;
        let reports = mixing_bound_check(&action, ctx.degree, trials, seed, thresholds.sampling(ctx.order()))?;
        rows.extend(reports.into_iter().map(|r| MixingRow {
            group: r.group,
            order: r.order,
            action: r.action.to_string(),
            d: r.degree.value(),
            trial: r.trial,
            seed: r.seed,
            mode: r.evaluation.name(),
            bound: r.bound,
            measured: r.measured,
            ci: r.evaluation.ci_halfwidth(),
            pass: r.pass,
        }));
    }
    Ok(rows)
}

pub fn recurrence_rows(
    ctx: &GroupContext,
    trials: u64,
    seed: u64,
    thresholds: Thresholds,
) -> qrmix_core::Result<Vec<RecurrenceRow>> {
    let reports = recurrence_check(&ctx.group, ctx.degree, trials, seed, thresholds.sampling(ctx.order()))?;
    Ok(reports
        .into_iter()
        .map(|r| RecurrenceRow {
            group: r.group.clone(),
            order: r.order,
            d: r.degree.value(),
            trial: r.trial,
            seed: r.seed,
            mode: r.mode.name(),
            epsilon: r.bounds.epsilon,
            bound_case_i: r.bounds.case_i,
            measured_case_i: r.cases.case_i,
            bound_case_ii: r.bounds.case_ii,
            measured_case_ii: r.cases.case_ii,
            bound_total: r.bounds.total,
            measured_total: r.cases.total,
            pass: r.pass && r.case_i_pass() && r.case_ii_pass() && r.triangle_holds(),
        })
        .collect())
}

/// Van der Corput on correlation families `e_g = (g ._l f2)(g ._c r3)` with
/// `r3 = f3 - P_c f3`, tested against `f1`. Above order 512 the double sum
/// is estimated from `mc_samples` seeded `(g, h)` pairs.
pub fn vdc_rows(
    ctx: &GroupContext,
    trials: u64,
    seed: u64,
    thresholds: Thresholds,
) -> qrmix_core::Result<Vec<VdcRow>> {
    let group = &ctx.group;
    let desc = ctx.descriptor();
    let conj = ActionTable::new(group, ActionKind::Conjugation)?;
    let space = conj.space();
    (0..trials)
        .map(|trial| {
            let trial_seed = rng::derive_seed(seed, &desc, "vdc", trial);
            let [f1, f2, f3] = trial_triple(space, trial_seed);
            let r3 = f3.difference(space, &invariant_projection(&conj, &f3)?)?;
            let family = correlation_family(group, &f2, &r3)?;
            let pairs =
                (ctx.order() > VDC_EXACT_MAX_ORDER).then(|| (thresholds.mc_samples, rng::splitmix64(trial_seed ^ 0xa5a5)));
            let out = vdc_check(group, &family, &f1, pairs)?;
            Ok(VdcRow {
                group: desc.clone(),
                order: ctx.order(),
                d: ctx.degree.value(),
                trial,
                seed: trial_seed,
                mode: if pairs.is_some() { "monte_carlo" } else { "exact" },
                epsilon_lhs: out.epsilon_lhs,
                rhs_integral: out.rhs_integral,
                bound: out.bound,
                pass: out.pass,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_record_for_symmetric_3() {
        let ctx = GroupContext::build("symmetric:3", 0).unwrap();
        let rec = DegreesRecord::new(&ctx);
        assert_eq!(rec.degrees, vec![1, 1, 2]);
        assert_eq!(rec.d, Some(1));
        assert!(rec.consistent());
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"group":"symmetric:3","order":6,"classes":3,"degrees":[1,1,2],"D":1}"#);
    }

    #[test]
    fn trivial_group_has_unbounded_degree() {
        let ctx = GroupContext::build("cyclic:1", 0).unwrap();
        assert_eq!(DegreesRecord::new(&ctx).d, None);
        let rows = mixing_rows(&ctx, &[ActionKind::Right], 1, 0, Thresholds::default()).unwrap();
        assert_eq!(rows[0].record()[3], "inf");
        assert!(rows[0].pass);
    }

    #[test]
    fn mixing_csv_schema() {
        let ctx = GroupContext::build("cyclic:8", 0).unwrap();
        let rows = mixing_rows(&ctx, &[ActionKind::Left], 3, 1, Thresholds::default()).unwrap();
        let csv = to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("group,order,action,D,trial,bound,measured,ci,pass"));
        assert_eq!(lines.count(), 3);
        assert!(rows.iter().all(|r| r.pass && r.ci.is_none()));
    }

    #[test]
    fn degree_offset_only_moves_the_bound() {
        let a = GroupContext::build("psl2:5", 0).unwrap();
        let b = GroupContext::build("psl2:5", 2).unwrap();
        assert_eq!(a.degrees, b.degrees);
        assert_eq!(b.degree, QuasirandomDegree::Finite(5));
    }

    #[test]
    fn recurrence_and_vdc_rows() {
        let ctx = GroupContext::build("symmetric:4", 0).unwrap();
        let rows = recurrence_rows(&ctx, 2, 3, Thresholds::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.pass && r.mode == "exact"));
        assert!(to_csv(&rows).starts_with("group,order,D,epsilon,bound_case_i,"));
        let rows = vdc_rows(&ctx, 2, 3, Thresholds::default()).unwrap();
        assert!(rows.iter().all(|r| r.pass && r.mode == "exact"));
    }
}
