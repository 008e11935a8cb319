//! The verification suite: one check per quantitative claim, each with its
//! own group list, trial count and tolerance.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use serde::Serialize;

use qrmix_core::action::{self, invariant_projection, koopman_apply, random_observable, random_real_observable};
use qrmix_core::conjugacy::conjugacy_classes;
use qrmix_core::mixing::{mixing_bound, mixing_error, monte_carlo_mixing_error, reduction_identity_check, trial_pair};
use qrmix_core::recurrence::{gram_identity_check, scaled_delta_family, vdc_check, Pairing};
use qrmix_core::{rng, ActionKind, ActionTable, NormMode, Observable, QuasirandomDegree, BOUND_TOLERANCE, C64};

use crate::experiments::{
    mixing_rows, recurrence_rows, to_csv, to_json, vdc_rows, DegreesRecord, GroupContext, RecurrenceRow, Thresholds,
};

/// Groups whose character degrees are checked and whose actions are mixed.
pub const DEGREE_GROUPS: [&str; 7] = ["symmetric:3", "symmetric:4", "sl2:5", "sl2:7", "sl2:13", "psl2:5", "psl2:7"];

/// Further small groups for the identity checks.
pub const EXTRA_GROUPS: [&str; 7] =
    ["cyclic:5", "cyclic:8", "cyclic:12", "cyclic:64", "dihedral:6", "symmetric:5", "product:cyclic:2,cyclic:2"];

pub const RECURRENCE_PRIMES: [u32; 4] = [5, 7, 13, 37];

/// Identity checks on real data are held to this.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "character degrees"),
    (2, "mixing bound D^(-1/2)"),
    (3, "sharpness on cyclic groups"),
    (4, "triple recurrence bound 4 D^(-1/4)"),
    (5, "case decomposition"),
    (6, "van der Corput inequality"),
    (7, "invariant projection"),
    (8, "reduction identity"),
    (9, "Gram identity"),
    (10, "Monte Carlo consistency"),
    (11, "determinism"),
];

fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(60)),
        2 => Some(Duration::from_secs(600)),
        4 => Some(Duration::from_secs(1200)),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Added to every `D` used in a bound; nonzero only to plant faults.
    pub degree_offset: u64,
    pub criteria: BTreeSet<u8>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 0, degree_offset: 0, criteria: CRITERIA.iter().map(|c| c.0).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub limit: Option<Duration>,
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.limit.is_none_or(|l| self.elapsed < l)
    }

    /// Passed and finished within its time limit.
    pub fn ok(&self) -> bool {
        self.pass && self.within_limit()
    }

    pub fn line(&self) -> String {
        let limit = match self.limit {
            Some(l) if !self.within_limit() => format!(", over the {} s limit", l.as_secs()),
            Some(l) => format!(", limit {} s", l.as_secs()),
            None => String::new(),
        };
        format!(
            "criterion {:>2} {} {}: {} ({:.1} s{limit})",
            self.id,
            if self.ok() { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub criteria: Vec<CriterionResult>,
    /// File name to contents. Contains no timing information.
    pub artifacts: BTreeMap<String, String>,
}

impl SuiteRun {
    pub fn all_ok(&self) -> bool {
        self.criteria.iter().all(CriterionResult::ok)
    }
}

#[derive(Serialize)]
struct SummaryFile<'a> {
    seed: u64,
    degree_offset: u64,
    criteria: &'a [CriterionResult],
}

type Check = Result<String, String>;

struct Suite {
    opts: SuiteOptions,
    contexts: BTreeMap<String, GroupContext>,
    recurrence: Option<Vec<RecurrenceRow>>,
    artifacts: BTreeMap<String, String>,
}

impl Suite {
    fn new(opts: SuiteOptions) -> Self {
        Self { opts, contexts: BTreeMap::new(), recurrence: None, artifacts: BTreeMap::new() }
    }

    fn context(&mut self, desc: &str) -> Result<&GroupContext, String> {
        if !self.contexts.contains_key(desc) {
            let ctx = GroupContext::build(desc, self.opts.degree_offset).map_err(|e| format!("{desc}: {e}"))?;
            self.contexts.insert(desc.to_string(), ctx);
        }
        Ok(&self.contexts[desc])
    }

    fn seed(&self, desc: &str, experiment: &str, trial: u64) -> u64 {
        rng::derive_seed(self.opts.seed, desc, experiment, trial)
    }

    fn small_groups(&mut self, max_order: usize) -> Result<Vec<GroupContext>, String> {
        let mut out = Vec::new();
        for desc in DEGREE_GROUPS.iter().chain(&EXTRA_GROUPS) {
            let ctx = self.context(desc)?;
            if ctx.order() <= max_order {
                out.push(ctx.clone());
            }
        }
        Ok(out)
    }

    fn run(&mut self, id: u8) -> Check {
        match id {
            1 => self.degrees(),
            2 => self.mixing(),
            3 => self.sharpness(),
            4 => self.recurrence_bound(),
            5 => self.case_split(),
            6 => self.van_der_corput(),
            7 => self.projection(),
            8 => self.reduction(),
            9 => self.gram(),
            10 => self.monte_carlo(),
            _ => Err(format!("no criterion {id}")),
        }
    }

    fn degrees(&mut self) -> Check {
        let mut records = Vec::new();
        for desc in DEGREE_GROUPS {
            let ctx = self.context(desc)?;
            let rec = DegreesRecord::new(ctx);
            let classes = conjugacy_classes(&ctx.group).class_count();
            if rec.degrees.iter().map(|d| d * d).sum::<u64>() != rec.order as u64 {
                return Err(format!("{desc}: sum of squared degrees is not {}", rec.order));
            }
            if rec.degrees.len() != classes {
                return Err(format!("{desc}: {} degrees for {classes} classes", rec.degrees.len()));
            }
            let mut nontrivial = rec.degrees.clone();
            nontrivial.sort_unstable();
            nontrivial.remove(0);
            if rec.d != nontrivial.first().copied() {
                return Err(format!("{desc}: D {:?} is not the least nontrivial degree", rec.d));
            }
            if let Some(expected) = closed_form_degree(desc) {
                if rec.d != Some(expected) {
                    return Err(format!("{desc}: D {:?}, closed form gives {expected}", rec.d));
                }
            }
            records.push(rec);
        }
        // Independent oracle on PSL(2,5): solve the degree equation with
        // divisibility and the count of linear characters from the
        // commutator subgroup.
        let ctx = self.context("psl2:5")?;
        let order = ctx.order() as u64;
        let linear = order / ctx.group.derived_subgroup().len() as u64;
        let classes = conjugacy_classes(&ctx.group).class_count();
        let solutions = degree_equation_solutions(order, classes, linear);
        let smallest = solutions.iter().filter_map(|s| s.first().copied()).min();
        if smallest.is_none_or(|d| d < 3) {
            return Err(format!("psl2:5: degree equation admits nontrivial degree {smallest:?}"));
        }
        let dixon: Vec<u64> = ctx.degrees.degrees()[1..].to_vec();
        if solutions != [dixon.clone()] {
            return Err(format!("psl2:5: oracle solutions {solutions:?} differ from {dixon:?}"));
        }
        let ds: Vec<String> =
            records.iter().map(|r| format!("{}={}", r.group, crate::experiments::opt_degree(r.d))).collect();
        self.artifacts.insert("degrees.json".into(), to_json(&records));
        Ok(format!("{}; oracle on psl2:5 gives {dixon:?}", ds.join(" ")))
    }

    fn mixing(&mut self) -> Check {
        let seed = self.opts.seed;
        let mut rows = Vec::new();
        for desc in DEGREE_GROUPS {
            let ctx = self.context(desc)?;
            rows.extend(
                mixing_rows(ctx, &ActionKind::BUILT_IN, 200, seed, Thresholds::default()).map_err(|e| e.to_string())?,
            );
        }
        self.artifacts.insert("mixing.csv".into(), to_csv(&rows));
        if let Some(r) = rows.iter().find(|r| r.mode != "exact") {
            return Err(format!("{} {} evaluated by {}", r.group, r.action, r.mode));
        }
        let worst = rows.iter().map(|r| r.measured / r.bound).fold(0.0, f64::max);
        match rows.iter().find(|r| !r.pass) {
            Some(r) => Err(format!(
                "{} {} trial {}: measured {:.6} > bound {:.6}",
                r.group, r.action, r.trial, r.measured, r.bound
            )),
            None => Ok(format!("{} exact pairs, max measured/bound {worst:.4}", rows.len())),
        }
    }

    fn sharpness(&mut self) -> Check {
        let mut notes = Vec::new();
        for n in [5usize, 8, 12] {
            let desc = format!("cyclic:{n}");
            let ctx = self.context(&desc)?.clone();
            let g = &ctx.group;
            if g.elements().any(|a| g.elements().any(|b| g.mult(a, b) as usize != (a as usize + b as usize) % n)) {
                return Err(format!("{desc}: element indices are not residues"));
            }
            let left = ActionTable::new(g, ActionKind::Left).map_err(|e| e.to_string())?;
            let chi = Observable::from_fn(left.space(), |x| C64::from_polar(1.0, TAU * x as f64 / n as f64));
            let measured = mixing_error(&left, &chi, &chi).map_err(|e| e.to_string())?;
            if (measured - 1.0).abs() > IDENTITY_TOLERANCE {
                return Err(format!("{desc}: mixing error {measured} is not 1"));
            }
            let bound = mixing_bound(ctx.degree, &chi, &chi);
            if measured > bound + BOUND_TOLERANCE {
                return Err(format!("{desc}: measured {measured:.6} > bound {bound:.6} with D = {}", ctx.degree));
            }
            notes.push(format!("{desc} {:.1e}", (measured - 1.0).abs()));
        }
        Ok(format!("|error - 1|: {}", notes.join(", ")))
    }

    fn recurrence_rows(&mut self) -> Result<Vec<RecurrenceRow>, String> {
        if let Some(rows) = &self.recurrence {
            return Ok(rows.clone());
        }
        let seed = self.opts.seed;
        let mut rows = Vec::new();
        for p in RECURRENCE_PRIMES {
            let ctx = self.context(&format!("sl2:{p}"))?;
            rows.extend(recurrence_rows(ctx, 20, seed, Thresholds::default()).map_err(|e| e.to_string())?);
        }
        self.artifacts.insert("recurrence.csv".into(), to_csv(&rows));
        self.recurrence = Some(rows.clone());
        Ok(rows)
    }

    fn recurrence_bound(&mut self) -> Check {
        let rows = self.recurrence_rows()?;
        let mut notes = Vec::new();
        for p in RECURRENCE_PRIMES {
            let desc = format!("sl2:{p}");
            let ours: Vec<_> = rows.iter().filter(|r| r.group == desc).collect();
            let expected_mode = if p == 37 { "monte_carlo" } else { "exact" };
            if let Some(r) = ours.iter().find(|r| r.mode != expected_mode) {
                return Err(format!("{desc} trial {} evaluated by {}", r.trial, r.mode));
            }
            let d = self.context(&desc)?.degree;
            let bound = corollary_bound(d);
            if let Some(r) = ours.iter().find(|r| r.measured_total > bound + BOUND_TOLERANCE) {
                return Err(format!("{desc} trial {}: measured {:.6} > {bound:.6}", r.trial, r.measured_total));
            }
            let max = ours.iter().map(|r| r.measured_total).fold(0.0, f64::max);
            notes.push(format!("{desc} D={d} max {max:.4} <= {bound:.4}"));
        }
        Ok(notes.join("; "))
    }

    fn case_split(&mut self) -> Check {
        let rows = self.recurrence_rows()?;
        for r in &rows {
            let eps = r.epsilon;
            let at = || format!("{} trial {}", r.group, r.trial);
            if r.measured_case_i > eps + BOUND_TOLERANCE {
                return Err(format!("{}: case (i) {:.6} > {eps:.6}", at(), r.measured_case_i));
            }
            if r.measured_case_ii > (5.0 * eps).sqrt() + BOUND_TOLERANCE {
                return Err(format!("{}: case (ii) {:.6} > {:.6}", at(), r.measured_case_ii, (5.0 * eps).sqrt()));
            }
            if r.measured_total > r.measured_case_i + r.measured_case_ii + BOUND_TOLERANCE {
                return Err(format!("{}: total exceeds the sum of the cases", at()));
            }
        }
        let worst_i = rows.iter().map(|r| r.measured_case_i / r.bound_case_i).fold(0.0, f64::max);
        let worst_ii = rows.iter().map(|r| r.measured_case_ii / r.bound_case_ii).fold(0.0, f64::max);
        Ok(format!("{} triples, max ratio case (i) {worst_i:.4}, case (ii) {worst_ii:.4}", rows.len()))
    }

    fn van_der_corput(&mut self) -> Check {
        let small = self.small_groups(512)?;
        for ctx in &small {
            let n = ctx.order() as f64;
            let family = scaled_delta_family(&ctx.group);
            let one = Observable::constant(family.space(), C64::new(1.0, 0.0));
            let out = vdc_check(&ctx.group, &family, &one, None).map_err(|e| e.to_string())?;
            let desc = ctx.descriptor();
            if (out.epsilon_lhs - 1.0 / n).abs() > IDENTITY_TOLERANCE / n {
                return Err(format!("{desc}: epsilon_lhs {} is not 1/{n}", out.epsilon_lhs));
            }
            if (out.rhs_integral - out.bound).abs() > IDENTITY_TOLERANCE || !out.pass {
                return Err(format!("{desc}: rhs {} is not the bound {}", out.rhs_integral, out.bound));
            }
        }
        let seed = self.opts.seed;
        let mut rows = Vec::new();
        for desc in ["symmetric:4", "sl2:5"] {
            let ctx = self.context(desc)?;
            rows.extend(vdc_rows(ctx, 100, seed, Thresholds::default()).map_err(|e| e.to_string())?);
        }
        self.artifacts.insert("vdc.csv".into(), to_csv(&rows));
        if let Some(r) = rows.iter().find(|r| !r.pass || r.mode != "exact") {
            return Err(format!("{} trial {}: {:.6} > {:.6}", r.group, r.trial, r.rhs_integral, r.bound));
        }
        Ok(format!("scaled deltas tight on {} groups; {} correlation families pass", small.len(), rows.len()))
    }

    fn projection(&mut self) -> Check {
        let small = self.small_groups(360)?;
        let mut checked = 0;
        for ctx in &small {
            let desc = ctx.descriptor();
            for kind in ActionKind::BUILT_IN {
                let act = ActionTable::new(&ctx.group, kind).map_err(|e| e.to_string())?;
                let sp = act.space();
                let fs: Vec<Observable> = (0..50)
                    .map(|t| random_observable(sp, self.seed(&desc, &format!("projection-{kind}"), t), NormMode::LinfUnit))
                    .collect();
                let ps: Vec<Observable> =
                    fs.iter().map(|f| invariant_projection(&act, f)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
                for (i, (f, p)) in fs.iter().zip(&ps).enumerate() {
                    let at = || format!("{desc} {kind} observable {i}");
                    let pp = invariant_projection(&act, p).map_err(|e| e.to_string())?;
                    if max_diff(&pp, p) > IDENTITY_TOLERANCE {
                        return Err(format!("{}: not idempotent", at()));
                    }
                    let (j, other) = ((i + 1) % fs.len(), &fs[(i + 1) % fs.len()]);
                    let lhs = action::inner(sp, p, other).map_err(|e| e.to_string())?;
                    let rhs = action::inner(sp, f, &ps[j]).map_err(|e| e.to_string())?;
                    if (lhs - rhs).norm() > IDENTITY_TOLERANCE {
                        return Err(format!("{}: not self-adjoint", at()));
                    }
                    for g in ctx.group.elements() {
                        if max_diff(&koopman_apply(&act, g, p).map_err(|e| e.to_string())?, p) > IDENTITY_TOLERANCE {
                            return Err(format!("{}: not invariant under element {g}", at()));
                        }
                    }
                    if kind != ActionKind::Conjugation {
                        let mean = action::mean(sp, f).map_err(|e| e.to_string())?;
                        if p.values().iter().any(|v| (v - mean).norm() > IDENTITY_TOLERANCE) {
                            return Err(format!("{}: projection is not the mean", at()));
                        }
                    }
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} projections on {} groups", small.len()))
    }

    fn reduction(&mut self) -> Check {
        let small = self.small_groups(60)?;
        let mut worst = 0.0f64;
        let mut checked = 0;
        for ctx in &small {
            let desc = ctx.descriptor();
            for kind in [ActionKind::Conjugation, ActionKind::Left] {
                let act = ActionTable::new(&ctx.group, kind).map_err(|e| e.to_string())?;
                for t in 0..3 {
                    let (f1, f2) = trial_pair(act.space(), self.seed(&desc, &format!("reduction-{kind}"), t));
                    for g in ctx.group.elements() {
                        let c = reduction_identity_check(&act, &f1, &f2, g).map_err(|e| e.to_string())?;
                        if c.discrepancy > IDENTITY_TOLERANCE {
                            return Err(format!("{desc} {kind} g={g}: discrepancy {:.3e}", c.discrepancy));
                        }
                        worst = worst.max(c.discrepancy);
                        checked += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} checks on {} groups, max discrepancy {worst:.1e}", small.len()))
    }

    fn gram(&mut self) -> Check {
        let small = self.small_groups(60)?;
        let mut worst = 0.0f64;
        let mut checked = 0;
        for ctx in &small {
            let desc = ctx.descriptor();
            let sp = qrmix_core::ProbabilitySpace::uniform(ctx.order());
            for t in 0..2 {
                let f2 = random_real_observable(&sp, self.seed(&desc, "gram-f2", t));
                let f3 = random_real_observable(&sp, self.seed(&desc, "gram-f3", t));
                for g in ctx.group.elements() {
                    for h in ctx.group.elements() {
                        let c = gram_identity_check(&ctx.group, &f2, &f3, g, h, Pairing::Bilinear)
                            .map_err(|e| e.to_string())?;
                        if c.discrepancy > IDENTITY_TOLERANCE {
                            return Err(format!("{desc} g={g} h={h}: discrepancy {:.3e}", c.discrepancy));
                        }
                        worst = worst.max(c.discrepancy);
                        checked += 1;
                    }
                }
            }
        }
        Ok(format!("{checked} (g, h) pairs on {} groups, max discrepancy {worst:.1e}", small.len()))
    }

    fn monte_carlo(&mut self) -> Check {
        let mut notes = Vec::new();
        let mut ok = true;
        for desc in ["cyclic:64", "symmetric:5"] {
            let ctx = self.context(desc)?.clone();
            let left = ActionTable::new(&ctx.group, ActionKind::Left).map_err(|e| e.to_string())?;
            let mut hits = 0;
            for t in 0..100 {
                let ts = self.seed(desc, "monte-carlo", t);
                let (f1, f2) = trial_pair(left.space(), ts);
                let exact = mixing_error(&left, &f1, &f2).map_err(|e| e.to_string())?;
                let est = monte_carlo_mixing_error(&left, &f1, &f2, 200, rng::splitmix64(ts ^ 0xa5a5))
                    .map_err(|e| e.to_string())?;
                if (est.estimate - exact).abs() <= 3.0 * est.ci_halfwidth {
                    hits += 1;
                }
            }
            ok &= hits >= 95;
            notes.push(format!("{desc} {hits}/100 within 3 ci"));
        }
        let detail = notes.join(", ");
        if ok {
            Ok(detail)
        } else {
            Err(detail)
        }
    }
}

fn max_diff(a: &Observable, b: &Observable) -> f64 {
    a.values().iter().zip(b.values()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `4 D^(-1/4)`.
pub fn corollary_bound(d: QuasirandomDegree) -> f64 {
    4.0 * d.epsilon().sqrt()
}

/// Least nontrivial degree of SL(2,p) and PSL(2,p) from the known character
/// tables: `(p-1)/2` for SL(2,p); for PSL(2,p) the same when `p = 3 mod 4`
/// and `(p+1)/2` when `p = 1 mod 4`.
pub fn closed_form_degree(desc: &str) -> Option<u64> {
    let (family, p) = desc.split_once(':')?;
    let p: u64 = p.parse().ok()?;
    match family {
        "sl2" if p > 3 => Some((p - 1) / 2),
        "psl2" if p > 3 && p % 4 == 1 => Some((p + 1) / 2),
        "psl2" if p > 3 => Some((p - 1) / 2),
        _ => None,
    }
}

/// All ascending multisets of `classes - linear` nontrivial degrees, each at
/// least 2 and dividing `order`, whose squares sum to `order - linear`.
pub fn degree_equation_solutions(order: u64, classes: usize, linear: u64) -> Vec<Vec<u64>> {
    fn search(divisors: &[u64], start: usize, left: usize, rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for (i, &d) in divisors.iter().enumerate().skip(start) {
            // remaining degrees are at least d
            if d * d * left as u64 > rest {
                break;
            }
            cur.push(d);
            search(divisors, i, left - 1, rest - d * d, cur, out);
            cur.pop();
        }
    }
    let divisors: Vec<u64> = (2..).take_while(|d| d * d < order).filter(|d| order % d == 0).collect();
    let mut out = Vec::new();
    if let Some(left) = classes.checked_sub(linear as usize) {
        search(&divisors, 0, left, order - linear, &mut Vec::new(), &mut out);
    }
    out
}

fn run_once(opts: &SuiteOptions, ids: &[u8], report: &mut dyn FnMut(&CriterionResult)) -> SuiteRun {
    let mut suite = Suite::new(opts.clone());
    let mut criteria = Vec::new();
    for &id in ids {
        let start = Instant::now();
        let outcome = suite.run(id);
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
        let result = CriterionResult { id, title, pass, detail, elapsed: start.elapsed(), limit: time_limit(id) };
        report(&result);
        criteria.push(result);
    }
    let summary = SummaryFile { seed: opts.seed, degree_offset: opts.degree_offset, criteria: &criteria };
    suite.artifacts.insert("summary.json".into(), to_json(&summary));
    SuiteRun { criteria, artifacts: suite.artifacts }
}

/// Runs the selected criteria, calling `report` as each finishes. Criterion
/// 11 runs the other selected criteria a second time with the same options
/// and compares every artifact byte for byte.
pub fn run_suite(opts: &SuiteOptions, mut report: impl FnMut(&CriterionResult)) -> SuiteRun {
    let ids: Vec<u8> = opts.criteria.iter().copied().filter(|&id| id != 11).collect();
    let mut run = run_once(opts, &ids, &mut report);
    if opts.criteria.contains(&11) {
        let start = Instant::now();
        let again = run_once(opts, &ids, &mut |_| {});
        let differing: Vec<&String> = run
            .artifacts
            .keys()
            .chain(again.artifacts.keys())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|k| run.artifacts.get(*k) != again.artifacts.get(*k))
            .collect();
        let names: Vec<&str> = run.artifacts.keys().map(String::as_str).collect();
        let (pass, detail) = if differing.is_empty() {
            (true, format!("second run reproduced {} byte for byte", names.join(", ")))
        } else {
            (false, format!("artifacts differ between runs: {differing:?}"))
        };
        let result =
            CriterionResult { id: 11, title: CRITERIA[10].1, pass, detail, elapsed: start.elapsed(), limit: None };
        report(&result);
        run.criteria.push(result);
    }
    run
}
