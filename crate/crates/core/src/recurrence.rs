//! Triple recurrence for the left-translation and conjugation actions.
//!
//! For `f1, f2, f3` on a group `G` with sup norms at most 1, the functional
//!
//! ```text
//! E = (1/|G|) sum_g | T(g) - R |,
//! T(g) = (1/|G|) sum_x f1(x) f2(g^-1 x) f3(g^-1 x g),
//! R    = (1/|G|) sum_x f1(x) (P_l f2)(x) (P_c f3)(x)
//! ```
//!
//! is bounded by `eps + sqrt(5 eps) <= 4 sqrt(eps)` when `G` is eps-mixing,
//! so by `4 D^(-1/4)` for D-quasirandom groups. The proof splits
//! `f3 = P_c f3 + (f3 - P_c f3)`: the first part is a mixing statement for
//! left translation (bound `eps`), the second goes through the van der Corput
//! inequality for the family `e_g = (g ._l f2)(g ._c f3)` (bound `sqrt(5 eps)`).
//!
//! Products inside integrals are not conjugated; only `<., .>` conjugates its
//! second slot.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::action::{self, invariant_projection, koopman_apply, ActionKind, ActionTable, NormMode, Observable, ProbabilitySpace};
use crate::sum::{CompensatedSum, ComplexSum};
use crate::{rng, Error, GroupTable, QuasirandomDegree, Result, BOUND_TOLERANCE, C64};

/// Sup-norm slack accepted on inputs.
pub const LINF_TOLERANCE: f64 = 1e-12;

/// Largest index group for the exact van der Corput double sum.
pub const VDC_EXACT_MAX_ORDER: usize = 512;

/// Largest group whose correlation family is materialized (`|G|^2` values).
pub const FAMILY_MAX_ORDER: usize = 2048;

/// The three bounds for a given `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceBounds {
    pub epsilon: f64,
    pub case_i: f64,
    pub case_ii: f64,
    /// `min(eps + sqrt(5 eps), 4 sqrt(eps))`.
    pub total: f64,
    /// `4 sqrt(eps)`, i.e. `4 D^(-1/4)` for `eps = D^(-1/2)`.
    pub corollary: f64,
}

impl RecurrenceBounds {
    pub fn for_epsilon(epsilon: f64) -> Self {
        let case_ii = (5.0 * epsilon).sqrt();
        let corollary = 4.0 * epsilon.sqrt();
        Self { epsilon, case_i: epsilon, case_ii, total: (epsilon + case_ii).min(corollary), corollary }
    }

    pub fn for_degree(degree: QuasirandomDegree) -> Self {
        Self::for_epsilon(degree.epsilon())
    }
}

fn check_on_group(group: &GroupTable, f: &Observable) -> Result<()> {
    if f.len() != group.order() {
        return Err(Error::DimensionMismatch { expected: group.order(), actual: f.len() });
    }
    Ok(())
}

fn check_linf(name: &str, f: &Observable) -> Result<()> {
    if f.linf_norm() > 1.0 + LINF_TOLERANCE {
        return Err(Error::Precondition(format!("{name} has sup norm {} > 1", f.linf_norm())));
    }
    Ok(())
}

/// `T(g) = (1/|G|) sum_x f1(x) f2(g^-1 x) f3(g^-1 x g)`.
pub fn triple_product_average(
    group: &GroupTable,
    f1: &Observable,
    f2: &Observable,
    f3: &Observable,
    g: u32,
) -> Result<C64> {
    for f in [f1, f2, f3] {
        check_on_group(group, f)?;
    }
    let gi = group.inv(g);
    let mut acc = ComplexSum::new();
    for x in group.elements() {
        let u = group.mult(gi, x);
        let w = group.mult(u, g);
        acc.add(f1.get(x as usize) * f2.get(u as usize) * f3.get(w as usize));
    }
    Ok(acc.value() / group.order() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RecurrenceMode {
    /// Average over every `g`.
    Exact,
    /// Average over `samples` uniformly drawn `g`; inner sums stay exact.
    Sampled { samples: u64, seed: u64 },
}

impl RecurrenceMode {
    pub fn name(&self) -> &'static str {
        match self {
            RecurrenceMode::Exact => "exact",
            RecurrenceMode::Sampled { .. } => "monte_carlo",
        }
    }
}

/// Outcome of the case split for one triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseDecomposition {
    pub total: f64,
    /// Error with `f3` replaced by `P_c f3`.
    pub case_i: f64,
    /// Error with `f3` replaced by `f3 - P_c f3` (reference term zero).
    pub case_ii: f64,
    pub projected_linf: f64,
    pub residual_l2: f64,
    pub f3_l2: f64,
    pub f3_linf: f64,
}

impl CaseDecomposition {
    /// `|P_c f3|_inf <= |f3|_inf` and `|f3 - P_c f3|_2 <= |f3|_2`.
    pub fn norm_facts_hold(&self) -> bool {
        self.projected_linf <= self.f3_linf + LINF_TOLERANCE && self.residual_l2 <= self.f3_l2 + LINF_TOLERANCE
    }
}

/// Shared state for triple-recurrence evaluations on one group.
#[derive(Debug, Clone)]
pub struct TripleRecurrence<'g> {
    group: &'g GroupTable,
    conjugation: ActionTable<'g>,
    degree: QuasirandomDegree,
}

impl<'g> TripleRecurrence<'g> {
    pub fn new(group: &'g GroupTable, degree: QuasirandomDegree) -> Result<Self> {
        Ok(Self { group, conjugation: ActionTable::new(group, ActionKind::Conjugation)?, degree })
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn space(&self) -> &ProbabilitySpace {
        self.conjugation.space()
    }

    pub fn bounds(&self) -> RecurrenceBounds {
        RecurrenceBounds::for_degree(self.degree)
    }

    /// Total, case (i) and case (ii) errors in a single pass over `(g, x)`.
    pub fn case_decomposition(
        &self,
        f1: &Observable,
        f2: &Observable,
        f3: &Observable,
        mode: RecurrenceMode,
    ) -> Result<CaseDecomposition> {
        let group = self.group;
        for f in [f1, f2, f3] {
            check_on_group(group, f)?;
        }
        let space = self.space();
        let pc3 = invariant_projection(&self.conjugation, f3)?;
        let res3 = f3.difference(space, &pc3)?;
        // P_l f2 is the constant mean of f2.
        let mean2 = action::mean(space, f2)?;
        let reference = action::mean(space, &f1.product(space, &pc3)?)? * mean2;

        let n = group.order() as f64;
        // f3 and P_c f3 side by side: one cache line per lookup at g^-1 x g.
        let split: Vec<[C64; 2]> = f3.values().iter().zip(pc3.values()).map(|(&a, &b)| [a, b]).collect();
        let (f1v, f2v) = (f1.values(), f2.values());
        let (mut total, mut case_i, mut case_ii) =
            (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
        let mut count = 0u64;
        let mut visit = |g: u32| {
            let gi = group.inv(g);
            let (mut t, mut ti, mut tii) = (ComplexSum::new(), ComplexSum::new(), ComplexSum::new());
            for (x, &v1) in f1v.iter().enumerate() {
                let u = group.mult(gi, x as u32);
                let [v3, p3] = split[group.mult(u, g) as usize];
                let a = v1 * f2v[u as usize];
                t.add(a * v3);
                ti.add(a * p3);
                tii.add(a * (v3 - p3));
            }
            total.add((t.value() / n - reference).norm());
            case_i.add((ti.value() / n - reference).norm());
            case_ii.add((tii.value() / n).norm());
            count += 1;
        };
        match mode {
            RecurrenceMode::Exact => group.elements().for_each(&mut visit),
            RecurrenceMode::Sampled { samples, seed } => {
                if samples == 0 {
                    return Err(Error::Precondition("sampled mode needs at least one sample".into()));
                }
                let mut r = rng::rng_from_seed(seed);
                for _ in 0..samples {
                    visit(r.gen_range(0..group.order() as u32));
                }
            }
        }
        let count = count as f64;
        Ok(CaseDecomposition {
            total: total.value() / count,
            case_i: case_i.value() / count,
            case_ii: case_ii.value() / count,
            projected_linf: pc3.linf_norm(),
            residual_l2: res3.l2_norm(),
            f3_l2: f3.l2_norm(),
            f3_linf: f3.linf_norm(),
        })
    }

    /// The recurrence error with its case split, checked against the bounds.
    pub fn triple_recurrence_error(
        &self,
        f1: &Observable,
        f2: &Observable,
        f3: &Observable,
        mode: RecurrenceMode,
    ) -> Result<RecurrenceReport> {
        for (name, f) in [("f1", f1), ("f2", f2), ("f3", f3)] {
            check_linf(name, f)?;
        }
        let cases = self.case_decomposition(f1, f2, f3, mode)?;
        let bounds = self.bounds();
        Ok(RecurrenceReport {
            group: self.group.descriptor(),
            order: self.group.order(),
            degree: self.degree,
            bounds,
            cases,
            mode,
            trial: 0,
            seed: 0,
            pass: cases.total <= bounds.total + BOUND_TOLERANCE,
        })
    }
}

/// One evaluated triple.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceReport {
    pub group: String,
    pub order: usize,
    pub degree: QuasirandomDegree,
    pub bounds: RecurrenceBounds,
    pub cases: CaseDecomposition,
    pub mode: RecurrenceMode,
    pub trial: u64,
    pub seed: u64,
    pub pass: bool,
}

impl RecurrenceReport {
    pub fn case_i_pass(&self) -> bool {
        self.cases.case_i <= self.bounds.case_i + BOUND_TOLERANCE
    }

    pub fn case_ii_pass(&self) -> bool {
        self.cases.case_ii <= self.bounds.case_ii + BOUND_TOLERANCE
    }

    pub fn triangle_holds(&self) -> bool {
        self.cases.total <= self.cases.case_i + self.cases.case_ii + BOUND_TOLERANCE
    }
}

/// One-shot form of [`TripleRecurrence::triple_recurrence_error`].
pub fn triple_recurrence_error(
    group: &GroupTable,
    degree: QuasirandomDegree,
    f1: &Observable,
    f2: &Observable,
    f3: &Observable,
    mode: RecurrenceMode,
) -> Result<RecurrenceReport> {
    TripleRecurrence::new(group, degree)?.triple_recurrence_error(f1, f2, f3, mode)
}

/// Seeded `linf_unit` triple for a trial.
pub fn trial_triple(space: &ProbabilitySpace, trial_seed: u64) -> [Observable; 3] {
    [0u64, 0x3333_3333_3333_3333, 0x6666_6666_6666_6666]
        .map(|salt| action::random_observable(space, rng::splitmix64(trial_seed ^ salt), NormMode::LinfUnit))
}

/// Evaluates `trials` seeded triples. Trial `t` draws its functions from
/// `derive_seed(seed, group, "recurrence", t)`; in sampled mode the `g`
/// sample is seeded from the same trial seed.
pub fn recurrence_check(
    group: &GroupTable,
    degree: QuasirandomDegree,
    trials: u64,
    seed: u64,
    samples: Option<u64>,
) -> Result<Vec<RecurrenceReport>> {
    let ctx = TripleRecurrence::new(group, degree)?;
    let desc = group.descriptor();
    (0..trials)
        .map(|trial| {
            let trial_seed = rng::derive_seed(seed, &desc, "recurrence", trial);
            let [f1, f2, f3] = trial_triple(ctx.space(), trial_seed);
            let mode = match samples {
                Some(samples) => RecurrenceMode::Sampled { samples, seed: rng::splitmix64(trial_seed ^ 0xa5a5) },
                None => RecurrenceMode::Exact,
            };
            let mut report = ctx.triple_recurrence_error(&f1, &f2, &f3, mode)?;
            report.trial = trial;
            report.seed = trial_seed;
            Ok(report)
        })
        .collect()
}

/// A family `(e_g)` of observables on a common space, indexed by a group.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorFamily {
    space: ProbabilitySpace,
    members: Vec<Observable>,
    sup_l2: f64,
}

impl VectorFamily {
    pub fn new(space: ProbabilitySpace, members: Vec<Observable>) -> Result<Self> {
        for m in &members {
            if m.len() != space.size() {
                return Err(Error::DimensionMismatch { expected: space.size(), actual: m.len() });
            }
        }
        let sup_l2 = members.iter().map(Observable::l2_norm).fold(0.0, f64::max);
        Ok(Self { space, members, sup_l2 })
    }

    pub fn space(&self) -> &ProbabilitySpace {
        &self.space
    }

    pub fn members(&self) -> &[Observable] {
        &self.members
    }

    pub fn member(&self, g: u32) -> &Observable {
        &self.members[g as usize]
    }

    pub fn sup_l2(&self) -> f64 {
        self.sup_l2
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `e_g(x) = f2(g^-1 x) f3(g^-1 x g)` for every `g`.
pub fn correlation_family(group: &GroupTable, f2: &Observable, f3: &Observable) -> Result<VectorFamily> {
    check_on_group(group, f2)?;
    check_on_group(group, f3)?;
    if group.order() > FAMILY_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "correlation family limited to order {FAMILY_MAX_ORDER}, got {}",
            group.order()
        )));
    }
    let space = ProbabilitySpace::uniform(group.order());
    let members = group
        .elements()
        .map(|g| {
            let gi = group.inv(g);
            Observable::from_fn(&space, |x| {
                let u = group.mult(gi, x as u32);
                f2.get(u as usize) * f3.get(group.mult(u, g) as usize)
            })
        })
        .collect();
    VectorFamily::new(space, members)
}

/// `e_g = sqrt|G| 1_{x = g}` on `G` with uniform measure, an orthonormal basis.
pub fn scaled_delta_family(group: &GroupTable) -> VectorFamily {
    let n = group.order();
    let space = ProbabilitySpace::uniform(n);
    let scale = (n as f64).sqrt();
    let members = (0..n)
        .map(|g| Observable::from_fn(&space, |x| C64::new(if x == g { scale } else { 0.0 }, 0.0)))
        .collect();
    VectorFamily::new(space, members).expect("members built on the family space")
}

/// How the two factors of the Gram identity are paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// `int e_g e_gh dx` and `F2 = f2 (h ._l f2)`, `F3 = f3 (h ._c f3)`.
    Bilinear,
    /// `<e_g, e_gh>` and `F2 = f2 conj(h ._l f2)`, `F3 = f3 conj(h ._c f3)`.
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GramCheck {
    pub lhs: C64,
    pub rhs: C64,
    pub discrepancy: f64,
    pub pairing: Pairing,
}

/// Both sides of `<e_g, e_gh> = int F2^(h) (g ._r F3^(h)) dx`.
///
/// The left side is evaluated pointwise from the definition of `e`; the right
/// side is assembled from Koopman operators of the left, conjugation and
/// right actions.
pub fn gram_identity_check(
    group: &GroupTable,
    f2: &Observable,
    f3: &Observable,
    g: u32,
    h: u32,
    pairing: Pairing,
) -> Result<GramCheck> {
    check_on_group(group, f2)?;
    check_on_group(group, f3)?;
    let n = group.order() as f64;
    let e = |k: u32, x: u32| {
        let u = group.mult(group.inv(k), x);
        f2.get(u as usize) * f3.get(group.mult(u, k) as usize)
    };
    let gh = group.mult(g, h);
    let mut acc = ComplexSum::new();
    for x in group.elements() {
        let second = e(gh, x);
        acc.add(e(g, x) * if pairing == Pairing::Hermitian { second.conj() } else { second });
    }
    let lhs = acc.value() / n;

    let left = ActionTable::new(group, ActionKind::Left)?;
    let conj = ActionTable::new(group, ActionKind::Conjugation)?;
    let right = ActionTable::new(group, ActionKind::Right)?;
    let space = left.space();
    let twist = |f: &Observable, moved: Observable| match pairing {
        Pairing::Bilinear => f.product(space, &moved),
        Pairing::Hermitian => f.product(space, &moved.conj(space)),
    };
    let big_f2 = twist(f2, koopman_apply(&left, h, f2)?)?;
    let big_f3 = twist(f3, koopman_apply(&conj, h, f3)?)?;
    let rhs = action::mean(space, &big_f2.product(space, &koopman_apply(&right, g, &big_f3)?)?)?;
    Ok(GramCheck { lhs, rhs, discrepancy: (lhs - rhs).norm(), pairing })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VdcOutcome {
    /// `(1/|G|^2) sum_h sum_g |<e_g, e_gh>|`, or its sampled estimate.
    pub epsilon_lhs: f64,
    /// `(1/|G|) sum_g |<f, e_g>|`.
    pub rhs_integral: f64,
    /// `sqrt(epsilon_lhs) |f|_2`.
    pub bound: f64,
    pub pass: bool,
}

/// Checks `int |<f, e_g>| dg <= sqrt(eps) |f|_2` with `eps` the averaged
/// second-order correlation of the family.
///
/// The double sum is exact when `pairs` is `None`, which is allowed only up
/// to [`VDC_EXACT_MAX_ORDER`]; otherwise it is estimated from `pairs =
/// (count, seed)` uniformly drawn `(g, h)`.
pub fn vdc_check(
    group: &GroupTable,
    family: &VectorFamily,
    f: &Observable,
    pairs: Option<(u64, u64)>,
) -> Result<VdcOutcome> {
    if family.len() != group.order() {
        return Err(Error::DimensionMismatch { expected: group.order(), actual: family.len() });
    }
    let space = family.space();
    if f.len() != space.size() {
        return Err(Error::DimensionMismatch { expected: space.size(), actual: f.len() });
    }
    let n = group.order();
    let corr = |g: u32, h: u32| -> Result<f64> {
        Ok(action::inner(space, family.member(g), family.member(group.mult(g, h)))?.norm())
    };
    let epsilon_lhs = match pairs {
        None => {
            if n > VDC_EXACT_MAX_ORDER {
                return Err(Error::Precondition(format!(
                    "exact van der Corput sum limited to order {VDC_EXACT_MAX_ORDER}, got {n}"
                )));
            }
            let mut acc = CompensatedSum::new();
            for h in group.elements() {
                for g in group.elements() {
                    acc.add(corr(g, h)?);
                }
            }
            acc.value() / (n * n) as f64
        }
        Some((count, seed)) => {
            if count == 0 {
                return Err(Error::Precondition("sampled van der Corput needs pairs".into()));
            }
            let mut r = rng::rng_from_seed(seed);
            let mut acc = CompensatedSum::new();
            for _ in 0..count {
                let (g, h) = (r.gen_range(0..n as u32), r.gen_range(0..n as u32));
                acc.add(corr(g, h)?);
            }
            acc.value() / count as f64
        }
    };
    let mut acc = CompensatedSum::new();
    for g in group.elements() {
        acc.add(action::inner(space, f, family.member(g))?.norm());
    }
    let rhs_integral = acc.value() / n as f64;
    let bound = epsilon_lhs.sqrt() * f.l2_norm();
    Ok(VdcOutcome { epsilon_lhs, rhs_integral, bound, pass: rhs_integral <= bound + BOUND_TOLERANCE })
}

/// Pairwise orthogonality tolerance for [`bessel_check`].
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOutcome {
    /// `sum_n |<f, e_n>|^2 / |e_n|^2`.
    pub sum_of_squares: f64,
    pub norm_sq: f64,
    pub pass: bool,
}

/// Bessel's inequality for a pairwise orthogonal family.
pub fn bessel_check(space: &ProbabilitySpace, family: &[Observable], f: &Observable) -> Result<BesselOutcome> {
    for (i, a) in family.iter().enumerate() {
        if a.l2_norm() == 0.0 {
            return Err(Error::Precondition(format!("family member {i} is zero")));
        }
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            let c = action::inner(space, a, b)?.norm();
            if c > ORTHOGONALITY_TOLERANCE {
                return Err(Error::Precondition(format!("members {i} and {j} are not orthogonal: |<e_i, e_j>| = {c}")));
            }
        }
    }
    let mut acc = CompensatedSum::new();
    for e in family {
        acc.add(action::inner(space, f, e)?.norm_sqr() / (e.l2_norm() * e.l2_norm()));
    }
    let sum_of_squares = acc.value();
    let norm_sq = f.l2_norm() * f.l2_norm();
    Ok(BesselOutcome { sum_of_squares, norm_sq, pass: sum_of_squares <= norm_sq + BOUND_TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{random_observable, random_real_observable};
    use crate::character::quasirandom_degree;
    use crate::conjugacy::conjugacy_classes;
    use crate::group::build_group;
    use crate::mixing::mixing_error;
    use alloc::vec;

    fn one(space: &ProbabilitySpace) -> Observable {
        Observable::constant(space, C64::new(1.0, 0.0))
    }

    #[test]
    fn triple_product_examples() {
        let g = build_group("symmetric:4").unwrap();
        let sp = ProbabilitySpace::uniform(g.order());
        let u = one(&sp);
        for x in g.elements() {
            assert!((triple_product_average(&g, &u, &u, &u, x).unwrap() - 1.0).norm() < 1e-15);
        }
        let [f1, f2, f3] = trial_triple(&sp, 5);
        let at_e = triple_product_average(&g, &f1, &f2, &f3, 0).unwrap();
        let direct: C64 = (0..24).map(|x| f1.get(x) * f2.get(x) * f3.get(x)).sum::<C64>() / 24.0;
        assert!((at_e - direct).norm() < 1e-14);

        let c = build_group("cyclic:10").unwrap();
        let sp = ProbabilitySpace::uniform(10);
        let [f1, f2, f3] = trial_triple(&sp, 6);
        for a in c.elements() {
            let expected: C64 =
                (0..10u32).map(|x| f1.get(x as usize) * f2.get(c.mult(c.inv(a), x) as usize) * f3.get(x as usize)).sum::<C64>()
                    / 10.0;
            assert!((triple_product_average(&c, &f1, &f2, &f3, a).unwrap() - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn constant_triple_has_zero_error() {
        let g = build_group("psl2:5").unwrap();
        let d = quasirandom_degree(&g).unwrap();
        let sp = ProbabilitySpace::uniform(g.order());
        let u = one(&sp);
        let r = triple_recurrence_error(&g, d, &u, &u, &u, RecurrenceMode::Exact).unwrap();
        assert!(r.cases.total < 1e-14 && r.pass);
    }

    #[test]
    fn total_matches_triple_product_oracle() {
        let g = build_group("dihedral:5").unwrap();
        let d = quasirandom_degree(&g).unwrap();
        let ctx = TripleRecurrence::new(&g, d).unwrap();
        let sp = ctx.space().clone();
        let [f1, f2, f3] = trial_triple(&sp, 77);
        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        let pc3 = crate::action::invariant_projection_averaged(&conj, &f3).unwrap();
        let m2 = action::mean(&sp, &f2).unwrap();
        let reference: C64 = (0..g.order()).map(|x| f1.get(x) * m2 * pc3.get(x)).sum::<C64>() / g.order() as f64;
        let oracle: f64 = g
            .elements()
            .map(|a| (triple_product_average(&g, &f1, &f2, &f3, a).unwrap() - reference).norm())
            .sum::<f64>()
            / g.order() as f64;
        let cases = ctx.case_decomposition(&f1, &f2, &f3, RecurrenceMode::Exact).unwrap();
        assert!((cases.total - oracle).abs() < 1e-13);
    }

    #[test]
    fn class_function_f3_reduces_to_left_mixing() {
        let g = build_group("symmetric:4").unwrap();
        let d = quasirandom_degree(&g).unwrap();
        let ctx = TripleRecurrence::new(&g, d).unwrap();
        let sp = ctx.space().clone();
        let left = ActionTable::new(&g, ActionKind::Left).unwrap();
        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        for seed in 0..5 {
            let [f1, f2, raw3] = trial_triple(&sp, seed);
            let f3 = invariant_projection(&conj, &raw3).unwrap();
            let r = ctx.triple_recurrence_error(&f1, &f2, &f3, RecurrenceMode::Exact).unwrap();
            assert!(r.cases.case_ii < 1e-14);
            // Products are bilinear, the mixing functional conjugates its second slot.
            let m = mixing_error(&left, &f1.product(&sp, &f3).unwrap(), &f2.conj(&sp)).unwrap();
            assert!((r.cases.total - m).abs() < 1e-10, "{} vs {m}", r.cases.total);
            let real2 = random_real_observable(&sp, seed + 100);
            let r = ctx.triple_recurrence_error(&f1, &real2, &f3, RecurrenceMode::Exact).unwrap();
            let m = mixing_error(&left, &f1.product(&sp, &f3).unwrap(), &real2).unwrap();
            assert!((r.cases.total - m).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_projection_f3_kills_case_i() {
        let g = build_group("symmetric:4").unwrap();
        let classes = conjugacy_classes(&g);
        // A class of size 6 (transpositions), values summing to zero on it.
        let target = (0..classes.class_count()).find(|&c| classes.class_sizes()[c] == 6).unwrap();
        let members = &classes.members()[target];
        let sp = ProbabilitySpace::uniform(24);
        let mut values = vec![C64::new(0.0, 0.0); 24];
        for (i, &m) in members.iter().enumerate() {
            values[m as usize] = C64::new(if i % 2 == 0 { 0.5 } else { -0.5 }, 0.0);
        }
        let f3 = Observable::new(&sp, values).unwrap();
        let ctx = TripleRecurrence::new(&g, QuasirandomDegree::Finite(1)).unwrap();
        let [f1, f2, _] = trial_triple(&sp, 3);
        let cases = ctx.case_decomposition(&f1, &f2, &f3, RecurrenceMode::Exact).unwrap();
        assert!(cases.case_i < 1e-15);
        assert!(cases.projected_linf < 1e-15);
    }

    #[test]
    fn triangle_and_norm_facts_on_symmetric_4() {
        let g = build_group("symmetric:4").unwrap();
        let d = quasirandom_degree(&g).unwrap();
        for r in recurrence_check(&g, d, 10, 11, None).unwrap() {
            assert!(r.triangle_holds() && r.cases.norm_facts_hold() && r.pass);
        }
    }

    #[test]
    fn sup_norm_precondition_names_the_function() {
        let g = build_group("cyclic:4").unwrap();
        let sp = ProbabilitySpace::uniform(4);
        let u = one(&sp);
        let big = Observable::constant(&sp, C64::new(0.0, 1.5));
        let err = triple_recurrence_error(&g, QuasirandomDegree::Finite(1), &u, &big, &u, RecurrenceMode::Exact).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.starts_with("f2")));
    }

    #[test]
    fn bound_chain_on_a_grid() {
        for i in 0..=10_000 {
            let eps = i as f64 / 10_000.0;
            let b = RecurrenceBounds::for_epsilon(eps);
            assert!(eps + (5.0 * eps).sqrt() <= 4.0 * eps.sqrt() + 1e-15);
            assert_eq!(b.total, eps + (5.0 * eps).sqrt());
        }
    }

    #[test]
    fn correlation_family_examples() {
        let g = build_group("symmetric:3").unwrap();
        let sp = ProbabilitySpace::uniform(6);
        let u = one(&sp);
        let fam = correlation_family(&g, &u, &u).unwrap();
        assert!(fam.members().iter().all(|e| e == &u));

        let c = build_group("cyclic:7").unwrap();
        let sp = ProbabilitySpace::uniform(7);
        let f2 = random_observable(&sp, 1, NormMode::LinfUnit);
        let f3 = random_observable(&sp, 2, NormMode::LinfUnit);
        let fam = correlation_family(&c, &f2, &f3).unwrap();
        for a in c.elements() {
            for x in 0..7u32 {
                let expected = f2.get(c.mult(c.inv(a), x) as usize) * f3.get(x as usize);
                assert!((fam.member(a).get(x as usize) - expected).norm() < 1e-15);
            }
            assert!(fam.member(a).linf_norm() <= f2.linf_norm() * f3.linf_norm() + 1e-15);
        }
        assert!(fam.sup_l2() <= f2.linf_norm() * f3.linf_norm() + 1e-15);
    }

    #[test]
    fn gram_identity_exhaustive_on_symmetric_3() {
        let g = build_group("symmetric:3").unwrap();
        let sp = ProbabilitySpace::uniform(6);
        let f2 = random_real_observable(&sp, 1);
        let f3 = random_real_observable(&sp, 2);
        for a in g.elements() {
            for b in g.elements() {
                for pairing in [Pairing::Bilinear, Pairing::Hermitian] {
                    assert!(gram_identity_check(&g, &f2, &f3, a, b, pairing).unwrap().discrepancy <= 1e-10);
                }
            }
        }
        // h = identity specializes to <f2^2, g ._r f3^2> for real inputs.
        let sq2 = f2.product(&sp, &f2).unwrap();
        let sq3 = f3.product(&sp, &f3).unwrap();
        let right = ActionTable::new(&g, ActionKind::Right).unwrap();
        for a in g.elements() {
            let c = gram_identity_check(&g, &f2, &f3, a, 0, Pairing::Bilinear).unwrap();
            let e = correlation_family(&g, &f2, &f3).unwrap();
            let norm_sq = e.member(a).l2_norm().powi(2);
            assert!((c.lhs - norm_sq).norm() < 1e-14);
            let expected = action::inner(&sp, &sq2, &koopman_apply(&right, a, &sq3).unwrap()).unwrap();
            assert!((c.rhs - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn gram_identity_holds_for_complex_inputs_too() {
        let g = build_group("dihedral:4").unwrap();
        let sp = ProbabilitySpace::uniform(8);
        let f2 = random_observable(&sp, 5, NormMode::LinfUnit);
        let f3 = random_observable(&sp, 6, NormMode::LinfUnit);
        for a in g.elements() {
            for b in g.elements() {
                for pairing in [Pairing::Bilinear, Pairing::Hermitian] {
                    assert!(gram_identity_check(&g, &f2, &f3, a, b, pairing).unwrap().discrepancy <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn vdc_constant_family_is_cauchy_schwarz() {
        let g = build_group("cyclic:6").unwrap();
        let sp = ProbabilitySpace::uniform(5);
        let e = random_observable(&sp, 1, NormMode::LinfUnit);
        let fam = VectorFamily::new(sp.clone(), vec![e.clone(); 6]).unwrap();
        let out = vdc_check(&g, &fam, &e, None).unwrap();
        assert!((out.epsilon_lhs - e.l2_norm().powi(2)).abs() < 1e-14);
        // f parallel to e: equality
        assert!((out.rhs_integral - out.bound).abs() < 1e-14 && out.pass);
        let f = random_observable(&sp, 2, NormMode::LinfUnit);
        assert!(vdc_check(&g, &fam, &f, None).unwrap().pass);
    }

    #[test]
    fn vdc_scaled_delta_family_is_tight() {
        for desc in ["cyclic:1", "symmetric:3", "dihedral:7", "sl2:5"] {
            let g = build_group(desc).unwrap();
            let n = g.order() as f64;
            let fam = scaled_delta_family(&g);
            let out = vdc_check(&g, &fam, &one(fam.space()), None).unwrap();
            assert!((out.epsilon_lhs - 1.0 / n).abs() < 1e-15, "{desc}");
            assert!((out.rhs_integral - 1.0 / n.sqrt()).abs() < 1e-12);
            assert!((out.rhs_integral - out.bound).abs() < 1e-10 && out.pass);
        }
    }

    #[test]
    fn vdc_passes_on_correlation_family_with_zero_projection() {
        let g = build_group("sl2:5").unwrap();
        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        let sp = conj.space().clone();
        let [f1, f2, raw3] = trial_triple(&sp, 8);
        let f3 = raw3.difference(&sp, &invariant_projection(&conj, &raw3).unwrap()).unwrap();
        let fam = correlation_family(&g, &f2, &f3).unwrap();
        let out = vdc_check(&g, &fam, &f1, None).unwrap();
        assert!(out.pass, "{out:?}");
        assert!(out.epsilon_lhs <= 5.0 * quasirandom_degree(&g).unwrap().epsilon() + 1e-12);
    }

    #[test]
    fn vdc_exact_limit_and_sampling() {
        let g = build_group("symmetric:6").unwrap();
        let sp = ProbabilitySpace::uniform(g.order());
        let fam = correlation_family(&g, &random_observable(&sp, 1, NormMode::LinfUnit), &one(&sp)).unwrap();
        let f = random_observable(&sp, 2, NormMode::LinfUnit);
        assert!(matches!(vdc_check(&g, &fam, &f, None), Err(Error::Precondition(_))));
        let a = vdc_check(&g, &fam, &f, Some((2000, 4))).unwrap();
        assert_eq!(a, vdc_check(&g, &fam, &f, Some((2000, 4))).unwrap());
    }

    /// Sequential projection subtraction (modified Gram-Schmidt).
    fn orthogonalize(space: &ProbabilitySpace, family: &[Observable]) -> Vec<Observable> {
        let mut out: Vec<Observable> = Vec::new();
        for v in family {
            let mut w = v.clone();
            for e in &out {
                let c = action::inner(space, &w, e).unwrap() / (e.l2_norm() * e.l2_norm());
                w = w.difference(space, &e.scaled(space, c)).unwrap();
            }
            if w.l2_norm() > 1e-8 {
                out.push(w);
            }
        }
        out
    }

    #[test]
    fn bessel_examples() {
        let sp = ProbabilitySpace::uniform(12);
        let f = random_observable(&sp, 4, NormMode::LinfUnit);
        let g = build_group("cyclic:12").unwrap();
        let basis = scaled_delta_family(&g);
        let out = bessel_check(&sp, basis.members(), &f).unwrap();
        assert!((out.sum_of_squares - out.norm_sq).abs() < 1e-12 && out.pass);

        let empty = bessel_check(&sp, &[], &f).unwrap();
        assert_eq!(empty.sum_of_squares, 0.0);
        assert!(empty.pass);

        let raw: Vec<Observable> = (0..7).map(|s| random_observable(&sp, 100 + s, NormMode::LinfUnit)).collect();
        let ortho = orthogonalize(&sp, &raw);
        assert_eq!(ortho.len(), 7);
        let out = bessel_check(&sp, &ortho, &f).unwrap();
        assert!(out.pass && out.sum_of_squares < out.norm_sq);

        let err = bessel_check(&sp, &raw, &f).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("members 0 and 1")));
    }
}
