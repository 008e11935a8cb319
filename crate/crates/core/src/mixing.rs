//! The ε-mixing error functional.
//!
//! For an action `a` and `f1, f2` in `L^2(X, nu)`,
//!
//! ```text
//! M(f1, f2) = (1/|G|) sum_g | <f1, g . f2> - <P f1, P f2> |
//! ```
//!
//! A D-quasirandom group satisfies `M(f1, f2) <= D^(-1/2) |f1|_2 |f2|_2` for
//! every measure-preserving action. This module evaluates `M` exactly or by
//! Monte Carlo over `g`, and checks the bound on seeded random pairs.

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::action::{self, invariant_projection, koopman_apply, ActionKind, ActionTable, NormMode, Observable, ProbabilitySpace};
use crate::sum::{CompensatedSum, ComplexSum};
use crate::{rng, Error, QuasirandomDegree, Result, BOUND_TOLERANCE, C64};

/// Exact evaluation is used up to this group order regardless of requests
/// for sampling.
pub const EXACT_MAX_ORDER: usize = 3000;

/// Normal quantile for a two-sided 99% interval.
pub const Z_99: f64 = 2.58;

pub const MIN_MC_SAMPLES: u64 = 30;

/// `<f1, g . f2>` without materializing the translate.
fn translated_inner(action: &ActionTable<'_>, f1: &Observable, f2: &Observable, g: u32) -> C64 {
    let space = action.space();
    let mut acc = ComplexSum::new();
    for x in 0..space.size() {
        let y = action.act_inverse(g, x as u32) as usize;
        acc.add(f1.get(x) * f2.get(y).conj() * space.weight(x));
    }
    acc.value()
}

fn reference_term(action: &ActionTable<'_>, f1: &Observable, f2: &Observable) -> Result<C64> {
    let p1 = invariant_projection(action, f1)?;
    let p2 = invariant_projection(action, f2)?;
    action::inner(action.space(), &p1, &p2)
}

/// Exact `M(f1, f2)`; cost `O(|G| |X|)`.
pub fn mixing_error(action: &ActionTable<'_>, f1: &Observable, f2: &Observable) -> Result<f64> {
    action.check(f1)?;
    action.check(f2)?;
    let reference = reference_term(action, f1, f2)?;
    let group = action.group();
    let total: CompensatedSum =
        group.elements().map(|g| (translated_inner(action, f1, f2, g) - reference).norm()).collect();
    Ok(total.value() / group.order() as f64)
}

/// Sample-mean estimate of `M(f1, f2)` with a 99% normal half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub ci_halfwidth: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Estimates `M(f1, f2)` from `samples` group elements drawn uniformly with
/// the seeded generator; the half-width is `2.58 s / sqrt(n)` with `s` the
/// sample standard deviation.
pub fn monte_carlo_mixing_error(
    action: &ActionTable<'_>,
    f1: &Observable,
    f2: &Observable,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Precondition(alloc::format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {samples}"
        )));
    }
    action.check(f1)?;
    action.check(f2)?;
    let reference = reference_term(action, f1, f2)?;
    let n = action.group().order() as u32;
    let mut r = rng::rng_from_seed(seed);
    let values: Vec<f64> = (0..samples)
        .map(|_| (translated_inner(action, f1, f2, r.gen_range(0..n)) - reference).norm())
        .collect();
    let estimate = crate::sum::mean(&values);
    let var = values.iter().map(|v| (v - estimate) * (v - estimate)).collect::<CompensatedSum>().value()
        / (samples - 1) as f64;
    Ok(MonteCarloEstimate {
        estimate,
        ci_halfwidth: Z_99 * var.sqrt() / (samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// `D^(-1/2) |f1|_2 |f2|_2`.
pub fn mixing_bound(degree: QuasirandomDegree, f1: &Observable, f2: &Observable) -> f64 {
    degree.epsilon() * f1.l2_norm() * f2.l2_norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Evaluation {
    Exact,
    MonteCarlo { samples: u64, seed: u64, ci_halfwidth: f64 },
}

impl Evaluation {
    pub fn name(&self) -> &'static str {
        match self {
            Evaluation::Exact => "exact",
            Evaluation::MonteCarlo { .. } => "monte_carlo",
        }
    }

    pub fn ci_halfwidth(&self) -> Option<f64> {
        match self {
            Evaluation::Exact => None,
            Evaluation::MonteCarlo { ci_halfwidth, .. } => Some(*ci_halfwidth),
        }
    }
}

/// One checked pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingReport {
    pub group: String,
    pub order: usize,
    pub action: ActionKind,
    pub degree: QuasirandomDegree,
    pub trial: u64,
    /// Seed of this trial's observables.
    pub seed: u64,
    pub bound: f64,
    pub measured: f64,
    pub evaluation: Evaluation,
    pub pass: bool,
}

/// Seeds of the two observables of a trial.
pub fn pair_seeds(trial_seed: u64) -> (u64, u64) {
    (rng::splitmix64(trial_seed), rng::splitmix64(trial_seed ^ 0x5555_5555_5555_5555))
}

/// Random pair `(f1, f2)` for a trial, both `linf_unit`.
pub fn trial_pair(space: &ProbabilitySpace, trial_seed: u64) -> (Observable, Observable) {
    let (s1, s2) = pair_seeds(trial_seed);
    (
        action::random_observable(space, s1, NormMode::LinfUnit),
        action::random_observable(space, s2, NormMode::LinfUnit),
    )
}

/// Evaluates one pair against the D^(-1/2) bound.
///
/// `mc_samples` is honored only above [`EXACT_MAX_ORDER`].
pub fn check_pair(
    action: &ActionTable<'_>,
    degree: QuasirandomDegree,
    f1: &Observable,
    f2: &Observable,
    mc_samples: Option<u64>,
    mc_seed: u64,
) -> Result<(f64, f64, Evaluation)> {
    let bound = mixing_bound(degree, f1, f2);
    let (measured, evaluation) = match mc_samples {
        Some(samples) if action.group().order() > EXACT_MAX_ORDER => {
            let est = monte_carlo_mixing_error(action, f1, f2, samples, mc_seed)?;
            (est.estimate, Evaluation::MonteCarlo { samples, seed: mc_seed, ci_halfwidth: est.ci_halfwidth })
        }
        _ => (mixing_error(action, f1, f2)?, Evaluation::Exact),
    };
    Ok((bound, measured, evaluation))
}

/// Checks `trials` seeded `linf_unit` pairs. Trial `t` uses the seed
/// `derive_seed(seed, group, "mixing-<action>", t)`.
pub fn mixing_bound_check(
    action: &ActionTable<'_>,
    degree: QuasirandomDegree,
    trials: u64,
    seed: u64,
    mc_samples: Option<u64>,
) -> Result<Vec<MixingReport>> {
    let group = action.group().descriptor();
    let experiment = alloc::format!("mixing-{}", action.kind());
    (0..trials)
        .map(|trial| {
            let trial_seed = rng::derive_seed(seed, &group, &experiment, trial);
            let (f1, f2) = trial_pair(action.space(), trial_seed);
            let (bound, measured, evaluation) =
                check_pair(action, degree, &f1, &f2, mc_samples, rng::splitmix64(trial_seed ^ 0xa5a5))?;
            Ok(MixingReport {
                group: group.clone(),
                order: action.group().order(),
                action: action.kind(),
                degree,
                trial,
                seed: trial_seed,
                bound,
                measured,
                evaluation,
                pass: measured <= bound + BOUND_TOLERANCE,
            })
        })
        .collect()
}

/// Both sides of `<f1, g . f2>_X = int_X <f1^(x), g ._r f2^(x)>_G dnu(x)`
/// with fibers `f^(x)(h) = (h . f)(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionCheck {
    pub lhs: C64,
    pub rhs: C64,
    pub discrepancy: f64,
}

/// Computes the left side on `X` and the right side by building every fiber
/// observable on `G` and applying the right-translation Koopman operator.
pub fn reduction_identity_check(
    action: &ActionTable<'_>,
    f1: &Observable,
    f2: &Observable,
    g: u32,
) -> Result<ReductionCheck> {
    let space = action.space();
    let lhs = action::inner(space, f1, &koopman_apply(action, g, f2)?)?;
    let group = action.group();
    let right = ActionTable::new(group, ActionKind::Right)?;
    let gspace = right.space();
    let fiber = |f: &Observable, x: u32| {
        Observable::from_fn(gspace, |h| f.get(action.act(group.inv(h as u32), x) as usize))
    };
    let mut acc = ComplexSum::new();
    for x in 0..space.size() as u32 {
        let f1x = fiber(f1, x);
        let f2x = koopman_apply(&right, g, &fiber(f2, x))?;
        acc.add(action::inner(gspace, &f1x, &f2x)? * space.weight(x as usize));
    }
    let rhs = acc.value();
    Ok(ReductionCheck { lhs, rhs, discrepancy: (lhs - rhs).norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{random_observable, ActionKind};
    use crate::character::quasirandom_degree;
    use crate::group::build_group;
    use core::f64::consts::TAU;

    #[test]
    fn constant_second_argument_gives_zero() {
        let g = build_group("symmetric:4").unwrap();
        for kind in ActionKind::BUILT_IN {
            let a = ActionTable::new(&g, kind).unwrap();
            let f1 = random_observable(a.space(), 1, NormMode::LinfUnit);
            let c = Observable::constant(a.space(), C64::new(0.3, -0.7));
            assert!(mixing_error(&a, &f1, &c).unwrap() < 1e-15);
            let mc = monte_carlo_mixing_error(&a, &f1, &c, 50, 4).unwrap();
            assert!(mc.estimate < 1e-15 && mc.ci_halfwidth < 1e-15);
        }
    }

    #[test]
    fn cyclic_character_is_an_equality_case() {
        for n in [5usize, 8, 12] {
            let g = build_group(&alloc::format!("cyclic:{n}")).unwrap();
            let a = ActionTable::new(&g, ActionKind::Left).unwrap();
            let chi = Observable::from_fn(a.space(), |x| C64::from_polar(1.0, TAU * x as f64 / n as f64));
            let m = mixing_error(&a, &chi, &chi).unwrap();
            assert!((m - 1.0).abs() < 1e-12, "{m}");
            assert!((mixing_bound(QuasirandomDegree::Finite(1), &chi, &chi) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sl2_5_right_translation_respects_bound() {
        let g = build_group("sl2:5").unwrap();
        let d = quasirandom_degree(&g).unwrap();
        assert_eq!(d, QuasirandomDegree::Finite(2));
        let a = ActionTable::new(&g, ActionKind::Right).unwrap();
        let reports = mixing_bound_check(&a, d, 10, 17, None).unwrap();
        assert!(reports.iter().all(|r| r.pass && r.evaluation == Evaluation::Exact));
        assert!(reports.iter().all(|r| r.measured > 0.0));
    }

    #[test]
    fn trivial_action_has_zero_error() {
        let g = build_group("symmetric:3").unwrap();
        let a = ActionTable::trivial(&g, ProbabilitySpace::uniform(4)).unwrap();
        let d = quasirandom_degree(&g).unwrap();
        for r in mixing_bound_check(&a, d, 5, 3, None).unwrap() {
            assert!(r.measured < 1e-15 && r.pass);
        }
    }

    #[test]
    fn homogeneity_and_ceiling() {
        let g = build_group("dihedral:6").unwrap();
        for kind in ActionKind::BUILT_IN {
            let a = ActionTable::new(&g, kind).unwrap();
            let sp = a.space();
            let f1 = random_observable(sp, 10, NormMode::LinfUnit);
            let f2 = random_observable(sp, 11, NormMode::LinfUnit);
            let m = mixing_error(&a, &f1, &f2).unwrap();
            let c = C64::new(-1.5, 2.0);
            let scaled = mixing_error(&a, &f1.scaled(sp, c), &f2).unwrap();
            assert!((scaled - c.norm() * m).abs() < 1e-10);
            let p1 = invariant_projection(&a, &f1).unwrap();
            assert!(m <= (f1.l2_norm() + p1.l2_norm()) * f2.l2_norm() + 1e-12);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_validated() {
        let g = build_group("cyclic:64").unwrap();
        let a = ActionTable::new(&g, ActionKind::Left).unwrap();
        let f1 = random_observable(a.space(), 1, NormMode::LinfUnit);
        let f2 = random_observable(a.space(), 2, NormMode::LinfUnit);
        let x = monte_carlo_mixing_error(&a, &f1, &f2, 100, 9).unwrap();
        assert_eq!(x, monte_carlo_mixing_error(&a, &f1, &f2, 100, 9).unwrap());
        assert!(monte_carlo_mixing_error(&a, &f1, &f2, 29, 9).is_err());
    }

    #[test]
    fn exact_mode_is_forced_for_small_groups() {
        let g = build_group("cyclic:100").unwrap();
        let a = ActionTable::new(&g, ActionKind::Left).unwrap();
        let reports = mixing_bound_check(&a, QuasirandomDegree::Finite(1), 2, 0, Some(64)).unwrap();
        assert!(reports.iter().all(|r| r.evaluation == Evaluation::Exact));
    }

    #[test]
    fn reduction_identity_examples() {
        let g = build_group("symmetric:3").unwrap();
        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        let sp = conj.space();
        let f1 = random_observable(sp, 21, NormMode::LinfUnit);
        let f2 = random_observable(sp, 22, NormMode::LinfUnit);
        let base = action::inner(sp, &f1, &f2).unwrap();
        let at_identity = reduction_identity_check(&conj, &f1, &f2, g.identity()).unwrap();
        assert!((at_identity.lhs - base).norm() < 1e-14 && at_identity.discrepancy < 1e-14);
        for h in g.elements() {
            assert!(reduction_identity_check(&conj, &f1, &f2, h).unwrap().discrepancy <= 1e-10);
        }
        let one = Observable::constant(sp, C64::new(1.0, 0.0));
        let r = reduction_identity_check(&conj, &one, &one, 3).unwrap();
        assert!((r.lhs - 1.0).norm() < 1e-14 && (r.rhs - 1.0).norm() < 1e-14);
    }

    #[test]
    fn reduction_identity_for_custom_action() {
        let c3 = build_group("cyclic:3").unwrap();
        let sp = ProbabilitySpace::with_weights(alloc::vec![0.2, 0.2, 0.2, 0.4]).unwrap();
        // rotate the first three points, fix the heavy one
        let table = alloc::vec![0, 1, 2, 3, 1, 2, 0, 3, 2, 0, 1, 3];
        let a = ActionTable::custom(&c3, sp, table).unwrap();
        let f1 = random_observable(a.space(), 1, NormMode::LinfUnit);
        let f2 = random_observable(a.space(), 2, NormMode::LinfUnit);
        for g in c3.elements() {
            assert!(reduction_identity_check(&a, &f1, &f2, g).unwrap().discrepancy <= 1e-12);
        }
    }
}
