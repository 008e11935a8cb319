//! Measure-preserving actions on finite probability spaces.
//!
//! An action `a : G x X -> X` induces the Koopman representation
//! `(g . f)(x) = f(g^-1 . x)` on `L^2(X, nu)`. Its invariant projection is
//! the group average of Koopman translates,
//! `P_a f (x) = (1/|G|) sum_g f(g^-1 . x)`,
//! which on a finite set is the plain average of `f` over the orbit of `x`
//! (every point of an orbit is hit by the same number of group elements).
//!
//! Inner products are conjugate-linear in the second argument:
//! `<f1, f2> = sum_x f1(x) conj(f2(x)) nu(x)`.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng as _;

use crate::conjugacy::conjugacy_classes;
use crate::sum::{CompensatedSum, ComplexSum};
use crate::{rng, Error, GroupTable, Result, C64};

/// Tolerance on the total mass of a probability space.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// A finite probability space `(X, nu)` on the points `0..size`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilitySpace {
    weights: Vec<f64>,
}

impl ProbabilitySpace {
    pub fn uniform(size: usize) -> Self {
        Self { weights: vec![1.0 / size as f64; size] }
    }

    pub fn with_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Precondition("empty probability space".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::Precondition(format!("invalid weight {w}")));
        }
        let total = weights.iter().copied().collect::<CompensatedSum>().value();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::Precondition(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    #[inline]
    pub fn weight(&self, x: usize) -> f64 {
        self.weights[x]
    }

    fn check(&self, f: &Observable) -> Result<()> {
        if f.len() != self.size() {
            return Err(Error::DimensionMismatch { expected: self.size(), actual: f.len() });
        }
        Ok(())
    }
}

/// A complex-valued function on a probability space, with its norms cached.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    values: Vec<C64>,
    l2: f64,
    linf: f64,
}

impl Observable {
    pub fn new(space: &ProbabilitySpace, values: Vec<C64>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::DimensionMismatch { expected: space.size(), actual: values.len() });
        }
        let l2 = values
            .iter()
            .zip(space.weights())
            .map(|(z, w)| z.norm_sqr() * w)
            .collect::<CompensatedSum>()
            .value()
            .sqrt();
        let linf = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        Ok(Self { values, l2, linf })
    }

    pub fn from_real(space: &ProbabilitySpace, values: &[f64]) -> Result<Self> {
        Self::new(space, values.iter().map(|&r| C64::new(r, 0.0)).collect())
    }

    pub fn constant(space: &ProbabilitySpace, c: C64) -> Self {
        Self::new(space, vec![c; space.size()]).expect("length matches by construction")
    }

    pub fn from_fn(space: &ProbabilitySpace, f: impl FnMut(usize) -> C64) -> Self {
        Self::new(space, (0..space.size()).map(f).collect()).expect("length matches by construction")
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize) -> C64 {
        self.values[x]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2
    }

    pub fn linf_norm(&self) -> f64 {
        self.linf
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|z| z.im == 0.0)
    }

    pub fn scaled(&self, space: &ProbabilitySpace, c: C64) -> Self {
        Self::from_fn(space, |x| self.values[x] * c)
    }

    /// Pointwise product (no conjugation).
    pub fn product(&self, space: &ProbabilitySpace, other: &Observable) -> Result<Self> {
        space.check(other)?;
        Ok(Self::from_fn(space, |x| self.values[x] * other.values[x]))
    }

    pub fn difference(&self, space: &ProbabilitySpace, other: &Observable) -> Result<Self> {
        space.check(other)?;
        Ok(Self::from_fn(space, |x| self.values[x] - other.values[x]))
    }

    pub fn conj(&self, space: &ProbabilitySpace) -> Self {
        Self::from_fn(space, |x| self.values[x].conj())
    }
}

/// `<f1, f2> = sum_x f1(x) conj(f2(x)) nu(x)`, compensated, in point order.
pub fn inner(space: &ProbabilitySpace, f1: &Observable, f2: &Observable) -> Result<C64> {
    space.check(f1)?;
    space.check(f2)?;
    let mut acc = ComplexSum::new();
    for x in 0..space.size() {
        acc.add(f1.values[x] * f2.values[x].conj() * space.weights[x]);
    }
    Ok(acc.value())
}

/// `int f dnu = <f, 1>`.
pub fn mean(space: &ProbabilitySpace, f: &Observable) -> Result<C64> {
    space.check(f)?;
    Ok(f.values.iter().zip(&space.weights).map(|(z, w)| z * w).collect::<ComplexSum>().value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormMode {
    /// Values uniform in the closed complex unit disc.
    LinfUnit,
    /// As `LinfUnit`, rescaled to unit L^2 norm.
    L2Unit,
}

fn unit_disc_sample(r: &mut rng::Rng) -> C64 {
    loop {
        let z = C64::new(r.gen_range(-1.0..=1.0), r.gen_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

/// Seeded random test function.
pub fn random_observable(space: &ProbabilitySpace, seed: u64, mode: NormMode) -> Observable {
    let mut r = rng::rng_from_seed(seed);
    let f = Observable::from_fn(space, |_| unit_disc_sample(&mut r));
    match mode {
        NormMode::LinfUnit => f,
        NormMode::L2Unit if f.l2 > 0.0 => f.scaled(space, C64::new(1.0 / f.l2, 0.0)),
        NormMode::L2Unit => Observable::constant(space, C64::new(1.0, 0.0)),
    }
}

/// Seeded real-valued test function with values uniform in `[-1, 1]`.
pub fn random_real_observable(space: &ProbabilitySpace, seed: u64) -> Observable {
    let mut r = rng::rng_from_seed(seed);
    Observable::from_fn(space, |_| C64::new(r.gen_range(-1.0..=1.0), 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// `g . x = g x`
    Left,
    /// `g . x = x g^-1`
    Right,
    /// `g . x = g x g^-1`
    Conjugation,
    /// An explicit table `act[g][x]`.
    Custom,
}

impl ActionKind {
    pub const BUILT_IN: [ActionKind; 3] = [ActionKind::Right, ActionKind::Left, ActionKind::Conjugation];

    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Left => "left",
            ActionKind::Right => "right",
            ActionKind::Conjugation => "conjugation",
            ActionKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(ActionKind::Left),
            "right" => Ok(ActionKind::Right),
            "conjugation" | "conj" => Ok(ActionKind::Conjugation),
            other => Err(Error::Precondition(format!("unknown action kind {other:?}"))),
        }
    }
}

/// A measure-preserving action of a finite group on a finite probability space.
#[derive(Debug, Clone)]
pub struct ActionTable<'g> {
    group: &'g GroupTable,
    space: ProbabilitySpace,
    kind: ActionKind,
    table: Option<Vec<u32>>,
    orbit_of: Vec<u32>,
    orbit_sizes: Vec<u64>,
}

impl<'g> ActionTable<'g> {
    /// Left, right or conjugation action of `group` on itself with uniform measure.
    pub fn new(group: &'g GroupTable, kind: ActionKind) -> Result<Self> {
        let n = group.order();
        let (orbit_of, orbit_sizes) = match kind {
            ActionKind::Left | ActionKind::Right => (vec![0; n], vec![n as u64]),
            ActionKind::Conjugation => {
                let classes = conjugacy_classes(group);
                let of = group.elements().map(|g| classes.class_of(g) as u32).collect();
                (of, classes.class_sizes().to_vec())
            }
            ActionKind::Custom => {
                return Err(Error::InvalidAction("use ActionTable::custom for explicit tables".into()))
            }
        };
        Ok(Self { group, space: ProbabilitySpace::uniform(n), kind, table: None, orbit_of, orbit_sizes })
    }

    /// An explicit action `table[g * |X| + x] = g . x`, validated exhaustively:
    /// identity acts trivially, `(gh) . x = g . (h . x)`, every `g` acts
    /// bijectively and `nu(g . x) = nu(x)`.
    pub fn custom(group: &'g GroupTable, space: ProbabilitySpace, table: Vec<u32>) -> Result<Self> {
        let n = group.order();
        let m = space.size();
        if table.len() != n * m {
            return Err(Error::InvalidAction(format!("table has {} entries, expected {}", table.len(), n * m)));
        }
        if let Some(bad) = table.iter().find(|&&y| y as usize >= m) {
            return Err(Error::InvalidAction(format!("point {bad} out of range")));
        }
        let act = |g: u32, x: u32| table[g as usize * m + x as usize];
        let e = group.identity();
        if let Some(x) = (0..m as u32).find(|&x| act(e, x) != x) {
            return Err(Error::InvalidAction(format!("identity moves point {x}")));
        }
        for g in group.elements() {
            let mut hit = vec![false; m];
            for x in 0..m as u32 {
                let y = act(g, x);
                if core::mem::replace(&mut hit[y as usize], true) {
                    return Err(Error::InvalidAction(format!("element {g} is not a bijection")));
                }
                if (space.weight(x as usize) - space.weight(y as usize)).abs() > MASS_TOLERANCE {
                    return Err(Error::InvalidAction(format!("element {g} does not preserve the measure at {x}")));
                }
            }
            for h in group.elements() {
                let gh = group.mult(g, h);
                if let Some(x) = (0..m as u32).find(|&x| act(gh, x) != act(g, act(h, x))) {
                    return Err(Error::InvalidAction(format!("(g h) . x != g . (h . x) at g={g}, h={h}, x={x}")));
                }
            }
        }
        let mut orbit_of = vec![u32::MAX; m];
        let mut orbit_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..m as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let id = orbit_sizes.len() as u32;
            orbit_of[start as usize] = id;
            queue.push_back(start);
            let mut size = 0;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for &s in group.generators() {
                    let y = act(s, x);
                    if orbit_of[y as usize] == u32::MAX {
                        orbit_of[y as usize] = id;
                        queue.push_back(y);
                    }
                }
            }
            orbit_sizes.push(size);
        }
        Ok(Self { group, space, kind: ActionKind::Custom, table: Some(table), orbit_of, orbit_sizes })
    }

    /// Every element fixes every point.
    pub fn trivial(group: &'g GroupTable, space: ProbabilitySpace) -> Result<Self> {
        let m = space.size() as u32;
        let table = (0..group.order()).flat_map(|_| 0..m).collect();
        Self::custom(group, space, table)
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn space(&self) -> &ProbabilitySpace {
        &self.space
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    #[inline]
    pub fn act(&self, g: u32, x: u32) -> u32 {
        let grp = self.group;
        match self.kind {
            ActionKind::Left => grp.mult(g, x),
            ActionKind::Right => grp.mult(x, grp.inv(g)),
            ActionKind::Conjugation => grp.conjugate(g, x),
            ActionKind::Custom => self.table.as_ref().expect("custom table")[g as usize * self.space.size() + x as usize],
        }
    }

    /// `g^-1 . x`, the point read by the Koopman operator of `g`.
    #[inline]
    pub fn act_inverse(&self, g: u32, x: u32) -> u32 {
        let grp = self.group;
        match self.kind {
            ActionKind::Left => grp.mult(grp.inv(g), x),
            ActionKind::Right => grp.mult(x, g),
            ActionKind::Conjugation => grp.mult(grp.mult(grp.inv(g), x), g),
            ActionKind::Custom => self.act(grp.inv(g), x),
        }
    }

    pub fn orbit_count(&self) -> usize {
        self.orbit_sizes.len()
    }

    pub fn orbit_of(&self, x: u32) -> usize {
        self.orbit_of[x as usize] as usize
    }

    pub fn check(&self, f: &Observable) -> Result<()> {
        self.space.check(f)
    }
}

/// `(g . f)(x) = f(g^-1 . x)`.
pub fn koopman_apply(action: &ActionTable<'_>, g: u32, f: &Observable) -> Result<Observable> {
    action.check(f)?;
    Ok(Observable::from_fn(&action.space, |x| f.values[action.act_inverse(g, x as u32) as usize]))
}

/// The invariant projection `P_a f`, as orbit averages.
pub fn invariant_projection(action: &ActionTable<'_>, f: &Observable) -> Result<Observable> {
    action.check(f)?;
    let mut sums = vec![ComplexSum::new(); action.orbit_count()];
    for (x, z) in f.values.iter().enumerate() {
        sums[action.orbit_of[x] as usize].add(*z);
    }
    let averages: Vec<C64> =
        sums.iter().zip(&action.orbit_sizes).map(|(s, &n)| s.value() / n as f64).collect();
    Ok(Observable::from_fn(&action.space, |x| averages[action.orbit_of[x] as usize]))
}

/// `P_a f (x) = (1/|G|) sum_g f(g^-1 . x)` summed literally over the group;
/// `O(|G| |X|)`.
pub fn invariant_projection_averaged(action: &ActionTable<'_>, f: &Observable) -> Result<Observable> {
    action.check(f)?;
    let n = action.group.order() as f64;
    Ok(Observable::from_fn(&action.space, |x| {
        let mut acc = ComplexSum::new();
        for g in action.group.elements() {
            acc.add(f.values[action.act_inverse(g, x as u32) as usize]);
        }
        acc.value() / n
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use core::f64::consts::TAU;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn character(space: &ProbabilitySpace, n: usize, k: usize) -> Observable {
        Observable::from_fn(space, |x| C64::from_polar(1.0, TAU * (k * x) as f64 / n as f64))
    }

    #[test]
    fn built_in_formulas() {
        let g = build_group("cyclic:6").unwrap();
        let left = ActionTable::new(&g, ActionKind::Left).unwrap();
        assert_eq!(left.act(2, 3), 5);
        let s3 = build_group("symmetric:3").unwrap();
        let right = ActionTable::new(&s3, ActionKind::Right).unwrap();
        for a in s3.elements() {
            for x in s3.elements() {
                assert_eq!(right.act(a, x), s3.mult(x, s3.inv(a)));
                assert_eq!(right.act_inverse(a, x), right.act(s3.inv(a), x));
            }
        }
        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        assert!(g.elements().all(|a| g.elements().all(|x| conj.act(a, x) == x)));
    }

    #[test]
    fn action_axioms_hold_for_built_ins() {
        let g = build_group("dihedral:5").unwrap();
        for kind in ActionKind::BUILT_IN {
            let a = ActionTable::new(&g, kind).unwrap();
            for x in g.elements() {
                assert_eq!(a.act(g.identity(), x), x);
                for h in g.elements() {
                    for k in g.elements() {
                        assert_eq!(a.act(g.mult(h, k), x), a.act(h, a.act(k, x)));
                    }
                }
            }
        }
    }

    #[test]
    fn koopman_examples() {
        let g = build_group("cyclic:5").unwrap();
        let a = ActionTable::new(&g, ActionKind::Left).unwrap();
        let sp = a.space().clone();
        let delta0 = Observable::from_fn(&sp, |x| C64::new(f64::from(u8::from(x == 0)), 0.0));
        let delta1 = Observable::from_fn(&sp, |x| C64::new(f64::from(u8::from(x == 1)), 0.0));
        assert_eq!(koopman_apply(&a, 1, &delta0).unwrap(), delta1);
        let f = random_observable(&sp, 3, NormMode::LinfUnit);
        assert_eq!(koopman_apply(&a, 0, &f).unwrap(), f);

        let s4 = build_group("symmetric:4").unwrap();
        let conj = ActionTable::new(&s4, ActionKind::Conjugation).unwrap();
        let classes = conjugacy_classes(&s4);
        let class_fn = Observable::from_fn(conj.space(), |x| C64::new(classes.class_of(x as u32) as f64, 1.0));
        for h in s4.elements() {
            assert_eq!(koopman_apply(&conj, h, &class_fn).unwrap(), class_fn);
        }
    }

    #[test]
    fn koopman_is_unitary() {
        let g = build_group("psl2:5").unwrap();
        for kind in ActionKind::BUILT_IN {
            let a = ActionTable::new(&g, kind).unwrap();
            let sp = a.space();
            let f1 = random_observable(sp, 1, NormMode::LinfUnit);
            let f2 = random_observable(sp, 2, NormMode::LinfUnit);
            let base = inner(sp, &f1, &f2).unwrap();
            for h in g.elements().step_by(5) {
                let t1 = koopman_apply(&a, h, &f1).unwrap();
                let t2 = koopman_apply(&a, h, &f2).unwrap();
                assert!(close(inner(sp, &t1, &t2).unwrap(), base, 1e-14));
                assert!((t1.l2_norm() - f1.l2_norm()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn projection_examples() {
        let g = build_group("symmetric:4").unwrap();
        let left = ActionTable::new(&g, ActionKind::Left).unwrap();
        let sp = left.space().clone();
        let f = random_observable(&sp, 9, NormMode::LinfUnit);
        let p = invariant_projection(&left, &f).unwrap();
        let m = mean(&sp, &f).unwrap();
        assert!(p.values().iter().all(|&z| close(z, m, 1e-14)));

        let conj = ActionTable::new(&g, ActionKind::Conjugation).unwrap();
        let classes = conjugacy_classes(&g);
        let pc = invariant_projection(&conj, &f).unwrap();
        let direct = invariant_projection_averaged(&conj, &f).unwrap();
        for x in g.elements() {
            assert!(close(pc.get(x as usize), direct.get(x as usize), 1e-14));
            // constant on classes
            let rep = classes.representatives()[classes.class_of(x)];
            assert!(close(pc.get(x as usize), pc.get(rep as usize), 1e-14));
        }
        // already invariant
        let again = invariant_projection(&conj, &pc).unwrap();
        assert!(again.values().iter().zip(pc.values()).all(|(a, b)| close(*a, *b, 1e-14)));
    }

    #[test]
    fn character_orthogonality_on_cyclic() {
        let n = 12;
        let sp = ProbabilitySpace::uniform(n);
        for i in 0..n {
            for j in 0..n {
                let v = inner(&sp, &character(&sp, n, i), &character(&sp, n, j)).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(close(v, C64::new(expected, 0.0), 1e-14), "{i} {j} {v}");
            }
        }
    }

    #[test]
    fn inner_against_one_is_the_mean() {
        let sp = ProbabilitySpace::with_weights(vec![0.5, 0.25, 0.125, 0.125]).unwrap();
        let f = Observable::new(&sp, vec![C64::new(1.0, 2.0), C64::new(-2.0, 0.0), C64::new(0.0, 4.0), C64::new(8.0, 0.0)]).unwrap();
        let one = Observable::constant(&sp, C64::new(1.0, 0.0));
        let expected = C64::new(0.5 - 0.5 + 1.0, 1.0 + 0.5);
        assert!(close(inner(&sp, &f, &one).unwrap(), expected, 1e-15));
        assert!(close(inner(&sp, &one, &f).unwrap(), expected.conj(), 1e-15));
        let ff = inner(&sp, &f, &f).unwrap();
        assert!(ff.im == 0.0 && (ff.re - f.l2_norm().powi(2)).abs() < 1e-13);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = ProbabilitySpace::uniform(3);
        let b = ProbabilitySpace::uniform(4);
        let f = Observable::constant(&a, C64::new(1.0, 0.0));
        let h = Observable::constant(&b, C64::new(1.0, 0.0));
        assert_eq!(inner(&a, &f, &h), Err(Error::DimensionMismatch { expected: 3, actual: 4 }));
        assert!(Observable::new(&a, vec![C64::new(0.0, 0.0)]).is_err());
    }

    #[test]
    fn random_observable_modes() {
        let sp = ProbabilitySpace::uniform(200);
        let a = random_observable(&sp, 5, NormMode::LinfUnit);
        assert_eq!(a, random_observable(&sp, 5, NormMode::LinfUnit));
        assert_ne!(a, random_observable(&sp, 6, NormMode::LinfUnit));
        assert!(a.linf_norm() <= 1.0);
        let b = random_observable(&sp, 5, NormMode::L2Unit);
        assert!((b.l2_norm() - 1.0).abs() <= 1e-12);
        let r = random_real_observable(&sp, 5);
        assert!(r.is_real() && r.linf_norm() <= 1.0);
    }

    #[test]
    fn probability_space_validation() {
        assert!(ProbabilitySpace::with_weights(vec![0.5, 0.6]).is_err());
        assert!(ProbabilitySpace::with_weights(vec![1.5, -0.5]).is_err());
        assert!(ProbabilitySpace::with_weights(vec![]).is_err());
        assert!(ProbabilitySpace::with_weights(vec![0.25; 4]).is_ok());
    }

    #[test]
    fn custom_action_validation() {
        let c2 = build_group("cyclic:2").unwrap();
        // C2 swapping two points of equal weight, fixing a third.
        let sp = ProbabilitySpace::with_weights(vec![0.25, 0.25, 0.5]).unwrap();
        let swap = ActionTable::custom(&c2, sp.clone(), vec![0, 1, 2, 1, 0, 2]).unwrap();
        assert_eq!(swap.orbit_count(), 2);
        let f = Observable::from_real(&sp, &[1.0, 3.0, 5.0]).unwrap();
        let p = invariant_projection(&swap, &f).unwrap();
        assert_eq!(p.values(), &[C64::new(2.0, 0.0), C64::new(2.0, 0.0), C64::new(5.0, 0.0)]);
        assert_eq!(p, invariant_projection_averaged(&swap, &f).unwrap());

        // Moving mass between unequal weights is rejected.
        assert!(ActionTable::custom(&c2, sp.clone(), vec![0, 1, 2, 2, 1, 0]).is_err());
        // Identity must act trivially.
        assert!(ActionTable::custom(&c2, sp.clone(), vec![1, 0, 2, 1, 0, 2]).is_err());
        // Not a homomorphism: the generator squares to a nontrivial map.
        let c3 = build_group("cyclic:3").unwrap();
        let u = ProbabilitySpace::uniform(3);
        assert!(ActionTable::custom(&c3, u.clone(), vec![0, 1, 2, 1, 0, 2, 1, 0, 2]).is_err());
        assert!(ActionTable::custom(&c3, u, vec![0, 1, 2, 1, 2, 0, 2, 0, 1]).is_ok());
        assert!(ActionTable::trivial(&c3, sp).is_ok());
    }
}
