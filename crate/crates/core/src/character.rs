//! Irreducible character degrees and the quasirandomness degree.
//!
//! Degrees are computed exactly, without character values, by Dixon's modular
//! method:
//!
//! 1. pick the smallest prime `q = 1 (mod exp G)` with `q > 2 sqrt|G|`;
//! 2. the class-sum matrices `M_i[j][l] = a[i][j][l]` commute and are
//!    simultaneously diagonalizable over F_q; each common eigenvector is
//!    proportional to a central character `w(C_l) = |C_l| chi(g_l) / chi(1)`;
//! 3. with `w` normalized at the identity class,
//!    `chi(1)^2 * sum_j w(C_j) w(C_j^-1) / |C_j| = |G|` holds in F_q, and the
//!    degree is the unique root of `d^2` in `(0, sqrt|G|]`.
//!
//! The common eigenspaces are split by running through `M_1, M_2, ...` in
//! class order, so the splitting tree is deterministic.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::conjugacy::{conjugacy_classes, ConjugacyData};
use crate::modular::{self, Fq};
use crate::{Error, GroupTable, Result};

pub const MAX_CLASSES: usize = 512;

/// Class-algebra structure constants:
/// `a[i][j][l] = #{(x, y) : x in C_i, y in C_j, xy = z}` for a fixed `z` in `C_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassConstants {
    k: usize,
    a: Vec<u32>,
}

impl ClassConstants {
    pub fn class_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.a[(i * self.k + j) * self.k + l]
    }
}

/// Counts, for each class `l` and its representative `z`, the factorizations
/// `z = x * (x^-1 z)`; cost `O(k |G|)`.
pub fn class_constants(group: &GroupTable, classes: &ConjugacyData) -> ClassConstants {
    let k = classes.class_count();
    let mut a = vec![0u32; k * k * k];
    for (l, &z) in classes.representatives().iter().enumerate() {
        for x in group.elements() {
            let y = group.mult(group.inv(x), z);
            a[(classes.class_of(x) * k + classes.class_of(y)) * k + l] += 1;
        }
    }
    ClassConstants { k, a }
}

/// Degrees of the irreducible complex representations, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMultiset {
    degrees: Vec<u64>,
    group_order: u64,
}

impl DegreeMultiset {
    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn sum_of_squares(&self) -> u64 {
        self.degrees.iter().map(|d| d * d).sum()
    }

    /// Smallest degree of a nontrivial irreducible.
    pub fn quasirandom_degree(&self) -> QuasirandomDegree {
        match self.degrees.get(1) {
            Some(&d) => QuasirandomDegree::Finite(d),
            None => QuasirandomDegree::Unbounded,
        }
    }
}

/// The largest `D` for which a group is D-quasirandom.
///
/// The trivial group has no nontrivial irreducibles and is D-quasirandom for
/// every `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuasirandomDegree {
    Finite(u64),
    Unbounded,
}

impl QuasirandomDegree {
    pub fn value(self) -> Option<u64> {
        match self {
            Self::Finite(d) => Some(d),
            Self::Unbounded => None,
        }
    }

    /// Mixing constant `D^(-1/2)`; zero when unbounded.
    pub fn epsilon(self) -> f64 {
        match self {
            Self::Finite(d) => 1.0 / (d as f64).sqrt(),
            Self::Unbounded => 0.0,
        }
    }

    /// `D + offset`, used to plant faults in verification runs.
    pub fn inflated(self, offset: u64) -> Self {
        match self {
            Self::Finite(d) => Self::Finite(d + offset),
            Self::Unbounded => Self::Unbounded,
        }
    }
}

impl fmt::Display for QuasirandomDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(d) => write!(f, "{d}"),
            Self::Unbounded => f.write_str("inf"),
        }
    }
}

/// Exponent of the group and the splitting prime used for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DixonPrime {
    pub exponent: u64,
    pub prime: u64,
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Exponent (lcm of element orders, read off class representatives) and the
/// smallest prime `q = 1 (mod exponent)` with `2 sqrt|G| < q < 2^31`.
pub fn dixon_prime(group: &GroupTable, classes: &ConjugacyData) -> Result<DixonPrime> {
    let exponent = classes
        .representatives()
        .iter()
        .map(|&g| group.element_order(g))
        .fold(1u64, |acc, o| acc / gcd(acc, o) * o);
    let order = group.order() as u64;
    let prime = modular::prime_in_progression(exponent, isqrt(4 * order))
        .ok_or(Error::NoSuitablePrime { exponent, order })?;
    Ok(DixonPrime { exponent, prime })
}

pub fn character_degrees(group: &GroupTable) -> Result<DegreeMultiset> {
    let classes = conjugacy_classes(group);
    if classes.class_count() > MAX_CLASSES {
        return Err(Error::Precondition(format!(
            "{} conjugacy classes exceed the limit of {MAX_CLASSES}",
            classes.class_count()
        )));
    }
    let constants = class_constants(group, &classes);
    degrees_from_class_data(group, &classes, &constants)
}

pub fn quasirandom_degree(group: &GroupTable) -> Result<QuasirandomDegree> {
    Ok(character_degrees(group)?.quasirandom_degree())
}

/// A subspace of F_q^k in reduced row echelon form, plus the index of the
/// next class matrix to try splitting it with.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    next: usize,
}

/// Degree computation from precomputed classes and structure constants.
pub fn degrees_from_class_data(
    group: &GroupTable,
    classes: &ConjugacyData,
    constants: &ClassConstants,
) -> Result<DegreeMultiset> {
    let k = classes.class_count();
    let order = group.order() as u64;
    let DixonPrime { prime, .. } = dixon_prime(group, classes)?;
    let f = Fq::new(prime);

    let apply = |i: usize, v: &[u64]| -> Vec<u64> {
        (0..k)
            .map(|j| {
                (0..k).fold(0u64, |acc, l| {
                    let c = u64::from(constants.get(i, j, l));
                    if c == 0 || v[l] == 0 {
                        acc
                    } else {
                        f.add(acc, f.mul(f.reduce(c), v[l]))
                    }
                })
            })
            .collect()
    };

    let identity_rows: Vec<Vec<u64>> =
        (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut queue = VecDeque::from([Subspace { rows: identity_rows, pivots: (0..k).collect(), next: 1 }]);
    let mut eigenvectors: Vec<Vec<u64>> = Vec::with_capacity(k);

    while let Some(space) = queue.pop_front() {
        let d = space.rows.len();
        if d == 1 {
            eigenvectors.push(space.rows.into_iter().next().unwrap());
            continue;
        }
        let mut split = false;
        for i in space.next..k {
            // Matrix of M_i on the subspace in the basis `rows`.
            let mut a = vec![0u64; d * d];
            for (t, row) in space.rows.iter().enumerate() {
                let image = apply(i, row);
                for (s, &pc) in space.pivots.iter().enumerate() {
                    a[s * d + t] = image[pc];
                }
            }
            let scalar = (0..d).all(|s| (0..d).all(|t| a[s * d + t] == if s == t { a[0] } else { 0 }));
            if scalar {
                continue;
            }
            let eigenvalues = modular::roots(&f, &modular::charpoly(&f, &a, d));
            let mut total = 0;
            for lambda in eigenvalues {
                let mut shifted = a.clone();
                for s in 0..d {
                    shifted[s * d + s] = f.sub(shifted[s * d + s], lambda);
                }
                let mut rows: Vec<Vec<u64>> = modular::kernel(&f, &shifted, d)
                    .into_iter()
                    .map(|coords| {
                        let mut v = vec![0u64; k];
                        for (c, row) in coords.iter().zip(&space.rows) {
                            if *c != 0 {
                                for (vx, &rx) in v.iter_mut().zip(row) {
                                    *vx = f.add(*vx, f.mul(*c, rx));
                                }
                            }
                        }
                        v
                    })
                    .collect();
                let pivots = modular::rref(&f, &mut rows, k);
                total += rows.len();
                queue.push_back(Subspace { rows, pivots, next: i + 1 });
            }
            if total != d {
                return Err(Error::Splitting(format!(
                    "class matrix {i} is not diagonalizable on a {d}-dimensional subspace mod {prime}"
                )));
            }
            split = true;
            break;
        }
        if !split {
            return Err(Error::Splitting(format!(
                "a {d}-dimensional common eigenspace survives every class matrix mod {prime}"
            )));
        }
    }

    let inverse_class: Vec<usize> = (0..k).map(|j| classes.inverse_class(group, j)).collect();
    let size_inv: Vec<u64> = classes.class_sizes().iter().map(|&s| f.inv(f.reduce(s))).collect();
    let bound = isqrt(order);
    let mut degrees = Vec::with_capacity(k);
    for v in &eigenvectors {
        if v[0] == 0 {
            return Err(Error::DegreeRecovery("eigenvector vanishes on the identity class".into()));
        }
        let norm = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();
        let s = (0..k).fold(0, |acc, j| {
            f.add(acc, f.mul(f.mul(omega[j], omega[inverse_class[j]]), size_inv[j]))
        });
        if s == 0 {
            return Err(Error::DegreeRecovery("degenerate orthogonality sum".into()));
        }
        let target = f.mul(f.reduce(order), f.inv(s));
        let degree = (1..=bound)
            .find(|&d| f.mul(d % prime, d % prime) == target)
            .ok_or_else(|| Error::DegreeRecovery(format!("no degree squares to {target} mod {prime}")))?;
        degrees.push(degree);
    }
    degrees.sort_unstable();
    let multiset = DegreeMultiset { degrees, group_order: order };
    if multiset.sum_of_squares() != order || multiset.degrees.iter().any(|d| order % d != 0) {
        return Err(Error::DegreeRecovery(format!(
            "degrees {:?} are inconsistent with |G| = {order}",
            multiset.degrees
        )));
    }
    Ok(multiset)
}
