//! Finite groups as dense index structures.
//!
//! Elements are `0..order`. Every family constructor places the identity at
//! index 0. Groups of order at most [`TABLE_MAX_ORDER`] carry a full Cayley
//! table; larger ones multiply through canonical forms (residues, permutation
//! arrays, 2x2 matrices over F_p) and keep a memoized inverse table.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::descriptor::Family;
use crate::{rng, Error, Result};

/// Groups up to this order get a materialized multiplication table.
pub const TABLE_MAX_ORDER: usize = 4096;

/// Associativity is checked exhaustively up to this order and sampled above.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: usize = 512;

const EXHAUSTIVE_BIJECTIVITY_ORDER: usize = 8192;

#[derive(Debug, Clone)]
pub struct GroupTable {
    family: Family,
    order: usize,
    identity: u32,
    law: Law,
    inverse: Vec<u32>,
    generators: Vec<u32>,
}

#[derive(Debug, Clone)]
enum Law {
    Table(Vec<u32>),
    Cyclic(u32),
    Dihedral(u32),
    Symmetric(PermLaw),
    Sl2(Sl2Law),
    Product { left: Box<GroupTable>, right: Box<GroupTable> },
}

/// Parses and builds a group from a descriptor such as `"sl2:13"`.
pub fn build_group(descriptor: &str) -> Result<GroupTable> {
    GroupTable::build(&descriptor.parse()?)
}

impl GroupTable {
    pub fn build(family: &Family) -> Result<GroupTable> {
        family.validate()?;
        let mut group = match *family {
            Family::Cyclic(n) => Self::cyclic(n),
            Family::Dihedral(n) => Self::dihedral(n),
            Family::Symmetric(n) => Self::symmetric(n as usize),
            Family::Sl2(p) => Self::sl2(p, false),
            Family::Psl2(p) => Self::sl2(p, true),
            Family::Product(ref a, ref b) => Self::product(Self::build(a)?, Self::build(b)?),
            Family::Custom => unreachable!("rejected by validate"),
        };
        group.family = family.clone();
        group.materialize_table();
        Ok(group)
    }

    /// Wraps a raw Cayley table (`table[g * order + h] = gh`).
    ///
    /// Only the shape is validated; use [`GroupTable::verify_axioms`] to check
    /// the group laws. The identity is the first element acting trivially on
    /// the left, falling back to index 0 when none exists.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<GroupTable> {
        if order == 0 || order > TABLE_MAX_ORDER {
            return Err(Error::Construction(format!(
                "custom table order {order} outside 1..={TABLE_MAX_ORDER}"
            )));
        }
        if table.len() != order * order {
            return Err(Error::Construction(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(Error::Construction(format!("table entry {bad} out of range")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g))
            .unwrap_or(0) as u32;
        let inverse = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| table[g * order + h] == identity)
                    .unwrap_or(g) as u32
            })
            .collect();
        let mut group = GroupTable {
            family: Family::Custom,
            order,
            identity,
            law: Law::Table(table),
            inverse,
            generators: Vec::new(),
        };
        group.generators = group.greedy_generators();
        Ok(group)
    }

    fn with_law(order: usize, law: Law, generators: Vec<u32>) -> GroupTable {
        let mut group = GroupTable {
            family: Family::Custom,
            order,
            identity: 0,
            law,
            inverse: Vec::new(),
            generators,
        };
        group.inverse = (0..order as u32).map(|g| group.compute_inverse(g)).collect();
        group
    }

    fn cyclic(n: u32) -> GroupTable {
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::with_law(n as usize, Law::Cyclic(n), gens)
    }

    fn dihedral(n: u32) -> GroupTable {
        let mut gens = Vec::new();
        if n > 1 {
            gens.push(1);
        }
        gens.push(n);
        Self::with_law(2 * n as usize, Law::Dihedral(n), gens)
    }

    fn symmetric(n: usize) -> GroupTable {
        let law = PermLaw::new(n);
        let mut gens = Vec::new();
        if n >= 2 {
            let mut swap = [0u8; 8];
            let mut cycle = [0u8; 8];
            for i in 0..n {
                swap[i] = i as u8;
                cycle[i] = ((i + 1) % n) as u8;
            }
            swap.swap(0, 1);
            gens.push(law.rank(&swap));
            if n > 2 {
                gens.push(law.rank(&cycle));
            }
        }
        let order = law.perms.len();
        Self::with_law(order, Law::Symmetric(law), gens)
    }

    fn sl2(p: u32, projective: bool) -> GroupTable {
        let law = Sl2Law::with_cache(p, projective);
        let gens = vec![law.encode([1, 1, 0, 1]), law.encode([1, 0, 1, 1])];
        Self::with_law(law.order(), Law::Sl2(law), gens)
    }

    fn product(left: GroupTable, right: GroupTable) -> GroupTable {
        let m = right.order as u32;
        let mut gens: Vec<u32> = left.generators.iter().map(|&g| g * m + right.identity).collect();
        gens.extend(right.generators.iter().map(|&h| left.identity * m + h));
        let order = left.order * right.order;
        Self::with_law(order, Law::Product { left: Box::new(left), right: Box::new(right) }, gens)
    }

    fn materialize_table(&mut self) {
        if self.order > TABLE_MAX_ORDER || matches!(self.law, Law::Table(_)) {
            return;
        }
        let n = self.order as u32;
        let mut table = Vec::with_capacity(self.order * self.order);
        for g in 0..n {
            for h in 0..n {
                table.push(self.mult(g, h));
            }
        }
        self.law = Law::Table(table);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Canonical descriptor string (`"custom"` for raw tables).
    pub fn descriptor(&self) -> String {
        self.family.to_string()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn elements(&self) -> core::ops::Range<u32> {
        0..self.order as u32
    }

    pub fn has_table(&self) -> bool {
        matches!(self.law, Law::Table(_))
    }

    #[inline]
    pub fn mult(&self, g: u32, h: u32) -> u32 {
        match &self.law {
            Law::Table(t) => t[g as usize * self.order + h as usize],
            Law::Cyclic(n) => (g + h) % n,
            Law::Dihedral(n) => {
                let (e1, k1) = (g / n, g % n);
                let (e2, k2) = (h / n, h % n);
                let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 } % n;
                (e1 ^ e2) * n + k
            }
            Law::Symmetric(law) => law.mult(g, h),
            Law::Sl2(law) => law.mult(g, h),
            Law::Product { left, right } => {
                let m = right.order as u32;
                left.mult(g / m, h / m) * m + right.mult(g % m, h % m)
            }
        }
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inverse[g as usize]
    }

    /// `h g h^-1`.
    #[inline]
    pub fn conjugate(&self, h: u32, g: u32) -> u32 {
        self.mult(self.mult(h, g), self.inverse[h as usize])
    }

    fn compute_inverse(&self, g: u32) -> u32 {
        match &self.law {
            Law::Table(_) => unreachable!("tables carry their own inverse map"),
            Law::Cyclic(n) => (n - g) % n,
            Law::Dihedral(n) => {
                if g < *n {
                    (n - g) % n
                } else {
                    g
                }
            }
            Law::Symmetric(law) => law.inverse(g),
            Law::Sl2(law) => law.inverse(g),
            Law::Product { left, right } => {
                let m = right.order as u32;
                left.inv(g / m) * m + right.inv(g % m)
            }
        }
    }

    pub fn element_order(&self, g: u32) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mult(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mult(a, b) == self.mult(b, a)))
    }

    /// Human-readable name of an element.
    pub fn label(&self, g: u32) -> String {
        label_in(&self.family, self.order, g)
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity as usize] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mult(x, s);
                if !member[y as usize] {
                    member[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut member = self.subgroup_closure(&gens);
        for g in self.elements() {
            if !member[g as usize] {
                gens.push(g);
                member = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// Elements of the commutator subgroup `[G, G]`, ascending.
    ///
    /// Computed as the normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let gens = &self.generators;
        let mut normal_gens: Vec<u32> = Vec::new();
        for &a in gens {
            for &b in gens {
                let c = self.mult(self.mult(a, b), self.mult(self.inv(a), self.inv(b)));
                if c != self.identity {
                    normal_gens.push(c);
                }
            }
        }
        let mut member = self.subgroup_closure(&normal_gens);
        loop {
            let mut added = false;
            let snapshot = normal_gens.clone();
            for &s in gens {
                for &t in &snapshot {
                    let c = self.conjugate(s, t);
                    if !member[c as usize] {
                        normal_gens.push(c);
                        member = self.subgroup_closure(&normal_gens);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        self.elements().filter(|&g| member[g as usize]).collect()
    }

    /// Checks the group axioms and translation bijectivity.
    ///
    /// Associativity is exhaustive up to [`EXHAUSTIVE_ASSOCIATIVITY_ORDER`],
    /// otherwise `budget` triples are drawn from `seed`. Failures become report
    /// entries carrying a witness, never errors.
    pub fn verify_axioms(&self, budget: u64, seed: u64) -> AxiomReport {
        let n = self.order as u32;
        let e = self.identity;
        let mut checks = Vec::new();

        let mut c = AxiomCheck::new(Axiom::Identity, true);
        for g in 0..n {
            c.checked += 1;
            if self.mult(e, g) != g || self.mult(g, e) != g {
                c.fail([g, e, e]);
                break;
            }
        }
        checks.push(c);

        let mut c = AxiomCheck::new(Axiom::Inverses, true);
        for g in 0..n {
            c.checked += 1;
            let gi = self.inv(g);
            if self.mult(g, gi) != e || self.mult(gi, g) != e {
                c.fail([g, gi, e]);
                break;
            }
        }
        checks.push(c);

        let exhaustive = self.order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER;
        let mut c = AxiomCheck::new(Axiom::Associativity, exhaustive);
        let check_triple = |c: &mut AxiomCheck, g: u32, h: u32, k: u32| {
            c.checked += 1;
            if self.mult(self.mult(g, h), k) != self.mult(g, self.mult(h, k)) {
                c.fail([g, h, k]);
                false
            } else {
                true
            }
        };
        if exhaustive {
            'outer: for g in 0..n {
                for h in 0..n {
                    for k in 0..n {
                        if !check_triple(&mut c, g, h, k) {
                            break 'outer;
                        }
                    }
                }
            }
        } else {
            let mut r = rng::rng_from_seed(seed);
            for _ in 0..budget {
                let (g, h, k) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
                if !check_triple(&mut c, g, h, k) {
                    break;
                }
            }
        }
        checks.push(c);

        let rows: Vec<u32> = if self.order <= EXHAUSTIVE_BIJECTIVITY_ORDER {
            (0..n).collect()
        } else {
            let mut r = rng::rng_from_seed(rng::splitmix64(seed));
            let count = budget.div_ceil(self.order as u64).clamp(4, 64);
            (0..count).map(|_| r.gen_range(0..n)).collect()
        };
        let exhaustive = rows.len() == self.order;
        for (axiom, left) in [
            (Axiom::LeftTranslationBijective, true),
            (Axiom::RightTranslationBijective, false),
        ] {
            let mut c = AxiomCheck::new(axiom, exhaustive);
            let mut seen: Vec<u32> = vec![u32::MAX; self.order];
            'rows: for &g in &rows {
                c.checked += 1;
                for h in 0..n {
                    let y = if left { self.mult(g, h) } else { self.mult(h, g) };
                    let prev = seen[y as usize];
                    if prev != u32::MAX {
                        c.fail([g, prev, h]);
                        break 'rows;
                    }
                    seen[y as usize] = h;
                }
                seen.iter_mut().for_each(|s| *s = u32::MAX);
            }
            checks.push(c);
        }
        AxiomReport { checks }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Identity,
    Inverses,
    Associativity,
    LeftTranslationBijective,
    RightTranslationBijective,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    pub exhaustive: bool,
    pub checked: u64,
    /// Offending elements: `(g, h, k)` for associativity, `(g, h1, h2)` with
    /// equal translates for bijectivity, `(g, ..)` otherwise.
    pub witness: Option<[u32; 3]>,
}

impl AxiomCheck {
    fn new(axiom: Axiom, exhaustive: bool) -> Self {
        Self { axiom, passed: true, exhaustive, checked: 0, witness: None }
    }

    fn fail(&mut self, witness: [u32; 3]) {
        self.passed = false;
        self.witness = Some(witness);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is reported")
    }
}

fn label_in(family: &Family, order: usize, g: u32) -> String {
    match family {
        Family::Cyclic(_) => g.to_string(),
        Family::Dihedral(n) => {
            if g < *n {
                format!("r^{g}")
            } else {
                format!("r^{} s", g - n)
            }
        }
        Family::Symmetric(n) => {
            let perm = PermLaw::unrank(*n as usize, g);
            perm[..*n as usize].iter().map(|&i| char::from(b'1' + i)).collect()
        }
        Family::Sl2(p) | Family::Psl2(p) => {
            let law = Sl2Law::new(*p, matches!(family, Family::Psl2(_)));
            let [a, b, c, d] = law.decode(g);
            format!("[[{a},{b}],[{c},{d}]]")
        }
        Family::Product(a, b) => {
            let m = b.order().expect("validated family") as u32;
            let left_order = order / m as usize;
            format!("({},{})", label_in(a, left_order, g / m), label_in(b, m as usize, g % m))
        }
        Family::Custom => format!("g{g}"),
    }
}

/// Permutations of `0..n` (n <= 8) indexed by lexicographic rank.
/// Composition is `(s * t)(i) = s(t(i))`.
#[derive(Debug, Clone)]
struct PermLaw {
    n: usize,
    perms: Vec<[u8; 8]>,
}

impl PermLaw {
    fn new(n: usize) -> Self {
        let count: u32 = (1..=n as u32).product();
        Self { n, perms: (0..count).map(|r| Self::unrank(n, r)).collect() }
    }

    fn unrank(n: usize, mut r: u32) -> [u8; 8] {
        let mut avail: Vec<u8> = (0..n as u8).collect();
        let mut out = [0u8; 8];
        for i in 0..n {
            let f: u32 = (1..(n - i) as u32).product();
            let k = (r / f) as usize;
            r %= f;
            out[i] = avail.remove(k);
        }
        out
    }

    fn rank(&self, perm: &[u8; 8]) -> u32 {
        let n = self.n;
        let mut r = 0u32;
        for i in 0..n {
            let smaller_after = perm[i + 1..n].iter().filter(|&&x| x < perm[i]).count() as u32;
            r = r * (n - i) as u32 + smaller_after;
        }
        r
    }

    fn mult(&self, g: u32, h: u32) -> u32 {
        let (s, t) = (&self.perms[g as usize], &self.perms[h as usize]);
        let mut out = [0u8; 8];
        for i in 0..self.n {
            out[i] = s[t[i] as usize];
        }
        self.rank(&out)
    }

    fn inverse(&self, g: u32) -> u32 {
        let s = &self.perms[g as usize];
        let mut out = [0u8; 8];
        for i in 0..self.n {
            out[s[i] as usize] = i as u8;
        }
        self.rank(&out)
    }
}

/// SL(2, p) or PSL(2, p) with a closed-form element index.
///
/// SL(2, p): a matrix with `a != 0` is determined by `(a, b, c)` and gets
/// index `((a-1) p + b) p + c`; one with `a = 0` has `c = -1/b` and gets
/// `(p-1) p^2 + (b-1) p + d`. PSL(2, p) uses the same scheme on the
/// lexicographically smaller member of `{M, -M}`, whose first nonzero entry
/// lies in `1..=(p-1)/2`. The identity has index 0 in both.
#[derive(Debug, Clone)]
struct Sl2Law {
    p: u32,
    projective: bool,
    inv_mod: Vec<u32>,
    /// Decoded entries of every element; filled by `with_cache`.
    matrices: Vec<[u8; 4]>,
    /// `reduce[k] = k mod p` for every sum of two entry products.
    reduce: Vec<u8>,
}

impl Sl2Law {
    fn new(p: u32, projective: bool) -> Self {
        let mut inv_mod = vec![0u32; p as usize];
        for a in 1..p {
            let mut x = 1u64;
            for _ in 0..p - 2 {
                x = x * u64::from(a) % u64::from(p);
            }
            inv_mod[a as usize] = x as u32;
        }
        Self { p, projective, inv_mod, matrices: Vec::new(), reduce: Vec::new() }
    }

    /// Law with decode and reduction caches, `O(|G|)` bytes. Entries fit in a
    /// byte because `p <= 101`.
    fn with_cache(p: u32, projective: bool) -> Self {
        let mut law = Self::new(p, projective);
        law.matrices = (0..law.order() as u32).map(|i| law.decode(i).map(|x| x as u8)).collect();
        law.reduce = (0..2 * (p - 1) * (p - 1) + 1).map(|k| (k % p) as u8).collect();
        law
    }

    fn order(&self) -> usize {
        let p = self.p as usize;
        let sl = p * (p * p - 1);
        if self.projective {
            sl / 2
        } else {
            sl
        }
    }

    /// Leading-range size for the first nonzero entry.
    fn lead(&self) -> u32 {
        if self.projective {
            (self.p - 1) / 2
        } else {
            self.p - 1
        }
    }

    fn canonical(&self, m: [u32; 4]) -> [u32; 4] {
        if !self.projective {
            return m;
        }
        let h = (self.p - 1) / 2;
        let first = if m[0] != 0 { m[0] } else { m[1] };
        if first > h {
            m.map(|x| (self.p - x) % self.p)
        } else {
            m
        }
    }

    fn encode(&self, m: [u32; 4]) -> u32 {
        let [a, b, c, d] = self.canonical(m);
        let p = self.p;
        if a != 0 {
            ((a - 1) * p + b) * p + c
        } else {
            self.lead() * p * p + (b - 1) * p + d
        }
    }

    fn decode(&self, idx: u32) -> [u32; 4] {
        let p = self.p;
        let split = self.lead() * p * p;
        if idx < split {
            let a = idx / (p * p) + 1;
            let b = (idx / p) % p;
            let c = idx % p;
            let d = ((1 + u64::from(b) * u64::from(c)) % u64::from(p)
                * u64::from(self.inv_mod[a as usize])
                % u64::from(p)) as u32;
            [a, b, c, d]
        } else {
            let r = idx - split;
            let b = r / p + 1;
            let d = r % p;
            let c = (p - self.inv_mod[b as usize]) % p;
            [0, b, c, d]
        }
    }

    #[inline]
    fn mult(&self, g: u32, h: u32) -> u32 {
        let [a, b, c, d] = self.matrices[g as usize].map(usize::from);
        let [e, f, x, y] = self.matrices[h as usize].map(usize::from);
        let r = |k: usize| u32::from(self.reduce[k]);
        self.encode([r(a * e + b * x), r(a * f + b * y), r(c * e + d * x), r(c * f + d * y)])
    }

    fn inverse(&self, g: u32) -> u32 {
        let p = self.p;
        let [a, b, c, d] = self.decode(g);
        self.encode([d, (p - b) % p, (p - c) % p, a])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn all_sl2_matrices(p: u32) -> BTreeSet<[u32; 4]> {
        let mut out = BTreeSet::new();
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    for d in 0..p {
                        if (a * d + p * p - b * c) % p == 1 {
                            out.insert([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn trivial_group() {
        let g = build_group("cyclic:1").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mult(0, 0), 0);
        assert!(g.verify_axioms(0, 0).all_passed());
    }

    #[test]
    fn sl2_5_matches_matrix_enumeration() {
        let mats = all_sl2_matrices(5);
        assert_eq!(mats.len(), 120);
        let g = build_group("sl2:5").unwrap();
        assert_eq!(g.order(), 5 * (25 - 1));
        let law = Sl2Law::new(5, false);
        let decoded: BTreeSet<[u32; 4]> = g.elements().map(|i| law.decode(i)).collect();
        assert_eq!(decoded, mats);
        assert_eq!(g.label(0), "[[1,0],[0,1]]");
    }

    #[test]
    fn sl2_index_scheme_roundtrips_beyond_table_size() {
        for p in [13, 37] {
            let law = Sl2Law::new(p, false);
            let mats = all_sl2_matrices(p);
            assert_eq!(mats.len(), law.order());
            for m in mats {
                assert_eq!(law.decode(law.encode(m)), m);
            }
        }
    }

    #[test]
    fn psl2_labels_are_smaller_representatives() {
        let p = 7;
        let g = build_group("psl2:7").unwrap();
        assert_eq!(g.order(), all_sl2_matrices(p).len() / 2);
        let law = Sl2Law::new(p, true);
        let mut seen = BTreeSet::new();
        for i in g.elements() {
            let m = law.decode(i);
            let neg = m.map(|x| (p - x) % p);
            assert!(m < neg, "{m:?} is not the smaller representative");
            assert!(seen.insert(m));
        }
    }

    #[test]
    fn symmetric_4_matches_permutation_enumeration() {
        let g = build_group("symmetric:4").unwrap();
        assert_eq!(g.order(), 24);
        let labels: BTreeSet<String> = g.elements().map(|i| g.label(i)).collect();
        assert_eq!(labels.len(), 24);
        assert_eq!(g.label(0), "1234");
        assert!(g.verify_axioms(0, 0).all_passed());
    }

    #[test]
    fn symmetric_composition_convention() {
        let g = build_group("symmetric:3").unwrap();
        let find = |s: &str| g.elements().find(|&i| g.label(i) == s).unwrap();
        // (s t)(i) = s(t(i)) with one-line labels, 1-based.
        let s = find("213");
        let t = find("132");
        assert_eq!(g.label(g.mult(s, t)), "231");
    }

    #[test]
    fn untabled_groups_satisfy_axioms() {
        for d in ["symmetric:7", "sl2:17", "psl2:29", "product:sl2:13,cyclic:3", "cyclic:5000"] {
            let g = build_group(d).unwrap();
            assert!(!g.has_table(), "{d}");
            let report = g.verify_axioms(20_000, 1);
            assert!(report.all_passed(), "{d}: {report:?}");
        }
    }

    #[test]
    fn klein_four_product() {
        let g = build_group("product:cyclic:2,cyclic:2").unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.verify_axioms(0, 0).all_passed());
        assert!(g.elements().all(|x| g.mult(x, x) == 0));
        assert_eq!(g.label(3), "(1,1)");
    }

    #[test]
    fn corrupted_table_is_reported() {
        let base = build_group("symmetric:3").unwrap();
        let n = base.order();
        let mut table: Vec<u32> =
            (0..n as u32).flat_map(|g| (0..n as u32).map(move |h| (g, h))).map(|(g, h)| base.mult(g, h)).collect();
        table[2 * n + 3] = (table[2 * n + 3] + 1) % n as u32;
        let bad = GroupTable::from_table(n, table).unwrap();
        let report = bad.verify_axioms(0, 0);
        assert!(!report.all_passed());
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(failing.iter().all(|c| c.witness.is_some()));
        assert!(
            !report.check(Axiom::Associativity).passed
                || !report.check(Axiom::LeftTranslationBijective).passed
        );
    }

    #[test]
    fn from_table_rejects_bad_shapes() {
        assert!(GroupTable::from_table(2, vec![0, 1, 1]).is_err());
        assert!(GroupTable::from_table(2, vec![0, 1, 1, 2]).is_err());
        assert!(GroupTable::from_table(0, vec![]).is_err());
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(build_group("cyclic:9").unwrap().derived_subgroup(), vec![0]);
        assert_eq!(build_group("symmetric:3").unwrap().derived_subgroup().len(), 3);
        assert_eq!(build_group("symmetric:4").unwrap().derived_subgroup().len(), 12);
        assert_eq!(build_group("sl2:5").unwrap().derived_subgroup().len(), 120);
        assert_eq!(build_group("dihedral:4").unwrap().derived_subgroup().len(), 2);
    }

    #[test]
    fn dihedral_relations() {
        let g = build_group("dihedral:5").unwrap();
        let (r, s) = (1, 5);
        assert_eq!(g.element_order(r), 5);
        assert_eq!(g.element_order(s), 2);
        // s r s^-1 = r^-1
        assert_eq!(g.conjugate(s, r), g.inv(r));
        assert_eq!(g.label(7), "r^2 s");
    }

    #[test]
    fn generators_generate() {
        for d in ["dihedral:6", "symmetric:5", "sl2:7", "psl2:5", "product:symmetric:3,cyclic:4"] {
            let g = build_group(d).unwrap();
            assert!(g.subgroup_closure(g.generators()).iter().all(|&m| m), "{d}");
        }
    }
}
