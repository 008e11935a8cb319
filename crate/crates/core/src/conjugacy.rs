//! Conjugacy classes.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::GroupTable;

/// Partition of a group into conjugacy classes.
///
/// Classes are ordered by `(size, smallest member)`, so the identity class is
/// always class 0. The representative of a class is its smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    class_of: Vec<u32>,
    class_sizes: Vec<u64>,
    representatives: Vec<u32>,
}

impl ConjugacyData {
    pub fn class_of(&self, g: u32) -> usize {
        self.class_of[g as usize] as usize
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn representatives(&self) -> &[u32] {
        &self.representatives
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Members of each class, ascending.
    pub fn members(&self) -> Vec<Vec<u32>> {
        let mut out: Vec<Vec<u32>> = self.class_sizes.iter().map(|&s| Vec::with_capacity(s as usize)).collect();
        for (g, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(g as u32);
        }
        out
    }

    /// Index of the class containing the inverses of class `i`.
    pub fn inverse_class(&self, group: &GroupTable, i: usize) -> usize {
        self.class_of(group.inv(self.representatives[i]))
    }
}

/// Computes conjugation orbits by breadth-first search over conjugation by
/// the group's generators; cost `O(|G| * #generators)`.
pub fn conjugacy_classes(group: &GroupTable) -> ConjugacyData {
    let n = group.order();
    let gens = group.generators();
    let mut orbit_id = vec![u32::MAX; n];
    // (size, smallest member) per orbit, in discovery order.
    let mut orbits: Vec<(u64, u32)> = Vec::new();
    let mut queue = VecDeque::new();
    for start in group.elements() {
        if orbit_id[start as usize] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_id[start as usize] = id;
        queue.push_back(start);
        let mut size = 0u64;
        while let Some(x) = queue.pop_front() {
            size += 1;
            for &s in gens {
                let y = group.conjugate(s, x);
                if orbit_id[y as usize] == u32::MAX {
                    orbit_id[y as usize] = id;
                    queue.push_back(y);
                }
            }
        }
        // Discovery is in increasing `start`, so `start` is the orbit minimum.
        orbits.push((size, start));
    }
    let mut order: Vec<u32> = (0..orbits.len() as u32).collect();
    order.sort_by_key(|&i| orbits[i as usize]);
    let mut rename = vec![0u32; orbits.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old as usize] = new as u32;
    }
    ConjugacyData {
        class_of: orbit_id.iter().map(|&o| rename[o as usize]).collect(),
        class_sizes: order.iter().map(|&o| orbits[o as usize].0).collect(),
        representatives: order.iter().map(|&o| orbits[o as usize].1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use alloc::collections::BTreeSet;

    /// Orbits by conjugating with every element, no generators involved.
    fn brute_force_classes(g: &GroupTable) -> BTreeSet<BTreeSet<u32>> {
        g.elements()
            .map(|x| g.elements().map(|h| g.conjugate(h, x)).collect::<BTreeSet<_>>())
            .collect()
    }

    fn as_sets(c: &ConjugacyData) -> BTreeSet<BTreeSet<u32>> {
        c.members().into_iter().map(|m| m.into_iter().collect()).collect()
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = build_group("cyclic:6").unwrap();
        let c = conjugacy_classes(&g);
        assert_eq!(c.class_count(), 6);
        assert!(c.class_sizes().iter().all(|&s| s == 1));
    }

    #[test]
    fn symmetric_3_class_sizes() {
        let g = build_group("symmetric:3").unwrap();
        let c = conjugacy_classes(&g);
        assert_eq!(c.class_sizes(), &[1, 2, 3]);
        assert_eq!(as_sets(&c), brute_force_classes(&g));
    }

    #[test]
    fn sl2_5_has_nine_classes() {
        let g = build_group("sl2:5").unwrap();
        let c = conjugacy_classes(&g);
        let brute = brute_force_classes(&g);
        assert_eq!(brute.len(), 9);
        assert_eq!(as_sets(&c), brute);
    }

    #[test]
    fn invariants_hold_on_assorted_groups() {
        for d in ["dihedral:7", "symmetric:5", "psl2:7", "product:symmetric:3,dihedral:4", "sl2:7"] {
            let g = build_group(d).unwrap();
            let c = conjugacy_classes(&g);
            assert_eq!(c.class_sizes().iter().sum::<u64>(), g.order() as u64);
            assert_eq!(c.class_of(g.identity()), 0);
            assert_eq!(c.class_sizes()[0], 1);
            for w in c.class_sizes().windows(2).zip(c.representatives().windows(2)) {
                assert!((w.0[0], w.1[0]) < (w.0[1], w.1[1]));
            }
            for x in g.elements() {
                for h in g.elements().step_by(7) {
                    assert_eq!(c.class_of(g.conjugate(h, x)), c.class_of(x));
                }
            }
        }
    }

    #[test]
    fn product_class_count_multiplies() {
        let a = conjugacy_classes(&build_group("symmetric:4").unwrap()).class_count();
        let b = conjugacy_classes(&build_group("dihedral:5").unwrap()).class_count();
        let ab = conjugacy_classes(&build_group("product:symmetric:4,dihedral:5").unwrap());
        assert_eq!(ab.class_count(), a * b);
    }

    #[test]
    fn deterministic_output() {
        let g = build_group("psl2:11").unwrap();
        assert_eq!(conjugacy_classes(&g), conjugacy_classes(&g));
    }
}
