//! Subgroups of a tabulated [`Group`], as sorted index sets.

use std::collections::BTreeSet;

use crate::group::Group;

/// A subgroup of the additive group, stored as sorted element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_mask(mask: Vec<bool>) -> Subgroup {
        let members = mask
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup { members, mask }
    }

    pub fn trivial(g: &Group) -> Subgroup {
        generated(g, &[])
    }

    pub fn whole(g: &Group) -> Subgroup {
        Subgroup::from_mask(vec![true; g.order()])
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn is_subset_of(&self, other: &[bool]) -> bool {
        self.members.iter().all(|&x| other[x])
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// The subgroup generated by `gens`.
pub fn generated(g: &Group, gens: &[usize]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.add(x, s);
            if !mask[y] {
                mask[y] = true;
                frontier.push(y);
            }
        }
    }
    Subgroup::from_mask(mask)
}

/// Returns the set as a subgroup if it contains 0 and is closed under
/// addition and negation.
pub fn as_subgroup(g: &Group, set: &[usize]) -> Option<Subgroup> {
    let mut mask = vec![false; g.order()];
    for &x in set {
        if x >= g.order() {
            return None;
        }
        mask[x] = true;
    }
    if !mask[0] {
        return None;
    }
    for &x in set {
        if !mask[g.neg(x)] {
            return None;
        }
        for &y in set {
            if !mask[g.add(x, y)] {
                return None;
            }
        }
    }
    Some(Subgroup::from_mask(mask))
}

pub fn is_normal(g: &Group, h: &Subgroup) -> bool {
    (0..g.order()).all(|x| {
        h.members()
            .iter()
            .all(|&z| h.contains(g.add(g.add(g.neg(x), z), x)))
    })
}

/// Brute-force derived subgroup: generated by all commutators.
pub fn derived(g: &Group) -> Subgroup {
    let comms: BTreeSet<usize> = (0..g.order())
        .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
        .map(|(x, y)| g.commutator(x, y))
        .collect();
    generated(g, &comms.into_iter().collect::<Vec<_>>())
}

/// Every subgroup of `g`, sorted by (order, members).
///
/// Built by closing the set of cyclic subgroups under joins; finite groups
/// are exhausted this way since every subgroup is a join of cyclic ones.
pub fn all_subgroups(g: &Group) -> Vec<Subgroup> {
    let n = g.order();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic_gens: Vec<usize> = Vec::new();
    for x in 0..n {
        let c = generated(g, &[x]);
        if seen.insert(c.members.clone()) {
            cyclic_gens.push(x);
        }
    }
    // subgroups with a generating set, expanded by joining with cyclic ones
    let mut queue: Vec<(Vec<usize>, Subgroup)> = cyclic_gens
        .iter()
        .map(|&x| (vec![x], generated(g, &[x])))
        .collect();
    while let Some((gens, h)) = queue.pop() {
        for &x in &cyclic_gens {
            if h.contains(x) {
                continue;
            }
            let mut next = gens.clone();
            next.push(x);
            let j = generated(g, &next);
            if seen.insert(j.members.clone()) {
                queue.push((next, j));
            }
        }
    }
    let mut out: Vec<Subgroup> = seen
        .into_iter()
        .map(|members| {
            let mut mask = vec![false; n];
            for &m in &members {
                mask[m] = true;
            }
            Subgroup { members, mask }
        })
        .collect();
    out.sort_by(|a, b| (a.len(), &a.members).cmp(&(b.len(), &b.members)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GroupDescriptor, GroupKind};

    fn group(kind: GroupKind, p: u32) -> Group {
        Group::new(GroupDescriptor::new(kind, p).unwrap()).unwrap()
    }

    #[test]
    fn heisenberg_derived_subgroup_is_center_line() {
        for p in [3, 5] {
            let g = group(GroupKind::Heisenberg, p);
            let d = derived(&g);
            assert_eq!(d.len(), p as usize);
            let c = g.basis()[2];
            assert_eq!(d, generated(&g, &[c]));
            for x in 0..g.order() {
                for y in 0..g.order() {
                    assert!(d.contains(g.commutator(x, y)));
                }
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        // C_27: one subgroup per divisor
        assert_eq!(all_subgroups(&group(GroupKind::CyclicP3, 3)).len(), 4);
        // C_2^3: 1 + 7 + 7 + 1
        assert_eq!(all_subgroups(&group(GroupKind::ElemAbelian, 2)).len(), 16);
        // Q8: 1, <a^2>, three of order 4, Q8
        assert_eq!(all_subgroups(&group(GroupKind::Quaternion8, 2)).len(), 6);
        // D8: 10 subgroups
        assert_eq!(all_subgroups(&group(GroupKind::Dihedral8, 2)).len(), 10);
        // Heisenberg p=3: 1 + 13 + 4 + 1
        assert_eq!(all_subgroups(&group(GroupKind::Heisenberg, 3)).len(), 19);
    }

    #[test]
    fn subgroup_recognition() {
        let g = group(GroupKind::MetacyclicAbelian, 3);
        let p_mult: Vec<usize> = (0..g.order()).map(|x| g.multiple(x, 3)).collect();
        let set: BTreeSet<usize> = p_mult.into_iter().collect();
        let set: Vec<usize> = set.into_iter().collect();
        let h = as_subgroup(&g, &set).unwrap();
        assert_eq!(h.len(), 3);
        assert!(is_normal(&g, &h));
        assert!(as_subgroup(&g, &[0, 1]).is_none());
        assert!(as_subgroup(&g, &[1]).is_none());
    }

    #[test]
    fn non_normal_subgroup_detected() {
        let g = group(GroupKind::Dihedral8, 2);
        let b = g.basis()[1];
        assert!(!is_normal(&g, &generated(&g, &[b])));
    }
}
