//! Isomorphism testing and classification of nearrings on a common carrier.
//!
//! Two multiplications on `G` are isomorphic when some `theta` in `Aut(G)`
//! satisfies `theta(x y) = theta(x) theta(y)`. Automorphisms are stored by
//! their basis images and evaluated through the multiples table, so
//! rejected candidates cost only a handful of lookups.

use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Group};
use crate::hom::{self, basis_images, check_cap, free_generators, generator_tuples, relations_hold};
use crate::nearring::Nearring;
use crate::properties::{find_identity_index, is_zero_symmetric, unit_structure};

/// An automorphism of the additive group with its full image array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Automorphism {
    pub generator_images: Vec<Element>,
    pub images: Vec<u32>,
}

impl Automorphism {
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }
}

/// `Aut(G)`, one entry per automorphism, in generator-tuple order.
pub struct AutomorphismGroup {
    group: Arc<Group>,
    basis: Vec<Vec<usize>>,
    /// Row-major image table, kept when it fits in a few megabytes.
    table: Option<Vec<u32>>,
    /// `by_source[x][y]`: automorphisms sending `x` to `y`, built on demand.
    by_source: Vec<OnceLock<Vec<Vec<u32>>>>,
}

const IMAGE_TABLE_CAP: usize = 1 << 22;

impl AutomorphismGroup {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Image of `x` under the `k`-th automorphism.
    #[inline]
    pub fn image(&self, k: usize, x: usize) -> usize {
        match &self.table {
            Some(t) => t[k * self.group.order() + x] as usize,
            None => hom::evaluate(&self.group, &self.basis[k], x),
        }
    }

    /// Automorphisms sending `x` to `y`.
    pub fn sending(&self, x: usize, y: usize) -> &[u32] {
        &self.by_source[x].get_or_init(|| {
            let mut buckets = vec![Vec::new(); self.group.order()];
            for k in 0..self.len() {
                buckets[self.image(k, x)].push(k as u32);
            }
            buckets
        })[y]
    }

    pub fn images(&self, k: usize) -> Vec<u32> {
        (0..self.group.order()).map(|x| self.image(k, x) as u32).collect()
    }

    pub fn get(&self, k: usize) -> Automorphism {
        let free = free_generators(&self.group);
        Automorphism {
            generator_images: free
                .iter()
                .map(|&s| self.group.element(self.image(k, s)))
                .collect(),
            images: self.images(k),
        }
    }

    /// Smallest element index in each orbit meeting `candidates`, sorted.
    pub fn orbit_representatives(&self, candidates: &[usize]) -> Vec<usize> {
        let n = self.group.order();
        let mut rep = vec![usize::MAX; n];
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            for k in 0..self.len() {
                let y = self.image(k, x);
                if rep[y] == usize::MAX {
                    rep[y] = x;
                }
            }
        }
        let mut out: Vec<usize> = candidates.iter().map(|&c| rep[c]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Enumerates `Aut(G)` from generator tuples that satisfy the relations and
/// extend to bijections.
pub fn automorphisms(group: &Arc<Group>) -> Result<AutomorphismGroup> {
    let g: &Group = group;
    check_cap(g, "automorphism enumeration")?;
    let tuples: Vec<Vec<usize>> = generator_tuples(g).collect();
    let basis: Vec<Vec<usize>> = tuples
        .into_par_iter()
        .filter(|imgs| relations_hold(g, imgs))
        .filter_map(|imgs| {
            let b = basis_images(g, &imgs);
            let mut seen = vec![false; g.order()];
            for x in 0..g.order() {
                let y = hom::evaluate(g, &b, x);
                if seen[y] {
                    return None;
                }
                seen[y] = true;
            }
            Some(b)
        })
        .collect();
    let n = g.order();
    let table = (basis.len() * n <= IMAGE_TABLE_CAP).then(|| {
        basis
            .iter()
            .flat_map(|b| (0..n).map(move |x| hom::evaluate(g, b, x) as u32))
            .collect()
    });
    Ok(AutomorphismGroup {
        group: group.clone(),
        basis,
        table,
        by_source: (0..n).map(|_| OnceLock::new()).collect(),
    })
}

/// Isomorphism-invariant summary used to skip hopeless comparisons.
///
/// Every field is preserved by any isomorphism, so unequal invariants
/// prove non-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Invariants {
    pub zero_symmetric: bool,
    pub has_identity: bool,
    pub units: usize,
    pub local: bool,
    pub idempotents: usize,
    pub square_zero: usize,
    /// Sorted additive orders of the units.
    pub unit_orders: Vec<u32>,
    /// Sorted per-element profiles: additive order, size of `{x y : y}`,
    /// size of `{y : x y = 0}`, size of `{y : y x = 0}`, whether `x x = x`.
    pub element_profiles: Vec<(u32, usize, usize, usize, bool)>,
}

impl Invariants {
    pub fn compute(r: &Nearring) -> Invariants {
        let g = r.group();
        let n = r.order();
        let us = unit_structure(r).ok();
        let idempotents = (0..n).filter(|&x| r.mul(x, x) == x).count();
        let square_zero = (0..n).filter(|&x| r.mul(x, x) == 0).count();
        let (units, local, mut unit_orders) = match &us {
            Some(u) => {
                let l = u.noninvertible_mask();
                let local = u
                    .noninvertible
                    .iter()
                    .all(|&x| u.noninvertible.iter().all(|&y| l[g.add(x, y)]));
                let orders = u.units.iter().map(|&x| g.element_order(x)).collect();
                (u.units.len(), local, orders)
            }
            None => (0, false, Vec::new()),
        };
        unit_orders.sort_unstable();
        let mut element_profiles: Vec<(u32, usize, usize, usize, bool)> = (0..n)
            .map(|x| {
                let mut seen = vec![false; n];
                let image = (0..n)
                    .filter(|&y| !std::mem::replace(&mut seen[r.mul(x, y)], true))
                    .count();
                let right_zero = (0..n).filter(|&y| r.mul(x, y) == 0).count();
                let left_zero = (0..n).filter(|&y| r.mul(y, x) == 0).count();
                (g.element_order(x), image, right_zero, left_zero, r.mul(x, x) == x)
            })
            .collect();
        element_profiles.sort_unstable();
        Invariants {
            zero_symmetric: is_zero_symmetric(r),
            has_identity: us.is_some(),
            units,
            local,
            idempotents,
            square_zero,
            unit_orders,
            element_profiles,
        }
    }
}

/// Full check that `theta` carries the multiplication of `r1` onto `r2`.
pub fn is_isomorphism(r1: &Nearring, r2: &Nearring, theta: &[u32]) -> bool {
    let n = r1.order();
    theta.len() == n
        && (0..n).all(|x| {
            (0..n).all(|y| {
                theta[r1.mul(x, y)] as usize == r2.mul(theta[x] as usize, theta[y] as usize)
            })
        })
}

fn same_carrier(aut: &AutomorphismGroup, r: &Nearring) -> Result<()> {
    if r.descriptor() != aut.group.descriptor() {
        return Err(Error::CarrierMismatch(format!(
            "nearring on {} compared over {}",
            r.descriptor(),
            aut.group.descriptor()
        )));
    }
    Ok(())
}

/// Searches `Aut(G)` for an isomorphism `r1 -> r2`.
///
/// Candidates must send identity to identity and respect products of basis
/// pairs before the full sweep. The first witness in enumeration order is
/// returned, so results do not depend on thread count.
pub fn find_isomorphism(
    aut: &AutomorphismGroup,
    r1: &Nearring,
    r2: &Nearring,
) -> Result<Option<Automorphism>> {
    same_carrier(aut, r1)?;
    same_carrier(aut, r2)?;
    let (i1, i2) = (find_identity_index(r1), find_identity_index(r2));
    if i1.is_some() != i2.is_some() {
        return Ok(None);
    }
    let basis = aut.group.basis();
    let probes: Vec<(usize, usize)> = basis
        .iter()
        .flat_map(|&x| basis.iter().map(move |&y| (x, y)))
        .collect();
    let check = |k: usize| {
        probes.iter().all(|&(x, y)| {
            aut.image(k, r1.mul(x, y)) == r2.mul(aut.image(k, x), aut.image(k, y))
        }) && is_isomorphism(r1, r2, &aut.images(k))
    };
    let found = match (i1, i2) {
        (Some(a), Some(b)) => aut
            .sending(a, b)
            .par_iter()
            .map(|&k| k as usize)
            .find_first(|&k| check(k)),
        _ => (0..aut.len()).into_par_iter().find_first(|&k| check(k)),
    };
    Ok(found.map(|k| aut.get(k)))
}

/// Builds `Aut(G)` and tests `r1` against `r2`.
pub fn are_isomorphic(r1: &Nearring, r2: &Nearring) -> Result<Option<Automorphism>> {
    if r1.descriptor() != r2.descriptor() {
        return Err(Error::CarrierMismatch(format!(
            "{} vs {}",
            r1.descriptor(),
            r2.descriptor()
        )));
    }
    if Invariants::compute(r1) != Invariants::compute(r2) {
        return Ok(None);
    }
    let aut = automorphisms(r1.group_arc())?;
    find_isomorphism(&aut, r1, r2)
}

/// Isomorphism classes of a list of nearrings, as index sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    /// Sorted members of each class, classes sorted by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// `class_of[i]` indexes `classes`.
    pub class_of: Vec<usize>,
    /// Isomorphism from the first member of its class onto each item.
    pub witnesses: Vec<Automorphism>,
}

/// Partitions `items` into isomorphism classes.
pub fn classify(items: &[Nearring]) -> Result<Partition> {
    let Some(first) = items.first() else {
        return Ok(Partition {
            classes: Vec::new(),
            class_of: Vec::new(),
            witnesses: Vec::new(),
        });
    };
    let aut = automorphisms(first.group_arc())?;
    classify_with(&aut, items)
}

/// As [`classify`], reusing a precomputed automorphism group.
pub fn classify_with(aut: &AutomorphismGroup, items: &[Nearring]) -> Result<Partition> {
    for r in items {
        same_carrier(aut, r)?;
    }
    let invariants: Vec<Invariants> = items.par_iter().map(Invariants::compute).collect();
    let n = aut.group.order();
    let identity: Vec<u32> = (0..n as u32).collect();
    // (first member, members, witnesses onto members)
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut witnesses: Vec<Option<Automorphism>> = vec![None; items.len()];
    let mut class_of = vec![0usize; items.len()];
    for (i, r) in items.iter().enumerate() {
        let mut placed = None;
        for (c, (rep, _)) in classes.iter().enumerate() {
            if invariants[*rep] != invariants[i] {
                continue;
            }
            if let Some(w) = find_isomorphism(aut, &items[*rep], r)? {
                placed = Some((c, w));
                break;
            }
        }
        match placed {
            Some((c, w)) => {
                classes[c].1.push(i);
                class_of[i] = c;
                witnesses[i] = Some(w);
            }
            None => {
                class_of[i] = classes.len();
                classes.push((i, vec![i]));
                witnesses[i] = Some(Automorphism {
                    generator_images: free_generators(&aut.group)
                        .iter()
                        .map(|&s| aut.group.element(s))
                        .collect(),
                    images: identity.clone(),
                });
            }
        }
    }
    Ok(Partition {
        classes: classes.into_iter().map(|(_, m)| m).collect(),
        class_of,
        witnesses: witnesses.into_iter().map(|w| w.expect("every item is placed")).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Carrier, FamilySpec, Variant};
    use crate::group::{GroupDescriptor, GroupKind};
    use crate::hom::{extend, is_homomorphism};

    fn group(kind: GroupKind, p: u32) -> Arc<Group> {
        Arc::new(Group::new(GroupDescriptor::new(kind, p).unwrap()).unwrap())
    }

    /// Counts bijective extensions that pass the exhaustive homomorphism
    /// test, ignoring the relators entirely.
    fn brute_force_aut_count(g: &Group) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        for imgs in generator_tuples(g) {
            let e = extend(g, &imgs);
            let mut sorted = e.clone();
            sorted.sort_unstable();
            let bij = sorted.iter().enumerate().all(|(i, &v)| i as u32 == v);
            let fixes = free_generators(g).iter().zip(&imgs).all(|(&s, &i)| e[s] as usize == i);
            if bij && fixes && is_homomorphism(g, &e) {
                seen.insert(e);
            }
        }
        seen.len()
    }

    #[test]
    fn automorphism_group_orders() {
        let cases = [
            (GroupKind::CyclicP3, 3, 18),
            (GroupKind::Heisenberg, 3, 432),
            (GroupKind::MetacyclicAbelian, 3, 108),
            (GroupKind::MetacyclicNonabelian, 3, 54),
            (GroupKind::ElemAbelian, 2, 168),
            (GroupKind::Dihedral8, 2, 8),
            (GroupKind::Quaternion8, 2, 24),
            (GroupKind::CyclicP3, 2, 4),
        ];
        for (kind, p, want) in cases {
            let g = group(kind, p);
            let aut = automorphisms(&g).unwrap();
            assert_eq!(aut.len(), want, "{kind:?}");
            assert_eq!(brute_force_aut_count(&g), want, "{kind:?}");
        }
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms() {
        let g = group(GroupKind::Heisenberg, 3);
        let aut = automorphisms(&g).unwrap();
        for k in (0..aut.len()).step_by(17) {
            let im = aut.images(k);
            assert!(is_homomorphism(&g, &im));
        }
    }

    #[test]
    fn orbit_representatives_of_cyclic_group() {
        let g = group(GroupKind::CyclicP3, 3);
        let aut = automorphisms(&g).unwrap();
        // orbits are the elements of each order: 1, 3, 9, 27
        assert_eq!(aut.orbit_representatives(&(0..27).collect::<Vec<_>>()), vec![0, 1, 3, 9]);
    }

    /// Transport of a multiplication along an automorphism.
    fn transport(r: &Nearring, theta: &[u32]) -> Nearring {
        let n = r.order();
        let mut inv = vec![0u32; n];
        for (x, &t) in theta.iter().enumerate() {
            inv[t as usize] = x as u32;
        }
        let mut t = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                t[x * n + y] = theta[r.mul(inv[x] as usize, inv[y] as usize)];
            }
        }
        Nearring::from_table(r.group_arc().clone(), t).unwrap()
    }

    #[test]
    fn transported_copy_is_isomorphic() {
        let r = build(FamilySpec::new(Carrier::G1, Variant::Quadratic), 3).unwrap();
        let aut = automorphisms(r.group_arc()).unwrap();
        let theta = aut.images(aut.len() / 3);
        let s = transport(&r, &theta);
        assert!(!r.agrees_with(&s) || theta.iter().enumerate().all(|(i, &v)| i as u32 == v));
        let w = are_isomorphic(&r, &s).unwrap().expect("isomorphic");
        assert!(is_isomorphism(&r, &s, &w.images));
    }

    #[test]
    fn families_partition_into_p_plus_one_classes() {
        for carrier in [Carrier::G1, Carrier::G3] {
            let specs = FamilySpec::all_for(carrier, 3);
            let rs: Vec<Nearring> = specs.iter().map(|&s| build(s, 3).unwrap()).collect();
            let part = classify(&rs).unwrap();
            assert_eq!(part.classes.len(), 4, "{carrier:?}");
            for (i, w) in part.witnesses.iter().enumerate() {
                let rep = part.classes[part.class_of[i]][0];
                assert!(is_isomorphism(&rs[rep], &rs[i], &w.images));
            }
        }
    }

    #[test]
    fn classification_ignores_input_order() {
        let g = group(GroupKind::Heisenberg, 3);
        let base = build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap();
        let aut = automorphisms(&g).unwrap();
        let mut rs = vec![base.clone()];
        for k in [5, 40, 200] {
            rs.push(transport(&base, &aut.images(k)));
        }
        for spec in FamilySpec::all_for(Carrier::G1, 3) {
            rs.push(build(spec, 3).unwrap());
        }
        let canon = |p: &Partition, order: &[usize]| {
            let mut sets: Vec<Vec<usize>> = p
                .classes
                .iter()
                .map(|c| {
                    let mut v: Vec<usize> = c.iter().map(|&i| order[i]).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            sets.sort();
            sets
        };
        let fwd: Vec<usize> = (0..rs.len()).collect();
        let rev: Vec<usize> = fwd.iter().rev().copied().collect();
        let rs_rev: Vec<Nearring> = rev.iter().map(|&i| rs[i].clone()).collect();
        let a = classify_with(&aut, &rs).unwrap();
        let b = classify_with(&aut, &rs_rev).unwrap();
        assert_eq!(canon(&a, &fwd), canon(&b, &rev));
        assert_eq!(a.classes.len(), 4);
    }

    #[test]
    fn different_carriers_rejected() {
        let r1 = build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap();
        let r3 = build(FamilySpec::new(Carrier::G3, Variant::Constant), 3).unwrap();
        assert!(matches!(are_isomorphic(&r1, &r3), Err(Error::CarrierMismatch(_))));
        assert!(matches!(classify(&[r1, r3]), Err(Error::CarrierMismatch(_))));
    }
}
