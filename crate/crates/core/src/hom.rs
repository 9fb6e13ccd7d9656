//! Homomorphisms out of the presentation groups.
//!
//! A map on the generators extends to an additive endomorphism exactly when
//! the images satisfy the defining relations. The extension is evaluated on
//! the normal-form word `a x1 + b x2 + c x3` of each element.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Group, GroupKind};

/// Largest group whose endomorphisms or automorphisms are enumerated.
pub const HOM_CAP: usize = 343;

/// Generators whose images determine a homomorphism. For the Heisenberg
/// group `c` is the commutator of `a` and `b`, so only two are free.
pub fn free_generators(g: &Group) -> Vec<usize> {
    let basis = g.basis();
    match g.descriptor().kind() {
        GroupKind::Heisenberg => basis[..2].to_vec(),
        _ => basis,
    }
}

/// Checks the defining relators of the presentation on candidate images.
pub fn relations_hold(g: &Group, images: &[usize]) -> bool {
    let p = g.descriptor().p() as i64;
    let zero = 0;
    let commute = |x: usize, y: usize| g.add(x, y) == g.add(y, x);
    match g.descriptor().kind() {
        GroupKind::CyclicP3 => g.multiple(images[0], p * p * p) == zero,
        GroupKind::MetacyclicAbelian => {
            let (u, v) = (images[0], images[1]);
            g.multiple(u, p * p) == zero && g.multiple(v, p) == zero && commute(u, v)
        }
        GroupKind::ElemAbelian => {
            let (u, v, w) = (images[0], images[1], images[2]);
            images.iter().all(|&x| g.multiple(x, p) == zero)
                && commute(u, v)
                && commute(u, w)
                && commute(v, w)
        }
        GroupKind::Dihedral8 => {
            let (u, v) = (images[0], images[1]);
            g.multiple(u, 4) == zero
                && g.multiple(v, 2) == zero
                && g.add(g.neg(u), v) == g.add(v, u)
        }
        GroupKind::Quaternion8 => {
            let (u, v) = (images[0], images[1]);
            g.multiple(u, 4) == zero
                && g.multiple(v, 2) == g.multiple(u, 2)
                && g.add(g.neg(u), v) == g.add(v, u)
        }
        GroupKind::MetacyclicNonabelian => {
            let (u, v) = (images[0], images[1]);
            g.multiple(u, p * p) == zero
                && g.multiple(v, p) == zero
                && g.add(g.add(g.neg(v), u), v) == g.multiple(u, 1 + p)
        }
        GroupKind::Heisenberg => {
            let (u, v) = (images[0], images[1]);
            let w = g.commutator(u, v);
            g.multiple(u, p) == zero
                && g.multiple(v, p) == zero
                && g.multiple(w, p) == zero
                && commute(u, w)
                && commute(v, w)
        }
    }
}

/// Images of the full basis `a, b, (c)` under the map fixed by `free`.
pub fn basis_images(g: &Group, free: &[usize]) -> Vec<usize> {
    match g.descriptor().kind() {
        GroupKind::Heisenberg => vec![free[0], free[1], g.commutator(free[0], free[1])],
        _ => free.to_vec(),
    }
}

/// Evaluates the homomorphism with the given basis images on one element.
#[inline]
pub fn evaluate(g: &Group, basis_imgs: &[usize], x: usize) -> usize {
    let coords = g.element(x);
    let mut acc = 0;
    for (k, &img) in basis_imgs.iter().enumerate() {
        acc = g.add(acc, g.multiple(img, coords.get(k) as i64));
    }
    acc
}

pub fn extend(g: &Group, free: &[usize]) -> Vec<u32> {
    let basis = basis_images(g, free);
    (0..g.order())
        .map(|x| evaluate(g, &basis, x) as u32)
        .collect()
}

/// Exhaustive homomorphism check, independent of the presentation.
pub fn is_homomorphism(g: &Group, images: &[u32]) -> bool {
    let n = g.order();
    images.len() == n
        && (0..n).all(|x| {
            (0..n).all(|y| {
                images[g.add(x, y)] as usize == g.add(images[x] as usize, images[y] as usize)
            })
        })
}

/// All candidate generator-image tuples, in index order.
pub(crate) fn generator_tuples(g: &Group) -> impl Iterator<Item = Vec<usize>> + '_ {
    let d = free_generators(g).len();
    let n = g.order();
    let total = n.pow(d as u32);
    (0..total).map(move |mut t| {
        let mut v = vec![0; d];
        for k in (0..d).rev() {
            v[k] = t % n;
            t /= n;
        }
        v
    })
}

pub(crate) fn check_cap(g: &Group, operation: &'static str) -> Result<()> {
    if g.order() > HOM_CAP {
        return Err(Error::SizeCap {
            operation,
            order: g.order(),
            cap: HOM_CAP,
        });
    }
    Ok(())
}

/// An additive endomorphism given by its full graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endomorphism {
    images: Vec<u32>,
}

impl Endomorphism {
    pub fn identity(n: usize) -> Endomorphism {
        Endomorphism {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Endomorphism {
        Endomorphism { images }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self after other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }
}

enum Lookup {
    Flat(Vec<u32>),
    Map(HashMap<usize, u32>),
}

/// The complete endomorphism monoid, sorted by image array.
pub struct EndomorphismMonoid {
    endos: Vec<Endomorphism>,
    free: Vec<usize>,
    n: usize,
    lookup: Lookup,
}

impl EndomorphismMonoid {
    pub fn len(&self) -> usize {
        self.endos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endos.is_empty()
    }

    pub fn get(&self, e: usize) -> &Endomorphism {
        &self.endos[e]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Endomorphism> {
        self.endos.iter()
    }

    fn key(&self, images: impl Iterator<Item = usize>) -> usize {
        images.fold(0, |acc, y| acc * self.n + y)
    }

    /// Position of the endomorphism sending the free generators to `images`.
    pub fn find_by_generators(&self, images: &[usize]) -> Option<usize> {
        let key = self.key(images.iter().copied());
        match &self.lookup {
            Lookup::Flat(v) => v.get(key).copied().filter(|&i| i != u32::MAX).map(|i| i as usize),
            Lookup::Map(m) => m.get(&key).map(|&i| i as usize),
        }
    }

    pub fn position(&self, e: &Endomorphism) -> Option<usize> {
        let imgs: Vec<usize> = self.free.iter().map(|&g| e.apply(g)).collect();
        self.find_by_generators(&imgs)
    }

    /// Index of `e after f`.
    #[inline]
    pub fn compose(&self, e: usize, f: usize) -> usize {
        let (e, f) = (&self.endos[e], &self.endos[f]);
        let key = self.key(self.free.iter().map(|&g| e.apply(f.apply(g))));
        match &self.lookup {
            Lookup::Flat(v) => v[key] as usize,
            Lookup::Map(m) => m[&key] as usize,
        }
    }
}

/// Enumerates `End(g)` by generator images satisfying the relations.
pub fn endomorphisms(g: &Group) -> Result<EndomorphismMonoid> {
    check_cap(g, "endomorphism enumeration")?;
    let free = free_generators(g);
    let mut endos: Vec<Endomorphism> = generator_tuples(g)
        .filter(|imgs| relations_hold(g, imgs))
        .map(|imgs| Endomorphism::from_images(extend(g, &imgs)))
        .collect();
    endos.sort();
    endos.dedup();
    let n = g.order();
    let slots = n.checked_pow(free.len() as u32).unwrap_or(usize::MAX);
    let mut monoid = EndomorphismMonoid {
        endos,
        free,
        n,
        lookup: Lookup::Map(HashMap::new()),
    };
    let keys: Vec<usize> = monoid
        .endos
        .iter()
        .map(|e| monoid.key(monoid.free.iter().map(|&g| e.apply(g))))
        .collect();
    monoid.lookup = if slots <= 1 << 24 {
        let mut flat = vec![u32::MAX; slots];
        for (i, k) in keys.into_iter().enumerate() {
            flat[k] = i as u32;
        }
        Lookup::Flat(flat)
    } else {
        Lookup::Map(keys.into_iter().enumerate().map(|(i, k)| (k, i as u32)).collect())
    };
    Ok(monoid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupDescriptor;

    fn group(kind: GroupKind, p: u32) -> Group {
        Group::new(GroupDescriptor::new(kind, p).unwrap()).unwrap()
    }

    /// Brute force over every generator-image tuple, checking the full
    /// homomorphism property of the extension instead of the relations.
    fn brute_force_count(g: &Group) -> usize {
        let free = free_generators(g);
        let mut found = std::collections::BTreeSet::new();
        for imgs in generator_tuples(g) {
            let e = extend(g, &imgs);
            if is_homomorphism(g, &e) && free.iter().zip(&imgs).all(|(&s, &i)| e[s] as usize == i) {
                found.insert(e);
            }
        }
        found.len()
    }

    #[test]
    fn cyclic_endomorphisms_are_scalars() {
        for p in [2, 3] {
            let g = group(GroupKind::CyclicP3, p);
            assert_eq!(endomorphisms(&g).unwrap().len(), (p * p * p) as usize);
        }
    }

    #[test]
    fn relation_check_matches_brute_force() {
        for (kind, p) in [
            (GroupKind::Dihedral8, 2),
            (GroupKind::Quaternion8, 2),
            (GroupKind::ElemAbelian, 2),
            (GroupKind::MetacyclicAbelian, 2),
            (GroupKind::CyclicP3, 3),
            (GroupKind::MetacyclicAbelian, 3),
            (GroupKind::MetacyclicNonabelian, 3),
            (GroupKind::Heisenberg, 3),
        ] {
            let g = group(kind, p);
            let m = endomorphisms(&g).unwrap();
            assert_eq!(m.len(), brute_force_count(&g), "{kind:?}");
            for e in m.iter() {
                assert!(is_homomorphism(&g, e.images()));
            }
        }
    }

    #[test]
    fn known_endomorphism_counts() {
        // every pair of images extends for the free exponent-3 class-2 group
        assert_eq!(endomorphisms(&group(GroupKind::Heisenberg, 3)).unwrap().len(), 729);
        // a -> any of 27, b -> any of the 9 elements killed by 3
        assert_eq!(
            endomorphisms(&group(GroupKind::MetacyclicAbelian, 3)).unwrap().len(),
            243
        );
    }

    #[test]
    fn composition_agrees_with_graphs() {
        let g = group(GroupKind::MetacyclicNonabelian, 3);
        let m = endomorphisms(&g).unwrap();
        let id = m.position(&Endomorphism::identity(g.order())).unwrap();
        for e in (0..m.len()).step_by(7) {
            assert_eq!(m.compose(e, id), e);
            assert_eq!(m.compose(id, e), e);
            for f in (0..m.len()).step_by(11) {
                let direct = m.get(e).compose(m.get(f));
                assert_eq!(m.get(m.compose(e, f)), &direct);
            }
        }
        // idempotents stay idempotent
        for e in 0..m.len() {
            if m.compose(e, e) == e {
                let ee = m.get(e).compose(m.get(e));
                assert_eq!(&ee, m.get(e));
            }
        }
    }

    #[test]
    fn size_cap() {
        let g = Group::new(GroupDescriptor::heisenberg(11).unwrap()).unwrap();
        assert!(matches!(endomorphisms(&g), Err(Error::SizeCap { .. })));
    }
}
