//! Structural predicates on nearrings: axioms, identity, units, locality,
//! zero-symmetry, ideals and the structure of the non-invertible subgroup.
//!
//! Checks are exhaustive unless a [`CheckMode::Sampled`] mode is requested.
//! Parallel sweeps split on the first factor and merge by taking the first
//! counterexample in index order, so results do not depend on thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupKind};
use crate::nearring::{is_two_sided_identity, Nearring};
use crate::subgroup::{self, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckMode {
    #[default]
    Full,
    /// Every `x`, and `y, z` restricted to every `stride`-th index plus the
    /// presentation basis.
    Sampled { stride: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub axiom: &'static str,
    pub x: Element,
    pub y: Element,
    pub z: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
}

fn sweep(
    r: &Nearring,
    mode: CheckMode,
    axiom: &'static str,
    fails: impl Fn(usize, usize, usize) -> bool + Sync,
) -> AxiomCheck {
    let n = r.order();
    let inner: Vec<usize> = match mode {
        CheckMode::Full => (0..n).collect(),
        CheckMode::Sampled { stride } => {
            let mut v: Vec<usize> = (0..n).step_by(stride.max(1)).collect();
            v.extend(r.group().basis());
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    // force the table before fanning out
    let _ = r.table();
    let found = (0..n).into_par_iter().find_map_first(|x| {
        for &y in &inner {
            for &z in &inner {
                if fails(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    });
    let g = r.group();
    AxiomCheck {
        holds: found.is_none(),
        counterexample: found.map(|(x, y, z)| Counterexample {
            axiom,
            x: g.element(x),
            y: g.element(y),
            z: g.element(z),
        }),
    }
}

/// `x(y + z) = xy + xz` for all triples.
pub fn check_left_distributive(r: &Nearring) -> AxiomCheck {
    check_left_distributive_with(r, CheckMode::Full)
}

pub fn check_left_distributive_with(r: &Nearring, mode: CheckMode) -> AxiomCheck {
    let g = r.group();
    sweep(r, mode, "left distributivity", |x, y, z| {
        r.mul(x, g.add(y, z)) != g.add(r.mul(x, y), r.mul(x, z))
    })
}

/// `(xy)z = x(yz)` for all triples.
pub fn check_associative(r: &Nearring) -> AxiomCheck {
    check_associative_with(r, CheckMode::Full)
}

pub fn check_associative_with(r: &Nearring, mode: CheckMode) -> AxiomCheck {
    sweep(r, mode, "associativity", |x, y, z| {
        r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z))
    })
}

/// The unique two-sided multiplicative identity, if any.
pub fn find_identity(r: &Nearring) -> Option<Element> {
    find_identity_index(r).map(|i| r.group().element(i))
}

pub(crate) fn find_identity_index(r: &Nearring) -> Option<usize> {
    if let Some(i) = r.identity_index() {
        return Some(i);
    }
    (0..r.order()).find(|&e| is_two_sided_identity(r, e))
}

/// Units, non-units and inverses relative to the identity.
#[derive(Clone, Debug)]
pub struct UnitStructure {
    pub identity: usize,
    pub units: Vec<usize>,
    pub noninvertible: Vec<usize>,
    pub inverse: Vec<Option<usize>>,
}

impl UnitStructure {
    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse[x].is_some()
    }

    pub fn noninvertible_mask(&self) -> Vec<bool> {
        self.inverse.iter().map(Option::is_none).collect()
    }
}

pub fn unit_structure(r: &Nearring) -> Result<UnitStructure> {
    let e = find_identity_index(r).ok_or(Error::NoIdentity)?;
    let n = r.order();
    let inverse: Vec<Option<usize>> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).find(|&y| r.mul(x, y) == e && r.mul(y, x) == e))
        .collect();
    let (units, noninvertible) = (0..n).partition(|&x| inverse[x].is_some());
    Ok(UnitStructure {
        identity: e,
        units,
        noninvertible,
        inverse,
    })
}

/// Elements with a two-sided multiplicative inverse.
pub fn units(r: &Nearring) -> Result<Vec<Element>> {
    let u = unit_structure(r)?;
    Ok(u.units.iter().map(|&x| r.group().element(x)).collect())
}

fn noninvertibles_form_subgroup(r: &Nearring, u: &UnitStructure) -> bool {
    let g = r.group();
    let l = u.noninvertible_mask();
    u.noninvertible.iter().all(|&x| {
        l[g.neg(x)] && u.noninvertible.iter().all(|&y| l[g.add(x, y)])
    })
}

/// True iff the non-invertible elements are closed under `+` and negation.
pub fn is_local(r: &Nearring) -> Result<bool> {
    let u = unit_structure(r)?;
    Ok(noninvertibles_form_subgroup(r, &u))
}

/// `0 x = 0` for all `x`.
pub fn is_zero_symmetric(r: &Nearring) -> bool {
    (0..r.order()).all(|x| r.mul(0, x) == 0)
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub group: String,
    pub left_distributive: bool,
    pub associative: bool,
    pub has_identity: bool,
    pub identity: Option<Element>,
    pub units: Vec<Element>,
    pub noninvertible: Vec<Element>,
    pub local: bool,
    pub zero_symmetric: bool,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    pub fn compute(r: &Nearring) -> PropertyReport {
        Self::compute_with(r, CheckMode::Full)
    }

    pub fn compute_with(r: &Nearring, mode: CheckMode) -> PropertyReport {
        let ld = check_left_distributive_with(r, mode);
        let assoc = check_associative_with(r, mode);
        let g = r.group();
        let us = unit_structure(r).ok();
        let elems = |v: &[usize]| v.iter().map(|&x| g.element(x)).collect::<Vec<_>>();
        PropertyReport {
            group: r.descriptor().to_string(),
            left_distributive: ld.holds,
            associative: assoc.holds,
            has_identity: us.is_some(),
            identity: us.as_ref().map(|u| g.element(u.identity)),
            units: us.as_ref().map(|u| elems(&u.units)).unwrap_or_default(),
            noninvertible: us.as_ref().map(|u| elems(&u.noninvertible)).unwrap_or_default(),
            local: us
                .as_ref()
                .is_some_and(|u| noninvertibles_form_subgroup(r, u)),
            zero_symmetric: is_zero_symmetric(r),
            counterexample: ld.counterexample.or(assoc.counterexample),
        }
    }

    pub fn is_nearring(&self) -> bool {
        self.left_distributive && self.associative
    }

    pub fn summary(&self) -> String {
        let kind = if !self.is_nearring() {
            "not a nearring".to_string()
        } else if !self.has_identity {
            "nearring without identity".to_string()
        } else {
            format!(
                "{}, {}",
                if self.local { "local" } else { "non-local" },
                if self.zero_symmetric {
                    "zero-symmetric"
                } else {
                    "non-zero-symmetric"
                }
            )
        };
        format!("{}: {kind}", self.group)
    }
}

/// Results of the three structural statements about the non-invertible
/// subgroup `L` of a local nearring.
#[derive(Clone, Debug, Serialize)]
pub struct LocalStructureReport {
    /// `x L y` is contained in `L` for all `x, y`.
    pub l_is_rr_subgroup: bool,
    /// Every proper subgroup `M` with `r M` inside `M` for all units `r` lies in `L`.
    pub invariant_subgroups_in_l: bool,
    /// `i + L` is a subgroup of the unit group.
    pub identity_coset_is_subgroup: bool,
    pub subgroups_examined: usize,
    pub failure: Option<String>,
}

impl LocalStructureReport {
    pub fn all_hold(&self) -> bool {
        self.l_is_rr_subgroup && self.invariant_subgroups_in_l && self.identity_coset_is_subgroup
    }
}

pub fn check_local_structure(r: &Nearring) -> Result<LocalStructureReport> {
    let u = unit_structure(r)?;
    if !noninvertibles_form_subgroup(r, &u) {
        return Err(Error::NotLocal);
    }
    let g = r.group();
    let n = r.order();
    let l = u.noninvertible_mask();
    let mut failure = None;

    let rr_bad = (0..n).into_par_iter().find_map_first(|x| {
        for &m in &u.noninvertible {
            let xm = r.mul(x, m);
            for y in 0..n {
                if !l[r.mul(xm, y)] {
                    return Some((x, m, y));
                }
            }
        }
        None
    });
    if let Some((x, m, y)) = rr_bad {
        failure.get_or_insert(format!(
            "{} * {} * {} is invertible",
            g.element(x),
            g.element(m),
            g.element(y)
        ));
    }

    let subgroups = g.subgroups();
    let mut invariant_ok = true;
    for s in subgroups.iter().filter(|s| s.len() < n) {
        let invariant = u
            .units
            .iter()
            .all(|&r_| s.members().iter().all(|&m| s.contains(r.mul(r_, m))));
        if invariant && !s.is_subset_of(&l) {
            invariant_ok = false;
            failure.get_or_insert(format!(
                "unit-invariant subgroup of order {} is not inside L",
                s.len()
            ));
            break;
        }
    }

    let coset: Vec<usize> = u.noninvertible.iter().map(|&m| g.add(u.identity, m)).collect();
    let mut in_coset = vec![false; n];
    for &c in &coset {
        in_coset[c] = true;
    }
    let coset_ok = coset.iter().all(|&c| {
        u.is_unit(c)
            && u.inverse[c].is_some_and(|inv| in_coset[inv])
            && coset.iter().all(|&d| in_coset[r.mul(c, d)])
    });
    if !coset_ok {
        failure.get_or_insert("i + L is not a multiplicative subgroup".into());
    }

    Ok(LocalStructureReport {
        l_is_rr_subgroup: rr_bad.is_none(),
        invariant_subgroups_in_l: invariant_ok,
        identity_coset_is_subgroup: coset_ok,
        subgroups_examined: subgroups.len(),
        failure,
    })
}

fn subgroup_of(r: &Nearring, set: &[usize]) -> Result<Subgroup> {
    subgroup::as_subgroup(r.group(), set).ok_or(Error::NotASubgroup)
}

/// Normality in `R+` together with `(z + x) y - x y` in `I` for all
/// `z` in `I` and all `x, y`.
pub fn is_ideal(r: &Nearring, set: &[usize]) -> Result<bool> {
    let h = subgroup_of(r, set)?;
    let g = r.group();
    if !subgroup::is_normal(g, &h) {
        return Ok(false);
    }
    let n = r.order();
    Ok(h.members().par_iter().all(|&z| {
        (0..n).all(|x| {
            let zx = g.add(z, x);
            (0..n).all(|y| h.contains(g.sub(r.mul(zx, y), r.mul(x, y))))
        })
    }))
}

/// [`is_ideal`] plus left absorption `x z` in `I`.
pub fn is_two_sided_ideal(r: &Nearring, set: &[usize]) -> Result<bool> {
    if !is_ideal(r, set)? {
        return Ok(false);
    }
    let h = subgroup_of(r, set)?;
    Ok((0..r.order()).all(|x| h.members().iter().all(|&z| h.contains(r.mul(x, z)))))
}

/// Additive order of the identity equals the exponent of `R+`, and so does
/// the additive order of every unit.
pub fn identity_order_equals_exponent(r: &Nearring) -> Result<bool> {
    let u = unit_structure(r)?;
    let g = r.group();
    let exp = g.exponent();
    Ok(g.element_order(u.identity) == exp && u.units.iter().all(|&x| g.element_order(x) == exp))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Applicability {
    Holds,
    Fails(String),
    Excluded(String),
}

impl Applicability {
    pub fn is_violation(&self) -> bool {
        matches!(self, Applicability::Fails(_))
    }
}

/// For a local nearring of order `p^3` that is neither the residue ring
/// `Z/p^3` nor a nearfield: `L` is elementary abelian of order `p^2`.
pub fn check_elementary_noninvertibles(r: &Nearring) -> Result<Applicability> {
    let u = unit_structure(r)?;
    if !noninvertibles_form_subgroup(r, &u) {
        return Ok(Applicability::Excluded("not local".into()));
    }
    if r.descriptor().kind() == GroupKind::CyclicP3 {
        return Ok(Applicability::Excluded(
            "cyclic additive group: the residue ring".into(),
        ));
    }
    if u.noninvertible.len() <= 1 {
        return Ok(Applicability::Excluded("nearfield (L = {0})".into()));
    }
    let g = r.group();
    let p = r.descriptor().p() as usize;
    let l = &u.noninvertible;
    if l.len() != p * p {
        return Ok(Applicability::Fails(format!("|L| = {}, expected {}", l.len(), p * p)));
    }
    if let Some(&x) = l.iter().find(|&&x| x != 0 && g.element_order(x) as usize != p) {
        return Ok(Applicability::Fails(format!(
            "{} in L has order {}",
            g.element(x),
            g.element_order(x)
        )));
    }
    if l.iter().any(|&x| l.iter().any(|&y| g.add(x, y) != g.add(y, x))) {
        return Ok(Applicability::Fails("L is not abelian".into()));
    }
    Ok(Applicability::Holds)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::{Group, GroupDescriptor};

    fn carrier(kind: GroupKind, p: u32) -> Arc<Group> {
        Arc::new(Group::new(GroupDescriptor::new(kind, p).unwrap()).unwrap())
    }

    fn tabulate(g: &Arc<Group>, f: impl Fn(usize, usize) -> usize) -> Nearring {
        let n = g.order();
        let t = (0..n * n).map(|k| f(k / n, k % n) as u32).collect();
        Nearring::from_table(g.clone(), t).unwrap()
    }

    /// `Z/p^3` with its ring multiplication.
    fn residue_ring(p: u32) -> Nearring {
        let g = carrier(GroupKind::CyclicP3, p);
        let n = g.order();
        tabulate(&g, |x, y| x * y % n)
    }

    /// `(Z/p)^3` with componentwise multiplication.
    fn product_ring(p: u32) -> Nearring {
        let g = carrier(GroupKind::ElemAbelian, p);
        let d = g.descriptor();
        let g2 = g.clone();
        tabulate(&g, move |x, y| {
            let (a, b) = (g2.element(x), g2.element(y));
            let c: Vec<i64> = (0..3).map(|k| a.get(k) as i64 * b.get(k) as i64).collect();
            d.index_unchecked(&d.reduce(&c))
        })
    }

    #[test]
    fn trivial_multiplication() {
        let g = carrier(GroupKind::Heisenberg, 3);
        let r = tabulate(&g, |_, _| 0);
        assert!(check_left_distributive(&r).holds);
        assert!(check_associative(&r).holds);
        assert!(is_zero_symmetric(&r));
        assert_eq!(find_identity(&r), None);
        assert!(matches!(units(&r), Err(Error::NoIdentity)));
    }

    #[test]
    fn left_projection_is_not_distributive() {
        let g = carrier(GroupKind::Heisenberg, 3);
        let r = tabulate(&g, |x, _| x);
        let c = check_left_distributive(&r);
        assert!(!c.holds);
        let ce = c.counterexample.unwrap();
        // first failure in index order: x = c, y = z = 0 gives c != c + c
        assert_eq!(ce.x, Element::new(&[0, 0, 1]));
        assert_eq!(ce.y, Element::new(&[0, 0, 0]));
    }

    #[test]
    fn subtraction_is_not_associative() {
        let g = carrier(GroupKind::CyclicP3, 3);
        let g2 = g.clone();
        let r = tabulate(&g, move |x, y| g2.add(g2.neg(x), y));
        let c = check_associative(&r);
        assert!(!c.holds);
        let ce = c.counterexample.unwrap();
        // (xy)z = x - y + z and x(yz) = -x - y + z differ exactly when 2x != 0
        assert_eq!((ce.x.get(0), ce.y.get(0), ce.z.get(0)), (1, 0, 0));
    }

    #[test]
    fn residue_ring_is_local() {
        let r = residue_ring(3);
        assert_eq!(find_identity(&r), Some(Element::new(&[1])));
        assert!(is_local(&r).unwrap());
        let u = unit_structure(&r).unwrap();
        assert_eq!(u.noninvertible, (0..27).step_by(3).collect::<Vec<_>>());
        assert!(identity_order_equals_exponent(&r).unwrap());
        assert!(matches!(
            check_elementary_noninvertibles(&r).unwrap(),
            Applicability::Excluded(_)
        ));
        assert!(check_local_structure(&r).unwrap().all_hold());
    }

    #[test]
    fn product_ring_is_not_local() {
        let r = product_ring(3);
        assert!(check_left_distributive(&r).holds);
        assert!(check_associative(&r).holds);
        assert_eq!(find_identity(&r), Some(Element::new(&[1, 1, 1])));
        assert!(!is_local(&r).unwrap());
        assert!(matches!(check_local_structure(&r), Err(Error::NotLocal)));
    }

    #[test]
    fn ideals() {
        let r = residue_ring(3);
        assert!(is_ideal(&r, &[0]).unwrap());
        let threes: Vec<usize> = (0..27).step_by(3).collect();
        assert!(is_ideal(&r, &threes).unwrap());
        assert!(is_two_sided_ideal(&r, &threes).unwrap());
        assert!(matches!(is_ideal(&r, &[0, 1]), Err(Error::NotASubgroup)));
    }

    #[test]
    fn sampled_checks_agree_on_valid_structures() {
        let r = product_ring(3);
        assert!(check_left_distributive_with(&r, CheckMode::Sampled { stride: 5 }).holds);
        let rep = PropertyReport::compute_with(&r, CheckMode::Sampled { stride: 4 });
        assert!(rep.is_nearring());
        assert!(!rep.local);
        assert_eq!(rep.units.len(), 8);
    }
}
