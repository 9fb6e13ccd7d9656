//! Coordinate profiles of `x b` and the functional constraints they obey.
//!
//! In a nearring with identity `a` on the Heisenberg group, every product is
//! determined by `x b = a alpha(x) + b beta(x) + c gamma(x)`. On
//! `C_{p^2} x C_p` the same holds with `x b = a alpha(x) + b beta(x)`.
//! [`audit_mapping_constraints`] checks the recursions those maps must
//! satisfy, exhaustively over all pairs.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupKind};
use crate::nearring::Nearring;
use crate::properties::{is_local, is_zero_symmetric};

/// `(alpha, beta, gamma)` as canonical residues, indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MappingProfile {
    pub kind: GroupKind,
    pub p: u32,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    /// Heisenberg carrier only.
    pub gamma: Option<Vec<i64>>,
}

fn supported(r: &Nearring) -> Result<GroupKind> {
    match r.descriptor().kind() {
        k @ (GroupKind::Heisenberg | GroupKind::MetacyclicAbelian) => Ok(k),
        k => Err(Error::CarrierMismatch(format!(
            "mapping profiles are defined on the Heisenberg group and C_p^2 x C_p, not {}",
            k.name()
        ))),
    }
}

fn require_identity_a(r: &Nearring) -> Result<()> {
    let g = r.group();
    let a = g.basis()[0];
    if (0..g.order()).all(|x| r.mul(a, x) == x && r.mul(x, a) == x) {
        Ok(())
    } else {
        Err(Error::InvalidIdentity(g.element(a)))
    }
}

impl MappingProfile {
    /// Reads `alpha, beta, gamma` off the products `x b`.
    pub fn extract(r: &Nearring) -> Result<MappingProfile> {
        let kind = supported(r)?;
        require_identity_a(r)?;
        let g = r.group();
        let b = g.basis()[1];
        let coord = |k: usize| -> Vec<i64> {
            (0..g.order()).map(|x| g.element(r.mul(x, b)).get(k) as i64).collect()
        };
        Ok(MappingProfile {
            kind,
            p: r.descriptor().p(),
            alpha: coord(0),
            beta: coord(1),
            gamma: (kind == GroupKind::Heisenberg).then(|| coord(2)),
        })
    }

    fn at(&self, x: usize) -> (i64, i64, i64) {
        let gamma = self.gamma.as_ref().map_or(0, |g| g[x]);
        (self.alpha[x], self.beta[x], gamma)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub statement: &'static str,
    /// `None` when the constraint does not apply to this nearring.
    pub holds: Option<bool>,
    pub counterexample: Option<(Element, Element)>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstraintAudit {
    pub group: String,
    pub local: bool,
    pub zero_symmetric: bool,
    pub checks: Vec<ConstraintCheck>,
}

impl ConstraintAudit {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds != Some(false))
    }

    pub fn check(&self, name: &str) -> Option<&ConstraintCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

struct Ctx<'a> {
    r: &'a Nearring,
    prof: &'a MappingProfile,
    p: i64,
}

impl Ctx<'_> {
    fn el(&self, x: usize) -> Element {
        self.r.group().element(x)
    }

    fn c(&self, x: usize, k: usize) -> i64 {
        self.el(x).get(k) as i64
    }

    fn pairwise(
        &self,
        name: &'static str,
        statement: &'static str,
        f: impl Fn(usize, usize) -> bool + Sync,
    ) -> ConstraintCheck {
        let n = self.r.order();
        let bad = (0..n * n)
            .into_par_iter()
            .find_first(|&k| !f(k / n, k % n))
            .map(|k| (self.el(k / n), self.el(k % n)));
        ConstraintCheck {
            name,
            statement,
            holds: Some(bad.is_none()),
            counterexample: bad,
            note: None,
        }
    }

    fn single(
        &self,
        name: &'static str,
        statement: &'static str,
        f: impl Fn(usize) -> bool + Sync,
    ) -> ConstraintCheck {
        let bad = (0..self.r.order()).into_par_iter().find_first(|&x| !f(x));
        ConstraintCheck {
            name,
            statement,
            holds: Some(bad.is_none()),
            counterexample: bad.map(|x| (self.el(x), self.el(x))),
            note: None,
        }
    }

    fn zero_sym_criterion(&self) -> ConstraintCheck {
        let zs = is_zero_symmetric(self.r);
        let profile_zero = self.prof.at(0) == (0, 0, 0);
        ConstraintCheck {
            name: "zero-symmetric-iff-profile-vanishes-at-zero",
            statement: "0 x = 0 for all x  <=>  (alpha, beta, gamma)(0) = 0",
            holds: Some(zs == profile_zero),
            counterexample: None,
            note: Some(format!("zero-symmetric: {zs}, profile at 0: {:?}", self.prof.at(0))),
        }
    }
}

fn not_applicable(name: &'static str, statement: &'static str, why: &str) -> ConstraintCheck {
    ConstraintCheck {
        name,
        statement,
        holds: None,
        counterexample: None,
        note: Some(why.to_string()),
    }
}

fn heisenberg_checks(cx: &Ctx<'_>, local: bool) -> Vec<ConstraintCheck> {
    let p = cx.p;
    let m = |v: i64| v.rem_euclid(p);
    let pr = |x: usize| cx.prof.at(x);
    let mut out = vec![
        cx.pairwise(
            "product-determined-by-profile",
            "x y = a(x1y1 + alpha y2) + b(x2y1 + beta y2) + c(-x1x2 C(y1,2) - alpha beta C(y2,2) \
             - x2 alpha y1y2 + x3y1 + gamma y2 + x1 beta y3 - x2 alpha y3)",
            |x, y| {
                let (al, be, ga) = pr(x);
                let (x1, x2, x3) = (cx.c(x, 0), cx.c(x, 1), cx.c(x, 2));
                let (y1, y2, y3) = (cx.c(y, 0), cx.c(y, 1), cx.c(y, 2));
                let want = [
                    m(x1 * y1 + al * y2),
                    m(x2 * y1 + be * y2),
                    m(-x1 * x2 * binom2(y1) - al * be * binom2(y2) - x2 * al * y1 * y2
                        + x3 * y1
                        + ga * y2
                        + x1 * be * y3
                        - x2 * al * y3),
                ];
                let got = cx.el(cx.r.mul(x, y));
                (0..3).all(|k| got.get(k) as i64 == want[k])
            },
        ),
        cx.pairwise(
            "alpha-recursion",
            "alpha(xy) = x1 alpha(y) + alpha(x) beta(y)",
            |x, y| {
                let (ax, _, _) = pr(x);
                let (ay, by, _) = pr(y);
                pr(cx.r.mul(x, y)).0 == m(cx.c(x, 0) * ay + ax * by)
            },
        ),
        cx.pairwise(
            "beta-recursion",
            "beta(xy) = x2 alpha(y) + beta(x) beta(y)",
            |x, y| {
                let (_, bx, _) = pr(x);
                let (ay, by, _) = pr(y);
                pr(cx.r.mul(x, y)).1 == m(cx.c(x, 1) * ay + bx * by)
            },
        ),
        cx.pairwise(
            "gamma-recursion",
            "gamma(xy) = -x1x2 C(alpha(y),2) - alpha(x)beta(x) C(beta(y),2) - x2 alpha(x)alpha(y)beta(y) \
             + x3 alpha(y) + gamma(x)beta(y) + x1 beta(x)gamma(y) - x2 alpha(x)gamma(y)",
            |x, y| {
                let (ax, bx, gx) = pr(x);
                let (ay, by, gy) = pr(y);
                let (x1, x2, x3) = (cx.c(x, 0), cx.c(x, 1), cx.c(x, 2));
                let want = m(-x1 * x2 * binom2(ay) - ax * bx * binom2(by) - x2 * ax * ay * by
                    + x3 * ay
                    + gx * by
                    + x1 * bx * gy
                    - x2 * ax * gy);
                pr(cx.r.mul(x, y)).2 == want
            },
        ),
        cx.zero_sym_criterion(),
    ];
    const LOCAL: [(&str, &str); 4] = [
        ("local-alpha-vanishes", "alpha = 0"),
        ("local-beta-kernel-in-x1-kernel", "beta(x) = 0  =>  x1 = 0"),
        ("local-beta-multiplicative", "beta(xy) = beta(x) beta(y)"),
        ("local-gamma-cocycle", "gamma(xy) = gamma(x) beta(y) + x1 beta(x) gamma(y)"),
    ];
    if !local {
        out.extend(LOCAL.iter().map(|&(n, s)| not_applicable(n, s, "nearring is not local")));
        return out;
    }
    out.push(cx.single(LOCAL[0].0, LOCAL[0].1, |x| pr(x).0 == 0));
    out.push(cx.single(LOCAL[1].0, LOCAL[1].1, |x| pr(x).1 != 0 || cx.c(x, 0) % p == 0));
    out.push(cx.pairwise(LOCAL[2].0, LOCAL[2].1, |x, y| {
        pr(cx.r.mul(x, y)).1 == m(pr(x).1 * pr(y).1)
    }));
    out.push(cx.pairwise(LOCAL[3].0, LOCAL[3].1, |x, y| {
        let (_, bx, gx) = pr(x);
        let (_, by, gy) = pr(y);
        pr(cx.r.mul(x, y)).2 == m(gx * by + cx.c(x, 0) * bx * gy)
    }));
    out
}

fn abelian_checks(cx: &Ctx<'_>) -> Vec<ConstraintCheck> {
    let p = cx.p;
    let p2 = p * p;
    let pr = |x: usize| cx.prof.at(x);
    let a = cx.r.group().basis()[0];
    vec![
        cx.pairwise(
            "product-determined-by-profile",
            "x y = a(x1y1 + alpha(x) y2) + b(x2y1 + beta(x) y2)",
            |x, y| {
                let (al, be, _) = pr(x);
                let (x1, x2, y1, y2) = (cx.c(x, 0), cx.c(x, 1), cx.c(y, 0), cx.c(y, 1));
                let got = cx.el(cx.r.mul(x, y));
                got.get(0) as i64 == (x1 * y1 + al * y2).rem_euclid(p2)
                    && got.get(1) as i64 == (x2 * y1 + be * y2).rem_euclid(p)
            },
        ),
        cx.zero_sym_criterion(),
        ConstraintCheck {
            name: "profile-at-identity",
            statement: "alpha(a) = 0 and beta(a) = 1",
            holds: Some(pr(a).0 == 0 && pr(a).1 == 1),
            counterexample: None,
            note: None,
        },
        cx.single("alpha-divisible-by-p", "alpha(x) = 0 mod p", |x| pr(x).0 % p == 0),
        cx.pairwise(
            "alpha-recursion",
            "alpha(xy) = x1 alpha(y) + alpha(x) beta(y) mod p^2",
            |x, y| {
                let (ax, _, _) = pr(x);
                let (ay, by, _) = pr(y);
                pr(cx.r.mul(x, y)).0 == (cx.c(x, 0) * ay + ax * by).rem_euclid(p2)
            },
        ),
        cx.pairwise(
            "beta-recursion",
            "beta(xy) = x2 alpha(y) + beta(x) beta(y) mod p",
            |x, y| {
                let (_, bx, _) = pr(x);
                let (ay, by, _) = pr(y);
                pr(cx.r.mul(x, y)).1 == (cx.c(x, 1) * ay + bx * by).rem_euclid(p)
            },
        ),
    ]
}

/// Checks every coordinate constraint on the profile of `r`.
///
/// `r` must have identity `a` and be a nearring; a profile extracted from a
/// different carrier is rejected. On the Heisenberg group the local-only
/// constraints are reported as not applicable unless `r` is local.
pub fn audit_mapping_constraints(r: &Nearring, profile: &MappingProfile) -> Result<ConstraintAudit> {
    let kind = supported(r)?;
    if profile.kind != kind || profile.p != r.descriptor().p() || profile.alpha.len() != r.order() {
        return Err(Error::CarrierMismatch(format!(
            "profile for {}:{} does not match {}",
            profile.kind.name(),
            profile.p,
            r.descriptor()
        )));
    }
    require_identity_a(r)?;
    let local = is_local(r)?;
    let zero_symmetric = is_zero_symmetric(r);
    let cx = Ctx {
        r,
        prof: profile,
        p: r.descriptor().p() as i64,
    };
    let checks = match kind {
        GroupKind::Heisenberg => heisenberg_checks(&cx, local),
        _ => abelian_checks(&cx),
    };
    Ok(ConstraintAudit {
        group: r.descriptor().to_string(),
        local,
        zero_symmetric,
        checks,
    })
}

/// Extracts the profile of `r` and audits it.
pub fn audit(r: &Nearring) -> Result<ConstraintAudit> {
    audit_mapping_constraints(r, &MappingProfile::extract(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Carrier, FamilySpec, Variant};
    use std::sync::Arc;

    #[test]
    fn families_satisfy_all_constraints() {
        for carrier in [Carrier::G1, Carrier::G3] {
            for spec in FamilySpec::all_for(carrier, 3) {
                let r = build(spec, 3).unwrap();
                let audit = audit(&r).unwrap();
                assert!(audit.all_hold(), "{spec}: {:?}", audit.checks);
                assert!(audit.checks.iter().all(|c| c.holds.is_some()));
            }
        }
    }

    #[test]
    fn profile_values() {
        let r = build(FamilySpec::new(Carrier::G3, Variant::Twisted), 3).unwrap();
        let prof = MappingProfile::extract(&r).unwrap();
        let x = r.group().index(&Element::new(&[1, 2])).unwrap();
        assert_eq!((prof.alpha[x], prof.beta[x]), (6, 1));
        assert!(prof.gamma.is_none());
    }

    #[test]
    fn mismatched_profile_rejected() {
        let r1 = build(FamilySpec::new(Carrier::G1, Variant::Constant), 3).unwrap();
        let r3 = build(FamilySpec::new(Carrier::G3, Variant::Constant), 3).unwrap();
        let p3 = MappingProfile::extract(&r3).unwrap();
        assert!(matches!(audit_mapping_constraints(&r1, &p3), Err(Error::CarrierMismatch(_))));
        let r2 = build(FamilySpec::new(Carrier::G2, Variant::ZeroSym), 3).unwrap();
        assert!(matches!(MappingProfile::extract(&r2), Err(Error::CarrierMismatch(_))));
    }

    #[test]
    fn tampered_profile_is_caught() {
        let r = build(FamilySpec::new(Carrier::G1, Variant::PowerZeroSym { i: 1 }), 3).unwrap();
        let mut prof = MappingProfile::extract(&r).unwrap();
        prof.beta[5] = (prof.beta[5] + 1) % 3;
        let a = audit_mapping_constraints(&r, &prof).unwrap();
        assert_eq!(a.check("product-determined-by-profile").unwrap().holds, Some(false));
    }

    #[test]
    fn requires_identity_a() {
        let g = Arc::new(crate::group::Group::new(crate::GroupDescriptor::heisenberg(3).unwrap()).unwrap());
        let zero = g.descriptor().zero();
        let r = Nearring::from_formula(g, "zero", Arc::new(move |_, _| zero));
        assert!(matches!(MappingProfile::extract(&r), Err(Error::InvalidIdentity(_))));
    }
}
