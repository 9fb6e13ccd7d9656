//! Explicit local nearrings with identity `a` on the three non-cyclic
//! carriers of order `p^3` that admit closed-form multiplications.
//!
//! On the Heisenberg group, with `x = a x1 + b x2 + c x3`:
//!
//! ```text
//! x y = a x1 y1 + b (x2 y1 + beta(x) y2)
//!     + c (-x1 x2 C(y1, 2) + x3 y1 + gamma(x) y2 + x1 beta(x) y3)
//! ```
//!
//! On `C_{p^2} x C_p` with `x = a x1 + b x2`:
//!
//! ```text
//! x y = a (x1 y1 + alpha(x) y2) + b (x2 y1 + beta(x) y2)
//! ```
//!
//! On the metacyclic group:
//!
//! ```text
//! x y = a (x1 y1 - x1 x2 C(y1, 2) p) + b (x2 y1 + beta(x) y2)
//! ```
//!
//! with `beta = 1` (non-zero-symmetric) or `beta(x) = [x1 != 0 mod p]`.
//!
//! Binomials are evaluated over the integers on the canonical
//! representative and then reduced.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_prime, Element, Group, GroupDescriptor};
use crate::iso;
use crate::nearring::{Formula, Nearring};
use crate::properties::{self, unit_structure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Carrier {
    /// Heisenberg group.
    G1,
    /// Non-abelian metacyclic group.
    G2,
    /// `C_{p^2} x C_p`.
    G3,
}

impl Carrier {
    pub fn descriptor(self, p: u32) -> Result<GroupDescriptor> {
        match self {
            Carrier::G1 => GroupDescriptor::heisenberg(p),
            Carrier::G2 => GroupDescriptor::metacyclic(p),
            Carrier::G3 => GroupDescriptor::metacyclic_abelian(p),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Carrier::G1 => "g1",
            Carrier::G2 => "g2",
            Carrier::G3 => "g3",
        }
    }
}

impl FromStr for Carrier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Carrier> {
        match s.to_ascii_lowercase().as_str() {
            "g1" | "heisenberg" => Ok(Carrier::G1),
            "g2" | "metacyclic" => Ok(Carrier::G2),
            "g3" | "metacyclic-abelian" => Ok(Carrier::G3),
            _ => Err(Error::Parse(format!("unknown carrier {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Variant {
    /// `beta(x) = x1^i`, no correction term.
    PowerZeroSym { i: u32 },
    /// `beta = 1`: the constant, non-zero-symmetric multiplication.
    Constant,
    /// Heisenberg only: `beta = x1^2`, `gamma = x1 x2`.
    Quadratic,
    /// Metacyclic only: `beta = 1`.
    NonZeroSym,
    /// Metacyclic only: `beta` is the indicator of `x1 != 0 mod p`.
    ZeroSym,
    /// `C_{p^2} x C_p` only: `alpha = p x2`, `beta = x1 mod p`.
    Twisted,
}

impl Variant {
    pub fn name(&self) -> String {
        match self {
            Variant::PowerZeroSym { i } => format!("power:i={i}"),
            Variant::Constant => "constant".into(),
            Variant::Quadratic => "quadratic".into(),
            Variant::NonZeroSym => "non-zero-sym".into(),
            Variant::ZeroSym => "zero-sym".into(),
            Variant::Twisted => "twisted".into(),
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let v = match name.to_ascii_lowercase().as_str() {
            "power" | "power-zero-sym" => {
                let i = arg
                    .and_then(|a| a.strip_prefix("i="))
                    .ok_or_else(|| Error::Parse("power variant needs :i=K".into()))?
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad exponent: {e}")))?;
                return Ok(Variant::PowerZeroSym { i });
            }
            "constant" => Variant::Constant,
            "quadratic" => Variant::Quadratic,
            "non-zero-sym" | "nonzerosym" => Variant::NonZeroSym,
            "zero-sym" | "zerosym" => Variant::ZeroSym,
            "twisted" => Variant::Twisted,
            _ => return Err(Error::Parse(format!("unknown variant {s:?}"))),
        };
        if arg.is_some() {
            return Err(Error::Parse(format!("variant {name} takes no argument")));
        }
        Ok(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilySpec {
    pub carrier: Carrier,
    pub variant: Variant,
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("{}/{}", self.carrier.name(), self.variant.name()))
    }
}

impl FamilySpec {
    pub fn new(carrier: Carrier, variant: Variant) -> FamilySpec {
        FamilySpec { carrier, variant }
    }

    pub fn validate(&self, p: u32) -> Result<()> {
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::InvalidFamily(format!("p = {p} must be an odd prime")));
        }
        let ok = match (self.carrier, self.variant) {
            (Carrier::G1 | Carrier::G3, Variant::PowerZeroSym { i }) => (1..p).contains(&i),
            (Carrier::G1 | Carrier::G3, Variant::Constant) => true,
            (Carrier::G1, Variant::Quadratic) => true,
            (Carrier::G2, Variant::NonZeroSym | Variant::ZeroSym) => true,
            (Carrier::G3, Variant::Twisted) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily(format!("{self} is not defined for p = {p}")))
        }
    }

    /// Every construction on the carrier: `p + 1` on G1 and G3, two on G2.
    pub fn all_for(carrier: Carrier, p: u32) -> Vec<FamilySpec> {
        let mut v: Vec<Variant> = match carrier {
            Carrier::G2 => vec![Variant::NonZeroSym, Variant::ZeroSym],
            _ => (1..p).map(|i| Variant::PowerZeroSym { i }).collect(),
        };
        match carrier {
            Carrier::G1 => v.extend([Variant::Constant, Variant::Quadratic]),
            Carrier::G3 => v.extend([Variant::Constant, Variant::Twisted]),
            Carrier::G2 => {}
        }
        v.into_iter().map(|variant| FamilySpec::new(carrier, variant)).collect()
    }

    pub fn expected_zero_symmetric(&self) -> bool {
        !matches!(self.variant, Variant::Constant | Variant::NonZeroSym)
    }
}

pub(crate) type Coefficient = Arc<dyn Fn(&Element) -> i64 + Send + Sync>;

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn pow_i64(base: i64, e: u32, m: i64) -> i64 {
    let mut acc = 1 % m;
    for _ in 0..e {
        acc = acc * base % m;
    }
    acc
}

/// The Heisenberg product with free coefficients multiplying `b y2`,
/// `c y2` and `c y3`.
pub(crate) fn heisenberg_star(
    desc: GroupDescriptor,
    beta: Coefficient,
    gamma: Coefficient,
    delta: Coefficient,
) -> Formula {
    Arc::new(move |x: &Element, y: &Element| {
        let v = |e: &Element, k: usize| e.get(k) as i64;
        let (x1, x2, x3) = (v(x, 0), v(x, 1), v(x, 2));
        let (y1, y2, y3) = (v(y, 0), v(y, 1), v(y, 2));
        desc.reduce(&[
            x1 * y1,
            x2 * y1 + beta(x) * y2,
            -x1 * x2 * binom2(y1) + x3 * y1 + gamma(x) * y2 + delta(x) * y3,
        ])
    })
}

fn abelian_formula(desc: GroupDescriptor, alpha: Coefficient, beta: Coefficient) -> Formula {
    Arc::new(move |x: &Element, y: &Element| {
        let v = |e: &Element, k: usize| e.get(k) as i64;
        let (x1, x2, y1, y2) = (v(x, 0), v(x, 1), v(y, 0), v(y, 1));
        desc.reduce(&[x1 * y1 + alpha(x) * y2, x2 * y1 + beta(x) * y2])
    })
}

fn metacyclic_formula(desc: GroupDescriptor, beta: Coefficient) -> Formula {
    let p = desc.p() as i64;
    Arc::new(move |x: &Element, y: &Element| {
        let v = |e: &Element, k: usize| e.get(k) as i64;
        let (x1, x2, y1, y2) = (v(x, 0), v(x, 1), v(y, 0), v(y, 1));
        desc.reduce(&[x1 * y1 - x1 * x2 * binom2(y1) * p, x2 * y1 + beta(x) * y2])
    })
}

/// Coefficient functions `(alpha, beta, gamma)` of `x b` for a family.
pub(crate) fn coefficients(spec: &FamilySpec, p: u32) -> (Coefficient, Coefficient, Coefficient) {
    let pp = p as i64;
    let zero: Coefficient = Arc::new(|_| 0);
    let one: Coefficient = Arc::new(|_| 1);
    match spec.variant {
        Variant::PowerZeroSym { i } => (
            zero.clone(),
            Arc::new(move |x: &Element| pow_i64(x.get(0) as i64 % pp, i, pp)),
            zero,
        ),
        Variant::Constant | Variant::NonZeroSym => (zero.clone(), one, zero),
        Variant::Quadratic => (
            zero,
            Arc::new(move |x: &Element| pow_i64(x.get(0) as i64, 2, pp)),
            Arc::new(move |x: &Element| x.get(0) as i64 * x.get(1) as i64 % pp),
        ),
        Variant::ZeroSym => (
            zero.clone(),
            Arc::new(move |x: &Element| i64::from(x.get(0) as i64 % pp != 0)),
            zero,
        ),
        Variant::Twisted => (
            Arc::new(move |x: &Element| pp * x.get(1) as i64),
            Arc::new(move |x: &Element| x.get(0) as i64 % pp),
            zero,
        ),
    }
}

fn formula_for(spec: &FamilySpec, desc: GroupDescriptor) -> Formula {
    let (alpha, beta, gamma) = coefficients(spec, desc.p());
    match spec.carrier {
        Carrier::G1 => {
            let b = beta.clone();
            let delta: Coefficient = Arc::new(move |x: &Element| x.get(0) as i64 * b(x));
            heisenberg_star(desc, beta, gamma, delta)
        }
        Carrier::G2 => metacyclic_formula(desc, beta),
        Carrier::G3 => abelian_formula(desc, alpha, beta),
    }
}

/// Builds the formula-backed nearring with identity `a`.
pub fn build(spec: FamilySpec, p: u32) -> Result<Nearring> {
    spec.validate(p)?;
    let desc = spec.carrier.descriptor(p)?;
    let group = Arc::new(Group::new(desc)?);
    build_on(spec, group)
}

/// As [`build`], reusing an existing carrier table.
pub fn build_on(spec: FamilySpec, group: Arc<Group>) -> Result<Nearring> {
    let desc = group.descriptor();
    spec.validate(desc.p())?;
    if spec.carrier.descriptor(desc.p())? != desc {
        return Err(Error::CarrierMismatch(format!("{spec} cannot live on {desc}")));
    }
    let a = desc.basis()[0];
    Nearring::from_formula(group, spec.to_string(), formula_for(&spec, desc)).with_identity(&a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    Verbatim,
    Corrected,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example1Item {
    pub item: u8,
    pub reading: Reading,
    pub formula: String,
    pub left_distributive: bool,
    pub associative: bool,
    pub identity: Option<Element>,
    pub local: bool,
    pub zero_symmetric: bool,
    pub valid: bool,
    /// Family builds whose tables coincide with this multiplication.
    pub matches: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Example1Report {
    pub group: String,
    pub items: Vec<Example1Item>,
}

impl Example1Report {
    pub fn item(&self, item: u8, reading: Reading) -> Option<&Example1Item> {
        self.items.iter().find(|i| i.item == item && i.reading == reading)
    }
}

struct Example1Form {
    item: u8,
    reading: Reading,
    text: &'static str,
    beta: Coefficient,
    gamma: Coefficient,
    delta: Coefficient,
}

fn example1_forms(p: i64) -> Vec<Example1Form> {
    let pw = move |k: u32| -> Coefficient { Arc::new(move |x: &Element| pow_i64(x.get(0) as i64, k, p)) };
    let zero: Coefficient = Arc::new(|_| 0);
    let x1x2: Coefficient = Arc::new(move |x: &Element| x.get(0) as i64 * x.get(1) as i64 % p);
    let form = |item, reading, text, beta, gamma, delta| Example1Form {
        item,
        reading,
        text,
        beta,
        gamma,
        delta,
    };
    use Reading::*;
    vec![
        form(1, Verbatim, "a x1y1 + b(x2y1 + y2) + c(-x1x2 C(y1,2) + x3y1 + x1 y3)",
            pw(0), zero.clone(), pw(1)),
        // the stray "(x)" after x1^3 carries no meaning and is dropped
        form(2, Verbatim, "a x1y1 + b(x2y1 + x1^3 y2) + c(-x1x2 C(y1,2) + x3y1 + x1x2 y2 + x1^4 y3)",
            pw(3), x1x2.clone(), pw(4)),
        form(2, Corrected, "a x1y1 + b(x2y1 + x1^2 y2) + c(-x1x2 C(y1,2) + x3y1 + x1x2 y2 + x1^3 y3)",
            pw(2), x1x2, pw(3)),
        form(3, Verbatim, "a x1y1 + b(x2y1 + x1 y2) + c(-x1x2 C(y1,2) + x3y1 + x1^2 y3)",
            pw(1), zero.clone(), pw(2)),
        form(4, Verbatim, "a x1y1 + b(x2y1 + x1^2 y2) + c(-x1x2 C(y1,2) + x3y1 + x1^3 y3)",
            pw(2), zero.clone(), pw(3)),
        form(5, Verbatim, "a x1y1 + b(x2y1 + x1^3 y2) + c(-x1x2 C(y1,2) + x3y1 + x1^4 y3)",
            pw(3), zero.clone(), pw(4)),
        form(5, Corrected, "a x1y1 + b(x2y1 + x1^3 y2) + c(-x1x2 C(y1,2) + x3y1 + x1^4 y3)",
            pw(3), zero.clone(), pw(4)),
        form(6, Verbatim, "a x1y1 + b(x2y1 + x1^4 y2) + c(-x1x2 C(y1,2) + x3y1 + x1^5 y3)",
            pw(4), zero, pw(5)),
    ]
}

/// Materialises the six displayed multiplications on the Heisenberg group
/// of order 125, as printed and (for items 2 and 5) under the corrected
/// reading, and runs the full axiom and locality checks on each.
pub fn example1_suite(p: u32) -> Result<(Example1Report, Vec<(String, Nearring)>)> {
    if p != 5 {
        return Err(Error::InvalidFamily(format!(
            "the displayed example lives on p = 5, got {p}"
        )));
    }
    let desc = GroupDescriptor::heisenberg(p)?;
    let group = Arc::new(Group::new(desc)?);
    let builds: Vec<Nearring> = FamilySpec::all_for(Carrier::G1, p)
        .into_iter()
        .map(|s| build_on(s, group.clone()))
        .collect::<Result<_>>()?;
    let forms = example1_forms(p as i64);
    let results: Vec<(Example1Item, (String, Nearring))> = forms
        .into_par_iter()
        .map(|f| {
            let name = format!(
                "item{}-{}",
                f.item,
                match f.reading {
                    Reading::Verbatim => "verbatim",
                    Reading::Corrected => "corrected",
                }
            );
            let r = Nearring::from_formula(
                group.clone(),
                name.clone(),
                heisenberg_star(desc, f.beta, f.gamma, f.delta),
            );
            let rep = properties::PropertyReport::compute(&r);
            let matches = builds
                .iter()
                .filter(|b| b.agrees_with(&r))
                .map(|b| b.label().to_string())
                .collect();
            let item = Example1Item {
                item: f.item,
                reading: f.reading,
                formula: format!("x y = {}", f.text),
                left_distributive: rep.left_distributive,
                associative: rep.associative,
                identity: rep.identity,
                local: rep.local,
                zero_symmetric: rep.zero_symmetric,
                valid: rep.is_nearring() && rep.has_identity && rep.local,
                matches,
            };
            (item, (name, r))
        })
        .collect();
    let (items, tables) = results.into_iter().unzip();
    Ok((
        Example1Report {
            group: desc.to_string(),
            items,
        },
        tables,
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundReport {
    pub carrier: Carrier,
    pub p: u32,
    pub members: Vec<String>,
    pub all_local: bool,
    pub classes: usize,
    pub claim: usize,
}

impl LowerBoundReport {
    pub fn passed(&self) -> bool {
        self.all_local && self.classes >= self.claim
    }
}

/// Builds all `p + 1` constructions on G1 or G3, verifies each is a local
/// nearring with identity `a`, and counts isomorphism classes among them.
pub fn family_count_lower_bound(carrier: Carrier, p: u32) -> Result<LowerBoundReport> {
    if carrier == Carrier::G2 {
        return Err(Error::InvalidFamily("the p + 1 bound concerns G1 and G3".into()));
    }
    let desc = carrier.descriptor(p)?;
    let group = Arc::new(Group::new(desc)?);
    let specs = FamilySpec::all_for(carrier, p);
    let members: Vec<Nearring> = specs
        .iter()
        .map(|&s| build_on(s, group.clone()))
        .collect::<Result<_>>()?;
    let mut all_local = true;
    for r in &members {
        let ld = properties::check_left_distributive(r);
        let assoc = properties::check_associative(r);
        if !ld.holds || !assoc.holds {
            return Err(Error::Verification(format!("{} fails the nearring axioms", r.label())));
        }
        let u = unit_structure(r)?;
        all_local &= properties::is_local(r)? && u.identity == group.basis()[0];
    }
    let partition = iso::classify(&members)?;
    Ok(LowerBoundReport {
        carrier,
        p,
        members: specs.iter().map(|s| s.to_string()).collect(),
        all_local,
        classes: partition.classes.len(),
        claim: p as usize + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properties::*;

    fn e(c: &[u32]) -> Element {
        Element::new(c)
    }

    /// Direct re-evaluation of the Heisenberg product, written out by hand.
    fn star_by_hand(p: i64, beta: i64, gamma: i64, x: [i64; 3], y: [i64; 3]) -> [i64; 3] {
        let c = -x[0] * x[1] * (y[0] * (y[0] - 1) / 2) + x[2] * y[0] + gamma * y[1] + x[0] * beta * y[2];
        [
            (x[0] * y[0]).rem_euclid(p),
            (x[1] * y[0] + beta * y[1]).rem_euclid(p),
            c.rem_euclid(p),
        ]
    }

    #[test]
    fn constant_family_instance() {
        let r = build(FamilySpec::new(Carrier::G1, Variant::Constant), 5).unwrap();
        let (x, y) = (e(&[2, 1, 0]), e(&[1, 0, 3]));
        assert_eq!(r.mul_elements(&x, &y).unwrap(), e(&[2, 1, 1]));
        assert_eq!(star_by_hand(5, 1, 0, [2, 1, 0], [1, 0, 3]), [2, 1, 1]);
    }

    #[test]
    fn formula_matches_hand_evaluation() {
        let p = 5;
        let r = build(FamilySpec::new(Carrier::G1, Variant::Quadratic), p).unwrap();
        for x in r.descriptor().elements().step_by(3) {
            for y in r.descriptor().elements().step_by(7) {
                let xv = [x.get(0) as i64, x.get(1) as i64, x.get(2) as i64];
                let yv = [y.get(0) as i64, y.get(1) as i64, y.get(2) as i64];
                let beta = xv[0] * xv[0] % 5;
                let gamma = xv[0] * xv[1] % 5;
                let want = star_by_hand(5, beta, gamma, xv, yv);
                let got = r.mul_elements(&x, &y).unwrap();
                assert_eq!(got.coords(), want.map(|v| v as u32));
            }
        }
    }

    #[test]
    fn twisted_instance() {
        let r = build(FamilySpec::new(Carrier::G3, Variant::Twisted), 3).unwrap();
        assert_eq!(r.mul_elements(&e(&[1, 1]), &e(&[3, 2])).unwrap(), e(&[0, 2]));
    }

    #[test]
    fn identity_is_a() {
        for carrier in [Carrier::G1, Carrier::G2, Carrier::G3] {
            for spec in FamilySpec::all_for(carrier, 3) {
                let r = build(spec, 3).unwrap();
                let a = r.descriptor().basis()[0];
                assert_eq!(r.identity(), Some(a));
                for x in r.descriptor().elements() {
                    assert_eq!(r.mul_elements(&a, &x).unwrap(), x);
                    assert_eq!(r.mul_elements(&x, &a).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(build(FamilySpec::new(Carrier::G1, Variant::PowerZeroSym { i: 5 }), 5).is_err());
        assert!(build(FamilySpec::new(Carrier::G2, Variant::Quadratic), 5).is_err());
        assert!(build(FamilySpec::new(Carrier::G1, Variant::Constant), 2).is_err());
        assert!(build(FamilySpec::new(Carrier::G3, Variant::Constant), 9).is_err());
        assert_eq!(FamilySpec::all_for(Carrier::G1, 7).len(), 8);
        assert_eq!(FamilySpec::all_for(Carrier::G2, 7).len(), 2);
    }

    #[test]
    fn variant_names_parse_back() {
        for spec in FamilySpec::all_for(Carrier::G1, 5)
            .into_iter()
            .chain(FamilySpec::all_for(Carrier::G2, 5))
            .chain(FamilySpec::all_for(Carrier::G3, 5))
        {
            let v: Variant = spec.variant.name().parse().unwrap();
            assert_eq!(v, spec.variant);
        }
        assert!("power".parse::<Variant>().is_err());
        assert!("constant:i=2".parse::<Variant>().is_err());
    }

    #[test]
    fn families_are_local_nearrings_at_p3() {
        for carrier in [Carrier::G1, Carrier::G2, Carrier::G3] {
            for spec in FamilySpec::all_for(carrier, 3) {
                let r = build(spec, 3).unwrap();
                assert!(check_left_distributive(&r).holds, "{spec}");
                assert!(check_associative(&r).holds, "{spec}");
                assert!(is_local(&r).unwrap(), "{spec}");
                let u = unit_structure(&r).unwrap();
                assert_eq!(u.noninvertible.len(), 9);
                assert!(u
                    .noninvertible
                    .iter()
                    .all(|&x| r.group().element(x).get(0).is_multiple_of(3)));
                assert_eq!(is_zero_symmetric(&r), spec.expected_zero_symmetric(), "{spec}");
            }
        }
    }

    #[test]
    fn piecewise_beta_is_multiplicative() {
        for p in [3u32, 5] {
            let r = build(FamilySpec::new(Carrier::G2, Variant::ZeroSym), p).unwrap();
            let b = r.group().basis()[1];
            let beta = |x: usize| r.group().element(r.mul(x, b)).get(1);
            for x in 0..r.order() {
                for y in 0..r.order() {
                    assert_eq!(beta(r.mul(x, y)), beta(x) * beta(y) % p);
                }
            }
        }
    }

    #[test]
    fn quotient_by_center_is_order_p2_nearring() {
        let p = 5u32;
        for i in 1..p {
            let r = build(FamilySpec::new(Carrier::G1, Variant::PowerZeroSym { i }), p).unwrap();
            for x in r.descriptor().elements() {
                for y in r.descriptor().elements() {
                    let xy = r.mul_elements(&x, &y).unwrap();
                    let (x1, x2) = (x.get(0) as u64, x.get(1) as u64);
                    let (y1, y2) = (y.get(0) as u64, y.get(1) as u64);
                    let rho = x1.pow(i) % p as u64;
                    assert_eq!(xy.get(0) as u64, x1 * y1 % p as u64);
                    assert_eq!(xy.get(1) as u64, (x2 * y1 + rho * y2) % p as u64);
                }
            }
        }
    }
}
