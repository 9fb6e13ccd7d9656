//! Additive arithmetic on the groups of order `p^3` (and the two non-abelian
//! groups of order 8) in coordinate normal form.
//!
//! Every group is written additively. An element is a tuple of residues
//! `(x1, x2, x3)` standing for the word `a*x1 + b*x2 + c*x3` in the
//! presentation generators, each coordinate taken in `[0, modulus)`.
//!
//! | kind                   | presentation                                 | coordinates         |
//! |------------------------|----------------------------------------------|---------------------|
//! | `cyclic`               | `a p^3 = 0`                                  | `x1 mod p^3`        |
//! | `metacyclic-abelian`   | `a p^2 = b p = 0`, `a + b = b + a`           | `x1 mod p^2, x2 mod p` |
//! | `elementary-abelian`   | `a p = b p = c p = 0`, all commute           | three residues mod p |
//! | `dihedral`             | `a 4 = b 2 = 0`, `-a + b = b + a`            | `x1 mod 4, x2 mod 2` |
//! | `quaternion`           | `a 4 = 0`, `b 2 = a 2`, `-a + b = b + a`     | `x1 mod 4, x2 mod 2` |
//! | `metacyclic`           | `a p^2 = b p = 0`, `-b + a + b = a(1 + p)`   | `x1 mod p^2, x2 mod p` |
//! | `heisenberg`           | `a p = b p = c p = 0`, `a + b = b + a + c`, `c` central | three residues mod p |
//!
//! [`GroupDescriptor`] evaluates the laws directly on [`Element`]s;
//! [`Group`] tabulates them over element indices for the hot loops.

use std::fmt;
use std::str::FromStr;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subgroup::{self, Subgroup};

/// Largest group for which [`Group`] materialises its Cayley table.
pub const TABLE_CAP: usize = 1331;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    /// `C_{p^3}`.
    CyclicP3,
    /// `C_{p^2} x C_p`.
    MetacyclicAbelian,
    /// `C_p x C_p x C_p`.
    ElemAbelian,
    /// Dihedral group of order 8.
    Dihedral8,
    /// Quaternion group of order 8.
    Quaternion8,
    /// Non-abelian metacyclic group of order `p^3`, `p` odd.
    MetacyclicNonabelian,
    /// Non-metacyclic non-abelian group of order `p^3` (exponent `p`), `p` odd.
    Heisenberg,
}

impl GroupKind {
    pub const ALL: [GroupKind; 7] = [
        GroupKind::CyclicP3,
        GroupKind::MetacyclicAbelian,
        GroupKind::ElemAbelian,
        GroupKind::Dihedral8,
        GroupKind::Quaternion8,
        GroupKind::MetacyclicNonabelian,
        GroupKind::Heisenberg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::CyclicP3 => "cyclic",
            GroupKind::MetacyclicAbelian => "metacyclic-abelian",
            GroupKind::ElemAbelian => "elementary-abelian",
            GroupKind::Dihedral8 => "dihedral",
            GroupKind::Quaternion8 => "quaternion",
            GroupKind::MetacyclicNonabelian => "metacyclic",
            GroupKind::Heisenberg => "heisenberg",
        }
    }

    pub fn from_name(s: &str) -> Option<GroupKind> {
        Some(match s.to_ascii_lowercase().as_str() {
            "cyclic" | "c" => GroupKind::CyclicP3,
            "metacyclic-abelian" | "g3" => GroupKind::MetacyclicAbelian,
            "elementary-abelian" | "elementary" => GroupKind::ElemAbelian,
            "dihedral" | "d4" | "d8" => GroupKind::Dihedral8,
            "quaternion" | "q8" => GroupKind::Quaternion8,
            "metacyclic" | "g2" => GroupKind::MetacyclicNonabelian,
            "heisenberg" | "g1" => GroupKind::Heisenberg,
            _ => return None,
        })
    }

    pub fn is_abelian(self) -> bool {
        matches!(
            self,
            GroupKind::CyclicP3 | GroupKind::MetacyclicAbelian | GroupKind::ElemAbelian
        )
    }

    fn arity(self) -> usize {
        match self {
            GroupKind::CyclicP3 => 1,
            GroupKind::ElemAbelian | GroupKind::Heisenberg => 3,
            _ => 2,
        }
    }
}

/// A coordinate tuple. Validity depends on the group it is used with.
impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupKind> {
        GroupKind::from_name(s).ok_or_else(|| Error::Parse(format!("unknown group kind {s:?}")))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    coords: [u32; 3],
    len: u8,
}

impl Element {
    pub fn new(coords: &[u32]) -> Element {
        assert!(
            (1..=3).contains(&coords.len()),
            "elements have one to three coordinates"
        );
        let mut c = [0; 3];
        c[..coords.len()].copy_from_slice(coords);
        Element {
            coords: c,
            len: coords.len() as u8,
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords[..self.len as usize]
    }

    /// Coordinate `k` (0-based), or 0 past the arity.
    pub fn get(&self, k: usize) -> u32 {
        self.coords[k]
    }

    pub fn arity(&self) -> usize {
        self.len as usize
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, c) in self.coords().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Element> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("element must be bracketed, got {s:?}")))?;
        let coords = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad coordinate {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() || coords.len() > 3 {
            return Err(Error::Parse(format!("element {s:?} needs 1 to 3 coordinates")));
        }
        Ok(Element::new(&coords))
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Element, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        if v.is_empty() || v.len() > 3 {
            return Err(serde::de::Error::custom("element needs 1 to 3 coordinates"));
        }
        Ok(Element::new(&v))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn rem(x: i64, m: i64) -> i64 {
    x.rem_euclid(m)
}

fn pow_mod(mut base: i64, mut exp: u64, m: i64) -> i64 {
    let mut acc = 1 % m;
    base = rem(base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// One of the presentations above, together with its prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupDescriptor {
    kind: GroupKind,
    p: u32,
}

impl GroupDescriptor {
    pub fn new(kind: GroupKind, p: u32) -> Result<GroupDescriptor> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        match kind {
            GroupKind::Dihedral8 | GroupKind::Quaternion8 if p != 2 => {
                return Err(Error::InvalidDescriptor(format!(
                    "{} is defined for p = 2 only",
                    kind.name()
                )))
            }
            GroupKind::MetacyclicNonabelian | GroupKind::Heisenberg if p == 2 => {
                return Err(Error::InvalidDescriptor(format!(
                    "{} requires an odd prime",
                    kind.name()
                )))
            }
            _ => {}
        }
        if (p as u64).pow(3) > u32::MAX as u64 {
            return Err(Error::InvalidDescriptor(format!("p = {p} is too large")));
        }
        Ok(GroupDescriptor { kind, p })
    }

    pub fn heisenberg(p: u32) -> Result<GroupDescriptor> {
        GroupDescriptor::new(GroupKind::Heisenberg, p)
    }

    pub fn metacyclic(p: u32) -> Result<GroupDescriptor> {
        GroupDescriptor::new(GroupKind::MetacyclicNonabelian, p)
    }

    pub fn metacyclic_abelian(p: u32) -> Result<GroupDescriptor> {
        GroupDescriptor::new(GroupKind::MetacyclicAbelian, p)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(3)
    }

    /// Per-coordinate moduli, most significant first.
    pub fn moduli(&self) -> Vec<u32> {
        let p = self.p;
        match self.kind {
            GroupKind::CyclicP3 => vec![p * p * p],
            GroupKind::MetacyclicAbelian | GroupKind::MetacyclicNonabelian => vec![p * p, p],
            GroupKind::ElemAbelian | GroupKind::Heisenberg => vec![p, p, p],
            GroupKind::Dihedral8 | GroupKind::Quaternion8 => vec![4, 2],
        }
    }

    pub fn arity(&self) -> usize {
        self.kind.arity()
    }

    pub fn exponent(&self) -> u32 {
        let p = self.p;
        match self.kind {
            GroupKind::CyclicP3 => p * p * p,
            GroupKind::MetacyclicAbelian | GroupKind::MetacyclicNonabelian => p * p,
            GroupKind::ElemAbelian | GroupKind::Heisenberg => p,
            GroupKind::Dihedral8 | GroupKind::Quaternion8 => 4,
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.arity() == self.arity() && x.coords().iter().zip(self.moduli()).all(|(&c, m)| c < m)
    }

    fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: *x,
                group: self.to_string(),
            })
        }
    }

    /// Validates `coords` as an element of this group.
    pub fn element(&self, coords: &[u32]) -> Result<Element> {
        if coords.len() != self.arity() {
            return Err(Error::InvalidElement {
                element: Element::new(&coords[..coords.len().clamp(1, 3)]),
                group: self.to_string(),
            });
        }
        let x = Element::new(coords);
        self.check(&x)?;
        Ok(x)
    }

    /// Reduces arbitrary integers into normal-form coordinates.
    pub fn reduce(&self, coords: &[i64]) -> Element {
        debug_assert_eq!(coords.len(), self.arity());
        let m = self.moduli();
        let c: Vec<u32> = coords
            .iter()
            .zip(&m)
            .map(|(&v, &m)| rem(v, m as i64) as u32)
            .collect();
        Element::new(&c)
    }

    pub fn zero(&self) -> Element {
        Element::new(&vec![0; self.arity()])
    }

    /// The presentation generators `a, b` (and `c` for three-coordinate kinds).
    pub fn basis(&self) -> Vec<Element> {
        let n = self.arity();
        (0..n)
            .map(|k| {
                let mut c = vec![0; n];
                c[k] = 1;
                Element::new(&c)
            })
            .collect()
    }

    /// Mixed-radix index, `x1` most significant.
    pub fn index_of(&self, x: &Element) -> Result<usize> {
        self.check(x)?;
        Ok(self.index_unchecked(x))
    }

    pub(crate) fn index_unchecked(&self, x: &Element) -> usize {
        let mut idx = 0usize;
        for (&c, m) in x.coords().iter().zip(self.moduli()) {
            idx = idx * m as usize + c as usize;
        }
        idx
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        assert!(index < self.order(), "index {index} out of range");
        let m = self.moduli();
        let mut c = vec![0u32; m.len()];
        for k in (0..m.len()).rev() {
            c[k] = (index % m[k] as usize) as u32;
            index /= m[k] as usize;
        }
        Element::new(&c)
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    pub fn add(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub(crate) fn add_unchecked(&self, x: &Element, y: &Element) -> Element {
        let p = self.p as i64;
        let v = |e: &Element, k: usize| e.get(k) as i64;
        match self.kind {
            GroupKind::CyclicP3 => self.reduce(&[v(x, 0) + v(y, 0)]),
            GroupKind::MetacyclicAbelian => self.reduce(&[v(x, 0) + v(y, 0), v(x, 1) + v(y, 1)]),
            GroupKind::ElemAbelian => self.reduce(&[
                v(x, 0) + v(y, 0),
                v(x, 1) + v(y, 1),
                v(x, 2) + v(y, 2),
            ]),
            GroupKind::Dihedral8 | GroupKind::Quaternion8 => {
                // b j + a i' = a (-1)^j i' + b j
                let sign = if x.get(1) == 1 { -1 } else { 1 };
                let mut a = v(x, 0) + sign * v(y, 0);
                if self.kind == GroupKind::Quaternion8 && x.get(1) == 1 && y.get(1) == 1 {
                    a += 2;
                }
                self.reduce(&[a, v(x, 1) + v(y, 1)])
            }
            GroupKind::MetacyclicNonabelian => {
                // -b + a + b = a(1+p)  gives  b x2 + a y1 = a y1 (1+p)^(-x2) + b x2
                let m = p * p;
                let twist = pow_mod(m - p + 1, x.get(1) as u64, m);
                self.reduce(&[v(x, 0) + v(y, 0) * twist, v(x, 1) + v(y, 1)])
            }
            GroupKind::Heisenberg => {
                // b x2 + a y1 = a y1 + b x2 - c x2 y1
                self.reduce(&[
                    v(x, 0) + v(y, 0),
                    v(x, 1) + v(y, 1),
                    v(x, 2) + v(y, 2) - v(x, 1) * v(y, 0),
                ])
            }
        }
    }

    pub fn neg(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.neg_unchecked(x))
    }

    pub(crate) fn neg_unchecked(&self, x: &Element) -> Element {
        let p = self.p as i64;
        let v = |k: usize| x.get(k) as i64;
        match self.kind {
            GroupKind::CyclicP3 => self.reduce(&[-v(0)]),
            GroupKind::MetacyclicAbelian => self.reduce(&[-v(0), -v(1)]),
            GroupKind::ElemAbelian => self.reduce(&[-v(0), -v(1), -v(2)]),
            GroupKind::Dihedral8 | GroupKind::Quaternion8 => {
                if x.get(1) == 0 {
                    self.reduce(&[-v(0), 0])
                } else if self.kind == GroupKind::Dihedral8 {
                    // reflections are involutions
                    *x
                } else {
                    self.reduce(&[v(0) + 2, 1])
                }
            }
            GroupKind::MetacyclicNonabelian => {
                // need y1 with x1 + y1 (1+p)^(-x2) = 0, i.e. y1 = -x1 (1+p)^(x2)
                let m = p * p;
                let t = pow_mod(1 + p, x.get(1) as u64, m);
                self.reduce(&[-v(0) * t, -v(1)])
            }
            GroupKind::Heisenberg => self.reduce(&[-v(0), -v(1), -v(2) - v(0) * v(1)]),
        }
    }

    /// `n`-fold sum of `x`; negative `n` sums `-x`.
    pub fn scalar(&self, x: &Element, n: i64) -> Result<Element> {
        self.check(x)?;
        Ok(self.scalar_unchecked(x, n))
    }

    pub(crate) fn scalar_unchecked(&self, x: &Element, n: i64) -> Element {
        let mut base = if n < 0 { self.neg_unchecked(x) } else { *x };
        let mut k = n.unsigned_abs();
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// `-x - y + x + y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.commutator_unchecked(x, y))
    }

    pub(crate) fn commutator_unchecked(&self, x: &Element, y: &Element) -> Element {
        let nx = self.neg_unchecked(x);
        let ny = self.neg_unchecked(y);
        let s = self.add_unchecked(&nx, &ny);
        let s = self.add_unchecked(&s, x);
        self.add_unchecked(&s, y)
    }

    pub fn element_order(&self, x: &Element) -> Result<u32> {
        self.check(x)?;
        let zero = self.zero();
        let mut acc = *x;
        let mut k = 1;
        while acc != zero {
            acc = self.add_unchecked(&acc, x);
            k += 1;
        }
        Ok(k)
    }

    pub fn group_exponent(&self) -> u32 {
        self.exponent()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.name(), self.p)
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupDescriptor> {
        let (kind, p) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group must be KIND:P, got {s:?}")))?;
        let kind = GroupKind::from_name(kind.trim())
            .ok_or_else(|| Error::Parse(format!("unknown group kind {kind:?}")))?;
        let p = p
            .trim()
            .parse::<u32>()
            .map_err(|e| Error::Parse(format!("bad prime {p:?}: {e}")))?;
        GroupDescriptor::new(kind, p)
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<GroupDescriptor, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cayley-table form of a group: all arithmetic on element indices.
#[derive(Clone, Debug)]
pub struct Group {
    desc: GroupDescriptor,
    n: usize,
    elements: Vec<Element>,
    add: Vec<u32>,
    neg: Vec<u32>,
    orders: Vec<u32>,
    exponent: u32,
    /// `multiples[x * exponent + k] = k x`.
    multiples: Vec<u32>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl Group {
    pub fn new(desc: GroupDescriptor) -> Result<Group> {
        let n = desc.order();
        if n > TABLE_CAP {
            return Err(Error::SizeCap {
                operation: "Cayley tables",
                order: n,
                cap: TABLE_CAP,
            });
        }
        let elements: Vec<Element> = desc.elements().collect();
        let mut add = vec![0u32; n * n];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                add[i * n + j] = desc.index_unchecked(&desc.add_unchecked(x, y)) as u32;
            }
        }
        let neg = elements
            .iter()
            .map(|x| desc.index_unchecked(&desc.neg_unchecked(x)) as u32)
            .collect();
        let mut orders = vec![0u32; n];
        for i in 0..n {
            let (mut acc, mut k) = (i, 1);
            while acc != 0 {
                acc = add[acc * n + i] as usize;
                k += 1;
            }
            orders[i] = k;
        }
        let exponent = orders.iter().copied().max().unwrap_or(1);
        let e = exponent as usize;
        let mut multiples = vec![0u32; n * e];
        for x in 0..n {
            for k in 1..e {
                multiples[x * e + k] = add[multiples[x * e + k - 1] as usize * n + x];
            }
        }
        Ok(Group {
            desc,
            n,
            elements,
            add,
            neg,
            orders,
            exponent,
            multiples,
            subgroups: OnceLock::new(),
        })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.desc
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn element(&self, i: usize) -> Element {
        self.elements[i]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn index(&self, x: &Element) -> Result<usize> {
        self.desc.index_of(x)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k x` for any integer `k`.
    #[inline]
    pub fn multiple(&self, x: usize, k: i64) -> usize {
        let e = self.exponent as usize;
        self.multiples[x * e + k.rem_euclid(e as i64) as usize] as usize
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let s = self.add(self.neg(x), self.neg(y));
        self.add(self.add(s, x), y)
    }

    pub fn element_order(&self, x: usize) -> u32 {
        self.orders[x]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn basis(&self) -> Vec<usize> {
        self.desc
            .basis()
            .iter()
            .map(|b| self.desc.index_unchecked(b))
            .collect()
    }

    /// All subgroups, computed once.
    pub fn subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| subgroup::all_subgroups(self))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.add(x, y) == self.add(y, x)))
    }
}

/// First failing instance of one of the word identities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordCounterexample {
    pub identity: &'static str,
    pub k: i64,
    pub l: i64,
    pub r: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WordIdentityReport {
    pub p: u32,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<WordCounterexample>,
}

pub const COMMUTATOR_IDENTITY: &str = "-ak-bl+ak+bl = c(kl)";
pub const SWAP_IDENTITY: &str = "bl+ak = -c(kl)+ak+bl";
pub const POWER_IDENTITY: &str = "(ak+bl)r = akr+blr-ckl*binom(r,2)";

/// Checks the commutator and power identities of the Heisenberg group for
/// every `1 <= k, l, r < p`, using only `add`, `neg` and `scalar`.
pub fn verify_word_identities(p: u32) -> Result<WordIdentityReport> {
    let g = GroupDescriptor::heisenberg(p)?;
    let basis = g.basis();
    let (a, b, c) = (basis[0], basis[1], basis[2]);
    let mut checks = 0;
    let mut counterexample = None;
    let p = p as i64;
    'outer: for k in 1..p {
        let ak = g.scalar_unchecked(&a, k);
        for l in 1..p {
            let bl = g.scalar_unchecked(&b, l);
            let ckl = g.scalar_unchecked(&c, k * l);

            checks += 1;
            if g.commutator_unchecked(&ak, &bl) != ckl {
                counterexample = Some(WordCounterexample {
                    identity: COMMUTATOR_IDENTITY,
                    k,
                    l,
                    r: 0,
                });
                break 'outer;
            }

            checks += 1;
            let lhs = g.add_unchecked(&bl, &ak);
            let rhs = g.add_unchecked(&g.add_unchecked(&g.neg_unchecked(&ckl), &ak), &bl);
            if lhs != rhs {
                counterexample = Some(WordCounterexample {
                    identity: SWAP_IDENTITY,
                    k,
                    l,
                    r: 0,
                });
                break 'outer;
            }

            let sum = g.add_unchecked(&ak, &bl);
            for r in 1..p {
                checks += 1;
                let lhs = g.scalar_unchecked(&sum, r);
                let akr = g.scalar_unchecked(&a, k * r);
                let blr = g.scalar_unchecked(&b, l * r);
                let corr = g.scalar_unchecked(&c, -(k * l * (r * (r - 1) / 2)));
                let rhs = g.add_unchecked(&g.add_unchecked(&akr, &blr), &corr);
                if lhs != rhs {
                    counterexample = Some(WordCounterexample {
                        identity: POWER_IDENTITY,
                        k,
                        l,
                        r,
                    });
                    break 'outer;
                }
            }
        }
    }
    Ok(WordIdentityReport {
        p: p as u32,
        checks,
        passed: counterexample.is_none(),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(c: &[u32]) -> Element {
        Element::new(c)
    }

    #[test]
    fn heisenberg_generators_satisfy_swap_relation() {
        let g = GroupDescriptor::heisenberg(3).unwrap();
        let [a, b, c]: [Element; 3] = g.basis().try_into().unwrap();
        assert_eq!(g.add(&a, &b).unwrap(), e(&[1, 1, 0]));
        let ba = g.add(&b, &a).unwrap();
        assert_eq!(g.add(&ba, &c).unwrap(), e(&[1, 1, 0]));
    }

    #[test]
    fn heisenberg_addition_instance() {
        let g = GroupDescriptor::heisenberg(5).unwrap();
        assert_eq!(g.add(&e(&[0, 3, 0]), &e(&[2, 0, 0])).unwrap(), e(&[2, 3, 4]));
    }

    #[test]
    fn zero_is_neutral_everywhere() {
        for kind in GroupKind::ALL {
            for p in [2, 3] {
                let Ok(g) = GroupDescriptor::new(kind, p) else {
                    continue;
                };
                let z = g.zero();
                for x in g.elements() {
                    assert_eq!(g.add(&x, &z).unwrap(), x);
                    assert_eq!(g.add(&z, &x).unwrap(), x);
                }
                assert_eq!(g.neg(&z).unwrap(), z);
            }
        }
    }

    #[test]
    fn scalar_matches_power_identity() {
        let g = GroupDescriptor::heisenberg(5).unwrap();
        assert_eq!(g.scalar(&e(&[1, 1, 0]), 2).unwrap(), e(&[2, 2, 4]));
        assert_eq!(g.scalar(&e(&[1, 1, 0]), 0).unwrap(), g.zero());
        let x = e(&[3, 1, 2]);
        for n in -12..12 {
            let next = g.scalar(&x, n + 1).unwrap();
            assert_eq!(next, g.add(&g.scalar(&x, n).unwrap(), &x).unwrap());
        }
    }

    #[test]
    fn metacyclic_abelian_negation() {
        let g = GroupDescriptor::metacyclic_abelian(3).unwrap();
        let x = e(&[4, 1]);
        assert_eq!(g.neg(&x).unwrap(), e(&[5, 2]));
        assert_eq!(g.add(&x, &e(&[5, 2])).unwrap(), g.zero());
    }

    #[test]
    fn commutators() {
        let h = GroupDescriptor::heisenberg(5).unwrap();
        let [a, b, _]: [Element; 3] = h.basis().try_into().unwrap();
        let x = h.scalar(&a, 2).unwrap();
        let y = h.scalar(&b, 3).unwrap();
        assert_eq!(h.commutator(&x, &y).unwrap(), e(&[0, 0, 1]));

        // -b - a + b + a = -a(1+p) + a = -a p
        let g2 = GroupDescriptor::metacyclic(3).unwrap();
        let [a, b]: [Element; 2] = g2.basis().try_into().unwrap();
        assert_eq!(g2.commutator(&b, &a).unwrap(), g2.scalar(&a, -3).unwrap());
        assert_eq!(g2.commutator(&b, &a).unwrap(), e(&[6, 0]));

        let ab = GroupDescriptor::metacyclic_abelian(3).unwrap();
        for x in ab.elements() {
            for y in ab.elements() {
                assert_eq!(ab.commutator(&x, &y).unwrap(), ab.zero());
            }
        }
    }

    #[test]
    fn metacyclic_relation_literal() {
        for p in [3, 5, 7] {
            let g = GroupDescriptor::metacyclic(p).unwrap();
            let [a, b]: [Element; 2] = g.basis().try_into().unwrap();
            let conj = g
                .add(&g.add(&g.neg(&b).unwrap(), &a).unwrap(), &b)
                .unwrap();
            assert_eq!(conj, g.scalar(&a, 1 + p as i64).unwrap());
        }
    }

    #[test]
    fn orders_and_exponents() {
        let g3 = GroupDescriptor::metacyclic_abelian(3).unwrap();
        assert_eq!(g3.element_order(&g3.zero()).unwrap(), 1);
        assert_eq!(g3.element_order(&e(&[1, 0])).unwrap(), 9);
        assert_eq!(g3.group_exponent(), 9);

        let h = GroupDescriptor::heisenberg(5).unwrap();
        let max = h.elements().map(|x| h.element_order(&x).unwrap()).max();
        assert_eq!(max, Some(5));
        assert_eq!(h.group_exponent(), 5);

        for kind in GroupKind::ALL {
            for p in [2, 3, 5] {
                let Ok(g) = GroupDescriptor::new(kind, p) else {
                    continue;
                };
                let orders: Vec<u32> = g.elements().map(|x| g.element_order(&x).unwrap()).collect();
                assert_eq!(orders.iter().copied().max().unwrap(), g.group_exponent(), "{g}");
                assert!(orders.iter().all(|o| g.group_exponent() % o == 0));
            }
        }
    }

    #[test]
    fn invalid_elements_are_rejected() {
        let g = GroupDescriptor::heisenberg(3).unwrap();
        assert!(matches!(
            g.add(&e(&[3, 0, 0]), &g.zero()),
            Err(Error::InvalidElement { .. })
        ));
        assert!(g.neg(&e(&[0, 1])).is_err());
        assert!(g.element(&[1, 2, 3]).is_err());
    }

    #[test]
    fn word_identities() {
        let r = verify_word_identities(3).unwrap();
        assert!(r.passed);
        // 4 (k,l) pairs, two identities plus two r values each
        assert_eq!(r.checks, 4 * (2 + 2));
        assert!(verify_word_identities(7).unwrap().passed);
        assert!(verify_word_identities(2).is_err());
    }

    #[test]
    fn descriptor_text_form() {
        let g: GroupDescriptor = "heisenberg:5".parse().unwrap();
        assert_eq!(g, GroupDescriptor::heisenberg(5).unwrap());
        assert_eq!(g.to_string(), "heisenberg:5");
        assert!("heisenberg:9".parse::<GroupDescriptor>().is_err());
        assert!("quaternion:3".parse::<GroupDescriptor>().is_err());
        assert_eq!("[2,1,4]".parse::<Element>().unwrap(), e(&[2, 1, 4]));
        assert_eq!(e(&[2, 1, 4]).to_string(), "[2,1,4]");
    }

    #[test]
    fn tables_agree_with_descriptor() {
        let d = GroupDescriptor::metacyclic(3).unwrap();
        let g = Group::new(d).unwrap();
        for i in 0..g.order() {
            let x = g.element(i);
            assert_eq!(d.index_of(&x).unwrap(), i);
            for k in -10..10 {
                assert_eq!(g.element(g.multiple(i, k)), d.scalar(&x, k).unwrap());
            }
        }
        assert!(!g.is_abelian());
        assert!(Group::new(GroupDescriptor::heisenberg(13).unwrap()).is_err());
    }
}
