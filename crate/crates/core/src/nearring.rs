//! Left nearrings over a tabulated additive group.
//!
//! A [`Nearring`] carries a total multiplication, either as a closure on
//! elements (formula-backed, tabulated lazily on first use) or as a
//! row-major table of element indices.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupDescriptor};

pub type Formula = Arc<dyn Fn(&Element, &Element) -> Element + Send + Sync>;

#[derive(Clone)]
pub struct Nearring {
    group: Arc<Group>,
    formula: Option<Formula>,
    table: OnceLock<Arc<Vec<u32>>>,
    identity: Option<usize>,
    label: String,
}

impl fmt::Debug for Nearring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nearring")
            .field("group", &self.group.descriptor().to_string())
            .field("label", &self.label)
            .field("identity", &self.identity())
            .field("formula_backed", &self.formula.is_some())
            .finish()
    }
}

impl Nearring {
    pub fn from_formula(group: Arc<Group>, label: impl Into<String>, formula: Formula) -> Nearring {
        Nearring {
            group,
            formula: Some(formula),
            table: OnceLock::new(),
            identity: None,
            label: label.into(),
        }
    }

    /// Wraps a row-major `n x n` table of element indices.
    pub fn from_table(group: Arc<Group>, table: Vec<u32>) -> Result<Nearring> {
        let n = group.order();
        if table.len() != n * n {
            return Err(Error::TableShape {
                found: table.len(),
                expected: n * n,
            });
        }
        if let Some((entry, &value)) = table.iter().enumerate().find(|(_, &v)| v as usize >= n) {
            return Err(Error::NotClosed {
                entry,
                value: value as u64,
                order: n,
            });
        }
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(table));
        Ok(Nearring {
            group,
            formula: None,
            table: cell,
            identity: None,
            label: String::new(),
        })
    }

    /// Designates `e` as the identity after checking `e x = x e = x` for all `x`.
    pub fn with_identity(mut self, e: &Element) -> Result<Nearring> {
        let i = self.group.index(e)?;
        if !is_two_sided_identity(&self, i) {
            return Err(Error::InvalidIdentity(*e));
        }
        self.identity = Some(i);
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Nearring {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.group.descriptor()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn is_formula_backed(&self) -> bool {
        self.formula.is_some()
    }

    /// The full table, evaluating the formula on first call.
    pub fn table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let f = self.formula.as_ref().expect("tabulated nearrings always carry a table");
            let g = &self.group;
            let desc = g.descriptor();
            let mut t = Vec::with_capacity(g.order() * g.order());
            for x in g.elements() {
                for y in g.elements() {
                    t.push(desc.index_unchecked(&f(x, y)) as u32);
                }
            }
            Arc::new(t)
        })
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table()[x * self.group.order() + y] as usize
    }

    pub fn mul_elements(&self, x: &Element, y: &Element) -> Result<Element> {
        let (i, j) = (self.group.index(x)?, self.group.index(y)?);
        Ok(self.group.element(self.mul(i, j)))
    }

    /// Evaluates the defining formula directly, bypassing the table.
    pub fn evaluate_formula(&self, x: &Element, y: &Element) -> Option<Element> {
        self.formula.as_ref().map(|f| f(x, y))
    }

    /// Designated identity, if one has been set and checked.
    pub fn identity(&self) -> Option<Element> {
        self.identity.map(|i| self.group.element(i))
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.identity
    }

    /// Entry-wise comparison of two multiplications on the same carrier.
    pub fn agrees_with(&self, other: &Nearring) -> bool {
        self.descriptor() == other.descriptor() && self.table() == other.table()
    }

    /// Formula evaluated afresh on every pair against the stored table.
    pub fn formula_matches_table(&self) -> Option<bool> {
        let f = self.formula.as_ref()?;
        let g = &self.group;
        let n = g.order();
        Some((0..n).all(|x| {
            (0..n).all(|y| g.index(&f(&g.element(x), &g.element(y))).ok() == Some(self.mul(x, y)))
        }))
    }
}

pub(crate) fn is_two_sided_identity(r: &Nearring, e: usize) -> bool {
    (0..r.order()).all(|x| r.mul(e, x) == x && r.mul(x, e) == x)
}
