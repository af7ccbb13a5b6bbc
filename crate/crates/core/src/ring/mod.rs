//! Finite associative rings with unity, stored as explicit operation tables.
//!
//! Every other part of the crate speaks in [`ElementId`]s relative to a
//! [`RingTable`]. Tables are immutable once built, so a ring and its
//! [`StructureCache`] can be shared freely across threads.

mod axioms;
mod iso;
mod structure;
pub(crate) mod subset;

pub use axioms::{verify_ring_axioms, Axiom, AxiomCheck, AxiomReport};
pub use iso::find_isomorphism;
pub use structure::StructureCache;
pub use subset::{
    all_ideals, ann_left, ann_right, ideal_generated_by, left_multiples, maximal_ideals,
    right_multiples, SubsetHandle,
};

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};

/// Index of an element inside one particular [`RingTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

static NEXT_RING_UID: AtomicU64 = AtomicU64::new(1);

/// A fully materialized finite ring.
///
/// `add` and `mul` are row-major `order × order` tables, `neg` is the
/// additive inverse. Construction checks dimensions and index validity only;
/// use [`verify_ring_axioms`] to check the algebra.
#[derive(Clone)]
pub struct RingTable {
    uid: u64,
    order: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    zero: ElementId,
    one: ElementId,
    label: String,
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

impl RingTable {
    pub fn new(
        label: impl Into<String>,
        order: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        neg: Vec<u32>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::MalformedTable("order must be positive".into()));
        }
        if order > u32::MAX as usize {
            return Err(Error::MalformedTable(
                "order does not fit in 32 bits".into(),
            ));
        }
        let square = order
            .checked_mul(order)
            .ok_or_else(|| Error::MalformedTable("order too large".into()))?;
        if add.len() != square || mul.len() != square {
            return Err(Error::MalformedTable(format!(
                "expected {square} entries in add and mul tables, got {} and {}",
                add.len(),
                mul.len()
            )));
        }
        if neg.len() != order {
            return Err(Error::MalformedTable(format!(
                "expected {order} entries in neg table, got {}",
                neg.len()
            )));
        }
        if let Some(bad) = add
            .iter()
            .chain(&mul)
            .chain(&neg)
            .find(|&&v| v as usize >= order)
        {
            return Err(Error::MalformedTable(format!(
                "table entry {bad} out of range"
            )));
        }
        if zero >= order || one >= order {
            return Err(Error::MalformedTable("zero or one out of range".into()));
        }
        Ok(RingTable {
            uid: NEXT_RING_UID.fetch_add(1, Ordering::Relaxed),
            order,
            add,
            mul,
            neg,
            zero: ElementId(zero as u32),
            one: ElementId(one as u32),
            label: label.into(),
        })
    }

    /// Build a ring from closures on raw indices.
    pub fn from_fns(
        label: impl Into<String>,
        order: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let mut add_t = Vec::with_capacity(order * order);
        let mut mul_t = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                add_t.push(add(a, b) as u32);
                mul_t.push(mul(a, b) as u32);
            }
        }
        let neg_t = (0..order).map(|a| neg(a) as u32).collect();
        Self::new(label, order, add_t, mul_t, neg_t, zero, one)
    }

    /// Integers modulo `n`; element `i` is the residue `i`.
    pub fn zn(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidExpr("Z(n) needs n >= 1".into()));
        }
        Self::from_fns(
            format!("Z({n})"),
            n,
            0,
            1 % n,
            |a, b| (a + b) % n,
            |a, b| (a * b) % n,
            |a| (n - a) % n,
        )
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub(crate) fn set_label(&mut self, label: String) {
        self.label = label;
    }

    pub(crate) fn uid(&self) -> u64 {
        self.uid
    }

    #[inline]
    pub fn zero(&self) -> ElementId {
        self.zero
    }

    #[inline]
    pub fn one(&self) -> ElementId {
        self.one
    }

    #[inline]
    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.add[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mul[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn neg(&self, a: ElementId) -> ElementId {
        ElementId(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: ElementId, k: usize) -> ElementId {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `1 + 1`.
    pub fn two(&self) -> ElementId {
        self.add(self.one, self.one)
    }

    pub fn elements(
        &self,
    ) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator + Clone {
        (0..self.order as u32).map(ElementId)
    }

    pub fn element(&self, index: usize) -> Result<ElementId> {
        if index < self.order {
            Ok(ElementId(index as u32))
        } else {
            Err(Error::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .filter(|&b| b > a)
                .all(|b| self.commutes(a, b))
        })
    }

    /// Table equality, ignoring labels.
    pub fn same_tables(&self, other: &RingTable) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
            && self.neg == other.neg
    }

    #[cfg(test)]
    pub(crate) fn raw_mul_mut(&mut self) -> &mut [u32] {
        &mut self.mul
    }

    /// Row-major CSV dump of the three tables.
    ///
    /// The first line is a `#` comment with the order and label, then a
    /// header `table,row,0,1,...`, then one line per table row.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# order={} label={}\n", self.order, self.label);
        out.push_str("table,row");
        for c in 0..self.order {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
        for (name, table) in [("add", &self.add), ("mul", &self.mul)] {
            for r in 0..self.order {
                out.push_str(&format!("{name},{r}"));
                for v in &table[r * self.order..(r + 1) * self.order] {
                    out.push_str(&format!(",{v}"));
                }
                out.push('\n');
            }
        }
        out.push_str("neg,-");
        for v in &self.neg {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
        out
    }
}
