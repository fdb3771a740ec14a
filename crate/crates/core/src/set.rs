//! Dense element sets backed by a fixed-width bitset.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::ring::Element;

/// A subset of `0..n` for a ring of order `n`.
///
/// Serializes as a sorted array of indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl ElemSet {
    pub fn empty(order: usize) -> Self {
        ElemSet {
            bits: FixedBitSet::with_capacity(order),
        }
    }

    pub fn full(order: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(order);
        bits.insert_range(..);
        ElemSet { bits }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(order: usize, items: I) -> Self {
        let mut s = Self::empty(order);
        for x in items {
            s.insert(x);
        }
        s
    }

    /// Capacity, i.e. the order of the ambient ring.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, x: Element) -> bool {
        let present = self.bits.contains(x.index());
        self.bits.insert(x.index());
        !present
    }

    pub fn remove(&mut self, x: Element) {
        self.bits.set(x.index(), false);
    }

    pub fn contains(&self, x: Element) -> bool {
        self.bits.contains(x.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.ones().map(Element::from_index)
    }

    pub fn first(&self) -> Option<Element> {
        self.bits.minimum().map(Element::from_index)
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &ElemSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElemSet { bits }
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ElemSet { bits }
    }

    pub fn complement(&self) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ElemSet { bits }
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl Serialize for ElemSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.bits.ones())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    #[test]
    fn basic_set_algebra() {
        let a = ElemSet::from_elements(8, [e(0), e(2), e(4)]);
        let b = ElemSet::from_elements(8, [e(0), e(4)]);
        assert!(b.is_proper_subset(&a));
        assert!(!a.is_proper_subset(&a));
        assert_eq!(a.intersection(&b), b);
        assert_eq!(a.difference(&b).to_indices(), vec![2]);
        assert_eq!(a.complement().len(), 5);
        assert_eq!(ElemSet::full(8).len(), 8);
        assert_eq!(a.first(), Some(e(0)));
    }

    #[test]
    fn serializes_sorted() {
        let a = ElemSet::from_elements(8, [e(6), e(1), e(3)]);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[1,3,6]");
    }
}
