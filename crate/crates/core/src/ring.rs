//! Finite rings given by Cayley tables over dense element indices.
//!
//! A [`RingTable`] can only be obtained through validation, so every
//! downstream algorithm may assume the ring axioms hold.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Axiom, AxiomViolation, MalformedTable, RingError};

/// Largest order accepted for element-level work.
pub const HARD_MAX_ORDER: usize = 4096;

/// Exhaustive (cubic) axiom scans are only attempted up to this order when
/// the additive structure is broken and the generator reduction is unusable.
const EXHAUSTIVE_FALLBACK_ORDER: usize = 256;

/// An element of some ring, identified by its index in the ring's tables.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u16);

impl Element {
    /// Panics if `i` does not fit the index type; ring orders are capped well below that.
    pub fn from_index(i: usize) -> Self {
        Element(u16::try_from(i).expect("element index exceeds u16"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unvalidated flat tables, row-major: `add[x * order + y] = x + y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTables {
    pub order: usize,
    pub add: Vec<usize>,
    pub mul: Vec<usize>,
    pub zero: usize,
    pub one: usize,
}

impl RawTables {
    /// Builds tables by evaluating the operations on every index pair.
    pub fn from_fn(
        order: usize,
        zero: usize,
        one: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut a = Vec::with_capacity(order * order);
        let mut m = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                a.push(add(x, y));
                m.push(mul(x, y));
            }
        }
        RawTables {
            order,
            add: a,
            mul: m,
            zero,
            one,
        }
    }

    /// Converts nested rows, checking that both tables are `n × n`.
    pub fn from_rows(
        add: &[Vec<usize>],
        mul: &[Vec<usize>],
        zero: usize,
        one: usize,
    ) -> Result<Self, RingError> {
        let order = add.len();
        if order == 0 {
            return Err(MalformedTable::EmptyCarrier.into());
        }
        let flat = |rows: &[Vec<usize>], table: &'static str| {
            if rows.len() != order {
                return Err(MalformedTable::RowCount {
                    table,
                    expected: order,
                    found: rows.len(),
                });
            }
            let mut out = Vec::with_capacity(order * order);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != order {
                    return Err(MalformedTable::RowLength {
                        table,
                        row: r,
                        expected: order,
                        found: row.len(),
                    });
                }
                out.extend_from_slice(row);
            }
            Ok(out)
        };
        let add = flat(add, "add")?;
        let mul = flat(mul, "mul")?;
        Ok(RawTables {
            order,
            add,
            mul,
            zero,
            one,
        })
    }

    fn check_shape(&self, max_order: usize) -> Result<(), MalformedTable> {
        let n = self.order;
        if n == 0 {
            return Err(MalformedTable::EmptyCarrier);
        }
        if n > max_order {
            return Err(MalformedTable::OrderTooLarge {
                order: n,
                cap: max_order,
            });
        }
        for (table, data) in [("add", &self.add), ("mul", &self.mul)] {
            if data.len() != n * n {
                return Err(MalformedTable::TableSize {
                    table,
                    expected: n * n,
                    found: data.len(),
                });
            }
            if let Some(pos) = data.iter().position(|&v| v >= n) {
                return Err(MalformedTable::IndexOutOfRange {
                    table,
                    row: pos / n,
                    col: pos % n,
                    value: data[pos],
                });
            }
        }
        for (name, v) in [("zero", self.zero), ("one", self.one)] {
            if v >= n {
                return Err(MalformedTable::ConstantOutOfRange { name, value: v });
            }
        }
        Ok(())
    }
}

/// A validated finite ring with unity.
#[derive(Clone, PartialEq, Eq)]
pub struct RingTable {
    order: usize,
    add: Vec<Element>,
    mul: Vec<Element>,
    neg: Vec<Element>,
    zero: Element,
    one: Element,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

/// Checks shape and every ring axiom, returning all violated axioms.
pub fn validate_ring(raw: &RawTables) -> Result<(), RingError> {
    validate_with_cap(raw, HARD_MAX_ORDER).map(|_| ())
}

fn validate_with_cap(raw: &RawTables, max_order: usize) -> Result<Vec<Element>, RingError> {
    raw.check_shape(max_order)?;
    let v = Validator::new(raw);
    v.run()
}

impl RingTable {
    pub fn new(raw: RawTables) -> Result<Self, RingError> {
        Self::with_cap(raw, HARD_MAX_ORDER)
    }

    /// Validates against a caller-supplied order cap (never above [`HARD_MAX_ORDER`]).
    pub fn with_cap(raw: RawTables, max_order: usize) -> Result<Self, RingError> {
        let neg = validate_with_cap(&raw, max_order.min(HARD_MAX_ORDER))?;
        let conv = |v: Vec<usize>| v.into_iter().map(Element::from_index).collect();
        Ok(RingTable {
            order: raw.order,
            add: conv(raw.add),
            mul: conv(raw.mul),
            neg,
            zero: Element::from_index(raw.zero),
            one: Element::from_index(raw.one),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order, "one label per element");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(l) => l[x.index()].clone(),
            None => x.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Element {
        self.zero
    }

    pub fn one(&self) -> Element {
        self.one
    }

    /// Range-checked conversion from a raw index.
    pub fn element(&self, index: usize) -> Result<Element, RingError> {
        if index < self.order {
            Ok(Element::from_index(index))
        } else {
            Err(RingError::ElementOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + Clone {
        (0..self.order).map(Element::from_index)
    }

    #[inline]
    pub fn add(&self, x: Element, y: Element) -> Element {
        self.add[x.index() * self.order + y.index()]
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul[x.index() * self.order + y.index()]
    }

    #[inline]
    pub fn neg(&self, x: Element) -> Element {
        self.neg[x.index()]
    }

    #[inline]
    pub fn sub(&self, x: Element, y: Element) -> Element {
        self.add(x, self.neg(y))
    }

    /// `xy = yx`
    #[inline]
    pub fn commute(&self, x: Element, y: Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    /// `x^k`, with `x^0 = 1`.
    pub fn pow(&self, x: Element, mut k: u64) -> Element {
        let mut acc = self.one;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `k · x` (k-fold sum).
    pub fn times(&self, k: u64, x: Element) -> Element {
        let mut acc = self.zero;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `k · x = 0`.
    pub fn additive_order(&self, x: Element) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Additive order of one.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    /// Least common multiple of all additive orders.
    pub fn additive_exponent(&self) -> usize {
        self.elements()
            .map(|x| self.additive_order(x))
            .fold(1, |acc, k| acc / gcd(acc, k) * k)
    }

    /// First pair `(x, y)` with `xy ≠ yx`, if any.
    pub fn commutativity_witness(&self) -> Option<(Element, Element)> {
        for x in self.elements() {
            for y in self.elements().skip(x.index() + 1) {
                if !self.commute(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    /// Row-major tables as nested index vectors.
    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.rows(&self.add)
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.rows(&self.mul)
    }

    fn rows(&self, t: &[Element]) -> Vec<Vec<usize>> {
        t.chunks(self.order)
            .map(|r| r.iter().map(|e| e.index()).collect())
            .collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Axiom checks over raw index tables.
///
/// Once `(R, +)` is known to be an abelian group, the remaining identities
/// are additive in their last argument, so they are only tested with that
/// argument ranging over an additive generating set `G`. Associativity of
/// `+` itself is settled by Light's test over `G`. Everything is
/// `O(n² |G|)` with `|G| ≤ log₂ n`.
struct Validator<'a> {
    n: usize,
    add: &'a [usize],
    mul: &'a [usize],
    zero: usize,
    one: usize,
}

impl<'a> Validator<'a> {
    fn new(raw: &'a RawTables) -> Self {
        Validator {
            n: raw.order,
            add: &raw.add,
            mul: &raw.mul,
            zero: raw.zero,
            one: raw.one,
        }
    }

    #[inline]
    fn a(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y]
    }

    #[inline]
    fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    fn run(&self) -> Result<Vec<Element>, RingError> {
        let mut violations = Vec::new();
        let n = self.n;

        if let Some(x) = (0..n).find(|&x| self.a(self.zero, x) != x || self.a(x, self.zero) != x) {
            violations.push(AxiomViolation::new(Axiom::AddIdentity, &[x]));
        }
        if let Some((x, y)) = pairs(n).find(|&(x, y)| self.a(x, y) != self.a(y, x)) {
            violations.push(AxiomViolation::new(Axiom::AddCommutative, &[x, y]));
        }
        let mut neg = vec![0; n];
        for x in 0..n {
            match (0..n).find(|&y| self.a(x, y) == self.zero && self.a(y, x) == self.zero) {
                Some(y) => neg[x] = y,
                None => {
                    violations.push(AxiomViolation::new(Axiom::AddInverse, &[x]));
                    break;
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| self.m(self.one, x) != x || self.m(x, self.one) != x) {
            violations.push(AxiomViolation::new(Axiom::MulIdentity, &[x]));
        }

        let group_ok = violations.is_empty();
        let gens = if group_ok { self.additive_generators() } else { None };
        match gens {
            Some(g) => {
                if let Some(w) = self.find_add_assoc(&g) {
                    violations.push(AxiomViolation::new(Axiom::AddAssociative, &w));
                    self.exhaustive_tail(&mut violations);
                } else {
                    self.generator_tail(&g, &mut violations);
                }
            }
            None => {
                if group_ok {
                    // too many generators for a group of this order
                    if let Some(w) = self.find_add_assoc_exhaustive() {
                        violations.push(AxiomViolation::new(Axiom::AddAssociative, &w));
                    }
                } else if n <= EXHAUSTIVE_FALLBACK_ORDER {
                    if let Some(w) = self.find_add_assoc_exhaustive() {
                        violations.push(AxiomViolation::new(Axiom::AddAssociative, &w));
                    }
                }
                self.exhaustive_tail(&mut violations);
            }
        }

        if violations.is_empty() {
            Ok(neg.into_iter().map(Element::from_index).collect())
        } else {
            violations.sort_by_key(|v| v.axiom);
            Err(RingError::Axioms(violations))
        }
    }

    /// Greedy generating set via left-nested sums from zero. Returns `None`
    /// when more generators are needed than any group of order `n` allows.
    fn additive_generators(&self) -> Option<Vec<usize>> {
        let n = self.n;
        let bound = usize::BITS as usize - n.leading_zeros() as usize; // ⌊log₂ n⌋ + 1
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; n];
        reached[self.zero] = true;
        let mut count = 1;
        while count < n {
            let g = (0..n).find(|&x| !reached[x]).unwrap();
            gens.push(g);
            if gens.len() > bound {
                return None;
            }
            let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
            while let Some(s) = stack.pop() {
                for &h in &gens {
                    let t = self.a(s, h);
                    if !reached[t] {
                        reached[t] = true;
                        count += 1;
                        stack.push(t);
                    }
                }
            }
        }
        Some(gens)
    }

    fn find_add_assoc(&self, gens: &[usize]) -> Option<[usize; 3]> {
        let n = self.n;
        for &g in gens {
            for x in 0..n {
                let xg = self.a(x, g);
                for y in 0..n {
                    if self.a(xg, y) != self.a(x, self.a(g, y)) {
                        return Some([x, g, y]);
                    }
                }
            }
        }
        None
    }

    fn find_add_assoc_exhaustive(&self) -> Option<[usize; 3]> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.a(x, y);
                for z in 0..n {
                    if self.a(xy, z) != self.a(x, self.a(y, z)) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    fn generator_tail(&self, gens: &[usize], out: &mut Vec<AxiomViolation>) {
        let n = self.n;
        let mut left = None;
        let mut right = None;
        let mut assoc = None;
        'outer: for x in 0..n {
            for y in 0..n {
                let xy = self.m(x, y);
                let yx = self.m(y, x);
                for &g in gens {
                    let yg = self.a(y, g);
                    if left.is_none() && self.m(x, yg) != self.a(xy, self.m(x, g)) {
                        left = Some([x, y, g]);
                    }
                    if right.is_none() && self.m(yg, x) != self.a(yx, self.m(g, x)) {
                        right = Some([y, g, x]);
                    }
                    if assoc.is_none() && self.m(xy, g) != self.m(x, self.m(y, g)) {
                        assoc = Some([x, y, g]);
                    }
                }
                if left.is_some() && right.is_some() && assoc.is_some() {
                    break 'outer;
                }
            }
        }
        push(out, Axiom::LeftDistributive, left);
        push(out, Axiom::RightDistributive, right);
        push(out, Axiom::MulAssociative, assoc);
    }

    fn exhaustive_tail(&self, out: &mut Vec<AxiomViolation>) {
        let n = self.n;
        if n > EXHAUSTIVE_FALLBACK_ORDER {
            return;
        }
        let mut left = None;
        let mut right = None;
        let mut assoc = None;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let yz = self.a(y, z);
                    if left.is_none() && self.m(x, yz) != self.a(self.m(x, y), self.m(x, z)) {
                        left = Some([x, y, z]);
                    }
                    if right.is_none() && self.m(yz, x) != self.a(self.m(y, x), self.m(z, x)) {
                        right = Some([y, z, x]);
                    }
                    if assoc.is_none() && self.m(self.m(x, y), z) != self.m(x, self.m(y, z)) {
                        assoc = Some([x, y, z]);
                    }
                }
            }
        }
        push(out, Axiom::LeftDistributive, left);
        push(out, Axiom::RightDistributive, right);
        push(out, Axiom::MulAssociative, assoc);
    }
}

fn push(out: &mut Vec<AxiomViolation>, axiom: Axiom, w: Option<[usize; 3]>) {
    if let Some(w) = w {
        out.push(AxiomViolation::new(axiom, &w));
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (x + 1..n).map(move |y| (x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_raw(n: usize) -> RawTables {
        RawTables::from_fn(n, 0, 1 % n, |x, y| (x + y) % n, |x, y| (x * y) % n)
    }

    fn zn(n: usize) -> RingTable {
        RingTable::new(zn_raw(n)).unwrap()
    }

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    #[test]
    fn z4_is_a_ring() {
        assert!(validate_ring(&zn_raw(4)).is_ok());
    }

    #[test]
    fn corrupted_z4_reports_witness() {
        let mut raw = zn_raw(4);
        raw.mul[2 * 4 + 3] = 1; // 2·3 = 2 in Z_4
        let err = validate_ring(&raw).unwrap_err();
        let RingError::Axioms(v) = err else {
            panic!("expected axiom violations, got {err:?}");
        };
        assert!(v.iter().any(|v| matches!(
            v.axiom,
            Axiom::LeftDistributive | Axiom::RightDistributive | Axiom::MulAssociative
        )));
        assert!(v.iter().all(|v| !v.witness.is_empty()));
    }

    #[test]
    fn empty_carrier_is_malformed() {
        let raw = RawTables {
            order: 0,
            add: vec![],
            mul: vec![],
            zero: 0,
            one: 0,
        };
        assert!(matches!(
            validate_ring(&raw),
            Err(RingError::Malformed(MalformedTable::EmptyCarrier))
        ));
        assert!(matches!(
            RawTables::from_rows(&[], &[], 0, 0),
            Err(RingError::Malformed(MalformedTable::EmptyCarrier))
        ));
    }

    #[test]
    fn ragged_rows_are_malformed() {
        let add = vec![vec![0, 1], vec![1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(
            RawTables::from_rows(&add, &mul, 0, 1),
            Err(RingError::Malformed(MalformedTable::RowLength { row: 1, .. }))
        ));
    }

    #[test]
    fn out_of_range_entry_is_malformed() {
        let mut raw = zn_raw(3);
        raw.add[4] = 7;
        assert!(matches!(
            validate_ring(&raw),
            Err(RingError::Malformed(MalformedTable::IndexOutOfRange { value: 7, .. }))
        ));
    }

    #[test]
    fn modular_arithmetic() {
        let r = zn(4);
        assert_eq!(r.add(e(2), e(3)), e(1));
        assert_eq!(r.mul(e(2), e(2)), e(0));
        assert_eq!(r.sub(e(1), e(3)), e(2));
        assert_eq!(r.neg(e(1)), e(3));
        for x in r.elements() {
            assert_eq!(r.add(x, r.zero()), x);
        }
        assert!(r.element(4).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(zn(4).pow(e(2), 2), e(0));
        assert_eq!(zn(8).pow(e(2), 3), e(0));
        assert_eq!(zn(6).pow(e(5), 2), e(1));
        assert_eq!(zn(6).pow(e(5), 0), e(1));
    }

    #[test]
    fn characteristic_of_zn() {
        assert_eq!(zn(4).characteristic(), 4);
        assert_eq!(zn(7).characteristic(), 7);
        assert_eq!(zn(12).additive_exponent(), 12);
    }

    #[test]
    fn zero_ring_validates() {
        let raw = RawTables::from_fn(1, 0, 0, |_, _| 0, |_, _| 0);
        let r = RingTable::new(raw).unwrap();
        assert_eq!(r.characteristic(), 1);
    }

    #[test]
    fn non_group_addition_caught() {
        // x + y = max(x, y): identity and commutativity hold, inverses do not.
        let raw = RawTables::from_fn(3, 0, 1, |x, y| x.max(y), |x, y| (x * y).min(2));
        let RingError::Axioms(v) = validate_ring(&raw).unwrap_err() else {
            panic!()
        };
        assert_eq!(v[0].axiom, Axiom::AddInverse);
    }

    #[test]
    fn respects_cap() {
        let err = RingTable::with_cap(zn_raw(10), 8).unwrap_err();
        assert!(matches!(
            err,
            RingError::Malformed(MalformedTable::OrderTooLarge { order: 10, cap: 8 })
        ));
    }
}
