//! Involutions and the element subsets every characterization quantifies
//! over: idempotents, projections, nilpotents, units and the Jacobson
//! radical, plus the ring-level predicates built directly on them.

use std::ops::Deref;

use serde::Serialize;

use crate::error::{InvolutionAxiom, InvolutionViolation, StarError};
use crate::ideal::generated_ideal;
use crate::ring::{Element, RingTable};
use crate::set::ElemSet;
use crate::witness::{Decision, Witness};

/// A validated involution: additive, anti-multiplicative and self-inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    perm: Vec<Element>,
}

impl Involution {
    pub fn identity(order: usize) -> Self {
        Involution {
            perm: (0..order).map(Element::from_index).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Element) -> Element {
        self.perm[x.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, x)| x.index() == i)
    }

    pub fn to_indices(&self) -> Vec<usize> {
        self.perm.iter().map(|x| x.index()).collect()
    }
}

/// Checks that `perm` is a bijection satisfying all involution axioms on `ring`.
pub fn validate_involution(ring: &RingTable, perm: &[usize]) -> Result<Involution, StarError> {
    let n = ring.order();
    if perm.len() != n {
        return Err(StarError::WrongLength {
            expected: n,
            found: perm.len(),
        });
    }
    let mut hit = vec![false; n];
    for (i, &v) in perm.iter().enumerate() {
        if v >= n {
            return Err(StarError::OutOfRange { index: i, value: v });
        }
        if std::mem::replace(&mut hit[v], true) {
            return Err(StarError::NotBijective { value: v });
        }
    }
    let star = Involution {
        perm: perm.iter().copied().map(Element::from_index).collect(),
    };

    let mut violations = Vec::new();
    let mut note = |axiom, witness: &[Element]| {
        violations.push(InvolutionViolation {
            axiom,
            witness: witness.iter().map(|e| e.index()).collect(),
        })
    };
    if let Some(x) = ring.elements().find(|&x| star.apply(star.apply(x)) != x) {
        note(InvolutionAxiom::Involutive, &[x]);
    }
    let pairs = || ring.elements().flat_map(|x| ring.elements().map(move |y| (x, y)));
    if let Some((x, y)) =
        pairs().find(|&(x, y)| star.apply(ring.add(x, y)) != ring.add(star.apply(x), star.apply(y)))
    {
        note(InvolutionAxiom::Additive, &[x, y]);
    }
    if let Some((x, y)) =
        pairs().find(|&(x, y)| star.apply(ring.mul(x, y)) != ring.mul(star.apply(y), star.apply(x)))
    {
        note(InvolutionAxiom::AntiMultiplicative, &[x, y]);
    }
    if violations.is_empty() {
        Ok(star)
    } else {
        Err(StarError::Axioms(violations))
    }
}

/// A ring paired with a validated involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarRing {
    ring: RingTable,
    star: Involution,
}

impl StarRing {
    pub fn new(ring: RingTable, perm: &[usize]) -> Result<Self, StarError> {
        let star = validate_involution(&ring, perm)?;
        Ok(StarRing { ring, star })
    }

    /// The identity map, which is an involution exactly when the ring is commutative.
    pub fn with_identity(ring: RingTable) -> Result<Self, StarError> {
        let perm: Vec<usize> = (0..ring.order()).collect();
        Self::new(ring, &perm)
    }

    pub fn ring(&self) -> &RingTable {
        &self.ring
    }

    pub fn involution(&self) -> &Involution {
        &self.star
    }

    #[inline]
    pub fn star(&self, x: Element) -> Element {
        self.star.apply(x)
    }

    /// Elements with `x* = x`.
    pub fn symmetric_elements(&self) -> Vec<Element> {
        self.elements().filter(|&x| self.star(x) == x).collect()
    }

    pub fn into_parts(self) -> (RingTable, Involution) {
        (self.ring, self.star)
    }
}

impl Deref for StarRing {
    type Target = RingTable;

    fn deref(&self) -> &RingTable {
        &self.ring
    }
}

pub fn idempotents(r: &RingTable) -> ElemSet {
    ElemSet::from_elements(r.order(), r.elements().filter(|&x| r.mul(x, x) == x))
}

/// Idempotents fixed by the involution.
pub fn projections(s: &StarRing) -> ElemSet {
    let mut p = idempotents(s);
    for e in idempotents(s).iter() {
        if s.star(e) != e {
            p.remove(e);
        }
    }
    p
}

/// Nilpotent elements with their nilpotency indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nilpotents {
    pub members: ElemSet,
    /// Least `k ≥ 1` with `x^k = 0`, for members only.
    pub index: Vec<Option<u32>>,
}

/// Scans `x, x², …, x^n`; a non-nilpotent power sequence never reaches zero
/// within `n` steps by pigeonhole.
pub fn nilpotents(r: &RingTable) -> Nilpotents {
    let n = r.order();
    let mut index = vec![None; n];
    for x in r.elements() {
        let mut p = x;
        for k in 1..=n as u32 {
            if p == r.zero() {
                index[x.index()] = Some(k);
                break;
            }
            p = r.mul(p, x);
        }
    }
    let members = ElemSet::from_elements(
        n,
        r.elements().filter(|x| index[x.index()].is_some()),
    );
    Nilpotents { members, index }
}

/// Units via the finite-ring criterion: `x` is a unit iff left
/// multiplication by `x` is injective.
pub fn units(r: &RingTable) -> ElemSet {
    let n = r.order();
    let mut seen = vec![usize::MAX; n];
    let mut out = ElemSet::empty(n);
    for x in r.elements() {
        let injective = r.elements().all(|y| {
            let p = r.mul(x, y).index();
            std::mem::replace(&mut seen[p], x.index()) != x.index()
        });
        if injective {
            out.insert(x);
        }
    }
    out
}

/// Units via an explicit two-sided inverse search. Independent of [`units`].
pub fn units_by_inverse_scan(r: &RingTable) -> ElemSet {
    ElemSet::from_elements(
        r.order(),
        r.elements().filter(|&x| {
            r.elements()
                .any(|y| r.mul(x, y) == r.one() && r.mul(y, x) == r.one())
        }),
    )
}

/// `J(R) = { x : 1 − rx ∈ U(R) for all r }`.
pub fn jacobson_radical(r: &RingTable) -> ElemSet {
    jacobson_with_units(r, &units(r))
}

pub(crate) fn jacobson_with_units(r: &RingTable, units: &ElemSet) -> ElemSet {
    ElemSet::from_elements(
        r.order(),
        r.elements().filter(|&x| {
            r.elements()
                .all(|s| units.contains(r.sub(r.one(), r.mul(s, x))))
        }),
    )
}

pub fn is_boolean(r: &RingTable) -> Decision {
    match r.elements().find(|&x| r.mul(x, x) != x) {
        Some(x) => Decision::fails_at(x),
        None => Decision::scan(r.order()),
    }
}

/// First repeat `x^m = x^n` (`1 ≤ m < n`) in the power sequence of `x`.
pub fn period(r: &RingTable, x: Element) -> (u32, u32) {
    let mut first_seen = vec![0u32; r.order()];
    let mut p = x;
    let mut k = 1u32;
    loop {
        let slot = &mut first_seen[p.index()];
        if *slot != 0 {
            return (*slot, k);
        }
        *slot = k;
        p = r.mul(p, x);
        k += 1;
    }
}

/// Literal periodicity check: every element gets an explicit `(m, n)`.
pub fn is_periodic(r: &RingTable) -> Decision {
    let mut pairs = Vec::with_capacity(r.order());
    for x in r.elements() {
        let (m, n) = period(r, x);
        if m == n || r.pow(x, m as u64) != r.pow(x, n as u64) {
            return Decision::fails_at(x);
        }
        pairs.push([m, n]);
    }
    Decision::holds(Witness::Exponents { pairs })
}

/// Every idempotent is central.
pub fn is_abelian(r: &RingTable) -> Decision {
    let idem = idempotents(r);
    for e in idem.iter() {
        if let Some(x) = r.elements().find(|&x| !r.commute(e, x)) {
            return Decision::fails_pair(e, x);
        }
    }
    Decision::scan(idem.len() * r.order())
}

/// Local iff the non-units form a two-sided ideal.
pub fn is_local(r: &RingTable) -> Decision {
    is_local_with_units(r, &units(r))
}

pub(crate) fn is_local_with_units(r: &RingTable, units: &ElemSet) -> Decision {
    let non_units = units.complement();
    if !non_units.contains(r.zero()) {
        // zero ring: no proper ideals at all
        return Decision::fails_at(r.zero());
    }
    for x in non_units.iter() {
        for y in non_units.iter() {
            if units.contains(r.add(x, y)) {
                return Decision::fails_pair(x, y);
            }
        }
        for s in r.elements() {
            if units.contains(r.mul(s, x)) || units.contains(r.mul(x, s)) {
                return Decision::fails_pair(s, x);
            }
        }
    }
    Decision::holds(Witness::Ideal { members: non_units })
}

/// Local, and every nonzero `x ∈ J(R)` generates `J(R)` as a two-sided ideal.
///
/// A local ring with `J(R) = 0` satisfies this vacuously.
pub fn is_absolutely_local(r: &RingTable) -> Decision {
    let u = units(r);
    is_local_with_units(r, &u).and(|| {
        let j = jacobson_with_units(r, &u);
        for x in j.iter().filter(|&x| x != r.zero()) {
            if generated_ideal(r, &[x]).members != j {
                return Decision::fails_at(x);
            }
        }
        Decision::holds(Witness::Ideal { members: j })
    })
}

/// All subsets the classifiers need, computed once per ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralSets {
    pub idempotents: ElemSet,
    pub projections: ElemSet,
    pub nilpotents: ElemSet,
    pub units: ElemSet,
    pub jacobson: ElemSet,
    #[serde(skip)]
    pub nil_index: Vec<Option<u32>>,
}

impl StructuralSets {
    pub fn compute(s: &StarRing) -> Self {
        let idem = idempotents(s);
        let projections = projections(s);
        let nil = nilpotents(s);
        let units = units(s);
        let jacobson = jacobson_with_units(s, &units);
        StructuralSets {
            idempotents: idem,
            projections,
            nilpotents: nil.members,
            units,
            jacobson,
            nil_index: nil.index,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example_twisted_boolean_4, make_zn, matrices_2x2_z2};

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    fn idx(s: &ElemSet) -> Vec<usize> {
        s.to_indices()
    }

    #[test]
    fn identity_is_involution_on_z4() {
        let z4 = make_zn(4).unwrap();
        assert!(validate_involution(&z4, &[0, 1, 2, 3]).is_ok());
    }

    #[test]
    fn twisted_involution_validates() {
        let s = example_twisted_boolean_4().unwrap();
        assert_eq!(s.involution().to_indices(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn corrupted_transpose_fails_with_witness() {
        let m = matrices_2x2_z2().unwrap();
        let mut perm = m.involution().to_indices();
        perm.swap(1, 3);
        let err = validate_involution(m.ring(), &perm).unwrap_err();
        let StarError::Axioms(v) = err else { panic!("{err:?}") };
        assert!(!v.is_empty());
        assert!(v.iter().all(|v| !v.witness.is_empty()));
    }

    #[test]
    fn non_bijective_rejected() {
        let z4 = make_zn(4).unwrap();
        assert!(matches!(
            validate_involution(&z4, &[0, 1, 1, 3]),
            Err(StarError::NotBijective { value: 1 })
        ));
        assert!(matches!(
            validate_involution(&z4, &[0, 1, 2]),
            Err(StarError::WrongLength { .. })
        ));
    }

    #[test]
    fn idempotents_and_projections() {
        assert_eq!(idx(&idempotents(&make_zn(6).unwrap())), vec![0, 1, 3, 4]);
        let s = example_twisted_boolean_4().unwrap();
        assert_eq!(idempotents(&s).len(), 4);
        assert_eq!(idx(&projections(&s)), vec![0, 1]);
    }

    #[test]
    fn nilpotent_sets() {
        let z8 = nilpotents(&make_zn(8).unwrap());
        assert_eq!(idx(&z8.members), vec![0, 2, 4, 6]);
        assert_eq!(z8.index[2], Some(3));
        assert_eq!(z8.index[4], Some(2));
        assert_eq!(z8.index[0], Some(1));
        assert_eq!(idx(&nilpotents(&make_zn(6).unwrap()).members), vec![0]);
    }

    #[test]
    fn unit_sets() {
        assert_eq!(idx(&units(&make_zn(4).unwrap())), vec![1, 3]);
        let b = crate::construct::direct_product(&make_zn(2).unwrap(), &make_zn(2).unwrap()).unwrap();
        assert_eq!(idx(&units(&b)), vec![b.one().index()]);
    }

    #[test]
    fn jacobson_of_small_zn() {
        assert_eq!(idx(&jacobson_radical(&make_zn(4).unwrap())), vec![0, 2]);
        assert_eq!(idx(&jacobson_radical(&make_zn(6).unwrap())), vec![0]);
        assert_eq!(idx(&jacobson_radical(&example_twisted_boolean_4().unwrap())), vec![0]);
    }

    #[test]
    fn boolean_predicate() {
        assert!(is_boolean(&make_zn(2).unwrap()).holds);
        assert!(is_boolean(&example_twisted_boolean_4().unwrap()).holds);
        assert_eq!(is_boolean(&make_zn(4).unwrap()), Decision::fails_at(e(2)));
    }

    #[test]
    fn periods() {
        let z4 = make_zn(4).unwrap();
        assert_eq!(period(&z4, e(2)), (2, 3));
        assert_eq!(period(&make_zn(6).unwrap(), e(5)), (1, 3));
        assert_eq!(period(&z4, e(1)), (1, 2));
        assert_eq!(period(&z4, e(0)), (1, 2));
        assert!(is_periodic(&z4).holds);
    }

    #[test]
    fn abelian_predicate() {
        assert!(is_abelian(&make_zn(12).unwrap()).holds);
        let m = matrices_2x2_z2().unwrap();
        let d = is_abelian(&m);
        assert!(!d.holds);
        let Witness::Pair { x: idem, y } = d.witness else { panic!() };
        assert_eq!(m.mul(idem, idem), idem);
        assert_ne!(m.mul(idem, y), m.mul(y, idem));
    }

    #[test]
    fn local_and_absolutely_local() {
        let z4 = make_zn(4).unwrap();
        assert!(is_local(&z4).holds);
        assert!(is_absolutely_local(&z4).holds);
        assert!(!is_local(&make_zn(6).unwrap()).holds);
        let z8 = make_zn(8).unwrap();
        assert!(is_local(&z8).holds);
        assert_eq!(is_absolutely_local(&z8), Decision::fails_at(e(4)));
    }
}
