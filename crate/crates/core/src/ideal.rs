//! Two-sided ideals: generation, full enumeration, the maximal / prime /
//! semiprime / primary / submaximal predicates, and quotient rings.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::IdealError;
use crate::ring::{Element, RawTables, RingTable};
use crate::set::ElemSet;
use crate::star::{Involution, StarRing};
use crate::witness::{Decision, Witness};

/// Default order cap for [`all_ideals`].
pub const DEFAULT_IDEAL_CAP: usize = 64;

/// Up to this order, [`all_ideals`] re-derives the lattice by scanning every
/// additive subgroup and refuses to answer if the two disagree.
pub const SUBGROUP_SCAN_MAX_ORDER: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdealFlags {
    pub maximal: bool,
    pub prime: bool,
    pub semiprime: bool,
    /// `None` for non-commutative rings, where primary ideals are undefined.
    pub primary: Option<bool>,
    pub submaximal: bool,
    pub star_closed: bool,
}

/// A two-sided ideal, identified by its members.
#[derive(Clone, Debug, Serialize)]
pub struct IdealSet {
    pub members: ElemSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Element>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<IdealFlags>,
}

impl PartialEq for IdealSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for IdealSet {}

impl IdealSet {
    fn bare(members: ElemSet) -> Self {
        IdealSet {
            members,
            generators: None,
            flags: None,
        }
    }

    pub fn zero(r: &RingTable) -> Self {
        Self::bare(ElemSet::from_elements(r.order(), [r.zero()]))
    }

    pub fn whole(r: &RingTable) -> Self {
        Self::bare(ElemSet::full(r.order()))
    }

    /// Validates that `members` is a two-sided ideal of `r`.
    pub fn from_members(r: &RingTable, members: ElemSet) -> Result<Self, IdealError> {
        if members.universe() != r.order() {
            return Err(IdealError::WrongRing {
                expected: r.order(),
                found: members.universe(),
            });
        }
        if !members.contains(r.zero()) {
            return Err(IdealError::NotIdeal {
                witness: vec![r.zero()],
            });
        }
        for x in members.iter() {
            for y in members.iter() {
                if !members.contains(r.add(x, y)) {
                    return Err(IdealError::NotIdeal { witness: vec![x, y] });
                }
            }
            for s in r.elements() {
                if !members.contains(r.mul(s, x)) || !members.contains(r.mul(x, s)) {
                    return Err(IdealError::NotIdeal { witness: vec![s, x] });
                }
            }
        }
        Ok(Self::bare(members))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.contains(x)
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }
}

/// Smallest two-sided ideal containing `seeds`.
fn close(r: &RingTable, seeds: impl IntoIterator<Item = Element>) -> ElemSet {
    let mut set = ElemSet::empty(r.order());
    let mut list = Vec::new();
    let mut stack = Vec::new();
    for g in std::iter::once(r.zero()).chain(seeds) {
        if set.insert(g) {
            list.push(g);
            stack.push(g);
        }
    }
    while let Some(s) = stack.pop() {
        for t in r.elements() {
            for c in [r.mul(t, s), r.mul(s, t)] {
                if set.insert(c) {
                    list.push(c);
                    stack.push(c);
                }
            }
        }
        let mut i = 0;
        while i < list.len() {
            let c = r.add(s, list[i]);
            if set.insert(c) {
                list.push(c);
                stack.push(c);
            }
            i += 1;
        }
    }
    set
}

/// The ideal generated by `gens` (closure under sums, negatives and `r·g·r′`).
pub fn generated_ideal(r: &RingTable, gens: &[Element]) -> IdealSet {
    IdealSet {
        members: close(r, gens.iter().copied()),
        generators: Some(gens.to_vec()),
        flags: None,
    }
}

pub fn intersect_ideals(i: &IdealSet, j: &IdealSet) -> IdealSet {
    IdealSet::bare(i.members.intersection(&j.members))
}

/// `I + J = { a + b : a ∈ I, b ∈ J }`.
pub fn sum_ideals(r: &RingTable, i: &IdealSet, j: &IdealSet) -> IdealSet {
    let mut out = ElemSet::empty(r.order());
    for a in i.members.iter() {
        for b in j.members.iter() {
            out.insert(r.add(a, b));
        }
    }
    IdealSet::bare(out)
}

/// Every two-sided ideal, sorted by size and then by members.
///
/// Principal and two-generated ideals are closed under pairwise sums until
/// nothing new appears. Every ideal is a sum of principal ideals, so this is
/// complete; for small rings the result is also checked against
/// [`ideals_by_subgroup_scan`].
pub fn all_ideals(r: &RingTable, cap: usize) -> Result<Vec<IdealSet>, IdealError> {
    let n = r.order();
    if n > cap {
        return Err(IdealError::CapExceeded { order: n, cap });
    }
    let elems: Vec<Element> = r.elements().collect();
    let seeds: Vec<(Element, Option<Element>)> = elems
        .iter()
        .flat_map(|&a| {
            std::iter::once((a, None)).chain(elems.iter().filter(move |&&b| b > a).map(move |&b| (a, Some(b))))
        })
        .collect();
    let mut found: BTreeSet<ElemSet> = seeds
        .par_iter()
        .map(|&(a, b)| close(r, std::iter::once(a).chain(b)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    loop {
        let current: Vec<&ElemSet> = found.iter().collect();
        let mut fresh = BTreeSet::new();
        for (k, i) in current.iter().enumerate() {
            for j in &current[k + 1..] {
                if i.is_subset(j) || j.is_subset(i) {
                    continue;
                }
                let s = sum_ideals(r, &IdealSet::bare((*i).clone()), &IdealSet::bare((*j).clone())).members;
                if !found.contains(&s) {
                    fresh.insert(s);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        found.extend(fresh);
    }

    if n <= SUBGROUP_SCAN_MAX_ORDER {
        let scan: BTreeSet<ElemSet> = ideals_by_subgroup_scan(r).into_iter().map(|i| i.members).collect();
        if scan != found {
            return Err(IdealError::OracleMismatch {
                closure: found.len(),
                scan: scan.len(),
            });
        }
    }

    let mut out: Vec<IdealSet> = found.into_iter().map(IdealSet::bare).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.to_indices().cmp(&b.members.to_indices())));
    Ok(out)
}

/// Exhaustive oracle: every subset containing zero that is closed under
/// addition (hence an additive subgroup) and under multiplication by ring
/// elements on both sides. Exponential; only for tiny orders.
pub fn ideals_by_subgroup_scan(r: &RingTable) -> Vec<IdealSet> {
    let n = r.order();
    assert!(n <= 24, "subgroup scan is exponential in the order");
    let zero = r.zero().index();
    let others: Vec<usize> = (0..n).filter(|&i| i != zero).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << others.len()) {
        let mut bits: u32 = 1 << zero;
        for (k, &i) in others.iter().enumerate() {
            if mask & (1 << k) != 0 {
                bits |= 1 << i;
            }
        }
        let has = |e: Element| bits & (1 << e.index()) != 0;
        let members: Vec<Element> = r.elements().filter(|&e| has(e)).collect();
        let closed = members.iter().all(|&x| {
            members.iter().all(|&y| has(r.add(x, y)))
                && r.elements().all(|s| has(r.mul(s, x)) && has(r.mul(x, s)))
        });
        if closed {
            out.push(IdealSet::bare(ElemSet::from_elements(n, members)));
        }
    }
    out
}

/// `I ≠ R` and `I + (a) = R` for every `a ∉ I`.
pub fn is_maximal(r: &RingTable, i: &IdealSet) -> Decision {
    if i.is_whole() {
        return Decision::fails_at(r.one());
    }
    for a in i.members.complement().iter() {
        let bigger = sum_ideals(r, i, &generated_ideal(r, &[a]));
        if !bigger.is_whole() {
            return Decision::fails(Witness::Ideal {
                members: bigger.members,
            });
        }
    }
    Decision::scan(r.order() - i.len())
}

/// `I ≠ R` and `aRb ⊆ I` forces `a ∈ I` or `b ∈ I`.
pub fn is_prime(r: &RingTable, i: &IdealSet) -> Decision {
    if i.is_whole() {
        return Decision::fails_at(r.one());
    }
    let outside: Vec<Element> = i.members.complement().iter().collect();
    for &a in &outside {
        for &b in &outside {
            if r.elements().all(|s| i.contains(r.mul(r.mul(a, s), b))) {
                return Decision::fails_pair(a, b);
            }
        }
    }
    Decision::scan(outside.len() * outside.len())
}

/// `I ≠ R` and `aRa ⊆ I` forces `a ∈ I`.
pub fn is_semiprime(r: &RingTable, i: &IdealSet) -> Decision {
    if i.is_whole() {
        return Decision::fails_at(r.one());
    }
    for a in i.members.complement().iter() {
        if r.elements().all(|s| i.contains(r.mul(r.mul(a, s), a))) {
            return Decision::fails_at(a);
        }
    }
    Decision::scan(r.order() - i.len())
}

/// Commutative rings only: `I ≠ R` and `xy ∈ I` forces `x ∈ I` or `yᵏ ∈ I`
/// for some `k ≥ 1`.
pub fn is_primary(r: &RingTable, i: &IdealSet) -> Result<Decision, IdealError> {
    if let Some((x, y)) = r.commutativity_witness() {
        return Err(IdealError::NonCommutative { x, y });
    }
    if i.is_whole() {
        return Ok(Decision::fails_at(r.one()));
    }
    let power_inside: Vec<bool> = r.elements().map(|y| has_power_in(r, y, &i.members)).collect();
    for x in i.members.complement().iter() {
        for y in r.elements() {
            if i.contains(r.mul(x, y)) && !power_inside[y.index()] {
                return Ok(Decision::fails_pair(x, y));
            }
        }
    }
    Ok(Decision::scan(r.order() * r.order()))
}

/// Whether `y^k ∈ set` for some `1 ≤ k ≤ n + 1` (enough to reach the cycle).
pub(crate) fn has_power_in(r: &RingTable, y: Element, set: &ElemSet) -> bool {
    let mut p = y;
    for _ in 0..=r.order() {
        if set.contains(p) {
            return true;
        }
        p = r.mul(p, y);
    }
    false
}

/// The ideals covering `I`: those `K ⊋ I` with nothing strictly between.
///
/// A cover is generated over `I` by any of its elements outside `I`, so the
/// covers are exactly the minimal members of `{ I + (a) : a ∉ I }`.
pub fn covers(r: &RingTable, i: &IdealSet) -> Vec<IdealSet> {
    let candidates: BTreeSet<ElemSet> = i
        .members
        .complement()
        .iter()
        .map(|a| sum_ideals(r, i, &generated_ideal(r, &[a])).members)
        .collect();
    candidates
        .iter()
        .filter(|k| !candidates.iter().any(|other| other.is_proper_subset(k)))
        .cloned()
        .map(IdealSet::bare)
        .collect()
}

/// Covered by some maximal ideal; the witness is that maximal ideal.
pub fn is_submaximal(r: &RingTable, i: &IdealSet) -> Decision {
    let covs = covers(r, i);
    for k in &covs {
        if is_maximal(r, k).holds {
            return Decision::holds(Witness::Ideal {
                members: k.members.clone(),
            });
        }
    }
    Decision::fails(Witness::Value {
        value: covs.len() as u64,
    })
}

pub fn is_star_closed(s: &StarRing, i: &IdealSet) -> bool {
    i.members.iter().all(|x| i.contains(s.star(x)))
}

pub fn flags(s: &StarRing, i: &IdealSet) -> IdealFlags {
    IdealFlags {
        maximal: is_maximal(s, i).holds,
        prime: is_prime(s, i).holds,
        semiprime: is_semiprime(s, i).holds,
        primary: is_primary(s, i).ok().map(|d| d.holds),
        submaximal: is_submaximal(s, i).holds,
        star_closed: is_star_closed(s, i),
    }
}

/// [`all_ideals`] with every flag filled in.
pub fn ideal_lattice(s: &StarRing, cap: usize) -> Result<Vec<IdealSet>, IdealError> {
    let mut ideals = all_ideals(s, cap)?;
    ideals.par_iter_mut().for_each(|i| i.flags = Some(flags(s, i)));
    Ok(ideals)
}

/// `R/I` on coset classes, numbered by ascending least representative.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ideal: IdealSet,
    /// Class of each base element.
    pub coset_of: Vec<usize>,
    pub representatives: Vec<Element>,
    pub ring: RingTable,
    /// Present only when the ideal is closed under the involution.
    pub star: Option<Involution>,
}

impl QuotientRing {
    pub fn star_ring(&self) -> Option<StarRing> {
        let star = self.star.as_ref()?;
        StarRing::new(self.ring.clone(), &star.to_indices()).ok()
    }

    pub fn class(&self, x: Element) -> Element {
        Element::from_index(self.coset_of[x.index()])
    }
}

/// Quotient without any involution.
pub fn quotient_ring(r: &RingTable, i: &IdealSet) -> Result<QuotientRing, IdealError> {
    let ideal = IdealSet::from_members(r, i.members.clone())?;
    let n = r.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in r.elements() {
        if coset_of[x.index()] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for m in ideal.members.iter() {
            coset_of[r.add(x, m).index()] = c;
        }
    }
    let q = reps.len();
    let class = |x: Element| coset_of[x.index()];
    let raw = RawTables::from_fn(
        q,
        class(r.zero()),
        class(r.one()),
        |a, b| class(r.add(reps[a], reps[b])),
        |a, b| class(r.mul(reps[a], reps[b])),
    );
    let mut ring = RingTable::new(raw).expect("quotient of a valid ring by an ideal is a ring");
    if let Some(labels) = r.labels() {
        ring = ring.with_labels(reps.iter().map(|x| format!("[{}]", labels[x.index()])).collect());
    }
    Ok(QuotientRing {
        ideal,
        coset_of,
        representatives: reps,
        ring,
        star: None,
    })
}

/// Quotient carrying the induced involution when `I* ⊆ I`.
pub fn quotient(s: &StarRing, i: &IdealSet) -> Result<QuotientRing, IdealError> {
    let mut q = quotient_ring(s, i)?;
    if is_star_closed(s, &q.ideal) {
        let perm: Vec<usize> = q
            .representatives
            .iter()
            .map(|&x| q.coset_of[s.star(x).index()])
            .collect();
        let star = crate::star::validate_involution(&q.ring, &perm)
            .expect("involution descends to the quotient by a *-closed ideal");
        q.star = Some(star);
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{direct_product, example_twisted_boolean_4, make_zn};
    use crate::star::is_boolean;

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    fn principal(r: &RingTable, g: usize) -> IdealSet {
        generated_ideal(r, &[e(g)])
    }

    #[test]
    fn generation_in_z8() {
        let z8 = make_zn(8).unwrap();
        assert_eq!(principal(&z8, 2).members.to_indices(), vec![0, 2, 4, 6]);
        assert_eq!(generated_ideal(&z8, &[]).members.to_indices(), vec![0]);
        assert!(principal(&z8, 1).is_whole());
    }

    #[test]
    fn lattice_of_z12_matches_divisors() {
        let z12 = make_zn(12).unwrap();
        let ideals = all_ideals(&z12, 64).unwrap();
        let sizes: Vec<usize> = ideals.iter().map(|i| i.len()).collect();
        // (0), (6), (4), (3), (2), (1)
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn prime_fields_are_simple() {
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(all_ideals(&make_zn(p).unwrap(), 64).unwrap().len(), 2);
        }
    }

    #[test]
    fn boolean_four_has_four_ideals() {
        let z2 = make_zn(2).unwrap();
        let b = direct_product(&z2, &z2).unwrap();
        assert_eq!(all_ideals(&b, 64).unwrap().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            all_ideals(&make_zn(65).unwrap(), 64),
            Err(IdealError::CapExceeded { order: 65, cap: 64 })
        ));
    }

    #[test]
    fn z12_flags() {
        let r = make_zn(12).unwrap();
        assert!(is_maximal(&r, &principal(&r, 2)).holds);
        let four = principal(&r, 4);
        assert!(!is_maximal(&r, &four).holds);
        assert_eq!(is_prime(&r, &four), Decision::fails_pair(e(2), e(2)));
        let whole = IdealSet::whole(&r);
        assert!(!is_maximal(&r, &whole).holds);
        assert!(!is_prime(&r, &whole).holds);
        assert!(!is_semiprime(&r, &whole).holds);
    }

    #[test]
    fn primary_examples() {
        let z4 = make_zn(4).unwrap();
        assert!(is_primary(&z4, &IdealSet::zero(&z4)).unwrap().holds);

        let p = direct_product(&z4, &z4).unwrap();
        let d = is_primary(&p, &IdealSet::zero(&p)).unwrap();
        assert!(!d.holds);
        let Witness::Pair { x, y } = d.witness else { panic!() };
        assert_eq!(p.mul(x, y), p.zero());

        let z12 = make_zn(12).unwrap();
        let six = principal(&z12, 6);
        let d = is_primary(&z12, &six).unwrap();
        assert!(!d.holds);
        let Witness::Pair { x, y } = d.witness else { panic!() };
        assert!(six.contains(z12.mul(x, y)));
        assert!(!six.contains(x));
        assert!(!has_power_in(&z12, y, &six.members));
    }

    #[test]
    fn primary_refused_on_noncommutative() {
        let m = crate::construct::matrices_2x2_z2().unwrap();
        assert!(matches!(
            is_primary(&m, &IdealSet::zero(&m)),
            Err(IdealError::NonCommutative { .. })
        ));
    }

    #[test]
    fn submaximal_examples() {
        let z8 = make_zn(8).unwrap();
        let d = is_submaximal(&z8, &principal(&z8, 4));
        assert_eq!(
            d,
            Decision::holds(Witness::Ideal {
                members: principal(&z8, 2).members
            })
        );
        let z12 = make_zn(12).unwrap();
        let six = intersect_ideals(&principal(&z12, 2), &principal(&z12, 3));
        assert_eq!(six, principal(&z12, 6));
        assert!(is_submaximal(&z12, &six).holds);
        assert!(!is_submaximal(&z12, &principal(&z12, 2)).holds);
    }

    #[test]
    fn sums_and_intersections() {
        let z12 = make_zn(12).unwrap();
        let two = principal(&z12, 2);
        let three = principal(&z12, 3);
        assert_eq!(intersect_ideals(&two, &three), principal(&z12, 6));
        assert!(sum_ideals(&z12, &two, &three).is_whole());
        assert_eq!(intersect_ideals(&two, &two), two);
    }

    #[test]
    fn quotients() {
        let z4 = make_zn(4).unwrap();
        let q = quotient(&z4, &principal(&z4, 2)).unwrap();
        assert_eq!(q.ring.order(), 2);
        assert!(q.star.is_some());
        assert!(is_boolean(&q.ring).holds);

        let z12 = make_zn(12).unwrap();
        let six = intersect_ideals(&principal(&z12, 2), &principal(&z12, 3));
        let q = quotient(&z12, &six).unwrap();
        assert_eq!(q.ring.order(), 6);
        assert!(!is_boolean(&q.ring).holds);

        let z8 = make_zn(8).unwrap();
        let q = quotient(&z8, &principal(&z8, 2)).unwrap();
        assert_eq!(q.ring.order(), 2);
        assert_eq!(q.class(Element::from_index(7)), Element::from_index(1));

        let ex = example_twisted_boolean_4().unwrap();
        let q = quotient(&ex, &IdealSet::zero(&ex)).unwrap();
        assert_eq!(q.ring.order(), 4);
        assert_eq!(q.star_ring().unwrap().involution(), ex.involution());
    }

    #[test]
    fn non_ideal_rejected() {
        let z4 = make_zn(4).unwrap();
        let s = ElemSet::from_elements(4, [e(0), e(1)]);
        assert!(matches!(
            IdealSet::from_members(&z4, s.clone()),
            Err(IdealError::NotIdeal { .. })
        ));
        assert!(quotient(&z4, &IdealSet::bare(s)).is_err());
    }

    #[test]
    fn non_star_closed_quotient_has_no_involution() {
        let ex = example_twisted_boolean_4().unwrap();
        // {0, A} is an ideal (A·B = 0, A² = A) but A* = B.
        let i = generated_ideal(&ex, &[e(2)]);
        assert_eq!(i.members.to_indices(), vec![0, 2]);
        let q = quotient(&ex, &i).unwrap();
        assert!(q.star.is_none());
        assert_eq!(q.ring.order(), 2);
    }
}
