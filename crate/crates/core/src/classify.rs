//! Decision procedures for the ring classes, each evaluated straight from its
//! definition so that characterization checks compare independent answers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::format::spec_hash;
use crate::ideal::{quotient, IdealSet};
use crate::ring::{Element, RingTable};
use crate::set::ElemSet;
use crate::star::{self, StarRing, StructuralSets};
use crate::witness::{Decision, Split, Witness};

/// Which pair of subsets a decomposition `x = part + rest` draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    /// projection + nilpotent
    NilStar,
    /// idempotent + nilpotent
    Nil,
    /// projection + element of J(R)
    JStar,
    /// projection + unit
    StarClean,
}

/// Per-element decomposition search results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    /// First admissible split of each element (commuting ones preferred),
    /// `None` when the element has no split at all.
    pub splits: Vec<Option<Split>>,
    /// Number of admissible parts per element, commuting or not.
    pub choices: Vec<u32>,
    /// Number of admissible parts per element that commute with the rest.
    pub commuting_choices: Vec<u32>,
}

impl Decomposition {
    /// Scans all candidate parts of every element in ascending index order.
    pub fn search(
        r: &RingTable,
        kind: DecompositionKind,
        parts: &ElemSet,
        rest: &ElemSet,
    ) -> Self {
        let n = r.order();
        let mut splits = Vec::with_capacity(n);
        let mut choices = Vec::with_capacity(n);
        let mut commuting_choices = Vec::with_capacity(n);
        for x in r.elements() {
            let mut first: Option<Split> = None;
            let (mut all, mut comm) = (0u32, 0u32);
            for e in parts.iter() {
                let w = r.sub(x, e);
                if !rest.contains(w) {
                    continue;
                }
                all += 1;
                let commutes = r.commute(e, w);
                if commutes {
                    comm += 1;
                }
                if first.is_none() || (commutes && !first.unwrap().commutes) {
                    first = Some(Split {
                        x,
                        part: e,
                        rest: w,
                        commutes,
                        choices: 0,
                    });
                }
            }
            splits.push(first.map(|s| Split { choices: all, ..s }));
            choices.push(all);
            commuting_choices.push(comm);
        }
        Decomposition {
            kind,
            splits,
            choices,
            commuting_choices,
        }
    }

    fn table(&self) -> Witness {
        Witness::Decompositions {
            decomposition: self.kind,
            splits: self.splits.iter().flatten().copied().collect(),
        }
    }

    /// Every element has a commuting split.
    fn exists_commuting(&self) -> Decision {
        match self.commuting_choices.iter().position(|&c| c == 0) {
            Some(x) => Decision::fails_at(Element::from_index(x)),
            None => Decision::holds(self.table()),
        }
    }

    /// Every element has exactly one admissible part, ignoring commutation.
    fn exactly_one(&self) -> Decision {
        match self.choices.iter().position(|&c| c != 1) {
            Some(x) => Decision::fails_at(Element::from_index(x)),
            None => Decision::holds(self.table()),
        }
    }

    /// Every element has exactly one admissible part, and it commutes.
    fn exactly_one_commuting(&self) -> Decision {
        match (0..self.choices.len())
            .position(|x| self.choices[x] != 1 || self.commuting_choices[x] != 1)
        {
            Some(x) => Decision::fails_at(Element::from_index(x)),
            None => Decision::holds(self.table()),
        }
    }

    /// Whether each admissible part is unique, per element.
    pub fn unique(&self) -> bool {
        self.choices.iter().all(|&c| c == 1)
    }
}

/// Evaluates predicates over one star ring, sharing the structural sets.
pub struct Classifier<'a> {
    s: &'a StarRing,
    sets: StructuralSets,
}

impl<'a> Classifier<'a> {
    pub fn new(s: &'a StarRing) -> Self {
        Classifier {
            sets: StructuralSets::compute(s),
            s,
        }
    }

    pub fn sets(&self) -> &StructuralSets {
        &self.sets
    }

    pub fn decompose(&self, kind: DecompositionKind) -> Decomposition {
        let (parts, rest) = match kind {
            DecompositionKind::NilStar => (&self.sets.projections, &self.sets.nilpotents),
            DecompositionKind::Nil => (&self.sets.idempotents, &self.sets.nilpotents),
            DecompositionKind::JStar => (&self.sets.projections, &self.sets.jacobson),
            DecompositionKind::StarClean => (&self.sets.projections, &self.sets.units),
        };
        Decomposition::search(self.s, kind, parts, rest)
    }

    /// Every element is a projection plus a nilpotent commuting with it.
    pub fn strongly_nil_star_clean(&self) -> Decision {
        self.decompose(DecompositionKind::NilStar).exists_commuting()
    }

    /// Exactly one projection `e` has `x − e` nilpotent, and `xe = ex`.
    pub fn uniquely_strongly_nil_star_clean(&self) -> Decision {
        self.decompose(DecompositionKind::NilStar).exactly_one_commuting()
    }

    /// Exactly one idempotent `e` has `x − e` nilpotent.
    pub fn uniquely_nil_clean(&self) -> Decision {
        self.decompose(DecompositionKind::Nil).exactly_one()
    }

    /// Every element is an idempotent plus a commuting nilpotent.
    pub fn strongly_nil_clean(&self) -> Decision {
        self.decompose(DecompositionKind::Nil).exists_commuting()
    }

    /// Every element is a projection plus a commuting unit.
    pub fn strongly_star_clean(&self) -> Decision {
        self.decompose(DecompositionKind::StarClean).exists_commuting()
    }

    /// Exactly one projection `e` has `x − e ∈ J(R)`. Commutation is
    /// recorded in the witness but not required.
    pub fn strongly_j_star_clean(&self) -> Decision {
        self.decompose(DecompositionKind::JStar).exactly_one()
    }

    pub fn idempotents_are_projections(&self) -> Decision {
        match self.sets.idempotents.difference(&self.sets.projections).first() {
            Some(e) => Decision::fails_at(e),
            None => Decision::scan(self.sets.idempotents.len()),
        }
    }

    /// `(a − a²)(b − b²) = 0` for all `a, b`.
    pub fn square_defects_annihilate(&self) -> Decision {
        let r = self.s.ring();
        let defects: Vec<Element> = r.elements().map(|a| r.sub(a, r.mul(a, a))).collect();
        for a in r.elements() {
            for b in r.elements() {
                if r.mul(defects[a.index()], defects[b.index()]) != r.zero() {
                    return Decision::fails_pair(a, b);
                }
            }
        }
        Decision::scan(r.order() * r.order())
    }

    /// Every idempotent is a projection and `(a − a²)(b − b²) = 0`.
    pub fn star_boolean_like(&self) -> Decision {
        self.idempotents_are_projections()
            .and(|| self.square_defects_annihilate())
    }

    /// Commutative, characteristic 2, and `ab(1 + a)(1 + b) = 0`.
    pub fn boolean_like(&self) -> Decision {
        let r = self.s.ring();
        if let Some((x, y)) = r.commutativity_witness() {
            return Decision::fails_pair(x, y);
        }
        let ch = r.characteristic();
        if ch != 2 {
            return Decision::fails(Witness::Value { value: ch as u64 });
        }
        for a in r.elements() {
            let a1 = r.mul(a, r.add(r.one(), a));
            for b in r.elements() {
                let b1 = r.mul(b, r.add(r.one(), b));
                if r.mul(a1, b1) != r.zero() {
                    return Decision::fails_pair(a, b);
                }
            }
        }
        Decision::scan(r.order() * r.order())
    }

    /// Every element is a projection.
    pub fn star_boolean(&self) -> Decision {
        match self
            .s
            .elements()
            .find(|&x| !self.sets.projections.contains(x))
        {
            Some(x) => Decision::fails_at(x),
            None => Decision::scan(self.s.order()),
        }
    }

    /// `αβ = 0` for all nilpotent `α, β`.
    pub fn nilpotent_products_vanish(&self) -> Decision {
        let n = &self.sets.nilpotents;
        for a in n.iter() {
            for b in n.iter() {
                if self.s.mul(a, b) != self.s.zero() {
                    return Decision::fails_pair(a, b);
                }
            }
        }
        Decision::scan(n.len() * n.len())
    }

    /// `N(R)` is closed under addition and under multiplication by `R` on
    /// both sides.
    pub fn nil_set_is_ideal(&self) -> Decision {
        let r = self.s.ring();
        match IdealSet::from_members(r, self.sets.nilpotents.clone()) {
            Ok(_) => Decision::scan(self.sets.nilpotents.len() * r.order()),
            Err(crate::error::IdealError::NotIdeal { witness }) => match witness[..] {
                [x] => Decision::fails_at(x),
                [x, y] => Decision::fails_pair(x, y),
                _ => unreachable!(),
            },
            Err(e) => unreachable!("{e}"),
        }
    }

    /// `J(R) ⊆ N(R)`.
    pub fn jacobson_is_nil(&self) -> Decision {
        match self.sets.jacobson.difference(&self.sets.nilpotents).first() {
            Some(x) => Decision::fails_at(x),
            None => Decision::scan(self.sets.jacobson.len()),
        }
    }

    /// `N(R)` is an ideal and `R/N(R)` is Boolean.
    pub fn boolean_modulo_nil(&self) -> Decision {
        match IdealSet::from_members(self.s, self.sets.nilpotents.clone()) {
            Ok(n) => quotient_boolean(self.s, &n),
            Err(_) => self.nil_set_is_ideal(),
        }
    }

    /// `R/J(R)` is Boolean.
    pub fn boolean_modulo_jacobson(&self) -> Decision {
        let j = IdealSet::from_members(self.s, self.sets.jacobson.clone())
            .expect("the Jacobson radical is an ideal");
        quotient_boolean(self.s, &j)
    }

    /// `N(R) = { x : 1 − x ∈ U(R) }`, compared element-wise.
    pub fn nil_equals_one_minus_units(&self) -> Decision {
        let r = self.s.ring();
        for x in r.elements() {
            let lhs = self.sets.nilpotents.contains(x);
            let rhs = self.sets.units.contains(r.sub(r.one(), x));
            if lhs != rhs {
                return Decision::fails_at(x);
            }
        }
        Decision::scan(r.order())
    }

    pub fn classify(&self) -> Classification {
        let r = self.s.ring();
        let commutative = match r.commutativity_witness() {
            Some((x, y)) => Decision::fails_pair(x, y),
            None => Decision::scan(r.order() * r.order()),
        };
        let characteristic = r.characteristic();
        Classification {
            ring: spec_hash(self.s),
            order: r.order(),
            characteristic,
            labels: r.labels().map(|l| l.to_vec()),
            commutative,
            boolean: star::is_boolean(r),
            periodic: star::is_periodic(r),
            abelian: star::is_abelian(r),
            local: star::is_local_with_units(r, &self.sets.units),
            absolutely_local: star::is_absolutely_local(r),
            idempotents_are_projections: self.idempotents_are_projections(),
            strongly_nil_star_clean: self.strongly_nil_star_clean(),
            uniquely_strongly_nil_star_clean: self.uniquely_strongly_nil_star_clean(),
            uniquely_nil_clean: self.uniquely_nil_clean(),
            strongly_nil_clean: self.strongly_nil_clean(),
            strongly_star_clean: self.strongly_star_clean(),
            strongly_j_star_clean: self.strongly_j_star_clean(),
            star_boolean_like: self.star_boolean_like(),
            boolean_like: self.boolean_like(),
            star_boolean: self.star_boolean(),
            square_defects_annihilate: self.square_defects_annihilate(),
            nilpotent_products_vanish: self.nilpotent_products_vanish(),
            nil_set_is_ideal: self.nil_set_is_ideal(),
            jacobson_is_nil: self.jacobson_is_nil(),
            boolean_modulo_nil: self.boolean_modulo_nil(),
            boolean_modulo_jacobson: self.boolean_modulo_jacobson(),
            sets: self.sets.clone(),
        }
    }
}

fn quotient_boolean(s: &StarRing, i: &IdealSet) -> Decision {
    let q = quotient(s, i).expect("argument is an ideal");
    let d = star::is_boolean(&q.ring);
    if d.holds {
        d
    } else {
        // report a base element mapping onto the failing coset
        let Witness::Element { x } = d.witness else { unreachable!() };
        Decision::fails_at(q.representatives[x.index()])
    }
}

/// Every predicate on one ring, with evidence.
#[derive(Clone, Debug)]
pub struct Classification {
    pub ring: String,
    pub order: usize,
    pub characteristic: usize,
    pub labels: Option<Vec<String>>,
    pub commutative: Decision,
    pub boolean: Decision,
    pub periodic: Decision,
    pub abelian: Decision,
    pub local: Decision,
    pub absolutely_local: Decision,
    pub idempotents_are_projections: Decision,
    pub strongly_nil_star_clean: Decision,
    pub uniquely_strongly_nil_star_clean: Decision,
    pub uniquely_nil_clean: Decision,
    pub strongly_nil_clean: Decision,
    pub strongly_star_clean: Decision,
    pub strongly_j_star_clean: Decision,
    pub star_boolean_like: Decision,
    pub boolean_like: Decision,
    pub star_boolean: Decision,
    pub square_defects_annihilate: Decision,
    pub nilpotent_products_vanish: Decision,
    pub nil_set_is_ideal: Decision,
    pub jacobson_is_nil: Decision,
    pub boolean_modulo_nil: Decision,
    pub boolean_modulo_jacobson: Decision,
    pub sets: StructuralSets,
}

impl Classification {
    pub fn predicates(&self) -> Vec<(&'static str, &Decision)> {
        vec![
            ("commutative", &self.commutative),
            ("boolean", &self.boolean),
            ("periodic", &self.periodic),
            ("abelian", &self.abelian),
            ("local", &self.local),
            ("absolutely_local", &self.absolutely_local),
            ("idempotents_are_projections", &self.idempotents_are_projections),
            ("strongly_nil_star_clean", &self.strongly_nil_star_clean),
            ("uniquely_strongly_nil_star_clean", &self.uniquely_strongly_nil_star_clean),
            ("uniquely_nil_clean", &self.uniquely_nil_clean),
            ("strongly_nil_clean", &self.strongly_nil_clean),
            ("strongly_star_clean", &self.strongly_star_clean),
            ("strongly_j_star_clean", &self.strongly_j_star_clean),
            ("star_boolean_like", &self.star_boolean_like),
            ("boolean_like", &self.boolean_like),
            ("star_boolean", &self.star_boolean),
            ("square_defects_annihilate", &self.square_defects_annihilate),
            ("nilpotent_products_vanish", &self.nilpotent_products_vanish),
            ("nil_set_is_ideal", &self.nil_set_is_ideal),
            ("jacobson_is_nil", &self.jacobson_is_nil),
            ("boolean_modulo_nil", &self.boolean_modulo_nil),
            ("boolean_modulo_jacobson", &self.boolean_modulo_jacobson),
        ]
    }

    pub fn report(&self) -> ClassificationReport {
        let mut predicates = BTreeMap::new();
        let mut witnesses = BTreeMap::new();
        let mut counterexamples = BTreeMap::new();
        for (name, d) in self.predicates() {
            predicates.insert(name.to_string(), d.holds);
            let slot = if d.holds {
                &mut witnesses
            } else {
                &mut counterexamples
            };
            slot.insert(name.to_string(), d.witness.clone());
        }
        ClassificationReport {
            ring: self.ring.clone(),
            predicates,
            witnesses,
            counterexamples,
            structure: StructureSummary {
                order: self.order,
                characteristic: self.characteristic,
                counts: Counts {
                    idempotents: self.sets.idempotents.len(),
                    projections: self.sets.projections.len(),
                    nilpotents: self.sets.nilpotents.len(),
                    units: self.sets.units.len(),
                    jacobson: self.sets.jacobson.len(),
                },
                sets: self.sets.clone(),
                labels: self.labels.clone(),
            },
        }
    }
}

/// Serialized classification, with stable field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    /// Content hash of the ring spec this report describes.
    pub ring: String,
    pub predicates: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Witness>,
    pub counterexamples: BTreeMap<String, Witness>,
    pub structure: StructureSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub order: usize,
    pub characteristic: usize,
    pub counts: Counts,
    pub sets: StructuralSets,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub idempotents: usize,
    pub projections: usize,
    pub nilpotents: usize,
    pub units: usize,
    pub jacobson: usize,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// SHA-256 of the canonical JSON encoding.
    pub fn content_hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = serde_json::to_vec(self).expect("report serializes");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn predicate(&self, name: &str) -> bool {
        self.predicates[name]
    }
}

pub fn classify(s: &StarRing) -> Classification {
    Classifier::new(s).classify()
}

pub fn strongly_nil_star_clean(s: &StarRing) -> Decision {
    Classifier::new(s).strongly_nil_star_clean()
}

pub fn uniquely_strongly_nil_star_clean(s: &StarRing) -> Decision {
    Classifier::new(s).uniquely_strongly_nil_star_clean()
}

pub fn uniquely_nil_clean(s: &StarRing) -> Decision {
    Classifier::new(s).uniquely_nil_clean()
}

pub fn strongly_nil_clean(s: &StarRing) -> Decision {
    Classifier::new(s).strongly_nil_clean()
}

pub fn strongly_star_clean(s: &StarRing) -> Decision {
    Classifier::new(s).strongly_star_clean()
}

pub fn strongly_j_star_clean(s: &StarRing) -> Decision {
    Classifier::new(s).strongly_j_star_clean()
}

pub fn star_boolean_like(s: &StarRing) -> Decision {
    Classifier::new(s).star_boolean_like()
}

pub fn boolean_like(s: &StarRing) -> Decision {
    Classifier::new(s).boolean_like()
}

pub fn star_boolean(s: &StarRing) -> Decision {
    Classifier::new(s).star_boolean()
}

pub fn nilpotent_products_vanish(s: &StarRing) -> Decision {
    Classifier::new(s).nilpotent_products_vanish()
}

pub fn nil_set_is_ideal(s: &StarRing) -> Decision {
    Classifier::new(s).nil_set_is_ideal()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn e(i: usize) -> Element {
        Element::from_index(i)
    }

    #[test]
    fn z4_is_strongly_nil_star_clean() {
        let z4 = make_zn(4).unwrap();
        let c = Classifier::new(&z4);
        let d = c.strongly_nil_star_clean();
        assert!(d.holds);
        let Witness::Decompositions { splits, .. } = d.witness else { panic!() };
        let three = splits[3];
        assert_eq!((three.part, three.rest), (e(1), e(2)));
        assert!(c.uniquely_strongly_nil_star_clean().holds);
        assert!(c.strongly_star_clean().holds);
        assert!(c.strongly_j_star_clean().holds);
    }

    #[test]
    fn twisted_boolean_counterexample_is_a() {
        let s = example_twisted_boolean_4().unwrap();
        let c = Classifier::new(&s);
        // A = [[1,1],[0,0]] has index 2
        assert_eq!(c.strongly_nil_star_clean(), Decision::fails_at(e(2)));
        assert!(!c.uniquely_strongly_nil_star_clean().holds);
        assert!(c.uniquely_nil_clean().holds);
        assert_eq!(c.strongly_star_clean(), Decision::fails_at(e(2)));
    }

    #[test]
    fn z3_fails_at_two() {
        let z3 = make_zn(3).unwrap();
        let c = Classifier::new(&z3);
        assert_eq!(c.strongly_nil_star_clean(), Decision::fails_at(e(2)));
        assert!(c.strongly_star_clean().holds);
    }

    #[test]
    fn z2_everything_positive() {
        let z2 = make_zn(2).unwrap();
        let c = classify(&z2);
        for (name, d) in c.predicates() {
            assert!(d.holds, "{name} should hold on Z_2");
        }
    }

    #[test]
    fn strongly_nil_clean_examples() {
        assert!(strongly_nil_clean(&example_triangular_z4().unwrap()).holds);
        assert_eq!(strongly_nil_clean(&make_zn(6).unwrap()), Decision::fails_at(e(2)));
    }

    #[test]
    fn star_clean_and_j_star_clean() {
        assert!(strongly_star_clean(&make_zn(4).unwrap()).holds);
        assert!(strongly_j_star_clean(&make_zn(2).unwrap()).holds);
        assert_eq!(strongly_j_star_clean(&make_zn(6).unwrap()), Decision::fails_at(e(2)));
    }

    #[test]
    fn boolean_like_variants() {
        assert!(star_boolean_like(&example_boolean_like_8().unwrap()).holds);
        assert!(boolean_like(&example_boolean_like_8().unwrap()).holds);
        assert!(star_boolean_like(&make_zn(2).unwrap()).holds);
        assert!(boolean_like(&make_zn(2).unwrap()).holds);
        assert_eq!(
            boolean_like(&make_zn(4).unwrap()),
            Decision::fails(Witness::Value { value: 4 })
        );
        let t = example_transpose_8().unwrap();
        let d = star_boolean_like(&t);
        assert!(!d.holds);
        let Witness::Element { x } = d.witness else { panic!() };
        assert_eq!(t.mul(x, x), x);
        assert_ne!(t.star(x), x);
    }

    #[test]
    fn star_boolean_examples() {
        let z2 = make_zn(2).unwrap();
        assert!(star_boolean(&z2).holds);
        assert!(star_boolean(&direct_product(&z2, &z2).unwrap()).holds);
        assert_eq!(star_boolean(&make_zn(4).unwrap()), Decision::fails_at(e(2)));
    }

    #[test]
    fn nilpotent_products() {
        assert!(nilpotent_products_vanish(&make_zn(4).unwrap()).holds);
        assert_eq!(
            nilpotent_products_vanish(&make_zn(8).unwrap()),
            Decision::fails_pair(e(2), e(2))
        );
        assert!(nilpotent_products_vanish(&example_transpose_8().unwrap()).holds);
    }

    #[test]
    fn nil_set_ideal() {
        assert!(nil_set_is_ideal(&make_zn(4).unwrap()).holds);
        assert!(nil_set_is_ideal(&make_zn(12).unwrap()).holds);
        let m = matrices_2x2_z2().unwrap();
        let d = nil_set_is_ideal(&m);
        assert!(!d.holds);
    }

    #[test]
    fn z4_report() {
        let rep = classify(&make_zn(4).unwrap()).report();
        assert!(rep.predicate("strongly_nil_star_clean"));
        assert!(rep.predicate("local"));
        for (name, holds) in &rep.predicates {
            if *holds {
                assert!(rep.witnesses.contains_key(name));
            } else {
                assert!(rep.counterexamples.contains_key(name));
            }
        }
    }
}
