//! Evidence attached to every decided predicate.

use serde::Serialize;

use crate::classify::DecompositionKind;
use crate::ring::Element;
use crate::set::ElemSet;

/// Why a predicate came out the way it did.
///
/// Universal statements that hold are backed by the size of the scan that
/// established them (or by an explicit construction such as a decomposition
/// table); statements that fail are backed by the offending element(s).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Exhaustive scan over `checked` cases found no failure.
    Scan { checked: u64 },
    Element { x: Element },
    Pair { x: Element, y: Element },
    Triple { x: Element, y: Element, z: Element },
    /// Per-element `(m, n)` with `x^m = x^n`, `m < n`.
    Exponents { pairs: Vec<[u32; 2]> },
    Decompositions {
        decomposition: DecompositionKind,
        splits: Vec<Split>,
    },
    Ideal { members: ElemSet },
    /// A measured quantity (e.g. the characteristic) that decided the predicate.
    Value { value: u64 },
}

/// `x = part + rest` as found by a decomposition search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    pub x: Element,
    pub part: Element,
    pub rest: Element,
    pub commutes: bool,
    /// How many admissible `part` values exist for this `x`.
    pub choices: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub holds: bool,
    pub witness: Witness,
}

impl Decision {
    pub fn holds(witness: Witness) -> Self {
        Decision {
            holds: true,
            witness,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Decision {
            holds: false,
            witness,
        }
    }

    pub fn scan(checked: usize) -> Self {
        Self::holds(Witness::Scan {
            checked: checked as u64,
        })
    }

    pub fn fails_at(x: Element) -> Self {
        Self::fails(Witness::Element { x })
    }

    pub fn fails_pair(x: Element, y: Element) -> Self {
        Self::fails(Witness::Pair { x, y })
    }

    /// Conjunction keeping the first failing witness.
    pub fn and(self, other: impl FnOnce() -> Decision) -> Decision {
        if self.holds {
            other()
        } else {
            self
        }
    }
}
