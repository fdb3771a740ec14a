//! JSON ring-spec interchange format.
//!
//! ```json
//! { "order": 2, "add": [[0,1],[1,0]], "mul": [[0,0],[0,1]],
//!   "zero": 0, "one": 1, "involution": [0,1] }
//! ```
//!
//! `involution` defaults to the identity; `labels` is optional.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{FormatError, MalformedTable, RingError};
use crate::ring::{RawTables, RingTable, HARD_MAX_ORDER};
use crate::star::StarRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub order: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl RingSpec {
    pub fn from_star_ring(s: &StarRing) -> Self {
        RingSpec {
            order: s.order(),
            add: s.add_rows(),
            mul: s.mul_rows(),
            zero: s.zero().index(),
            one: s.one().index(),
            involution: Some(s.involution().to_indices()),
            labels: s.labels().map(|l| l.to_vec()),
        }
    }

    /// Validates tables and involution under `cap`.
    pub fn build(&self, cap: usize) -> Result<StarRing, FormatError> {
        let cap = cap.min(HARD_MAX_ORDER);
        if self.order > cap {
            return Err(RingError::from(MalformedTable::OrderTooLarge {
                order: self.order,
                cap,
            })
            .into());
        }
        if self.add.len() != self.order {
            return Err(RingError::from(MalformedTable::RowCount {
                table: "add",
                expected: self.order,
                found: self.add.len(),
            })
            .into());
        }
        let raw = RawTables::from_rows(&self.add, &self.mul, self.zero, self.one)?;
        let mut ring = RingTable::with_cap(raw, cap)?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(FormatError::Labels {
                    expected: self.order,
                    found: labels.len(),
                });
            }
            ring = ring.with_labels(labels.clone());
        }
        Ok(match &self.involution {
            Some(p) => StarRing::new(ring, p)?,
            None => StarRing::with_identity(ring)?,
        })
    }

    /// Compact JSON with a fixed field order; the basis of the content hash.
    pub fn to_canonical_json(&self) -> String {
        let mut c = self.clone();
        if c.involution.is_none() {
            c.involution = Some((0..c.order).collect());
        }
        serde_json::to_string(&c).expect("ring spec serializes")
    }

    pub fn to_pretty_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring spec serializes")
    }

    pub fn content_hash(&self) -> String {
        sha256_hex(self.to_canonical_json().as_bytes())
    }
}

pub fn parse_spec(text: &str) -> Result<RingSpec, FormatError> {
    Ok(serde_json::from_str(text)?)
}

/// Parses and validates in one step.
pub fn load_star_ring(text: &str, cap: usize) -> Result<StarRing, FormatError> {
    parse_spec(text)?.build(cap)
}

pub fn to_json(s: &StarRing) -> String {
    RingSpec::from_star_ring(s).to_pretty_json()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Content hash identifying a star ring (tables, involution, labels).
pub fn spec_hash(s: &StarRing) -> String {
    RingSpec::from_star_ring(s).content_hash()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{example_twisted_boolean_4, make_zn};
    use crate::error::StarError;

    #[test]
    fn round_trip() {
        let s = example_twisted_boolean_4().unwrap();
        let text = to_json(&s);
        let back = load_star_ring(&text, HARD_MAX_ORDER).unwrap();
        assert_eq!(back.add_rows(), s.add_rows());
        assert_eq!(back.involution(), s.involution());
        assert_eq!(back.labels(), s.labels());
        assert_eq!(spec_hash(&back), spec_hash(&s));
    }

    #[test]
    fn missing_involution_is_identity() {
        let text = r#"{"order":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        let s = load_star_ring(text, 16).unwrap();
        assert!(s.involution().is_identity());
        assert_eq!(spec_hash(&s), spec_hash(&make_zn(2).unwrap()));
    }

    #[test]
    fn error_classes() {
        let bad = load_star_ring("{ not json", 16).unwrap_err();
        assert!(bad.is_input_error());
        let ragged = r#"{"order":2,"add":[[0,1],[1]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        assert!(load_star_ring(ragged, 16).unwrap_err().is_input_error());
        let wrong_order = r#"{"order":3,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        assert!(load_star_ring(wrong_order, 16).unwrap_err().is_input_error());
        let not_ring = r#"{"order":2,"add":[[0,1],[1,1]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        let e = load_star_ring(not_ring, 16).unwrap_err();
        assert!(!e.is_input_error() && !e.is_cap_exceeded());
        let big = to_json(&make_zn(20).unwrap());
        assert!(load_star_ring(&big, 16).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn bad_involution_is_validation_failure() {
        let text = r#"{"order":4,"add":[[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
            "mul":[[0,0,0,0],[0,1,2,3],[0,2,0,2],[0,3,2,1]],"zero":0,"one":1,
            "involution":[0,3,2,1]}"#;
        let e = load_star_ring(text, 16).unwrap_err();
        assert!(matches!(e, FormatError::Star(StarError::Axioms(_))));
        assert!(!e.is_input_error());
    }
}
