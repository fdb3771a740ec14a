use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ring::Element;

/// Structural problems with input tables, independent of any axiom.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedTable {
    #[error("ring has no elements")]
    EmptyCarrier,
    #[error("order {order} exceeds the cap of {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("{table} table has {found} rows, expected {expected}")]
    RowCount {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table} table row {row} has {found} entries, expected {expected}")]
    RowLength {
        table: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{table} table has {found} entries, expected {expected}")]
    TableSize {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{table}[{row}][{col}] = {value} is not an element index")]
    IndexOutOfRange {
        table: &'static str,
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("{name} = {value} is not an element index")]
    ConstantOutOfRange { name: &'static str, value: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AddIdentity,
    AddCommutative,
    AddInverse,
    AddAssociative,
    MulIdentity,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::AddIdentity => "additive identity",
            Axiom::AddCommutative => "additive commutativity",
            Axiom::AddInverse => "additive inverses",
            Axiom::AddAssociative => "additive associativity",
            Axiom::MulIdentity => "multiplicative identity",
            Axiom::MulAssociative => "multiplicative associativity",
            Axiom::LeftDistributive => "left distributivity",
            Axiom::RightDistributive => "right distributivity",
        };
        f.write_str(s)
    }
}

/// One failed axiom with the indices that break it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl AxiomViolation {
    pub(crate) fn new(axiom: Axiom, witness: &[usize]) -> Self {
        AxiomViolation {
            axiom,
            witness: witness.to_vec(),
        }
    }
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("malformed ring tables: {0}")]
    Malformed(#[from] MalformedTable),
    #[error("ring axioms violated: {}", list(.0))]
    Axioms(Vec<AxiomViolation>),
    #[error("element index {index} out of range for order {order}")]
    ElementOutOfRange { index: usize, order: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionAxiom {
    Additive,
    AntiMultiplicative,
    Involutive,
}

impl fmt::Display for InvolutionAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvolutionAxiom::Additive => "(x+y)* = x*+y*",
            InvolutionAxiom::AntiMultiplicative => "(xy)* = y*x*",
            InvolutionAxiom::Involutive => "(x*)* = x",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionViolation {
    pub axiom: InvolutionAxiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for InvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.axiom, self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("involution table has {found} entries, ring order is {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("involution maps {index} to {value}, which is not an element index")]
    OutOfRange { index: usize, value: usize },
    #[error("involution is not a bijection: {value} is hit twice")]
    NotBijective { value: usize },
    #[error("involution axioms violated: {}", list(.0))]
    Axioms(Vec<InvolutionViolation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("ideal enumeration needs order <= {cap}, ring has order {order}")]
    CapExceeded { order: usize, cap: usize },
    #[error("set is not a two-sided ideal (fails at {witness:?})")]
    NotIdeal { witness: Vec<Element> },
    #[error("primary ideals are only defined for commutative rings; {x} and {y} do not commute")]
    NonCommutative { x: Element, y: Element },
    #[error("ideal set belongs to a ring of order {found}, expected {expected}")]
    WrongRing { expected: usize, found: usize },
    #[error("generator-closure enumeration found {closure} ideals but the subgroup scan found {scan}")]
    OracleMismatch { closure: usize, scan: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("construction would have order {order}, above the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("Z_{0} is the zero ring, which is rejected unless explicitly allowed")]
    ZeroRing(usize),
    #[error("base ring is not commutative ({x} and {y} do not commute)")]
    NonCommutativeBase { x: Element, y: Element },
    #[error("{name} = {value} is not fixed by the involution")]
    NotSymmetric { name: &'static str, value: Element },
    #[error("{name} = {value} is not a unit")]
    NotUnit { name: &'static str, value: Element },
    #[error("explicit element list is not closed under {op}")]
    NotClosed { op: &'static str },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Star(#[from] StarError),
}

/// Problems with a constructor expression such as `ri:zn:4,mu=2,eta=2`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("cannot parse constructor expression `{expr}`: {reason}")]
    Syntax { expr: String, reason: String },
    #[error("unknown constructor kind `{0}`")]
    UnknownKind(String),
    #[error("unknown example ring `{0}`")]
    UnknownExample(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Problems reading the JSON ring-spec interchange format.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot parse ring spec: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("labels has {found} entries, order is {expected}")]
    Labels { expected: usize, found: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Star(#[from] StarError),
}

/// How a failure maps onto the caller's error categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// Unparseable or structurally malformed input.
    Input,
    /// Well-formed input that breaks a ring, involution or construction axiom.
    Validation,
    /// An order cap would be exceeded.
    CapExceeded,
}

impl FormatError {
    pub fn class(&self) -> ErrorClass {
        match self {
            FormatError::Parse(_) | FormatError::Labels { .. } => ErrorClass::Input,
            FormatError::Ring(e) => e.class(),
            FormatError::Star(StarError::Axioms(_) | StarError::NotBijective { .. }) => {
                ErrorClass::Validation
            }
            FormatError::Star(_) => ErrorClass::Input,
        }
    }

    /// Parse-level problems, as opposed to tables that load but break an axiom.
    pub fn is_input_error(&self) -> bool {
        self.class() == ErrorClass::Input
    }

    pub fn is_cap_exceeded(&self) -> bool {
        self.class() == ErrorClass::CapExceeded
    }
}

impl RingError {
    pub fn class(&self) -> ErrorClass {
        match self {
            RingError::Malformed(MalformedTable::OrderTooLarge { .. }) => ErrorClass::CapExceeded,
            RingError::Malformed(_) | RingError::ElementOutOfRange { .. } => ErrorClass::Input,
            RingError::Axioms(_) => ErrorClass::Validation,
        }
    }
}

impl ConstructionError {
    pub fn class(&self) -> ErrorClass {
        match self {
            ConstructionError::CapExceeded { .. } => ErrorClass::CapExceeded,
            ConstructionError::Ring(e) => e.class(),
            _ => ErrorClass::Validation,
        }
    }
}

impl RecipeError {
    pub fn class(&self) -> ErrorClass {
        match self {
            RecipeError::Construction(e) => e.class(),
            _ => ErrorClass::Input,
        }
    }
}

impl IdealError {
    pub fn class(&self) -> ErrorClass {
        match self {
            IdealError::CapExceeded { .. } => ErrorClass::CapExceeded,
            _ => ErrorClass::Validation,
        }
    }
}

/// Problems loading a corpus of rings.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus must be a JSON array of constructor expressions or ring specs: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("corpus entry {index} (`{name}`): {source}")]
    Recipe {
        index: usize,
        name: String,
        source: RecipeError,
    },
    #[error("corpus entry {index}: {source}")]
    Spec { index: usize, source: FormatError },
}

impl CorpusError {
    pub fn class(&self) -> ErrorClass {
        match self {
            CorpusError::Parse(_) => ErrorClass::Input,
            CorpusError::Recipe { source, .. } => source.class(),
            CorpusError::Spec { source, .. } => source.class(),
        }
    }
}
