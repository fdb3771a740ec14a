//! Finite rings with involution given by Cayley tables, decision procedures
//! for nil-clean style ring classes, ideal lattices, and an exhaustive
//! checker for the characterization theorems relating them.

pub mod classify;
pub mod construct;
pub mod error;
pub mod format;
pub mod harness;
pub mod ideal;
pub mod recipe;
pub mod ring;
pub mod set;
pub mod star;
pub mod witness;

pub use classify::{classify, Classification, ClassificationReport, Classifier, DecompositionKind};
pub use error::{
    ConstructionError, CorpusError, ErrorClass, FormatError, IdealError, MalformedTable, RecipeError, RingError, StarError,
};
pub use format::RingSpec;
pub use ideal::IdealSet;
pub use recipe::Recipe;
pub use ring::{Element, RawTables, RingTable, HARD_MAX_ORDER};
pub use set::ElemSet;
pub use star::{Involution, StarRing, StructuralSets};
pub use witness::{Decision, Split, Witness};
pub use harness::{run_suite, Corpus, SuiteConfig, SuiteReport};
