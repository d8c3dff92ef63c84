//! Relation modification problems for prenex first-order sentences.
//!
//! Given a finite structure, a sentence and a budget `k`, decide whether at
//! most `k` tuple deletions, additions or edits produce a model. The crate
//! provides the logic substrate, modulators and their norms, the complexity
//! classification by quantifier pattern, fragment-specific solvers checked
//! against a brute-force oracle, and constructors for the hardness gadgets.

pub mod classifier;
pub mod error;
pub mod generate;
pub mod logic;
pub mod modification;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use logic::{Formula, Pattern, Structure, StructureType, Vocabulary};
pub use modification::{Modulator, OperationKind};
