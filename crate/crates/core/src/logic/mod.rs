//! Vocabularies, structures, prenex formulas and model checking.

pub mod catalog;
pub mod dnf;
pub mod eval;
pub mod formula;
pub mod parser;
pub mod structure;
pub mod types;

pub use catalog::{formula_catalog, CatalogEntry};
pub use dnf::{to_dnf, AtomRef, Clause, Literal};
pub use eval::{model_check, CompiledFormula};
pub use formula::{is_subsequence, Formula, Matrix, Pattern, Quantifier};
pub use parser::{parse_formula, parse_matrix};
pub use structure::{Structure, Symbol, Vocabulary, EDGE};
pub use types::{check_structure_type, StructureType};

/// The quantifier pattern of a formula.
pub fn pattern_of(formula: &Formula) -> Pattern {
    formula.pattern()
}
