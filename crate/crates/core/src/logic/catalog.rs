//! Named sentences used throughout the crate: graph axioms, target
//! properties, and the target formula of every reduction gadget.

use std::sync::OnceLock;

use crate::logic::formula::Formula;
use crate::logic::parser::parse_formula;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub formula: Formula,
    /// Where the sentence comes from, in words.
    pub origin: &'static str,
}

const ENTRIES: &[(&str, &str, &str)] = &[
    (
        "basic",
        "forall x forall y (x ~ y -> (y ~ x & x != y))",
        "axiom of basic graphs",
    ),
    (
        "undirected",
        "forall x forall y (x ~ y -> y ~ x)",
        "axiom of undirected graphs",
    ),
    (
        "degree-2",
        "forall x exists y1 exists y2 (x ~ y1 & x ~ y2 & y1 != y2)",
        "minimum degree two, pattern example",
    ),
    (
        "radius-2",
        "exists c forall x exists y (x = c | x ~ c | (x ~ y & y ~ c))",
        "radius at most two; Set-Cover reduction to eae",
    ),
    (
        "clusters",
        "forall x forall y forall z ((x ~ y & y ~ z & x != z) -> x ~ z)",
        "cluster graphs (no induced P3); aaa hardness",
    ),
    (
        "triangle-edge-cover",
        "forall x forall x' exists y (x ~ x' -> (x ~ y & x' ~ y))",
        "every edge lies on a triangle; Set-Cover reduction to aae",
    ),
    (
        "diam-2",
        "forall x forall x' exists y (~x ~ x' -> (x ~ y & x' ~ y))",
        "diameter at most two; aae hardness via edge addition",
    ),
    (
        "dominating-vertex",
        "exists x forall y (x = y | x ~ y)",
        "some vertex is adjacent to all others (radius one)",
    ),
    (
        "no-isolated",
        "forall x exists y x ~ y",
        "no isolated vertex; Majority reduction to ae",
    ),
    (
        "setcover-ae",
        "forall x exists y (~x ~ x -> (x ~ y & ~y ~ y))",
        "Set-Cover reduction to ae on undirected graphs",
    ),
    (
        "setcover-aea",
        "forall x exists y forall z (x ~ y & ~(x ~ z & y ~ z))",
        "Set-Cover reduction to aea on basic graphs",
    ),
    (
        "setcover-aea-dir",
        "forall x exists y forall z (x ~ y & ~(x ~ z & y ~ z) & (x ~ z -> z ~ x))",
        "Set-Cover reduction to aea, directed adaptation",
    ),
    (
        "setcover-aee",
        "forall x exists y exists y' (x ~ y & x ~ y' & y ~ y')",
        "Set-Cover reduction to aee on basic graphs (every vertex on a triangle)",
    ),
    (
        "setcover-aee-dir",
        "forall x exists y exists y' (x ~ y & x ~ y' & (y ~ y' | y' ~ y))",
        "Set-Cover reduction to aee, directed adaptation",
    ),
    (
        "setcover-aae-dir",
        "forall x forall x' exists y ((x ~ x' -> (x ~ y & x' ~ y)) & (x ~ y -> y ~ x))",
        "Set-Cover reduction to aae, directed adaptation",
    ),
    (
        "vertexcover-aa",
        "forall x1 forall x2 (x1 ~ x2 -> (x1 ~ x1 | x2 ~ x2))",
        "Vertex-Cover reduction to aa on undirected graphs",
    ),
    (
        "vertexcover-eaa",
        "exists c forall x forall y ((x ~ y & x != c & y != c) -> (~x ~ c | ~y ~ c))",
        "Vertex-Cover reduction to eaa on basic graphs",
    ),
    (
        "majority-a",
        "forall x ~x ~ x",
        "Majority reduction to a on undirected graphs",
    ),
    (
        "majority-ea",
        "exists x forall y x ~ y",
        "Majority reduction to ea",
    ),
    (
        "majority-aa",
        "forall x forall y ~x ~ y",
        "Majority reduction to aa",
    ),
    (
        "majority-monadic",
        "forall x ~R(x)",
        "Majority reduction for monadic structures",
    ),
];

/// Every catalogued sentence, parsed.
pub fn formula_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        ENTRIES
            .iter()
            .map(|&(name, text, origin)| CatalogEntry {
                name,
                formula: parse_formula(text)
                    .unwrap_or_else(|e| panic!("catalog entry `{name}` does not parse: {e}")),
                origin,
            })
            .collect()
    })
}

pub fn lookup(name: &str) -> Option<&'static CatalogEntry> {
    formula_catalog().iter().find(|e| e.name == name)
}

/// Shorthand for fetching a catalogued formula by name.
pub(crate) fn formula(name: &str) -> Formula {
    lookup(name)
        .unwrap_or_else(|| panic!("no catalog entry `{name}`"))
        .formula
        .clone()
}
