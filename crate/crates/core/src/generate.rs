//! Seeded random structures and formulas for experiments and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{Formula, Matrix, Pattern, Quantifier, Structure, StructureType, Vocabulary};

const VARIABLES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// A default vocabulary for each structure type.
pub fn vocabulary_for(t: StructureType) -> Vocabulary {
    match t {
        StructureType::Dir | StructureType::Undir | StructureType::Basic => Vocabulary::graph(),
        StructureType::Mon => Vocabulary::monadic(["P", "Q"]).expect("valid names"),
        StructureType::Arb => Vocabulary::new([("E", 2), ("P", 1)]).expect("valid symbols"),
    }
}

/// A random structure of type `t`; every candidate tuple (or unordered pair)
/// is present with probability `density`.
pub fn random_structure<R: Rng>(
    rng: &mut R,
    vocabulary: &Vocabulary,
    t: StructureType,
    n: usize,
    density: f64,
) -> Structure {
    let mut s = Structure::empty(vocabulary.clone(), n).expect("nonempty universe");
    for (sym, symbol) in vocabulary.symbols().iter().enumerate() {
        let tuples: Vec<Vec<u32>> = s.all_tuples(symbol.arity).collect();
        for tup in tuples {
            let binary = symbol.arity == 2;
            if t.is_symmetric() && binary && tup[0] > tup[1] {
                continue;
            }
            if t == StructureType::Basic && binary && tup[0] == tup[1] {
                continue;
            }
            if rng.gen_bool(density) {
                s.toggle(sym, &tup);
                if t.is_symmetric() && binary && tup[0] != tup[1] {
                    s.toggle(sym, &[tup[1], tup[0]]);
                }
            }
        }
    }
    s
}

pub fn random_pattern<R: Rng>(rng: &mut R, len: usize) -> Pattern {
    let word: String = (0..len)
        .map(|_| if rng.gen_bool(0.5) { 'a' } else { 'e' })
        .collect();
    Pattern::new(word).expect("letters are a/e")
}

/// A random matrix over the given variables; leaves are atoms of the
/// vocabulary or equalities.
pub fn random_matrix<R: Rng>(
    rng: &mut R,
    vocabulary: &Vocabulary,
    variables: &[&str],
    depth: usize,
) -> Matrix {
    if depth == 0 || variables.is_empty() || rng.gen_bool(0.3) {
        return random_leaf(rng, vocabulary, variables);
    }
    match rng.gen_range(0..4) {
        0 => Matrix::not(random_matrix(rng, vocabulary, variables, depth - 1)),
        1 => Matrix::and(
            (0..rng.gen_range(2..=3)).map(|_| random_matrix(rng, vocabulary, variables, depth - 1)),
        ),
        2 => Matrix::or(
            (0..rng.gen_range(2..=3)).map(|_| random_matrix(rng, vocabulary, variables, depth - 1)),
        ),
        _ => Matrix::implies(
            random_matrix(rng, vocabulary, variables, depth - 1),
            random_matrix(rng, vocabulary, variables, depth - 1),
        ),
    }
}

fn random_leaf<R: Rng>(rng: &mut R, vocabulary: &Vocabulary, variables: &[&str]) -> Matrix {
    if variables.is_empty() {
        return Matrix::Const(rng.gen_bool(0.5));
    }
    let pick = |rng: &mut R| *variables.choose(rng).expect("nonempty");
    let leaf = if vocabulary.is_empty() || rng.gen_bool(0.15) {
        Matrix::eq(pick(rng), pick(rng))
    } else {
        let symbol = vocabulary.symbols().choose(rng).expect("nonempty");
        let args: Vec<&str> = (0..symbol.arity).map(|_| pick(rng)).collect();
        Matrix::atom(symbol.name.clone(), &args)
    };
    if rng.gen_bool(0.4) {
        Matrix::not(leaf)
    } else {
        leaf
    }
}

/// A random sentence with the given pattern; every variable of the prefix
/// may occur in the matrix.
pub fn random_formula_with_pattern<R: Rng>(
    rng: &mut R,
    vocabulary: &Vocabulary,
    pattern: &Pattern,
    depth: usize,
) -> Formula {
    assert!(pattern.len() <= VARIABLES.len(), "pattern too long");
    let vars: Vec<&str> = VARIABLES[..pattern.len()].to_vec();
    let prefix: Vec<(Quantifier, &str)> = pattern
        .as_str()
        .chars()
        .zip(&vars)
        .map(|(c, v)| {
            let q = if c == 'a' {
                Quantifier::Forall
            } else {
                Quantifier::Exists
            };
            (q, *v)
        })
        .collect();
    let matrix = random_matrix(rng, vocabulary, &vars, depth);
    Formula::with_prefix(&prefix, matrix).expect("all variables are bound")
}

/// A random sentence with between one and `max_vars` variables.
pub fn random_formula<R: Rng>(rng: &mut R, vocabulary: &Vocabulary, max_vars: usize) -> Formula {
    let len = rng.gen_range(1..=max_vars.max(1));
    let pattern = random_pattern(rng, len);
    random_formula_with_pattern(rng, vocabulary, &pattern, 3)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    perm
}
