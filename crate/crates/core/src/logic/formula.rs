//! Prenex first-order sentences and quantifier patterns.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::structure::EDGE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantifier {
    Forall,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }

    pub fn letter(self) -> char {
        match self {
            Quantifier::Forall => 'a',
            Quantifier::Exists => 'e',
        }
    }
}

/// Quantifier-free part of a prenex formula. Implication and biconditional are
/// desugared by the parser, so they never appear here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Matrix {
    Const(bool),
    Atom { symbol: String, args: Vec<String> },
    Eq(String, String),
    Not(Box<Matrix>),
    And(Vec<Matrix>),
    Or(Vec<Matrix>),
}

impl Matrix {
    pub fn atom(symbol: impl Into<String>, args: &[&str]) -> Self {
        Matrix::Atom {
            symbol: symbol.into(),
            args: args.iter().map(|a| a.to_string()).collect(),
        }
    }

    /// Graph adjacency `x ~ y`, i.e. `E(x,y)`.
    pub fn adj(x: &str, y: &str) -> Self {
        Self::atom(EDGE, &[x, y])
    }

    pub fn eq(x: &str, y: &str) -> Self {
        Matrix::Eq(x.to_string(), y.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(m: Matrix) -> Self {
        Matrix::Not(Box::new(m))
    }

    pub fn and(parts: impl IntoIterator<Item = Matrix>) -> Self {
        Matrix::And(parts.into_iter().collect())
    }

    pub fn or(parts: impl IntoIterator<Item = Matrix>) -> Self {
        Matrix::Or(parts.into_iter().collect())
    }

    pub fn implies(a: Matrix, b: Matrix) -> Self {
        Matrix::Or(vec![Matrix::not(a), b])
    }

    /// Variables occurring in the matrix, in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        fn walk(m: &Matrix, seen: &mut Vec<String>) {
            let mut push = |v: &String| {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            };
            match m {
                Matrix::Const(_) => {}
                Matrix::Atom { args, .. } => args.iter().for_each(push),
                Matrix::Eq(a, b) => {
                    push(a);
                    push(b);
                }
                Matrix::Not(inner) => walk(inner, seen),
                Matrix::And(parts) | Matrix::Or(parts) => parts.iter().for_each(|p| walk(p, seen)),
            }
        }
        let mut seen = Vec::new();
        walk(self, &mut seen);
        seen
    }

    /// Replaces every atom by `f(symbol, args)`; equalities and constants stay.
    pub fn map_atoms(&self, f: &impl Fn(&str, &[String]) -> Matrix) -> Matrix {
        match self {
            Matrix::Const(b) => Matrix::Const(*b),
            Matrix::Atom { symbol, args } => f(symbol, args),
            Matrix::Eq(a, b) => Matrix::Eq(a.clone(), b.clone()),
            Matrix::Not(inner) => Matrix::Not(Box::new(inner.map_atoms(f))),
            Matrix::And(parts) => Matrix::And(parts.iter().map(|p| p.map_atoms(f)).collect()),
            Matrix::Or(parts) => Matrix::Or(parts.iter().map(|p| p.map_atoms(f)).collect()),
        }
    }

    fn is_compound(&self) -> bool {
        matches!(self, Matrix::And(_) | Matrix::Or(_))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Matrix::Const(true) => write!(f, "true"),
            Matrix::Const(false) => write!(f, "false"),
            Matrix::Atom { symbol, args } => write!(f, "{}({})", symbol, args.join(",")),
            Matrix::Eq(a, b) => write!(f, "{a} = {b}"),
            Matrix::Not(inner) => match inner.as_ref() {
                Matrix::Eq(..) | Matrix::Not(_) => write!(f, "~({inner})"),
                m if m.is_compound() => write!(f, "~({inner})"),
                _ => write!(f, "~{inner}"),
            },
            Matrix::And(parts) | Matrix::Or(parts) => {
                let sep = if matches!(self, Matrix::And(_)) {
                    " & "
                } else {
                    " | "
                };
                if parts.is_empty() {
                    return write!(f, "{}", matches!(self, Matrix::And(_)));
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    if p.is_compound() || (parts.len() == 1 && matches!(p, Matrix::Eq(..))) {
                        write!(f, "({p})")?;
                    } else {
                        write!(f, "{p}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// A prenex sentence: quantifier prefix followed by a quantifier-free matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    prefix: Vec<(Quantifier, String)>,
    matrix: Matrix,
}

impl Formula {
    /// Builds a sentence, rejecting repeated prefix variables and free matrix
    /// variables.
    pub fn new(prefix: Vec<(Quantifier, String)>, matrix: Matrix) -> Result<Self> {
        let mut bound = HashSet::new();
        for (_, v) in &prefix {
            if !bound.insert(v.as_str()) {
                return Err(Error::ShadowedVariable(v.clone()));
            }
        }
        if let Some(free) = matrix
            .variables()
            .into_iter()
            .find(|v| !bound.contains(v.as_str()))
        {
            return Err(Error::UnboundVariable(free));
        }
        Ok(Formula { prefix, matrix })
    }

    /// Convenience constructor from a pattern-like list of `(q, name)` pairs.
    pub fn with_prefix(prefix: &[(Quantifier, &str)], matrix: Matrix) -> Result<Self> {
        Self::new(
            prefix.iter().map(|&(q, v)| (q, v.to_string())).collect(),
            matrix,
        )
    }

    pub fn prefix(&self) -> &[(Quantifier, String)] {
        &self.prefix
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn pattern(&self) -> Pattern {
        Pattern(self.prefix.iter().map(|(q, _)| q.letter()).collect())
    }

    /// Relation symbols used by the matrix with their observed arities.
    pub fn symbols(&self) -> Vec<(String, usize)> {
        fn walk(m: &Matrix, out: &mut Vec<(String, usize)>) {
            match m {
                Matrix::Atom { symbol, args } => {
                    if !out.iter().any(|(s, a)| s == symbol && *a == args.len()) {
                        out.push((symbol.clone(), args.len()));
                    }
                }
                Matrix::Not(inner) => walk(inner, out),
                Matrix::And(parts) | Matrix::Or(parts) => parts.iter().for_each(|p| walk(p, out)),
                Matrix::Const(_) | Matrix::Eq(..) => {}
            }
        }
        let mut out = Vec::new();
        walk(&self.matrix, &mut out);
        out
    }

    /// Same prefix, different matrix. Variables must stay bound.
    pub fn with_matrix(&self, matrix: Matrix) -> Result<Self> {
        Self::new(self.prefix.clone(), matrix)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.prefix {
            write!(f, "{} {} ", q.keyword(), v)?;
        }
        if self.matrix.is_compound() && !self.prefix.is_empty() {
            write!(f, "({})", self.matrix)
        } else {
            write!(f, "{}", self.matrix)
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::logic::parser::parse_formula(s)
    }
}

/// A quantifier prefix pattern: a word over `{a, e}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Pattern(String);

impl Pattern {
    pub fn new(word: impl Into<String>) -> Result<Self> {
        let word = word.into();
        if word.chars().all(|c| c == 'a' || c == 'e') {
            Ok(Pattern(word))
        } else {
            Err(Error::InvalidPattern(word))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⪯ other`: `self` is obtained from `other` by deleting letters.
    pub fn is_subsequence_of(&self, other: &Pattern) -> bool {
        is_subsequence(self.as_str(), other.as_str())
    }

    /// `self ⪯ word` for a literal word.
    pub fn embeds_in(&self, word: &str) -> bool {
        is_subsequence(self.as_str(), word)
    }

    /// `word ⪯ self` for a literal word.
    pub fn contains(&self, word: &str) -> bool {
        is_subsequence(word, self.as_str())
    }

    /// `self ⪯ e*`: no universal quantifier.
    pub fn in_e_star(&self) -> bool {
        !self.0.contains('a')
    }

    /// `self ⪯ e*a*`: no universal quantifier precedes an existential one.
    pub fn in_e_star_a_star(&self) -> bool {
        !self.contains("ae")
    }

    /// `self ⪯ e*a`: at most one universal quantifier, and it comes last.
    pub fn in_e_star_a(&self) -> bool {
        match self.0.find('a') {
            None => true,
            Some(i) => i + 1 == self.0.len(),
        }
    }

    /// All patterns of length at most `max_len`, shortest first, `a` before `e`.
    pub fn all_up_to(max_len: usize) -> Vec<Pattern> {
        let mut out = vec![Pattern::default()];
        let mut layer = vec![String::new()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * 2);
            for w in &layer {
                for c in ['a', 'e'] {
                    next.push(format!("{w}{c}"));
                }
            }
            out.extend(next.iter().cloned().map(Pattern));
            layer = next;
        }
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s)
    }
}

impl TryFrom<String> for Pattern {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Pattern::new(s)
    }
}

impl From<Pattern> for String {
    fn from(p: Pattern) -> String {
        p.0
    }
}

/// True iff `p` can be obtained from `q` by deleting characters.
pub fn is_subsequence(p: &str, q: &str) -> bool {
    let mut rest = q.chars();
    p.chars().all(|c| rest.any(|d| d == c))
}
