//! Disjunctive normal form for quantifier-free matrices.

use std::fmt;

use crate::logic::formula::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomRef {
    /// Equalities are stored with the lexicographically smaller name first.
    Eq(String, String),
    Rel {
        symbol: String,
        args: Vec<String>,
    },
}

impl AtomRef {
    fn eq(a: &str, b: &str) -> Self {
        if a <= b {
            AtomRef::Eq(a.to_string(), b.to_string())
        } else {
            AtomRef::Eq(b.to_string(), a.to_string())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: AtomRef,
    pub positive: bool,
}

impl Literal {
    pub fn negated(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            positive: !self.positive,
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let m = match &self.atom {
            AtomRef::Eq(a, b) => Matrix::Eq(a.clone(), b.clone()),
            AtomRef::Rel { symbol, args } => Matrix::Atom {
                symbol: symbol.clone(),
                args: args.clone(),
            },
        };
        if self.positive {
            m
        } else {
            Matrix::not(m)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_matrix())
    }
}

/// A conjunction of literals; the empty clause is `true`.
pub type Clause = Vec<Literal>;

/// Converts a matrix to an equivalent disjunction of clauses.
///
/// Clauses with complementary literals are dropped and literals inside a
/// clause are sorted and deduplicated. An empty result means `false`; a
/// result containing the empty clause is equivalent to `true`.
pub fn to_dnf(matrix: &Matrix) -> Vec<Clause> {
    let mut out = dnf(matrix, true);
    out.sort();
    out.dedup();
    out
}

fn dnf(m: &Matrix, positive: bool) -> Vec<Clause> {
    match m {
        Matrix::Const(b) => {
            if *b == positive {
                vec![Vec::new()]
            } else {
                Vec::new()
            }
        }
        Matrix::Atom { symbol, args } => vec![vec![Literal {
            atom: AtomRef::Rel {
                symbol: symbol.clone(),
                args: args.clone(),
            },
            positive,
        }]],
        Matrix::Eq(a, b) => vec![vec![Literal {
            atom: AtomRef::eq(a, b),
            positive,
        }]],
        Matrix::Not(inner) => dnf(inner, !positive),
        Matrix::And(parts) if positive => product(parts, true),
        Matrix::Or(parts) if !positive => product(parts, false),
        Matrix::Or(parts) | Matrix::And(parts) => {
            parts.iter().flat_map(|p| dnf(p, positive)).collect()
        }
    }
}

/// Distributes a conjunction over the DNFs of its parts.
fn product(parts: &[Matrix], positive: bool) -> Vec<Clause> {
    let mut acc: Vec<Clause> = vec![Vec::new()];
    for p in parts {
        let rhs = dnf(p, positive);
        let mut next = Vec::with_capacity(acc.len() * rhs.len());
        for left in &acc {
            for right in &rhs {
                if let Some(c) = merge(left, right) {
                    next.push(c);
                }
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

fn merge(a: &Clause, b: &Clause) -> Option<Clause> {
    let mut c: Clause = a.iter().chain(b).cloned().collect();
    c.sort();
    c.dedup();
    let contradictory = c
        .windows(2)
        .any(|w| w[0].atom == w[1].atom && w[0].positive != w[1].positive);
    (!contradictory).then_some(c)
}

/// Rebuilds a matrix from clauses.
pub fn from_dnf(clauses: &[Clause]) -> Matrix {
    match clauses {
        [] => Matrix::Const(false),
        _ => Matrix::Or(
            clauses
                .iter()
                .map(|c| match c.as_slice() {
                    [] => Matrix::Const(true),
                    [l] => l.to_matrix(),
                    _ => Matrix::And(c.iter().map(Literal::to_matrix).collect()),
                })
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_matrix;

    fn lit(text: &str) -> Literal {
        let clauses = to_dnf(&parse_matrix(text).unwrap());
        assert_eq!(clauses.len(), 1);
        assert_eq!(clauses[0].len(), 1);
        clauses[0][0].clone()
    }

    #[test]
    fn single_atom() {
        let d = to_dnf(&parse_matrix("x ~ y").unwrap());
        assert_eq!(d, vec![vec![lit("x ~ y")]]);
    }

    #[test]
    fn implication() {
        let d = to_dnf(&parse_matrix("x ~ y -> y ~ x").unwrap());
        let mut want = vec![vec![lit("~x ~ y")], vec![lit("y ~ x")]];
        want.sort();
        assert_eq!(d, want);
    }

    #[test]
    fn contradictory_clause_dropped() {
        let d = to_dnf(&parse_matrix("(x ~ y & ~x ~ y) | x = y").unwrap());
        assert_eq!(d, vec![vec![lit("x = y")]]);
    }

    #[test]
    fn equality_is_symmetric_and_deduplicated() {
        let d = to_dnf(&parse_matrix("x = y & y = x & ~(y = x)").unwrap());
        assert!(d.is_empty());
        let d = to_dnf(&parse_matrix("x = y & y = x").unwrap());
        assert_eq!(d, vec![vec![lit("x = y")]]);
    }

    #[test]
    fn constants() {
        assert!(to_dnf(&Matrix::Const(false)).is_empty());
        assert_eq!(to_dnf(&Matrix::Const(true)), vec![Vec::<Literal>::new()]);
        assert_eq!(
            to_dnf(&parse_matrix("~(P(x) | true)").unwrap()),
            Vec::<Clause>::new()
        );
    }
}
