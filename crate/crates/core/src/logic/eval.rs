//! Tarskian model checking by nested enumeration over the prefix.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::logic::formula::{Formula, Matrix, Pattern, Quantifier};
use crate::logic::structure::{Structure, Vocabulary};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Const(bool),
    Atom { symbol: usize, args: Vec<usize> },
    Eq(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

impl Node {
    #[inline]
    fn eval(&self, s: &Structure, asg: &[u32], buf: &mut Vec<u32>) -> bool {
        match self {
            Node::Const(b) => *b,
            Node::Atom { symbol, args } => {
                buf.clear();
                buf.extend(args.iter().map(|&v| asg[v]));
                s.holds(*symbol, buf)
            }
            Node::Eq(a, b) => asg[*a] == asg[*b],
            Node::Not(inner) => !inner.eval(s, asg, buf),
            Node::And(parts) => parts.iter().all(|p| p.eval(s, asg, buf)),
            Node::Or(parts) => parts.iter().any(|p| p.eval(s, asg, buf)),
        }
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<(usize, &'a [usize])>) {
        match self {
            Node::Atom { symbol, args } => {
                if !out
                    .iter()
                    .any(|(s, a)| s == symbol && *a == args.as_slice())
                {
                    out.push((*symbol, args));
                }
            }
            Node::Not(inner) => inner.collect_atoms(out),
            Node::And(parts) | Node::Or(parts) => parts.iter().for_each(|p| p.collect_atoms(out)),
            Node::Const(_) | Node::Eq(..) => {}
        }
    }
}

/// A formula resolved against a vocabulary: variables become prefix positions
/// and symbols become vocabulary indices.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    quantifiers: Vec<Quantifier>,
    names: Vec<String>,
    matrix: Node,
    atoms: Vec<(usize, Vec<usize>)>,
}

impl CompiledFormula {
    pub fn new(formula: &Formula, vocabulary: &Vocabulary) -> Result<Self> {
        let names: Vec<String> = formula.prefix().iter().map(|(_, v)| v.clone()).collect();
        let quantifiers = formula.prefix().iter().map(|(q, _)| *q).collect();
        let matrix = compile(formula.matrix(), &names, vocabulary)?;
        let mut atoms = Vec::new();
        matrix.collect_atoms(&mut atoms);
        let atoms = atoms.into_iter().map(|(s, a)| (s, a.to_vec())).collect();
        Ok(CompiledFormula {
            quantifiers,
            names,
            matrix,
            atoms,
        })
    }

    pub fn quantifiers(&self) -> &[Quantifier] {
        &self.quantifiers
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn pattern(&self) -> Pattern {
        Pattern::new(
            self.quantifiers
                .iter()
                .map(|q| q.letter())
                .collect::<String>(),
        )
        .expect("letters are a/e")
    }

    /// Distinct atoms of the matrix as `(symbol, argument positions)`.
    pub fn atoms(&self) -> &[(usize, Vec<usize>)] {
        &self.atoms
    }

    /// Evaluates the matrix under a full assignment of prefix positions.
    #[inline]
    pub fn eval_matrix(&self, s: &Structure, assignment: &[u32]) -> bool {
        let mut buf = Vec::with_capacity(4);
        self.matrix.eval(s, assignment, &mut buf)
    }

    /// `s ⊨ φ`.
    pub fn holds(&self, s: &Structure) -> bool {
        let mut asg = vec![0u32; self.quantifiers.len()];
        let fixed = vec![false; self.quantifiers.len()];
        let mut buf = Vec::with_capacity(4);
        self.descend(s, 0, &mut asg, &fixed, &mut buf)
    }

    /// Evaluates the prefix from position `level` onwards; positions below
    /// `level` must already be set in `asg`.
    pub fn holds_from(&self, s: &Structure, level: usize, asg: &mut [u32]) -> bool {
        let fixed = vec![false; self.quantifiers.len()];
        let mut buf = Vec::with_capacity(4);
        self.descend(s, level, asg, &fixed, &mut buf)
    }

    fn descend(
        &self,
        s: &Structure,
        level: usize,
        asg: &mut [u32],
        fixed: &[bool],
        buf: &mut Vec<u32>,
    ) -> bool {
        if level == self.quantifiers.len() {
            return self.matrix.eval(s, asg, buf);
        }
        if fixed[level] {
            return self.descend(s, level + 1, asg, fixed, buf);
        }
        let n = s.universe() as u32;
        match self.quantifiers[level] {
            Quantifier::Forall => (0..n).all(|e| {
                asg[level] = e;
                self.descend(s, level + 1, asg, fixed, buf)
            }),
            Quantifier::Exists => (0..n).any(|e| {
                asg[level] = e;
                self.descend(s, level + 1, asg, fixed, buf)
            }),
        }
    }

    /// Model checking with some prefix variables already interpreted; those
    /// prefix entries are skipped.
    pub fn holds_with(&self, s: &Structure, partial: &HashMap<String, u32>) -> Result<bool> {
        let mut asg = vec![0u32; self.quantifiers.len()];
        let mut fixed = vec![false; self.quantifiers.len()];
        for (name, &value) in partial {
            let Some(i) = self.names.iter().position(|n| n == name) else {
                continue;
            };
            if value as usize >= s.universe() {
                return Err(Error::InvalidStructure(format!(
                    "assignment {name}={value} outside the universe"
                )));
            }
            asg[i] = value;
            fixed[i] = true;
        }
        let mut buf = Vec::with_capacity(4);
        Ok(self.descend(s, 0, &mut asg, &fixed, &mut buf))
    }
}

fn compile(m: &Matrix, names: &[String], vocabulary: &Vocabulary) -> Result<Node> {
    let var = |v: &String| -> Result<usize> {
        names
            .iter()
            .position(|n| n == v)
            .ok_or_else(|| Error::UnboundVariable(v.clone()))
    };
    Ok(match m {
        Matrix::Const(b) => Node::Const(*b),
        Matrix::Atom { symbol, args } => {
            let idx = vocabulary
                .index_of(symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            let expected = vocabulary.symbols()[idx].arity;
            if expected != args.len() {
                return Err(Error::ArityMismatch {
                    symbol: symbol.clone(),
                    expected,
                    found: args.len(),
                });
            }
            Node::Atom {
                symbol: idx,
                args: args.iter().map(var).collect::<Result<_>>()?,
            }
        }
        Matrix::Eq(a, b) => Node::Eq(var(a)?, var(b)?),
        Matrix::Not(inner) => Node::Not(Box::new(compile(inner, names, vocabulary)?)),
        Matrix::And(parts) => Node::And(
            parts
                .iter()
                .map(|p| compile(p, names, vocabulary))
                .collect::<Result<_>>()?,
        ),
        Matrix::Or(parts) => Node::Or(
            parts
                .iter()
                .map(|p| compile(p, names, vocabulary))
                .collect::<Result<_>>()?,
        ),
    })
}

/// `s ⊨ f` under a partial assignment of prefix variables.
pub fn model_check(s: &Structure, f: &Formula, partial: &HashMap<String, u32>) -> Result<bool> {
    CompiledFormula::new(f, s.vocabulary())?.holds_with(s, partial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::catalog;

    fn check(s: &Structure, name: &str) -> bool {
        model_check(s, &catalog::lookup(name).unwrap().formula, &HashMap::new()).unwrap()
    }

    #[test]
    fn single_vertex_is_basic() {
        let s = Structure::graph(1, &[]).unwrap();
        assert!(check(&s, "basic"));
    }

    #[test]
    fn triangle_has_min_degree_two() {
        let k3 = Structure::undirected_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check(&k3, "degree-2"));
        let p3 = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!check(&p3, "degree-2"));
    }

    #[test]
    fn induced_path_is_not_a_cluster_graph() {
        let p3 = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!check(&p3, "clusters"));
        let k3 = Structure::undirected_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check(&k3, "clusters"));
    }

    #[test]
    fn partial_assignment_fixes_prefix_variable() {
        // radius-2 with the center pinned: vertex 0 of a path 0-1-2-3 reaches 3 only in 3 steps.
        let p4 = Structure::undirected_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let f = &catalog::lookup("radius-2").unwrap().formula;
        let pin = |c: u32| HashMap::from([("c".to_string(), c)]);
        assert!(!model_check(&p4, f, &pin(0)).unwrap());
        assert!(model_check(&p4, f, &pin(1)).unwrap());
        assert!(model_check(&p4, f, &HashMap::new()).unwrap());
        assert!(model_check(&p4, f, &pin(9)).is_err());
    }

    #[test]
    fn unknown_symbol_and_arity_errors() {
        let s = Structure::graph(2, &[]).unwrap();
        let f: Formula = "forall x R(x)".parse().unwrap();
        assert!(matches!(
            model_check(&s, &f, &HashMap::new()),
            Err(Error::UnknownSymbol(_))
        ));
        let g: Formula = "forall x E(x,x,x)".parse().unwrap();
        assert!(matches!(
            model_check(&s, &g, &HashMap::new()),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
