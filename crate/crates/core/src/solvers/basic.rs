//! Closed-form solvers for two-variable prefixes on basic graphs.
//!
//! On a basic graph a pair `(x, y)` is in one of three situations: equal,
//! adjacent, or distinct and non-adjacent. Loops are absent and adjacency is
//! symmetric, so a two-variable matrix folds to one truth value per
//! situation, and the problem reduces to counting vertices or pairs.

use crate::error::{Error, Result};
use crate::logic::{CompiledFormula, Structure, StructureType};
use crate::modification::{Modulator, OperationKind};
use crate::solvers::{mismatch, solve_brute_force, Limits, SolveRequest, SolveResult, SolverName};

/// Truth of the matrix in each situation.
#[derive(Clone, Copy, Debug)]
struct Situations {
    equal: bool,
    adjacent: bool,
    apart: bool,
}

impl Situations {
    fn fold(f: &CompiledFormula) -> Situations {
        let one = Structure::graph(1, &[]).expect("valid");
        let edge = Structure::undirected_graph(2, &[(0, 1)]).expect("valid");
        let apart = Structure::graph(2, &[]).expect("valid");
        Situations {
            equal: f.eval_matrix(&one, &[0, 0]),
            adjacent: f.eval_matrix(&edge, &[0, 1]),
            apart: f.eval_matrix(&apart, &[0, 1]),
        }
    }
}

fn prepare(req: &SolveRequest, solver: SolverName, words: &[&str]) -> Result<CompiledFormula> {
    if req.structure_type != StructureType::Basic {
        return Err(Error::TypeMismatch(format!(
            "{} requires basic graphs, got {}",
            solver, req.structure_type
        )));
    }
    if !words.contains(&req.pattern().as_str()) {
        return Err(mismatch(solver, req));
    }
    req.compile()
}

fn edge_modulator(pairs: impl IntoIterator<Item = (u32, u32)>) -> Modulator {
    let mut m = Modulator::empty();
    for (u, v) in pairs {
        m.insert("E", vec![u, v]);
        m.insert("E", vec![v, u]);
    }
    m
}

/// Pairs up `vertices` and attaches a leftover one to the smallest other
/// vertex of the graph.
fn pair_up(vertices: &[u32], n: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = vertices
        .chunks(2)
        .filter(|c| c.len() == 2)
        .map(|c| (c[0], c[1]))
        .collect();
    if vertices.len() % 2 == 1 {
        let last = vertices[vertices.len() - 1];
        let other = (0..n).find(|&w| w != last).expect("at least two vertices");
        out.push((last, other));
    }
    out
}

fn degree(s: &Structure, v: u32) -> usize {
    s.neighbors(v).count()
}

/// `∀x∃y φ` on basic graphs, plus the degenerate one-variable and
/// quantifier-free prefixes whose truth does not depend on the edges.
pub fn solve_basic_ae(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    const NAME: SolverName = SolverName::BasicAe;
    let f = prepare(req, NAME, &["ae", "a", "e", ""])?;
    let s = &req.structure;
    let n = s.universe() as u32;
    if req.pattern().len() < 2 {
        return Ok(if f.holds(s) {
            SolveResult::yes(NAME, Modulator::empty(), 1)
        } else {
            SolveResult::no(NAME, 1)
        });
    }
    if n < 2 {
        return solve_brute_force(req, limits);
    }
    let sit = Situations::fold(&f);
    let k = req.budget;
    let yes = |m| Ok(SolveResult::yes(NAME, m, 1));
    let no = || Ok(SolveResult::no(NAME, 1));
    if sit.equal || (sit.adjacent && sit.apart) {
        return yes(Modulator::empty());
    }
    if sit.adjacent {
        let isolated: Vec<u32> = (0..n).filter(|&v| degree(s, v) == 0).collect();
        if isolated.is_empty() {
            return yes(Modulator::empty());
        }
        if req.kind == OperationKind::Del || isolated.len() > 2 * k {
            return no();
        }
        return yes(edge_modulator(pair_up(&isolated, n)));
    }
    if sit.apart {
        let universal: Vec<u32> = (0..n).filter(|&v| degree(s, v) + 1 == n as usize).collect();
        if universal.is_empty() {
            return yes(Modulator::empty());
        }
        if req.kind == OperationKind::Add || universal.len() > 2 * k {
            return no();
        }
        return yes(edge_modulator(pair_up(&universal, n)));
    }
    no()
}

/// `∀x∀y φ` on basic graphs: the only non-trivial targets are the clique
/// and the edgeless graph.
pub fn solve_basic_aa(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    const NAME: SolverName = SolverName::BasicAa;
    let f = prepare(req, NAME, &["aa"])?;
    let s = &req.structure;
    let n = s.universe() as u32;
    if n < 2 {
        return solve_brute_force(req, limits);
    }
    let sit = Situations::fold(&f);
    let k = req.budget;
    let yes = |m| Ok(SolveResult::yes(NAME, m, 1));
    let no = || Ok(SolveResult::no(NAME, 1));
    if !sit.equal {
        return no();
    }
    if sit.adjacent && sit.apart {
        return yes(Modulator::empty());
    }
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    if sit.adjacent {
        let missing: Vec<(u32, u32)> = pairs.filter(|&(u, v)| !s.holds(0, &[u, v])).collect();
        if missing.is_empty() {
            return yes(Modulator::empty());
        }
        if req.kind == OperationKind::Del || missing.len() > k {
            return no();
        }
        return yes(edge_modulator(missing));
    }
    if sit.apart {
        let edges: Vec<(u32, u32)> = pairs.filter(|&(u, v)| s.holds(0, &[u, v])).collect();
        if edges.is_empty() {
            return yes(Modulator::empty());
        }
        if req.kind == OperationKind::Add || edges.len() > k {
            return no();
        }
        return yes(edge_modulator(edges));
    }
    no()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Formula;

    fn request(s: Structure, f: &str, k: usize, kind: OperationKind) -> SolveRequest {
        SolveRequest::new(
            s,
            StructureType::Basic,
            f.parse::<Formula>().unwrap(),
            k,
            kind,
        )
    }

    fn decide(r: &SolveRequest, aa: bool) -> bool {
        let res = if aa {
            solve_basic_aa(r, Limits::default())
        } else {
            solve_basic_ae(r, Limits::default())
        }
        .unwrap();
        if let Some(w) = &res.witness {
            assert!(r.accepts_witness(w).unwrap());
        }
        res.decision
    }

    #[test]
    fn star_center_is_the_only_universal_vertex() {
        let k13 = Structure::undirected_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = request(
            k13,
            "forall x exists y (x != y & ~x ~ y)",
            1,
            OperationKind::Del,
        );
        assert!(decide(&r, false));
    }

    #[test]
    fn isolated_vertices() {
        let s = Structure::graph(3, &[]).unwrap();
        let f = "forall x exists y x ~ y";
        assert!(!decide(
            &request(s.clone(), f, 1, OperationKind::Add),
            false
        ));
        assert!(decide(&request(s.clone(), f, 2, OperationKind::Add), false));
        assert!(!decide(&request(s, f, 9, OperationKind::Del), false));
    }

    #[test]
    fn clique_and_edgeless_targets() {
        let p3 = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(decide(
            &request(
                p3,
                "forall x forall y (x = y | x ~ y)",
                1,
                OperationKind::Add
            ),
            true
        ));
        let k3 = Structure::undirected_graph(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let f = "forall x forall y ~x ~ y";
        assert!(decide(&request(k3.clone(), f, 3, OperationKind::Del), true));
        assert!(!decide(
            &request(k3.clone(), f, 2, OperationKind::Del),
            true
        ));
        for kind in OperationKind::ALL {
            assert!(!decide(
                &request(k3.clone(), "forall x forall y x ~ y", 9, kind),
                true
            ));
        }
    }

    #[test]
    fn wrong_type_or_pattern() {
        let s = Structure::graph(2, &[]).unwrap();
        let r = SolveRequest::new(
            s.clone(),
            StructureType::Undir,
            "forall x forall y x ~ y".parse().unwrap(),
            1,
            OperationKind::Add,
        );
        assert!(matches!(
            solve_basic_aa(&r, Limits::default()),
            Err(Error::TypeMismatch(_))
        ));
        let r = request(s, "exists x forall y x ~ y", 1, OperationKind::Add);
        assert!(solve_basic_aa(&r, Limits::default()).is_err());
    }
}
