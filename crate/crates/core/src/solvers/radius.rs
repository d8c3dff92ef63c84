//! Modification towards small radius.

use std::collections::VecDeque;

use crate::error::Result;
use crate::logic::{Structure, StructureType};
use crate::modification::{Modulator, OperationKind};
use crate::solvers::{solve_property_brute_force, Limits, SolveResult, SolverName};

/// Some vertex `c` is reached from every vertex by a walk of length at most
/// `r` along the edge relation. On symmetric graphs this is radius ≤ r.
pub fn radius_at_most(s: &Structure, r: usize) -> bool {
    let n = s.universe();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    (0..n as u32).any(|c| {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[c as usize] = 0;
        queue.clear();
        queue.push_back(c);
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            if dist[v as usize] == r {
                continue;
            }
            for u in 0..n as u32 {
                if dist[u as usize] == usize::MAX && s.holds(0, &[u, v]) {
                    dist[u as usize] = dist[v as usize] + 1;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached == n
    })
}

/// Radius one on basic graphs is counted directly: the cheapest centre is
/// the vertex with the fewest non-neighbours. Other radii and types are
/// delegated to the brute-force oracle.
pub fn solve_radius(
    s: &Structure,
    ty: StructureType,
    r: usize,
    k: usize,
    kind: OperationKind,
    limits: Limits,
) -> Result<SolveResult> {
    if r != 1 || ty != StructureType::Basic {
        let mut property = |t: &Structure| radius_at_most(t, r);
        return solve_property_brute_force(s, ty, kind, k, limits, &mut property);
    }
    let n = s.universe() as u32;
    let non_neighbors =
        |c: u32| -> Vec<u32> { (0..n).filter(|&v| v != c && !s.holds(0, &[c, v])).collect() };
    let best = (0..n)
        .map(|c| (c, non_neighbors(c)))
        .min_by_key(|(_, missing)| missing.len())
        .expect("nonempty universe");
    let (c, missing) = best;
    let affordable = match kind {
        OperationKind::Del => missing.is_empty(),
        OperationKind::Add | OperationKind::Edit => missing.len() <= k,
    };
    Ok(if affordable {
        let mut m = Modulator::empty();
        for v in missing {
            m.insert("E", vec![c, v]);
            m.insert("E", vec![v, c]);
        }
        SolveResult::yes(SolverName::Radius, m, n as u64)
    } else {
        SolveResult::no(SolverName::Radius, n as u64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decide(s: &Structure, r: usize, k: usize, kind: OperationKind) -> bool {
        solve_radius(s, StructureType::Basic, r, k, kind, Limits::default())
            .unwrap()
            .decision
    }

    #[test]
    fn examples() {
        let p3 = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(decide(&p3, 1, 1, OperationKind::Add));
        let k13 = Structure::undirected_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(decide(&k13, 1, 0, OperationKind::Add));
        let two_k2 = Structure::undirected_graph(4, &[(0, 1), (2, 3)]).unwrap();
        for k in 0..4 {
            assert!(!decide(&two_k2, 1, k, OperationKind::Del));
        }
    }

    #[test]
    fn radius_check() {
        let p4 = Structure::undirected_graph(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!radius_at_most(&p4, 1));
        assert!(radius_at_most(&p4, 2));
        let arc = Structure::graph(2, &[(1, 0)]).unwrap();
        assert!(radius_at_most(&arc, 1));
        assert!(radius_at_most(&Structure::graph(1, &[]).unwrap(), 0));
    }
}
