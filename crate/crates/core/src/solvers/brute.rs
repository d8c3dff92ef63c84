use crate::error::Result;
use crate::logic::{Structure, StructureType};
use crate::modification::{legal_slots, Modulator, OperationKind};
use crate::solvers::{smallest_subset, Limits, Meter, SolveRequest, SolveResult, SolverName};

/// Tries every valid modulator of norm at most `k`, smallest first. The
/// witness is the first model found in canonical enumeration order.
pub fn solve_brute_force(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    let f = req.compile()?;
    let mut holds = |s: &Structure| f.holds(s);
    search(
        &req.structure,
        req.structure_type,
        req.kind,
        req.budget,
        limits,
        &mut holds,
    )
}

/// Brute force against an arbitrary isomorphism-invariant property.
pub fn solve_property_brute_force(
    s: &Structure,
    ty: StructureType,
    kind: OperationKind,
    k: usize,
    limits: Limits,
    property: &mut dyn FnMut(&Structure) -> bool,
) -> Result<SolveResult> {
    search(s, ty, kind, k, limits, property)
}

fn search(
    s: &Structure,
    ty: StructureType,
    kind: OperationKind,
    k: usize,
    limits: Limits,
    property: &mut dyn FnMut(&Structure) -> bool,
) -> Result<SolveResult> {
    let slots = legal_slots(s, ty, kind);
    let mut accept = |s: &mut Structure| property(s);
    let mut meter = Meter::new(limits);
    let mut work = s.clone();
    Ok(
        match smallest_subset(&mut work, ty, &slots, k, &mut meter, &mut accept)? {
            Some(chosen) => SolveResult::yes(
                SolverName::Brute,
                Modulator::from_slots(s.vocabulary(), ty, chosen.iter().map(|&i| &slots[i])),
                meter.nodes,
            ),
            None => SolveResult::no(SolverName::Brute, meter.nodes),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::catalog;
    use crate::Formula;

    fn req(s: Structure, f: &str, k: usize, kind: OperationKind) -> SolveRequest {
        let formula = catalog::lookup(f)
            .map(|e| e.formula.clone())
            .unwrap_or_else(|| f.parse::<Formula>().unwrap());
        SolveRequest::new(s, StructureType::Basic, formula, k, kind)
    }

    #[test]
    fn path_to_cluster_graph() {
        let p3 = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let yes = solve_brute_force(
            &req(p3.clone(), "clusters", 1, OperationKind::Del),
            Limits::default(),
        )
        .unwrap();
        assert!(yes.decision);
        let r = req(p3.clone(), "clusters", 1, OperationKind::Del);
        assert!(r.accepts_witness(yes.witness.as_ref().unwrap()).unwrap());
        let no = solve_brute_force(
            &req(p3, "clusters", 0, OperationKind::Del),
            Limits::default(),
        )
        .unwrap();
        assert!(!no.decision);
    }

    #[test]
    fn isolated_vertices_need_two_additions() {
        let s = Structure::graph(3, &[]).unwrap();
        let f = "forall x exists y x ~ y";
        assert!(
            !solve_brute_force(&req(s.clone(), f, 1, OperationKind::Add), Limits::default())
                .unwrap()
                .decision
        );
        assert!(
            solve_brute_force(&req(s, f, 2, OperationKind::Add), Limits::default())
                .unwrap()
                .decision
        );
    }

    #[test]
    fn node_budget_is_enforced() {
        let s = Structure::graph(6, &[]).unwrap();
        let r = req(s, "forall x exists y x ~ y", 3, OperationKind::Add);
        let err = solve_brute_force(&r, Limits::with_nodes(10)).unwrap_err();
        assert!(err.is_resource_limit());
    }
}
