//! Solvers for purely existential prefixes and for `e*a`.

use crate::error::Result;
use crate::logic::{CompiledFormula, Structure, StructureType};
use crate::modification::{Modulator, Slot};
use crate::solvers::{
    atom_slots, mismatch, next_assignment, smallest_subset, subset_of_size, Limits, Meter,
    SolveRequest, SolveResult, SolverName,
};

/// `e*`: for every assignment of the prefix, the cheapest configuration of
/// the tuples the matrix reads at that assignment.
pub fn solve_exists_star(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    let f = req.compile()?;
    if !req.pattern().in_e_star() {
        return Err(mismatch(SolverName::ExistsStar, req));
    }
    let ty = req.structure_type;
    let n = req.structure.universe() as u32;
    let m = f.quantifiers().len();
    let mut meter = Meter::new(limits);
    let mut work = req.structure.clone();
    let mut asg = vec![0u32; m];
    let mut slots = Vec::new();
    loop {
        slots.clear();
        atom_slots(&f, req, &asg, &mut slots);
        let fixed = asg.clone();
        let mut accept = |s: &mut Structure| f.eval_matrix(s, &fixed);
        if let Some(chosen) =
            smallest_subset(&mut work, ty, &slots, req.budget, &mut meter, &mut accept)?
        {
            let witness = Modulator::from_slots(
                req.structure.vocabulary(),
                ty,
                chosen.iter().map(|&i| &slots[i]),
            );
            return Ok(SolveResult::yes(
                SolverName::ExistsStar,
                witness,
                meter.nodes,
            ));
        }
        if !next_assignment(&mut asg, 0..m, n) {
            return Ok(SolveResult::no(SolverName::ExistsStar, meter.nodes));
        }
    }
}

/// `e*a`: a certificate for the existential block fixes a set `A'`. After
/// configuring the tuples inside `A'`, every element outside `A'` is
/// repaired independently by its own minimal local modulator.
pub fn solve_exists_star_forall(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    let f = req.compile()?;
    let pattern = req.pattern();
    if !pattern.in_e_star_a() || pattern.in_e_star() {
        return Err(mismatch(SolverName::ExistsStarForall, req));
    }
    let ty = req.structure_type;
    let n = req.structure.universe() as u32;
    let m = f.quantifiers().len() - 1;
    let mut meter = Meter::new(limits);
    let mut work = req.structure.clone();
    let mut asg = vec![0u32; m + 1];
    loop {
        let cert = Certificate::new(&f, req, &asg[..m]);
        for size in 0..=req.budget.min(cert.config_slots.len()) {
            let mut locals = Vec::new();
            let left = req.budget - size;
            let mut accept = |s: &mut Structure| match cert.repair(&f, s, ty, left) {
                Some(found) => {
                    locals = found;
                    true
                }
                None => false,
            };
            if let Some(chosen) = subset_of_size(
                &mut work,
                ty,
                &cert.config_slots,
                size,
                &mut meter,
                &mut accept,
            )? {
                let witness = Modulator::from_slots(
                    req.structure.vocabulary(),
                    ty,
                    chosen.iter().map(|&i| &cert.config_slots[i]).chain(&locals),
                );
                return Ok(SolveResult::yes(
                    SolverName::ExistsStarForall,
                    witness,
                    meter.nodes,
                ));
            }
        }
        if !next_assignment(&mut asg, 0..m, n) {
            return Ok(SolveResult::no(SolverName::ExistsStarForall, meter.nodes));
        }
    }
}

struct Certificate {
    /// Full assignment with the universal position as scratch space.
    probe: Vec<u32>,
    inside: Vec<u32>,
    outside: Vec<u32>,
    /// Slots inside `A'` read by the matrix.
    config_slots: Vec<Slot>,
    /// Per outside element, the slots containing it read by the matrix.
    local_slots: Vec<Vec<Slot>>,
}

impl Certificate {
    fn new(f: &CompiledFormula, req: &SolveRequest, cert: &[u32]) -> Certificate {
        let m = cert.len();
        let n = req.structure.universe() as u32;
        let mut inside = cert.to_vec();
        inside.sort_unstable();
        inside.dedup();
        let outside: Vec<u32> = (0..n)
            .filter(|u| inside.binary_search(u).is_err())
            .collect();
        let mut probe = cert.to_vec();
        probe.push(0);
        let mut config_slots = Vec::new();
        for &u in &inside {
            probe[m] = u;
            atom_slots(f, req, &probe, &mut config_slots);
        }
        let local_slots = outside
            .iter()
            .map(|&u| {
                probe[m] = u;
                let mut all = Vec::new();
                atom_slots(f, req, &probe, &mut all);
                all.retain(|slot| slot.tuple.contains(&u));
                all
            })
            .collect();
        Certificate {
            probe,
            inside,
            outside,
            config_slots,
            local_slots,
        }
    }

    /// With the configuration toggled on `s`: checks the inside elements and
    /// returns minimal local modulators for the outside ones if their total
    /// norm is at most `budget`.
    fn repair(
        &self,
        f: &CompiledFormula,
        s: &mut Structure,
        ty: StructureType,
        budget: usize,
    ) -> Option<Vec<Slot>> {
        let m = self.probe.len() - 1;
        let mut probe = self.probe.clone();
        for &u in &self.inside {
            probe[m] = u;
            if !f.eval_matrix(s, &probe) {
                return None;
            }
        }
        // Local searches touch at most a handful of slots each.
        let mut meter = Meter::new(Limits::with_nodes(u64::MAX));
        let mut out = Vec::new();
        for (&u, slots) in self.outside.iter().zip(&self.local_slots) {
            probe[m] = u;
            let mut holds = |s: &mut Structure| f.eval_matrix(s, &probe);
            let left = budget - out.len();
            let chosen = smallest_subset(s, ty, slots, left, &mut meter, &mut holds).ok()??;
            out.extend(chosen.iter().map(|&i| slots[i].clone()));
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Formula, Vocabulary};
    use crate::modification::OperationKind;

    fn request(
        s: Structure,
        t: StructureType,
        f: &str,
        k: usize,
        kind: OperationKind,
    ) -> SolveRequest {
        SolveRequest::new(s, t, f.parse::<Formula>().unwrap(), k, kind)
    }

    #[test]
    fn existential_loop() {
        let s = Structure::graph(3, &[(0, 1)]).unwrap();
        let f = "exists x E(x,x)";
        let yes = solve_exists_star(
            &request(s.clone(), StructureType::Dir, f, 1, OperationKind::Add),
            Limits::default(),
        )
        .unwrap();
        assert!(yes.decision);
        let no = solve_exists_star(
            &request(s, StructureType::Dir, f, 0, OperationKind::Add),
            Limits::default(),
        )
        .unwrap();
        assert!(!no.decision);
    }

    #[test]
    fn deletion_cannot_create_edges() {
        let s = Structure::graph(2, &[]).unwrap();
        let r = request(
            s,
            StructureType::Basic,
            "exists x exists y (x != y & x ~ y)",
            5,
            OperationKind::Del,
        );
        assert!(!solve_exists_star(&r, Limits::default()).unwrap().decision);
    }

    #[test]
    fn dominating_vertex_by_one_addition() {
        // star with center 0 and leaves 1..=3, plus isolated vertex 4
        let s = Structure::undirected_graph(5, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let f = "exists x forall y (x = y | x ~ y)";
        let r1 = request(s.clone(), StructureType::Basic, f, 1, OperationKind::Add);
        let yes = solve_exists_star_forall(&r1, Limits::default()).unwrap();
        assert!(yes.decision);
        assert!(r1.accepts_witness(yes.witness.as_ref().unwrap()).unwrap());
        let r0 = request(s, StructureType::Basic, f, 0, OperationKind::Add);
        assert!(
            !solve_exists_star_forall(&r0, Limits::default())
                .unwrap()
                .decision
        );
    }

    #[test]
    fn empty_certificate() {
        let v = Vocabulary::monadic(["R"]).unwrap();
        let s = Structure::from_tuples(v, 3, vec![vec![[0u32], [1]]]).unwrap();
        let f = "forall y ~R(y)";
        let r1 = request(s.clone(), StructureType::Arb, f, 1, OperationKind::Del);
        assert!(
            !solve_exists_star_forall(&r1, Limits::default())
                .unwrap()
                .decision
        );
        let r2 = request(s, StructureType::Arb, f, 2, OperationKind::Del);
        assert!(
            solve_exists_star_forall(&r2, Limits::default())
                .unwrap()
                .decision
        );
    }

    #[test]
    fn pattern_mismatch() {
        let s = Structure::graph(2, &[]).unwrap();
        let r = request(
            s,
            StructureType::Dir,
            "forall x exists y x ~ y",
            1,
            OperationKind::Add,
        );
        assert!(solve_exists_star(&r, Limits::default()).is_err());
        assert!(solve_exists_star_forall(&r, Limits::default()).is_err());
    }
}
