//! Bounded search tree for `e*a*` prefixes.
//!
//! With the existential block fixed, a violated assignment of the universal
//! block can only be repaired by toggling a tuple one of its atoms reads.
//! Branching over those tuples gives a tree of depth at most `k` whose
//! fan-out depends only on the formula.

use crate::error::Result;
use crate::logic::{CompiledFormula, Quantifier, Structure};
use crate::modification::{next_combination, Modulator, Slot};
use crate::solvers::{
    atom_slots, mismatch, next_assignment, Limits, Meter, SolveRequest, SolveResult, SolverName,
};

pub fn solve_fpt_search_tree(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    let f = req.compile()?;
    if !req.pattern().in_e_star_a_star() {
        return Err(mismatch(SolverName::SearchTree, req));
    }
    let q = f.quantifiers().len();
    let m = f
        .quantifiers()
        .iter()
        .take_while(|&&x| x == Quantifier::Exists)
        .count();
    let n = req.structure.universe() as u32;
    let mut tree = Tree {
        f: &f,
        req,
        m,
        q,
        n,
        meter: Meter::new(limits),
        work: req.structure.clone(),
        asg: vec![0; q],
        modulator: Vec::new(),
    };
    let only_existential: Vec<(usize, Vec<usize>)> = f
        .atoms()
        .iter()
        .filter(|(_, args)| args.iter().all(|&i| i < m))
        .cloned()
        .collect();
    let mut outer = vec![0u32; m];
    loop {
        tree.asg[..m].copy_from_slice(&outer);
        // Initial configurations of the tuples read only by existential atoms.
        let initial = existential_slots(&only_existential, req, &outer);
        for size in 0..=req.budget.min(initial.len()) {
            let mut chosen: Vec<usize> = (0..size).collect();
            loop {
                for &i in &chosen {
                    initial[i].toggle(&mut tree.work, req.structure_type);
                    tree.modulator.push(initial[i].clone());
                }
                if tree.search(req.budget - size)? {
                    let witness = Modulator::from_slots(
                        req.structure.vocabulary(),
                        req.structure_type,
                        &tree.modulator,
                    );
                    return Ok(SolveResult::yes(
                        SolverName::SearchTree,
                        witness,
                        tree.meter.nodes,
                    ));
                }
                for &i in &chosen {
                    initial[i].toggle(&mut tree.work, req.structure_type);
                }
                tree.modulator.clear();
                if !next_combination(&mut chosen, initial.len()) {
                    break;
                }
            }
        }
        if !next_assignment(&mut outer, 0..m, n) {
            return Ok(SolveResult::no(SolverName::SearchTree, tree.meter.nodes));
        }
    }
}

fn existential_slots(
    atoms: &[(usize, Vec<usize>)],
    req: &SolveRequest,
    outer: &[u32],
) -> Vec<Slot> {
    let mut out = Vec::new();
    for (sym, args) in atoms {
        let tuple: Vec<u32> = args.iter().map(|&i| outer[i]).collect();
        let slot = Slot::canonical(req.structure_type, req.structure.arity(*sym), *sym, &tuple);
        if slot.legal(&req.structure, req.structure_type, req.kind) && !out.contains(&slot) {
            out.push(slot);
        }
    }
    out
}

struct Tree<'a> {
    f: &'a CompiledFormula,
    req: &'a SolveRequest,
    m: usize,
    q: usize,
    n: u32,
    meter: Meter,
    work: Structure,
    asg: Vec<u32>,
    modulator: Vec<Slot>,
}

impl Tree<'_> {
    /// Sets `asg` to the lexicographically first universal assignment that
    /// violates the matrix; false if there is none.
    fn first_violation(&mut self) -> bool {
        for i in self.m..self.q {
            self.asg[i] = 0;
        }
        loop {
            if !self.f.eval_matrix(&self.work, &self.asg) {
                return true;
            }
            if !next_assignment(&mut self.asg, self.m..self.q, self.n) {
                return false;
            }
        }
    }

    fn search(&mut self, budget: usize) -> Result<bool> {
        self.meter.tick()?;
        if !self.first_violation() {
            return Ok(true);
        }
        if budget == 0 {
            return Ok(false);
        }
        let mut branches = Vec::new();
        atom_slots(self.f, self.req, &self.asg, &mut branches);
        branches.retain(|b| !self.modulator.contains(b));
        let ty = self.req.structure_type;
        for slot in branches {
            slot.toggle(&mut self.work, ty);
            self.modulator.push(slot);
            if self.search(budget - 1)? {
                return Ok(true);
            }
            let slot = self.modulator.pop().expect("pushed above");
            slot.toggle(&mut self.work, ty);
        }
        Ok(false)
    }
}
