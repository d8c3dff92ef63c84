//! Decision procedures for relation modification problems.
//!
//! [`solve_brute_force`] is the reference oracle. Every other solver handles
//! one tractable fragment and must agree with it exactly; [`dispatch_solve`]
//! routes a request to the most specific applicable solver.

mod basic;
mod brute;
mod exists_star;
mod monadic;
mod radius;
mod search_tree;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logic::{
    check_structure_type, CompiledFormula, Formula, Pattern, Structure, StructureType,
};
use crate::modification::{apply, norm, validate, Modulator, OperationKind, Slot};

pub use basic::{solve_basic_aa, solve_basic_ae};
pub use brute::{solve_brute_force, solve_property_brute_force};
pub use exists_star::{solve_exists_star, solve_exists_star_forall};
pub use monadic::solve_monadic;
pub use radius::{radius_at_most, solve_radius};
pub use search_tree::solve_fpt_search_tree;

/// Default node budget when none is configured.
pub const DEFAULT_NODE_BUDGET: u64 = 4_000_000;

#[derive(Clone, Debug)]
pub struct SolveRequest {
    pub structure: Structure,
    pub structure_type: StructureType,
    pub formula: Formula,
    pub budget: usize,
    pub kind: OperationKind,
}

impl SolveRequest {
    pub fn new(
        structure: Structure,
        structure_type: StructureType,
        formula: Formula,
        budget: usize,
        kind: OperationKind,
    ) -> Self {
        SolveRequest {
            structure,
            structure_type,
            formula,
            budget,
            kind,
        }
    }

    /// Checks the structure type and compiles the formula against the
    /// structure's vocabulary.
    pub fn compile(&self) -> Result<CompiledFormula> {
        if !check_structure_type(&self.structure, self.structure_type) {
            return Err(Error::TypeMismatch(format!(
                "structure is not of type {}",
                self.structure_type
            )));
        }
        CompiledFormula::new(&self.formula, self.structure.vocabulary())
    }

    pub fn pattern(&self) -> Pattern {
        self.formula.pattern()
    }

    /// Semantic check of a witness: kind and type legal, norm within budget,
    /// and the modified structure models the formula.
    pub fn accepts_witness(&self, m: &Modulator) -> Result<bool> {
        if !validate(&self.structure, m, self.kind, self.structure_type)
            || norm(m, self.structure_type) > self.budget
        {
            return Ok(false);
        }
        let modified = apply(&self.structure, m)?;
        Ok(CompiledFormula::new(&self.formula, modified.vocabulary())?.holds(&modified))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub decision: bool,
    pub witness: Option<Modulator>,
    pub solver_used: String,
    pub nodes_explored: u64,
}

impl SolveResult {
    fn yes(solver: SolverName, witness: Modulator, nodes: u64) -> Self {
        SolveResult {
            decision: true,
            witness: Some(witness),
            solver_used: solver.name().to_string(),
            nodes_explored: nodes,
        }
    }

    fn no(solver: SolverName, nodes: u64) -> Self {
        SolveResult {
            decision: false,
            witness: None,
            solver_used: solver.name().to_string(),
            nodes_explored: nodes,
        }
    }
}

/// Resource limits for exponential searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
        }
    }
}

impl Limits {
    pub fn with_nodes(node_budget: u64) -> Self {
        Limits {
            node_budget,
            time_budget: None,
        }
    }
}

/// Counts search nodes and enforces [`Limits`].
pub(crate) struct Meter {
    pub nodes: u64,
    limits: Limits,
    start: Instant,
}

impl Meter {
    pub fn new(limits: Limits) -> Self {
        Meter {
            nodes: 0,
            limits,
            start: Instant::now(),
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.node_budget {
            return Err(Error::NodeBudgetExceeded(self.limits.node_budget));
        }
        if self.nodes & 0xfff == 0 {
            if let Some(t) = self.limits.time_budget {
                if self.start.elapsed() > t {
                    return Err(Error::TimeBudgetExceeded(t.as_millis() as u64));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolverName {
    Auto,
    Brute,
    ExistsStar,
    ExistsStarForall,
    SearchTree,
    BasicAe,
    BasicAa,
    Monadic,
    Radius,
}

impl SolverName {
    pub const ALL: [SolverName; 9] = [
        SolverName::Auto,
        SolverName::Brute,
        SolverName::ExistsStar,
        SolverName::ExistsStarForall,
        SolverName::SearchTree,
        SolverName::BasicAe,
        SolverName::BasicAa,
        SolverName::Monadic,
        SolverName::Radius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolverName::Auto => "auto",
            SolverName::Brute => "brute",
            SolverName::ExistsStar => "exists_star",
            SolverName::ExistsStarForall => "exists_star_forall",
            SolverName::SearchTree => "search_tree",
            SolverName::BasicAe => "basic_ae",
            SolverName::BasicAa => "basic_aa",
            SolverName::Monadic => "monadic",
            SolverName::Radius => "radius",
        }
    }
}

impl fmt::Display for SolverName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SolverName::ALL
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "solver",
                name: s.to_string(),
            })
    }
}

/// The solver [`dispatch_solve`] picks for a type and pattern.
pub fn route(t: StructureType, p: &Pattern) -> SolverName {
    match t {
        StructureType::Mon => SolverName::Monadic,
        StructureType::Basic if p.as_str() == "ae" => SolverName::BasicAe,
        StructureType::Basic if p.as_str() == "aa" => SolverName::BasicAa,
        _ if p.in_e_star() => SolverName::ExistsStar,
        _ if p.in_e_star_a() => SolverName::ExistsStarForall,
        _ if p.in_e_star_a_star() => SolverName::SearchTree,
        _ => SolverName::Brute,
    }
}

pub fn dispatch_solve(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    solve_with(route(req.structure_type, &req.pattern()), req, limits)
}

/// Runs a named solver; `auto` dispatches.
pub fn solve_with(name: SolverName, req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    match name {
        SolverName::Auto => dispatch_solve(req, limits),
        SolverName::Brute => solve_brute_force(req, limits),
        SolverName::ExistsStar => solve_exists_star(req, limits),
        SolverName::ExistsStarForall => solve_exists_star_forall(req, limits),
        SolverName::SearchTree => solve_fpt_search_tree(req, limits),
        SolverName::BasicAe => solve_basic_ae(req, limits),
        SolverName::BasicAa => solve_basic_aa(req, limits),
        SolverName::Monadic => solve_monadic(req, limits),
        SolverName::Radius => Err(Error::PatternMismatch {
            solver: "radius".into(),
            pattern: req.pattern().to_string(),
            structure_type: req.structure_type.to_string(),
        }),
    }
}

fn mismatch(solver: SolverName, req: &SolveRequest) -> Error {
    Error::PatternMismatch {
        solver: solver.name().to_string(),
        pattern: req.pattern().to_string(),
        structure_type: req.structure_type.to_string(),
    }
}

/// Canonical legal slots read by the matrix's atoms under `assignment`,
/// deduplicated in first-occurrence order.
pub(crate) fn atom_slots(
    f: &CompiledFormula,
    req: &SolveRequest,
    assignment: &[u32],
    out: &mut Vec<Slot>,
) {
    let s = &req.structure;
    for (sym, args) in f.atoms() {
        let tuple: Vec<u32> = args.iter().map(|&i| assignment[i]).collect();
        let slot = Slot::canonical(req.structure_type, s.arity(*sym), *sym, &tuple);
        if slot.legal(s, req.structure_type, req.kind) && !out.contains(&slot) {
            out.push(slot);
        }
    }
}

/// Advances an assignment of `positions` over `0..n` in lexicographic order.
pub(crate) fn next_assignment(asg: &mut [u32], positions: std::ops::Range<usize>, n: u32) -> bool {
    for i in positions.rev() {
        if asg[i] + 1 < n {
            asg[i] += 1;
            return true;
        }
        asg[i] = 0;
    }
    false
}

/// Smallest subset (by size, then lexicographically) of `slots` of size at
/// most `max`, toggled on `s`, for which `accept` holds. `s` is restored.
pub(crate) fn smallest_subset(
    s: &mut Structure,
    ty: StructureType,
    slots: &[Slot],
    max: usize,
    meter: &mut Meter,
    accept: &mut dyn FnMut(&mut Structure) -> bool,
) -> Result<Option<Vec<usize>>> {
    for r in 0..=max.min(slots.len()) {
        if let Some(chosen) = subset_of_size(s, ty, slots, r, meter, accept)? {
            return Ok(Some(chosen));
        }
    }
    Ok(None)
}

/// First subset of exactly `size` slots, in lexicographic order, for which
/// `accept` holds. `s` is restored.
pub(crate) fn subset_of_size(
    s: &mut Structure,
    ty: StructureType,
    slots: &[Slot],
    size: usize,
    meter: &mut Meter,
    accept: &mut dyn FnMut(&mut Structure) -> bool,
) -> Result<Option<Vec<usize>>> {
    if size > slots.len() {
        return Ok(None);
    }
    let mut chosen = Vec::with_capacity(size);
    Ok(subset_dfs(s, ty, slots, 0, size, &mut chosen, meter, accept)?.then_some(chosen))
}

#[allow(clippy::too_many_arguments)]
fn subset_dfs(
    s: &mut Structure,
    ty: StructureType,
    slots: &[Slot],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    meter: &mut Meter,
    accept: &mut dyn FnMut(&mut Structure) -> bool,
) -> Result<bool> {
    meter.tick()?;
    if remaining == 0 {
        return Ok(accept(s));
    }
    for i in start..=slots.len() - remaining {
        slots[i].toggle(s, ty);
        chosen.push(i);
        let found = subset_dfs(s, ty, slots, i + 1, remaining - 1, chosen, meter, accept);
        slots[i].toggle(s, ty);
        if found? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
