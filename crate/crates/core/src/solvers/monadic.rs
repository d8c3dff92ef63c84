//! Monadic structures, up to isomorphism.
//!
//! A monadic structure is determined up to isomorphism by its type
//! histogram, where the type of an element is the set of symbols containing
//! it. A modulator only matters through how many elements of each source
//! type it moves to each target type, so it suffices to try one
//! representative per such multiset: the numerically smallest elements of
//! each source type.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::logic::{Structure, StructureType};
use crate::modification::{Modulator, OperationKind};
use crate::solvers::{Limits, Meter, SolveRequest, SolveResult, SolverName};

type Type = u64;

fn element_type(s: &Structure, e: u32) -> Type {
    (0..s.vocabulary().len())
        .filter(|&i| s.holds(i, &[e]))
        .fold(0, |acc, i| acc | (1 << i))
}

/// A retyping of some elements of one source type to one target type.
#[derive(Clone, Copy, Debug)]
struct Move {
    from: Type,
    to: Type,
    cost: usize,
}

pub fn solve_monadic(req: &SolveRequest, limits: Limits) -> Result<SolveResult> {
    const NAME: SolverName = SolverName::Monadic;
    if req.structure_type != StructureType::Mon {
        return Err(Error::TypeMismatch(format!(
            "monadic solver requires type mon, got {}",
            req.structure_type
        )));
    }
    let f = req.compile()?;
    let s = &req.structure;
    let r = s.vocabulary().len();
    if r > 16 {
        return Err(Error::InvalidInstance("too many unary symbols".into()));
    }
    let mut histogram: BTreeMap<Type, Vec<u32>> = BTreeMap::new();
    for e in 0..s.universe() as u32 {
        histogram.entry(element_type(s, e)).or_default().push(e);
    }
    let all_types = 0..(1u64 << r);
    let mut moves = Vec::new();
    for &from in histogram.keys() {
        for to in all_types.clone() {
            let legal = match req.kind {
                OperationKind::Del => to & !from == 0,
                OperationKind::Add => from & !to == 0,
                OperationKind::Edit => true,
            };
            let cost = (from ^ to).count_ones() as usize;
            if to != from && legal && cost <= req.budget {
                moves.push(Move { from, to, cost });
            }
        }
    }

    let mut search = Search {
        req,
        histogram: &histogram,
        moves: &moves,
        counts: vec![0; moves.len()],
        meter: Meter::new(limits),
        holds: &mut |t: &Structure| f.holds(t),
    };
    let found = search.run(0, req.budget)?;
    let nodes = search.meter.nodes;
    Ok(match found {
        Some(m) => SolveResult::yes(NAME, m, nodes),
        None => SolveResult::no(NAME, nodes),
    })
}

struct Search<'a> {
    req: &'a SolveRequest,
    histogram: &'a BTreeMap<Type, Vec<u32>>,
    moves: &'a [Move],
    counts: Vec<usize>,
    meter: Meter,
    holds: &'a mut dyn FnMut(&Structure) -> bool,
}

impl Search<'_> {
    fn run(&mut self, i: usize, budget: usize) -> Result<Option<Modulator>> {
        self.meter.tick()?;
        if i == self.moves.len() {
            let m = self.representative();
            let modified = crate::modification::apply(&self.req.structure, &m)?;
            return Ok((self.holds)(&modified).then_some(m));
        }
        let mv = self.moves[i];
        let used: usize = self.moves[..i]
            .iter()
            .zip(&self.counts)
            .filter(|(m, _)| m.from == mv.from)
            .map(|(_, &c)| c)
            .sum();
        let available = self.histogram[&mv.from].len() - used;
        let max = available.min(budget / mv.cost);
        for c in 0..=max {
            self.counts[i] = c;
            if let Some(m) = self.run(i + 1, budget - c * mv.cost)? {
                return Ok(Some(m));
            }
        }
        self.counts[i] = 0;
        Ok(None)
    }

    /// Moves the smallest unused elements of each source type, in move order.
    fn representative(&self) -> Modulator {
        let symbols = self.req.structure.vocabulary().symbols();
        let mut next: BTreeMap<Type, usize> = BTreeMap::new();
        let mut m = Modulator::empty();
        for (mv, &c) in self.moves.iter().zip(&self.counts) {
            let start = next.entry(mv.from).or_insert(0);
            for &e in &self.histogram[&mv.from][*start..*start + c] {
                for (bit, symbol) in symbols.iter().enumerate() {
                    if (mv.from ^ mv.to) >> bit & 1 == 1 {
                        m.insert(&symbol.name, vec![e]);
                    }
                }
            }
            *start += c;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Formula, Vocabulary};

    fn request(s: Structure, f: &str, k: usize, kind: OperationKind) -> SolveRequest {
        SolveRequest::new(
            s,
            StructureType::Mon,
            f.parse::<Formula>().unwrap(),
            k,
            kind,
        )
    }

    #[test]
    fn all_memberships_must_go() {
        let v = Vocabulary::monadic(["R"]).unwrap();
        let s = Structure::from_tuples(v, 4, vec![vec![[0u32], [1], [2]]]).unwrap();
        let f = "forall x ~R(x)";
        assert!(
            !solve_monadic(
                &request(s.clone(), f, 2, OperationKind::Del),
                Limits::default()
            )
            .unwrap()
            .decision
        );
        let r = request(s, f, 3, OperationKind::Del);
        let yes = solve_monadic(&r, Limits::default()).unwrap();
        assert!(yes.decision);
        assert!(r.accepts_witness(yes.witness.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn single_addition() {
        let v = Vocabulary::monadic(["P", "Q"]).unwrap();
        let s = Structure::from_tuples(v, 2, vec![vec![[0u32]], vec![]]).unwrap();
        let r = request(s, "exists x (P(x) & Q(x))", 1, OperationKind::Add);
        let yes = solve_monadic(&r, Limits::default()).unwrap();
        assert!(yes.decision);
        let w = yes.witness.unwrap();
        assert_eq!(
            w.relations["Q"].iter().collect::<Vec<_>>(),
            vec![&vec![0u32]]
        );
    }
}
