//! Shared harness: random instances per solver and agreement checks against
//! the brute-force oracle.
#![allow(dead_code)]

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use relmod::generate::{
    random_formula_with_pattern, random_permutation, random_structure, vocabulary_for,
};
use relmod::logic::{
    formula_catalog, model_check, Formula, Pattern, Structure, StructureType, Vocabulary,
};
use relmod::modification::{
    apply, complement_formula, complement_structure, enumerate_modulators, norm, validate,
    Modulator, OperationKind,
};
use relmod::solvers::{
    solve_brute_force, solve_with, Limits, SolveRequest, SolveResult, SolverName,
};

pub const KINDS: [OperationKind; 3] = OperationKind::ALL;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The specialised solvers and the fragments they accept.
pub const SPECIALISED: [SolverName; 6] = [
    SolverName::ExistsStar,
    SolverName::ExistsStarForall,
    SolverName::SearchTree,
    SolverName::BasicAe,
    SolverName::BasicAa,
    SolverName::Monadic,
];

pub fn patterns_for(solver: SolverName) -> &'static [&'static str] {
    match solver {
        SolverName::ExistsStar => &["", "e", "ee", "eee"],
        SolverName::ExistsStarForall => &["a", "ea", "eea"],
        SolverName::SearchTree => &["", "e", "a", "ee", "ea", "aa", "eee", "eea", "eaa", "aaa"],
        SolverName::BasicAe => &["", "e", "a", "ae"],
        SolverName::BasicAa => &["aa"],
        _ => &[
            "", "e", "a", "ee", "ea", "ae", "aa", "eee", "eea", "eae", "eaa", "aee", "aea", "aae",
            "aaa",
        ],
    }
}

pub fn types_for(solver: SolverName) -> &'static [StructureType] {
    use StructureType::*;
    match solver {
        SolverName::BasicAe | SolverName::BasicAa => &[Basic],
        SolverName::Monadic => &[Mon],
        _ => &[Arb, Dir, Undir, Basic, Mon],
    }
}

pub fn applies(solver: SolverName, t: StructureType, p: &Pattern) -> bool {
    match solver {
        SolverName::ExistsStar => p.in_e_star(),
        SolverName::ExistsStarForall => p.in_e_star_a() && !p.in_e_star(),
        SolverName::SearchTree => p.in_e_star_a_star(),
        SolverName::BasicAe => {
            t == StructureType::Basic && ["", "e", "a", "ae"].contains(&p.as_str())
        }
        SolverName::BasicAa => t == StructureType::Basic && p.as_str() == "aa",
        SolverName::Monadic => t == StructureType::Mon,
        _ => false,
    }
}

pub fn max_universe(t: StructureType) -> usize {
    if t.is_graph() {
        6
    } else {
        5
    }
}

/// A random request for `solver`: type, pattern, structure, budget and kind.
/// Instances that already model the formula, and to a lesser degree
/// no-instances, are resampled so that most answers need a real modulator.
pub fn random_request(rng: &mut ChaCha8Rng, solver: SolverName) -> SolveRequest {
    loop {
        let t = *types_for(solver).choose(rng).unwrap();
        let vocab = vocabulary_for(t);
        let pattern: Pattern = patterns_for(solver).choose(rng).unwrap().parse().unwrap();
        let f = random_formula_with_pattern(rng, &vocab, &pattern, 3);
        let req = random_instance(rng, &vocab, t, &f);
        let keep = if already_models(&req) {
            0.1
        } else if solve_brute_force(&req, Limits::default()).unwrap().decision {
            1.0
        } else {
            0.35
        };
        if rng.gen_bool(keep) {
            return req;
        }
    }
}

pub fn already_models(req: &SolveRequest) -> bool {
    model_check(&req.structure, &req.formula, &HashMap::new()).unwrap()
}

/// A random structure of type `t` over `vocab` for a catalogued formula.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    vocab: &Vocabulary,
    t: StructureType,
    f: &Formula,
) -> SolveRequest {
    let n = if rng.gen_bool(0.1) {
        1
    } else {
        rng.gen_range(2..=max_universe(t))
    };
    let density = rng.gen_range(0.1..0.7);
    let s = random_structure(rng, vocab, t, n, density);
    let k = rng.gen_range(0..=3);
    let kind = *KINDS.choose(rng).unwrap();
    SolveRequest::new(s, t, f.clone(), k, kind)
}

/// Runs `solver` and the oracle; returns the solver's result or a
/// description of the disagreement.
pub fn agree(solver: SolverName, req: &SolveRequest) -> Result<SolveResult, String> {
    let oracle = solve_brute_force(req, Limits::default()).map_err(|e| format!("oracle: {e}"))?;
    let fast = solve_with(solver, req, Limits::default()).map_err(|e| format!("{solver}: {e}"))?;
    let show = || {
        format!(
            "{solver} on {} k={} {} {}: {}",
            req.structure_type,
            req.budget,
            req.kind,
            req.formula,
            req.structure.to_json()
        )
    };
    if fast.decision != oracle.decision {
        return Err(format!(
            "decision {} vs oracle {}: {}",
            fast.decision,
            oracle.decision,
            show()
        ));
    }
    if let Some(w) = &fast.witness {
        if !req.accepts_witness(w).map_err(|e| e.to_string())? {
            return Err(format!("witness {:?} rejected: {}", w, show()));
        }
    }
    if fast.decision && fast.witness.is_none() {
        return Err(format!("yes without witness: {}", show()));
    }
    Ok(fast)
}

/// Independent of the solvers: enumerate every valid modulator and model
/// check the result.
pub fn naive_decision(req: &SolveRequest) -> bool {
    enumerate_modulators(&req.structure, req.budget, req.kind, req.structure_type).any(|m| {
        let modified = apply(&req.structure, &m).unwrap();
        model_check(&modified, &req.formula, &HashMap::new()).unwrap()
    })
}

/// Every labelled basic graph on `n` vertices.
pub fn all_basic_graphs(n: u32) -> Vec<Structure> {
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Structure::undirected_graph(n as usize, &edges).unwrap()
        })
        .collect()
}

/// Re-checks a witness from scratch: kind and type legality, norm and the
/// formula on the modified structure.
pub fn witness_holds(req: &SolveRequest, w: &Modulator) -> bool {
    validate(&req.structure, w, req.kind, req.structure_type)
        && norm(w, req.structure_type) <= req.budget
        && model_check(
            &apply(&req.structure, w).unwrap(),
            &req.formula,
            &HashMap::new(),
        )
        .unwrap()
}

fn permute_modulator(w: &Modulator, perm: &[u32]) -> Modulator {
    let mut out = Modulator::empty();
    for (symbol, tuples) in &w.relations {
        for t in tuples {
            out.insert(symbol, t.iter().map(|&e| perm[e as usize]).collect());
        }
    }
    out
}

/// Isomorphism invariance, budget monotonicity in both directions and
/// witness re-validation for one instance.
pub fn check_invariance(
    rng: &mut ChaCha8Rng,
    solver: SolverName,
    req: &SolveRequest,
) -> Result<(), String> {
    let run =
        |r: &SolveRequest| solve_with(solver, r, Limits::default()).map_err(|e| e.to_string());
    let show = || {
        format!(
            "{solver} {} k={} {} {}",
            req.structure_type, req.budget, req.kind, req.formula
        )
    };
    let base = run(req)?;
    if let Some(w) = &base.witness {
        if !witness_holds(req, w) {
            return Err(format!("witness {w:?} fails re-validation: {}", show()));
        }
    }
    let perm = random_permutation(rng, req.structure.universe());
    let mut iso = req.clone();
    iso.structure = req.structure.permuted(&perm);
    let moved = run(&iso)?;
    if moved.decision != base.decision {
        return Err(format!(
            "not isomorphism invariant under {perm:?}: {}",
            show()
        ));
    }
    if let Some(w) = &base.witness {
        if !witness_holds(&iso, &permute_modulator(w, &perm)) {
            return Err(format!("permuted witness fails: {}", show()));
        }
    }
    let mut more = req.clone();
    more.budget += 1;
    if base.decision && !run(&more)?.decision {
        return Err(format!("yes at k but no at k+1: {}", show()));
    }
    if !base.decision && req.budget > 0 {
        let mut less = req.clone();
        less.budget -= 1;
        if run(&less)?.decision {
            return Err(format!("no at k but yes at k-1: {}", show()));
        }
    }
    Ok(())
}

/// A random duality sample: structure with at most four elements over the
/// default vocabulary of a random non-monadic type, a random formula with at
/// most three variables and a budget up to three.
pub fn random_duality_sample(rng: &mut ChaCha8Rng) -> (Structure, StructureType, Formula, usize) {
    use StructureType::*;
    let t = *[Arb, Dir, Undir, Basic].choose(rng).unwrap();
    let vocab = vocabulary_for(t);
    let len = rng.gen_range(0..=3);
    let pattern = relmod::generate::random_pattern(rng, len);
    let f = random_formula_with_pattern(rng, &vocab, &pattern, 3);
    let n = rng.gen_range(1..=4);
    let density = rng.gen_range(0.1..0.9);
    let s = random_structure(rng, &vocab, t, n, density);
    (s, t, f, rng.gen_range(0..=3))
}

/// Addition on (s, f) against deletion on the complements; the same
/// modulator witnesses both.
pub fn check_duality(s: &Structure, t: StructureType, f: &Formula, k: usize) -> Result<(), String> {
    let add = SolveRequest::new(s.clone(), t, f.clone(), k, OperationKind::Add);
    let del = SolveRequest::new(
        complement_structure(s, t),
        t,
        complement_formula(f, t),
        k,
        OperationKind::Del,
    );
    let a = solve_brute_force(&add, Limits::default()).map_err(|e| e.to_string())?;
    let d = solve_brute_force(&del, Limits::default()).map_err(|e| e.to_string())?;
    if a.decision != d.decision {
        return Err(format!(
            "add {} vs del {}: {t} k={k} {f} {}",
            a.decision,
            d.decision,
            s.to_json()
        ));
    }
    if let Some(w) = &a.witness {
        if !witness_holds(&del, w) {
            return Err(format!("add witness {w:?} is not a del witness: {t} {f}"));
        }
    }
    Ok(())
}

/// Every catalogued formula against every specialised solver that accepts
/// it, `per` random structures each. Returns the number of comparisons.
pub fn catalog_agreement(rng: &mut ChaCha8Rng, per: usize) -> Result<usize, String> {
    let monadic = Vocabulary::monadic(["R"]).unwrap();
    let mut count = 0;
    for entry in formula_catalog() {
        let p = entry.formula.pattern();
        let is_monadic = entry.formula.symbols().iter().all(|(_, a)| *a == 1);
        for solver in SPECIALISED {
            for &t in types_for(solver) {
                if !applies(solver, t, &p) {
                    continue;
                }
                let vocab = match (t, is_monadic) {
                    (StructureType::Mon, true) => monadic.clone(),
                    (StructureType::Mon, false) | (_, true) => continue,
                    _ => vocabulary_for(StructureType::Dir),
                };
                for _ in 0..per {
                    let req = random_instance(rng, &vocab, t, &entry.formula);
                    agree(solver, &req).map_err(|e| format!("{}: {e}", entry.name))?;
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The radius-one solver against brute force on every basic graph with at
/// most `max_n` vertices, every kind and budgets up to `max_k`.
pub fn radius_one_exhaustive(max_n: u32, max_k: usize) -> Result<usize, String> {
    let dominating = relmod::logic::catalog::lookup("dominating-vertex").unwrap();
    let mut count = 0;
    for n in 1..=max_n {
        for g in all_basic_graphs(n) {
            for kind in OperationKind::ALL {
                for k in 0..=max_k {
                    let req = SolveRequest::new(
                        g.clone(),
                        StructureType::Basic,
                        dominating.formula.clone(),
                        k,
                        kind,
                    );
                    let want = solve_brute_force(&req, Limits::default()).unwrap().decision;
                    let got = relmod::solvers::solve_radius(
                        &g,
                        StructureType::Basic,
                        1,
                        k,
                        kind,
                        Limits::default(),
                    )
                    .map_err(|e| e.to_string())?;
                    if got.decision != want {
                        return Err(format!("radius 1 on {} k={k} {kind}", g.to_json()));
                    }
                    if let Some(w) = got.witness {
                        if !witness_holds(&req, &w) {
                            return Err(format!("radius witness rejected on {}", g.to_json()));
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
