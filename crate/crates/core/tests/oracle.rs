mod common;

use common::*;
use relmod::solvers::{solve_brute_force, Limits, SolverName};

#[test]
fn brute_force_matches_naive_enumeration() {
    let mut rng = rng(11);
    for i in 0..300 {
        let solver = SPECIALISED[i % SPECIALISED.len()];
        let mut req = random_request(&mut rng, solver);
        // keep the naive enumeration small
        if req.structure.universe() > 4 {
            continue;
        }
        req.budget = req.budget.min(2);
        let brute = solve_brute_force(&req, Limits::default()).unwrap();
        assert_eq!(
            brute.decision,
            naive_decision(&req),
            "{} {}",
            req.formula,
            req.structure.to_json()
        );
    }
}

#[test]
fn specialised_solvers_on_random_formulas() {
    let mut rng = rng(12);
    for solver in SPECIALISED {
        for _ in 0..150 {
            let req = random_request(&mut rng, solver);
            agree(solver, &req).unwrap();
        }
    }
}

#[test]
fn specialised_solvers_on_catalog() {
    assert!(catalog_agreement(&mut rng(13), 8).unwrap() > 100);
}

#[test]
fn dispatch_agrees_with_oracle() {
    let mut rng = rng(14);
    for i in 0..200 {
        let req = random_request(&mut rng, SPECIALISED[i % SPECIALISED.len()]);
        agree(SolverName::Auto, &req).unwrap();
    }
}

#[test]
fn radius_one_exhaustive_small() {
    radius_one_exhaustive(4, 2).unwrap();
}

#[test]
fn pattern_mismatch_is_reported() {
    let mut rng = rng(15);
    let req = random_request(&mut rng, SolverName::BasicAa);
    for solver in [
        SolverName::ExistsStar,
        SolverName::ExistsStarForall,
        SolverName::BasicAe,
    ] {
        assert!(relmod::solvers::solve_with(solver, &req, Limits::default()).is_err());
    }
}
