mod common;

use common::*;
use proptest::prelude::*;
use relmod::generate::{random_structure, vocabulary_for};
use relmod::logic::StructureType;
use relmod::modification::{apply, enumerate_modulators, norm, validate, OperationKind};
use relmod::solvers::SolverName;

const SOLVERS: [SolverName; 7] = [
    SolverName::Brute,
    SolverName::ExistsStar,
    SolverName::ExistsStarForall,
    SolverName::SearchTree,
    SolverName::BasicAe,
    SolverName::BasicAa,
    SolverName::Monadic,
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_is_dual_to_deletion(seed in any::<u64>()) {
        let (s, t, f, k) = random_duality_sample(&mut rng(seed));
        check_duality(&s, t, &f, k).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn solvers_are_invariant(seed in any::<u64>(), which in 0..SOLVERS.len()) {
        let mut rng = rng(seed);
        let solver = SOLVERS[which];
        let pick = if solver == SolverName::Brute { SolverName::SearchTree } else { solver };
        let req = random_request(&mut rng, pick);
        check_invariance(&mut rng, solver, &req).map_err(TestCaseError::fail)?;
    }

    #[test]
    fn enumerated_modulators_are_valid(seed in any::<u64>(), k in 0usize..3) {
        use rand::seq::SliceRandom;
        use rand::Rng;
        let mut rng = rng(seed);
        let t = *StructureType::ALL.choose(&mut rng).unwrap();
        let vocab = vocabulary_for(t);
        let n = rng.gen_range(1..=3);
        let s = random_structure(&mut rng, &vocab, t, n, 0.4);
        for kind in OperationKind::ALL {
            for m in enumerate_modulators(&s, k, kind, t) {
                prop_assert!(norm(&m, t) <= k);
                prop_assert!(validate(&s, &m, kind, t));
                prop_assert_eq!(apply(&apply(&s, &m).unwrap(), &m).unwrap(), s.clone());
            }
        }
    }
}

#[test]
fn edit_dominates_add_and_del() {
    let mut rng = rng(21);
    for i in 0..200 {
        let mut req = random_request(&mut rng, SPECIALISED[i % SPECIALISED.len()]);
        let mut decide = |kind| {
            req.kind = kind;
            relmod::solvers::solve_brute_force(&req, Default::default())
                .unwrap()
                .decision
        };
        let edit = decide(OperationKind::Edit);
        assert!(edit || !decide(OperationKind::Add));
        assert!(edit || !decide(OperationKind::Del));
    }
}

#[test]
fn duality_on_a_path() {
    use relmod::logic::{Formula, Structure};
    // adding one edge closes the triangle; dually deleting it from the complement
    let s = Structure::undirected_graph(3, &[(0, 1), (1, 2)]).unwrap();
    let f: Formula = "forall x forall y (x = y | E(x, y))".parse().unwrap();
    check_duality(&s, StructureType::Basic, &f, 1).unwrap();
    check_duality(&s, StructureType::Basic, &f, 0).unwrap();
}
