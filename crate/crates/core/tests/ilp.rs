//! The 0-1 programs against enumeration and brute-force swap distances.

mod common;

use proptest::prelude::*;
use subelect::ilp::{
    build_hidden_an, build_hidden_id, build_max_an, build_max_id, decode_witness, export_lp,
    parse_lp, solve, IlpModel, IlpSolution, SolveStatus, VarTag,
};
use subelect::Election;

const NODES: u64 = 50_000_000;

fn optimal(model: &IlpModel) -> IlpSolution {
    let sol = solve(model, NODES);
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert!(model.is_feasible(&sol.assignment));
    sol
}

/// Every product variable equals the product it stands for.
fn products_exact(model: &IlpModel, sol: &IlpSolution) -> bool {
    let val = |t: VarTag| sol.value(model, t).unwrap();
    model.variables().iter().all(|&t| match t {
        VarTag::P(i, a, b) => val(t) == (val(VarTag::V(i)) && val(VarTag::S(a, b))),
        VarTag::R(i, a, b) => val(t) == (val(VarTag::U(i)) && val(VarTag::S(b, a))),
        _ => true,
    })
}

fn check_distances(e: &Election) {
    for m_prime in 1..=e.m() {
        for n_prime in 1..=e.n() {
            let model = build_hidden_id(e, m_prime, n_prime).unwrap();
            let sol = optimal(&model);
            assert!(products_exact(&model, &sol));
            let brute = common::min_swaps_identity(e, m_prime, n_prime);
            assert_eq!(
                sol.objective_value as usize, brute,
                "id ({m_prime},{n_prime}) {e:?}"
            );
            if brute == 0 {
                let w = decode_witness(&model, &sol).unwrap();
                assert!(w.verify(e));
                assert_eq!(w.size(), (m_prime, n_prime));
            }
            if n_prime % 2 == 0 {
                let model = build_hidden_an(e, m_prime, n_prime).unwrap();
                let sol = optimal(&model);
                assert!(products_exact(&model, &sol));
                let brute = common::min_swaps_antagonism(e, m_prime, n_prime);
                assert_eq!(
                    sol.objective_value as usize, brute,
                    "an ({m_prime},{n_prime}) {e:?}"
                );
                if brute == 0 {
                    assert!(decode_witness(&model, &sol).unwrap().verify(e));
                }
            }
        }
    }
}

fn check_maxima(e: &Election) {
    for m_prime in 1..=e.m() {
        let model = build_max_id(e, m_prime).unwrap();
        let sol = optimal(&model);
        assert_eq!(
            sol.objective_value as usize,
            common::max_identity(e, m_prime)
        );
        assert!(decode_witness(&model, &sol).unwrap().verify(e));
        let model = build_max_an(e, m_prime).unwrap();
        let sol = optimal(&model);
        assert_eq!(
            sol.objective_value as usize,
            common::max_antagonism(e, m_prime)
        );
        if sol.objective_value > 0 {
            assert!(decode_witness(&model, &sol).unwrap().verify(e));
        }
    }
}

#[test]
fn swap_distances_match_brute_force() {
    let mut rng = common::rng(5);
    for k in 0..12 {
        let e = if k % 2 == 0 {
            common::random_election(&mut rng, 4, 4)
        } else {
            common::clustered_election(&mut rng, 5, 4)
        };
        check_distances(&e);
    }
}

#[test]
fn maxima_match_enumeration() {
    let mut rng = common::rng(6);
    for k in 0..10 {
        let e = if k % 2 == 0 {
            common::random_election(&mut rng, 5, 5)
        } else {
            common::clustered_election(&mut rng, 5, 6)
        };
        check_maxima(&e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lp_text_round_trips(e in common::arb_election(4, 4), m_prime in 1usize..=4, n_prime in 1usize..=4) {
        let (m_prime, n_prime) = (m_prime.min(e.m()), n_prime.min(e.n()));
        let mut models = vec![build_hidden_id(&e, m_prime, n_prime).unwrap(), build_max_id(&e, m_prime).unwrap(), build_max_an(&e, m_prime).unwrap()];
        if n_prime % 2 == 0 {
            models.push(build_hidden_an(&e, m_prime, n_prime).unwrap());
        }
        for model in models {
            let text = export_lp(&model);
            prop_assert!(text.starts_with("Minimize\n") || text.starts_with("Maximize\n"));
            let back = parse_lp(&text).unwrap();
            prop_assert_eq!(&back, &model);
        }
    }

    #[test]
    fn zero_optimum_iff_identity_exists(e in common::arb_election(5, 5), m_prime in 1usize..=5, n_prime in 1usize..=5) {
        let (m_prime, n_prime) = (m_prime.min(e.m()), n_prime.min(e.n()));
        let sol = optimal(&build_hidden_id(&e, m_prime, n_prime).unwrap());
        prop_assert_eq!(sol.objective_value == 0, common::count_identity(&e, m_prime, n_prime) > 0);
    }
}

#[test]
fn long_rows_wrap_and_still_parse() {
    let mut rng = common::rng(9);
    let e = common::random_election(&mut rng, 6, 30);
    let model = build_max_an(&e, 3).unwrap();
    let text = export_lp(&model);
    assert!(text.lines().all(|l| l.len() <= 260));
    assert_eq!(parse_lp(&text).unwrap(), model);
}
