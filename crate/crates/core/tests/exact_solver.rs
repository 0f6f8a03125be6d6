use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssr_core::oracle::{brute_force_anchored, brute_force_semi_restricted};
use ssr_core::solver::{prepare, solve_case1, value_of};
use ssr_core::{
    check_feasible_anchored, check_feasible_semi_restricted, generate, solve_anchored,
    solve_semi_restricted, IntegerInstance, RatioValue, TwoSetInstance,
};

fn integer(inst: &TwoSetInstance, m: usize) -> IntegerInstance {
    IntegerInstance::from_rationals(inst.weights(), m).unwrap()
}

fn battery(seed: u64, count: usize, max_weight: u64) -> Vec<TwoSetInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=7);
            generate::random_two_set(&mut rng, n, max_weight)
        })
        .collect()
}

#[test]
fn anchored_solver_matches_anchored_oracle() {
    for inst in battery(11, 150, 30) {
        for m in 1..=2 * inst.n() {
            let got = solve_anchored(&integer(&inst, m)).unwrap().solution;
            let want = brute_force_anchored(&inst, m).unwrap();
            let value = got.value(inst.weights()).unwrap();
            assert_eq!(
                value,
                want.optimum,
                "{:?} m={m} got {:?}",
                inst.weights(),
                got
            );
            if !got.is_empty() {
                assert!(check_feasible_anchored(&got, inst.weights(), m));
            }
        }
    }
}

#[test]
fn semi_restricted_solver_matches_oracle() {
    // Small weights force many ties between the pivot and other elements.
    for (seed, max_weight) in [(12, 30), (13, 4)] {
        for inst in battery(seed, 120, max_weight) {
            for m in 1..=2 * inst.n() {
                let got = solve_semi_restricted(&integer(&inst, m)).unwrap().solution;
                let want = brute_force_semi_restricted(&inst, m).unwrap();
                assert_eq!(
                    got.value(inst.weights()).unwrap(),
                    want.optimum,
                    "{:?} m={m}",
                    inst.weights()
                );
                assert_eq!(got.is_empty(), !want.is_feasible());
                if !got.is_empty() {
                    assert!(check_feasible_semi_restricted(&got, inst.weights(), m));
                }
            }
        }
    }
}

#[test]
fn case1_is_optimal_when_every_witness_exceeds_q() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let a: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=5)).collect();
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=60)).collect();
        let inst = TwoSetInstance::from_integer_pairs(
            &a.iter().copied().zip(b.iter().copied()).collect::<Vec<_>>(),
        )
        .unwrap();
        for m in 1..=n {
            let int = integer(&inst, m);
            let (sides, cand) = prepare(&int);
            let heavy = |i: &usize| int.weight(i + sides.p_prime) > &cand.q;
            if cand.s_max.is_empty() || !cand.s_max.iter().all(heavy) {
                continue;
            }
            checked += 1;
            let case1 = solve_case1(&int, sides, &cand);
            let want = brute_force_anchored(&inst, m).unwrap().optimum;
            assert_eq!(value_of(&case1, &int), want, "{a:?} {b:?} m={m}");
        }
    }
    assert!(checked > 100, "only {checked} instances in the subdomain");
}

#[test]
fn anchored_work_is_quadratic_in_n_times_pivot_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut worst = 0f64;
    for _ in 0..150 {
        let n = rng.gen_range(2..=24);
        let inst = generate::random_two_set(&mut rng, n, 100);
        for m in 1..=2 * n {
            let int = integer(&inst, m);
            let am: u64 = int.weight(m).try_into().unwrap();
            let ops = solve_anchored(&int).unwrap().cell_ops;
            worst = worst.max(ops as f64 / (n * n) as f64 / am as f64);
        }
    }
    assert!(worst <= 16.0, "ops / (n² a_m) reached {worst}");
}

#[test]
fn semi_restricted_work_scales_with_anchor_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..100 {
        let n = rng.gen_range(2..=16);
        let inst = generate::random_two_set(&mut rng, n, 6);
        for m in 1..=2 * n {
            let int = integer(&inst, m);
            let am = int.weight(m).clone();
            let anchors = int.weights().iter().filter(|w| **w == am).count() as u64;
            let am: u64 = am.try_into().unwrap();
            let ops = solve_semi_restricted(&int).unwrap().cell_ops;
            assert!(ops <= 16 * anchors * (n * n) as u64 * am);
        }
    }
}

#[test]
fn infeasible_pivot_returns_empty() {
    let inst = TwoSetInstance::from_integer_pairs(&[(5, 4), (3, 6)]).unwrap();
    let got = solve_semi_restricted(&integer(&inst, 4)).unwrap();
    assert!(got.solution.is_empty());
    assert_eq!(
        got.solution.value(inst.weights()).unwrap(),
        RatioValue::Infinite
    );
}
