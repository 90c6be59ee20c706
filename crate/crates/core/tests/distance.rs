mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pumgab::distance::{
    brute_force_row_distance, compare_hamming, construction_bound_check, free_rank_distance,
    row_distance_profile, slope_estimate, upper_bounds, DpBudget, FreeDistanceStatus, Metric,
    TrellisCode, DEFAULT_PATH_LIMIT,
};
use pumgab::pum::{build_code, min_field_size, PumCode, PumParams};
use pumgab::{Error, ExtField, Felt, MatExt};

fn code(n: usize, k: usize, k1: usize, mh: usize) -> PumCode {
    let s = min_field_size(n, k, mh).unwrap();
    build_code(
        &ExtField::new(2, s, None).unwrap(),
        PumParams::new(n, k, k1, mh),
    )
    .unwrap()
}

fn budget() -> DpBudget {
    DpBudget::default()
}

#[test]
fn three_two_profile() {
    let c = code(3, 2, 1, 1);
    let t = c.trellis().unwrap();
    let p = row_distance_profile(&t, 8, Metric::SumRank, &budget()).unwrap();
    assert_eq!(p.order(1), Some(3));
    let fd = free_rank_distance(&p).unwrap();
    assert_eq!((fd.value, fd.status), (3, FreeDistanceStatus::Certified));
    assert!(!p.zero_weight_cycle);
    assert!(construction_bound_check(&p, c.params()).all_met());
    let ub = upper_bounds(c.params()).unwrap();
    assert!(fd.value as usize <= ub.free_distance);
    let slope = slope_estimate(&p, 2, 8).unwrap().value;
    assert!(slope <= num_rational::Ratio::from_integer(ub.slope as i64));
    for l in 1..=2 {
        let bf = brute_force_row_distance(&t, l, Metric::SumRank, DEFAULT_PATH_LIMIT).unwrap();
        assert_eq!(bf, p.order(l), "order {l}");
    }
}

#[test]
fn single_order_run_is_not_certified() {
    let c = code(3, 2, 1, 1);
    let p = row_distance_profile(&c.trellis().unwrap(), 1, Metric::SumRank, &budget()).unwrap();
    assert_eq!(p.d_row, vec![Some(3)]);
    assert_eq!(p.status, FreeDistanceStatus::LowerBoundOnly);
}

#[test]
fn errors() {
    let c = code(3, 2, 1, 1);
    let t = c.trellis().unwrap();
    assert_eq!(
        row_distance_profile(&t, 0, Metric::SumRank, &budget()),
        Err(Error::InvalidOrder)
    );
    assert!(matches!(
        row_distance_profile(&t, 3, Metric::SumRank, &budget().with_max_states(8)),
        Err(Error::BudgetExceeded { .. })
    ));
    // Example-size code: 2^24 state classes.
    let big = code(6, 4, 2, 1);
    assert!(matches!(
        row_distance_profile(&big.trellis().unwrap(), 2, Metric::SumRank, &budget()),
        Err(Error::BudgetExceeded { .. })
    ));
    assert!(matches!(
        brute_force_row_distance(&t, 4, Metric::SumRank, DEFAULT_PATH_LIMIT),
        Err(Error::EnumerationTooLarge { .. })
    ));
}

#[test]
fn unit_memory_orders_are_empty() {
    let c = code(2, 1, 1, 1);
    let t = c.trellis().unwrap();
    let p = row_distance_profile(&t, 5, Metric::SumRank, &budget()).unwrap();
    assert!(p.d_row.iter().all(Option::is_none));
    assert_eq!(free_rank_distance(&p), Err(Error::EmptyProfile));
    for l in 1..=3 {
        assert_eq!(
            brute_force_row_distance(&t, l, Metric::SumRank, DEFAULT_PATH_LIMIT).unwrap(),
            None
        );
    }
    let cmp = compare_hamming(&t, 3, &budget()).unwrap();
    assert!(cmp.holds());
}

#[test]
fn zero_block_minimizers_are_flagged() {
    // Over F_2: G0 = I, G1 = [[1,0],[0,0]]. The path (1,0),(1,0),(0,1)
    // has blocks (1,0), 0, (1,1) and weight 2, beating any path without
    // a zero block at order 3.
    let f = ExtField::new(2, 1, None).unwrap();
    let g0 = MatExt::identity(2);
    let mut g1 = MatExt::zeros(2, 2);
    g1.set(0, 0, Felt::ONE);
    let t = TrellisCode::new(&f, &g0, &g1).unwrap();
    let p = row_distance_profile(&t, 4, Metric::SumRank, &budget()).unwrap();
    assert_eq!(p.order(3), Some(2));
    assert!(p.zero_block_minimizer[2]);
    assert!(!p.zero_block_minimizer[0]);
    assert!(p.zero_weight_cycle);
    assert_eq!(p.status, FreeDistanceStatus::LowerBoundOnly);
    for l in 1..=4 {
        assert_eq!(
            brute_force_row_distance(&t, l, Metric::SumRank, DEFAULT_PATH_LIMIT).unwrap(),
            p.order(l)
        );
    }
}

#[test]
fn mismatched_generators_rejected() {
    let f = ExtField::new(2, 2, None).unwrap();
    let g0 = MatExt::identity(2);
    let g1 = MatExt::zeros(1, 2);
    assert!(TrellisCode::new(&f, &g0, &g1).is_err());
}

/// `(q=2, s, n, k, k1)` drawn from the small-code range.
fn small_shape(rng: &mut ChaCha8Rng) -> (usize, usize, usize, usize) {
    let s = rng.gen_range(1..=3);
    let n = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=2.min(n));
    let k1 = rng.gen_range(1..=k);
    (s, n, k, k1)
}

#[test]
fn dp_matches_brute_force_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..24 {
        let (s, n, k, k1) = small_shape(&mut rng);
        let f = ExtField::new(2, s, None).unwrap();
        let (g0, g1) = common::random_memory_one(&mut rng, &f, n, k, k1);
        let t = TrellisCode::new(&f, &g0, &g1).unwrap();
        for metric in [Metric::SumRank, Metric::Hamming] {
            let p = row_distance_profile(&t, 4, metric, &budget()).unwrap();
            for l in 1..=4 {
                let bf = brute_force_row_distance(&t, l, metric, DEFAULT_PATH_LIMIT).unwrap();
                assert_eq!(bf, p.order(l), "s={s} n={n} k={k} k1={k1} l={l} {metric:?}");
            }
        }
    }
}

#[test]
fn collapsed_states_match_full_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // Full-state tables hold Q^{2k} pairs; keep Q^k at most 2^8.
    let shapes = [
        (2, 2, 2, 1),
        (2, 3, 2, 2),
        (3, 3, 2, 1),
        (4, 3, 2, 1),
        (4, 4, 2, 1),
        (2, 4, 3, 2),
        (8, 3, 1, 1),
    ];
    for _ in 0..3 {
        for &(s, n, k, k1) in &shapes {
            let f = ExtField::new(2, s, None).unwrap();
            let (g0, g1) = common::random_memory_one(&mut rng, &f, n, k, k1);
            let t = TrellisCode::new(&f, &g0, &g1).unwrap();
            for metric in [Metric::SumRank, Metric::Hamming] {
                let p = row_distance_profile(&t, 5, metric, &budget()).unwrap();
                let full = common::full_state_profile(&f, &g0, &g1, 5, metric);
                assert_eq!(p.d_row, full, "s={s} n={n} k={k} k1={k1} {metric:?}");
            }
        }
    }
}

#[test]
fn collapsed_states_match_on_the_three_two_code() {
    let c = code(3, 2, 1, 1);
    let p = row_distance_profile(&c.trellis().unwrap(), 3, Metric::SumRank, &budget()).unwrap();
    let full = common::full_state_profile(c.field(), c.g0(), c.g1(), 3, Metric::SumRank);
    assert_eq!(p.d_row, full);
}

#[test]
fn odd_characteristic_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..6 {
        let f = ExtField::new(3, 2, None).unwrap();
        let (g0, g1) = common::random_memory_one(&mut rng, &f, 2, 1, 1);
        let mut g1b = g1.clone();
        // Rank-one G1 would leave every order empty for k = 1.
        g1b.set(0, 0, Felt::ZERO);
        g1b.set(0, 1, Felt::ZERO);
        for g1 in [g1, g1b] {
            let t = TrellisCode::new(&f, &g0, &g1).unwrap();
            let p = row_distance_profile(&t, 3, Metric::SumRank, &budget()).unwrap();
            for l in 1..=3 {
                let bf =
                    brute_force_row_distance(&t, l, Metric::SumRank, DEFAULT_PATH_LIMIT).unwrap();
                assert_eq!(bf, p.order(l));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profile_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s, n, k, k1) = small_shape(&mut rng);
        let f = ExtField::new(2, s, None).unwrap();
        let (g0, g1) = common::random_memory_one(&mut rng, &f, n, k, k1);
        let t = TrellisCode::new(&f, &g0, &g1).unwrap();
        let cmp = compare_hamming(&t, 4, &budget()).unwrap();
        prop_assert!(cmp.holds(), "{:?}", cmp.violations);
        for p in [&cmp.sum_rank, &cmp.hamming] {
            if let Some(d) = p.d_free {
                prop_assert!(p.d_row.iter().flatten().all(|&x| d <= x));
            }
            if p.status == FreeDistanceStatus::Certified {
                prop_assert!(!p.zero_weight_cycle);
                prop_assert!(p.d_free.is_some());
            }
        }
    }
}
