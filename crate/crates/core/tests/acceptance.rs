//! Acceptance criteria, one line each. Runs without the test harness so
//! the lines are always printed; exits nonzero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pumgab::distance::{
    brute_force_row_distance, compare_hamming, construction_lower_bound, free_rank_distance,
    row_distance_profile, slope_estimate, DpBudget, FreeDistanceStatus, Metric, TrellisCode,
    DEFAULT_PATH_LIMIT,
};
use pumgab::gabidulin::{GabidulinCode, DEFAULT_ENUMERATION_LIMIT};
use pumgab::matrix::{hamming_norm, rank_norm, sum_rank_distance};
use pumgab::pum::{build_code, PumCode, PumParams};
use pumgab::{BlockSeq, ExtField, MatExt};

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn build(q: u32, s: usize, n: usize, k: usize, k1: usize, mh: usize) -> PumCode {
    build_code(
        &ExtField::new(q, s, None).unwrap(),
        PumParams::new(n, k, k1, mh),
    )
    .unwrap()
}

fn example_reproduction() -> Outcome {
    let c = build(2, 12, 6, 4, 2, 1);
    let b = c.normal_element();
    let exps = |i: usize| -> Vec<u64> {
        c.defining_vector(i)
            .iter()
            .map(|&x| common::conjugate_exponent(c.field(), b, x).unwrap_or(u64::MAX))
            .collect()
    };
    let (e0, e1) = (exps(0), exps(1));
    let chain = c.chain_report();
    let passed = e0 == [0, 1, 4, 5, 8, 9]
        && e1 == [2, 3, 6, 7, 10, 11]
        && chain.conditions.len() == 4
        && chain.all_passed();
    outcome(
        passed,
        format!(
            "h0 exponents {e0:?}, h1 exponents {e1:?}, {}/{} chain checks pass",
            chain.conditions.iter().filter(|x| x.passed).count(),
            chain.conditions.len()
        ),
    )
}

fn mrd_brute_force() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    for (s, n, k) in [(2, 2, 1), (3, 3, 1), (3, 3, 2), (4, 4, 2)] {
        let f = ExtField::new(2, s, None).unwrap();
        let h = f.find_normal_element().unwrap().basis(&f)[..n].to_vec();
        let d = GabidulinCode::new(&f, h, k)
            .unwrap()
            .min_rank_distance(DEFAULT_ENUMERATION_LIMIT)
            .unwrap();
        passed &= d == n - k + 1;
        parts.push(format!("({n},{k}) over F_2^{s}: d={d}"));
    }
    outcome(passed, parts.join(", "))
}

fn three_two_distances() -> Outcome {
    let c = build(2, 6, 3, 2, 1, 1);
    let p = row_distance_profile(
        &c.trellis().unwrap(),
        8,
        Metric::SumRank,
        &DpBudget::default(),
    )
    .unwrap();
    let d1 = p.order(1) == Some(3);
    let lower = (2..=8).all(|l| {
        p.order(l).is_some_and(|d| {
            d as usize >= construction_lower_bound(l, 3, 2) && d as usize >= l.div_ceil(2) * 2
        })
    });
    let fd = free_rank_distance(&p).ok();
    let free = fd.is_some_and(|f| f.value == 3 && f.status == FreeDistanceStatus::Certified);
    let slope = slope_estimate(&p, 2, 8).map(|s| s.value).ok();
    let slope_ok = slope == Some(Ratio::from_integer(1));
    outcome(
        d1 && lower && free && slope_ok,
        format!(
            "d_row {:?}, d_free {:?}, slope[2,8] {}",
            p.d_row
                .iter()
                .map(|d| d.map_or(-1, |x| x as i64))
                .collect::<Vec<_>>(),
            fd.map(|f| (f.value, f.status.name())),
            slope.map_or("none".to_string(), |s| s.to_string())
        ),
    )
}

/// The randomized small codes shared by criteria 4 and 5.
fn random_codes() -> Vec<(ExtField, MatExt, MatExt)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..24)
        .map(|_| {
            let s = rng.gen_range(1..=3);
            let n = rng.gen_range(2..=3);
            // Mostly k = 2, k1 = 1: a full-rank G1 leaves every order empty.
            let k = if rng.gen_bool(0.75) { 2 } else { 1 };
            let k1 = if rng.gen_bool(0.8) { 1 } else { k };
            let f = ExtField::new(2, s, None).unwrap();
            let (g0, g1) = common::random_memory_one(&mut rng, &f, n, k, k1);
            (f, g0, g1)
        })
        .collect()
}

fn dp_oracle_equivalence(codes: &[(ExtField, MatExt, MatExt)]) -> Outcome {
    let mut mismatches = 0;
    let mut compared = 0;
    let mut empty = 0;
    for (f, g0, g1) in codes {
        let t = TrellisCode::new(f, g0, g1).unwrap();
        let p = row_distance_profile(&t, 4, Metric::SumRank, &DpBudget::default()).unwrap();
        for l in 1..=4 {
            let bf = brute_force_row_distance(&t, l, Metric::SumRank, DEFAULT_PATH_LIMIT).unwrap();
            compared += 1;
            empty += usize::from(bf.is_none());
            mismatches += usize::from(bf != p.order(l));
        }
    }
    outcome(
        mismatches == 0 && codes.len() >= 20,
        format!(
            "{} codes, {compared} orders compared ({empty} empty), {mismatches} mismatches",
            codes.len()
        ),
    )
}

fn hamming_domination(codes: &[(ExtField, MatExt, MatExt)]) -> Outcome {
    let c = build(2, 6, 3, 2, 1, 1);
    let mut violations = 0;
    let mut runs = 0;
    let t = c.trellis().unwrap();
    let mut traces = vec![t];
    traces.extend(
        codes
            .iter()
            .map(|(f, g0, g1)| TrellisCode::new(f, g0, g1).unwrap()),
    );
    for (i, t) in traces.iter().enumerate() {
        let l = if i == 0 { 6 } else { 4 };
        let cmp = compare_hamming(t, l, &DpBudget::default()).unwrap();
        violations += cmp.violations.len() + usize::from(!cmp.free_distance_dominated);
        runs += 1;
    }
    let f = ExtField::new(2, 6, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut block_violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let v = common::random_vec(&mut rng, &f, n);
        block_violations += usize::from(rank_norm(&f, &v) > hamming_norm(&v));
    }
    outcome(
        violations == 0 && block_violations == 0,
        format!("{runs} profile pairs, {violations} order violations, {block_violations} of 1000 block violations"),
    )
}

fn structural_exactness() -> Outcome {
    let sets = [
        (6, 3, 2, 1, 1),
        (12, 6, 4, 2, 1),
        (4, 2, 1, 1, 1),
        (12, 6, 3, 3, 1),
        (12, 4, 3, 2, 2),
        (20, 5, 4, 3, 3),
        (8, 4, 2, 2, 1),
        (12, 5, 3, 2, 1),
    ];
    let mut failures = Vec::new();
    for (s, n, k, k1, mh) in sets {
        let c = build(2, s, n, k, k1, mh);
        let checks_ok = c.structural_checks().iter().all(|x| x.passed);
        let mb = c.minimal_basic_report().unwrap();
        let mu_ok = mb.max_degree == Some(mh * (n - k));
        if !(checks_ok && mu_ok) {
            failures.push(format!("({n},{k}|{k1}) mH={mh}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} codes checked, failures: {failures:?}", sets.len()),
    )
}

fn metric_axioms() -> Outcome {
    let f = ExtField::new(2, 6, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(1..=5);
        let mut seq = || {
            BlockSeq::new(
                n,
                (0..len)
                    .map(|_| common::random_vec(&mut rng, &f, n))
                    .collect(),
            )
            .unwrap()
        };
        let (a, b, c) = (seq(), seq(), seq());
        let d = |x: &BlockSeq, y: &BlockSeq| sum_rank_distance(&f, x, y).unwrap();
        let ok = d(&a, &b) == d(&b, &a)
            && d(&a, &a) == 0
            && (a == b) == (d(&a, &b) == 0)
            && d(&a, &c) <= d(&a, &b) + d(&b, &c);
        violations += usize::from(!ok);
    }
    outcome(
        violations == 0,
        format!("10000 triples, {violations} violations"),
    )
}

fn main() {
    let codes = random_codes();
    let criteria: Vec<Criterion> = vec![
        (
            "(6,4|2) example reproduction",
            Duration::from_secs(10),
            Box::new(example_reproduction),
        ),
        (
            "MRD brute force",
            Duration::from_secs(30),
            Box::new(mrd_brute_force),
        ),
        (
            "(3,2|1) distances, free distance, slope",
            Duration::from_secs(60),
            Box::new(three_two_distances),
        ),
        (
            "trellis search equals brute force",
            Duration::from_secs(60),
            Box::new(|| dp_oracle_equivalence(&codes)),
        ),
        (
            "sum-rank dominated by Hamming",
            Duration::from_secs(60),
            Box::new(|| hamming_domination(&codes)),
        ),
        (
            "structural exactness",
            Duration::from_secs(60),
            Box::new(structural_exactness),
        ),
        (
            "sum-rank metric axioms",
            Duration::from_secs(60),
            Box::new(metric_axioms),
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let ok = out.passed && elapsed <= *limit;
        failed += usize::from(!ok);
        println!(
            "criterion {} {}: {} ({}; {:.2?} of {:?})",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed,
            limit
        );
    }
    println!(
        "criterion 8 asymptotic slope limit and decoding: EXCLUDED (out of scope; finite-window slope covered by criterion 3)"
    );
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all criteria passed");
}
