#![allow(dead_code)]

use pumgab::distance::Metric;
use pumgab::{ExtField, Felt, MatExt};
use rand::Rng;

pub fn random_elem(rng: &mut impl Rng, field: &ExtField) -> Felt {
    Felt::from_raw(rng.gen_range(0..field.order()))
}

pub fn random_vec(rng: &mut impl Rng, field: &ExtField, n: usize) -> Vec<Felt> {
    (0..n).map(|_| random_elem(rng, field)).collect()
}

pub fn random_matrix(rng: &mut impl Rng, field: &ExtField, rows: usize, cols: usize) -> MatExt {
    let data = (0..rows).map(|_| random_vec(rng, field, cols)).collect();
    MatExt::from_rows(data, cols).unwrap()
}

/// Rejection-samples a `rows x cols` matrix of the given rank.
pub fn random_matrix_of_rank(
    rng: &mut impl Rng,
    field: &ExtField,
    rows: usize,
    cols: usize,
    rank: usize,
) -> MatExt {
    loop {
        let m = if rank == rows {
            random_matrix(rng, field, rows, cols)
        } else {
            // Product of a rows x rank and a rank x cols matrix.
            let a = random_matrix(rng, field, rows, rank);
            let b = random_matrix(rng, field, rank, cols);
            a.mul(field, &b).unwrap()
        };
        if m.rank(field) == rank {
            return m;
        }
    }
}

/// `(G0, G1)` with `rank G0 = k` and `rank G1 = k1`.
pub fn random_memory_one(
    rng: &mut impl Rng,
    field: &ExtField,
    n: usize,
    k: usize,
    k1: usize,
) -> (MatExt, MatExt) {
    (
        random_matrix_of_rank(rng, field, k, n, k),
        random_matrix_of_rank(rng, field, k, n, k1),
    )
}

fn message(mut idx: u64, q: u64, k: usize) -> Vec<Felt> {
    (0..k)
        .map(|_| {
            let d = idx % q;
            idx /= q;
            Felt::from_raw(d)
        })
        .collect()
}

/// Min-sum search whose state is the full previous information block.
/// Returns `d_l` for `l = 1..=max_order`.
pub fn full_state_profile(
    field: &ExtField,
    g0: &MatExt,
    g1: &MatExt,
    max_order: usize,
    metric: Metric,
) -> Vec<Option<u32>> {
    let q = field.order();
    let k = g0.rows();
    let count = (q as usize).pow(k as u32);
    let msgs: Vec<Vec<Felt>> = (0..count as u64).map(|i| message(i, q, k)).collect();
    let x0: Vec<Vec<Felt>> = msgs.iter().map(|u| g0.vec_mul(field, u).unwrap()).collect();
    let x1: Vec<Vec<Felt>> = msgs.iter().map(|u| g1.vec_mul(field, u).unwrap()).collect();
    let ends: Vec<bool> = x1.iter().map(|v| v.iter().all(|x| x.is_zero())).collect();

    // Weight of every (previous, current) pair, computed once.
    let mut wt = vec![0u32; count * count];
    for p in 0..count {
        for c in 1..count {
            let block: Vec<Felt> = x0[c]
                .iter()
                .zip(&x1[p])
                .map(|(&a, &b)| field.add(a, b))
                .collect();
            wt[p * count + c] = metric.block_weight(field, &block);
        }
    }

    let inf = u32::MAX;
    let mut cost = vec![inf; count];
    cost[0] = 0;
    let mut out = Vec::new();
    for _ in 0..max_order {
        let mut next = vec![inf; count];
        for p in 0..count {
            if cost[p] == inf {
                continue;
            }
            for c in 1..count {
                next[c] = next[c].min(cost[p] + wt[p * count + c]);
            }
        }
        cost = next;
        out.push(
            (1..count)
                .filter(|&u| ends[u] && cost[u] != inf)
                .map(|u| cost[u])
                .min(),
        );
    }
    out
}

/// Frobenius exponent `i` with `b^{q^i} = x`, if any.
pub fn conjugate_exponent(field: &ExtField, b: Felt, x: Felt) -> Option<u64> {
    (0..field.degree() as u64).find(|&i| field.frobenius(b, i) == x)
}
