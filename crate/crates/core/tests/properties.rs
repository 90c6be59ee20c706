mod common;

use proptest::prelude::*;
use pumgab::matrix::{frobenius_matrix, hamming_norm, rank_norm, sum_rank_distance};
use pumgab::{BlockSeq, ExtField, Felt, MatExt};

const FIELDS: &[(u32, usize)] = &[
    (2, 1),
    (2, 4),
    (2, 6),
    (2, 12),
    (3, 3),
    (5, 2),
    (7, 2),
    (3, 1),
];

fn field() -> impl Strategy<Value = ExtField> {
    prop::sample::select(FIELDS).prop_map(|(q, s)| ExtField::new(q, s, None).unwrap())
}

fn elem(f: &ExtField) -> impl Strategy<Value = Felt> {
    (0..f.order()).prop_map(Felt::from_raw)
}

fn field_and_elems(count: usize) -> impl Strategy<Value = (ExtField, Vec<Felt>)> {
    field().prop_flat_map(move |f| {
        let e = prop::collection::vec(elem(&f), count);
        (Just(f), e)
    })
}

fn field_and_vec(max_len: usize) -> impl Strategy<Value = (ExtField, Vec<Felt>)> {
    field().prop_flat_map(move |f| {
        let e = prop::collection::vec(elem(&f), 1..=max_len);
        (Just(f), e)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms((f, e) in field_and_elems(3)) {
        let (a, b, c) = (e[0], e[1], e[2]);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, Felt::ONE), a);
        prop_assert!(f.contains(f.mul(a, b)));
    }

    #[test]
    fn inverses((f, e) in field_and_elems(1)) {
        let a = e[0];
        if a.is_zero() {
            prop_assert!(f.inv(a).is_err());
        } else {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), Felt::ONE);
            // Lagrange: a^(Q-1) = 1
            prop_assert_eq!(f.pow(a, f.order() - 1), Felt::ONE);
        }
    }

    #[test]
    fn frobenius_is_a_power_map((f, e) in field_and_elems(2), i in 0u64..30) {
        let (a, b) = (e[0], e[1]);
        let q = f.characteristic() as u64;
        let qi = (0..i % f.degree() as u64).fold(1u64, |acc, _| acc * q);
        prop_assert_eq!(f.frobenius(a, i), f.pow(a, qi));
        prop_assert_eq!(f.frobenius(f.add(a, b), i), f.add(f.frobenius(a, i), f.frobenius(b, i)));
        prop_assert_eq!(f.frobenius(f.mul(a, b), i), f.mul(f.frobenius(a, i), f.frobenius(b, i)));
        prop_assert_eq!(f.frobenius(a, f.degree() as u64), a);
    }

    #[test]
    fn expansion_round_trips((f, v) in field_and_vec(8)) {
        let m = f.expand(&v, None).unwrap();
        prop_assert_eq!(m.rows(), f.degree());
        prop_assert_eq!(f.reconstruct(&m, None).unwrap(), v.clone());
        let nb = f.find_normal_element().unwrap().basis(&f);
        let m = f.expand(&v, Some(&nb)).unwrap();
        prop_assert_eq!(f.reconstruct(&m, Some(&nb)).unwrap(), v);
    }

    #[test]
    fn rank_norm_is_basis_invariant((f, v) in field_and_vec(8)) {
        let r = rank_norm(&f, &v);
        prop_assert_eq!(r, f.expand(&v, None).unwrap().rank());
        let nb = f.find_normal_element().unwrap().basis(&f);
        prop_assert_eq!(r, f.expand(&v, Some(&nb)).unwrap().rank());
        prop_assert!(r <= v.len().min(f.degree()));
        prop_assert!(r <= hamming_norm(&v));
    }

    #[test]
    fn rank_norm_under_scaling((f, v) in field_and_vec(8), lambda in 1u64..u64::MAX) {
        let lambda = Felt::from_raw(1 + lambda % (f.order() - 1).max(1));
        prop_assume!(f.contains(lambda) && !lambda.is_zero());
        let scaled: Vec<Felt> = v.iter().map(|&x| f.mul(lambda, x)).collect();
        prop_assert_eq!(rank_norm(&f, &scaled), rank_norm(&f, &v));
        let conj: Vec<Felt> = v.iter().map(|&x| f.frobenius(x, 1)).collect();
        prop_assert_eq!(rank_norm(&f, &conj), rank_norm(&f, &v));
    }

    #[test]
    fn sum_rank_metric_axioms(
        (f, flat) in field_and_elems(36),
        n in 1usize..=4,
    ) {
        let len = 36 / (3 * n);
        let seq = |off: usize| {
            let blocks = (0..len)
                .map(|j| flat[off + j * n..off + (j + 1) * n].to_vec())
                .collect();
            BlockSeq::new(n, blocks).unwrap()
        };
        let (a, b, c) = (seq(0), seq(len * n), seq(2 * len * n));
        let d = |x: &BlockSeq, y: &BlockSeq| sum_rank_distance(&f, x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        if a != b {
            prop_assert!(d(&a, &b) > 0);
        }
    }

    #[test]
    fn nullspace_is_the_kernel((f, flat) in field_and_elems(20), rows in 1usize..=4) {
        let cols = 20 / rows.max(1) / 2 + 1;
        let data = (0..rows).map(|i| flat[i * cols..(i + 1) * cols].to_vec()).collect();
        let m = MatExt::from_rows(data, cols).unwrap();
        let k = m.nullspace(&f);
        prop_assert_eq!(k.rows() + m.rank(&f), cols);
        prop_assert_eq!(k.rank(&f), k.rows());
        for x in k.row_iter() {
            prop_assert!(m.mul_vec(&f, x).unwrap().iter().all(|y| y.is_zero()));
        }
    }
}

fn independent_vector(f: &ExtField, n: usize, seed: u64) -> Vec<Felt> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let v = common::random_vec(&mut rng, f, n);
        if rank_norm(f, &v) == n {
            return v;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn frobenius_matrix_column_subsets_are_invertible(
        s in 2usize..=6,
        seed in any::<u64>(),
        mask in any::<u32>(),
    ) {
        let f = ExtField::new(2, s, None).unwrap();
        let n = s;
        let a = independent_vector(&f, n, seed);
        let cols: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        prop_assume!(!cols.is_empty());
        let m = cols.len();
        let v = frobenius_matrix(&f, &a, m);
        let sub = v.transpose();
        let rows: Vec<Vec<Felt>> = cols.iter().map(|&j| sub.row(j).to_vec()).collect();
        let square = MatExt::from_rows(rows, m).unwrap();
        prop_assert_eq!(square.rank(&f), m);
    }
}
