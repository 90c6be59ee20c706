//! Gabidulin block codes defined by a Frobenius parity-check matrix.

use rayon::prelude::*;

use crate::error::{shape, Error, Result};
use crate::field::{ExtField, Felt};
use crate::matrix::{frobenius_matrix, rank_norm, MatExt};

/// Default cap on the number of codewords a brute-force search may visit.
pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1 << 24;

/// An `(n, k)` Gabidulin code with parity check `V_{n-k}(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GabidulinCode {
    field: ExtField,
    n: usize,
    k: usize,
    h: Vec<Felt>,
    parity_check: MatExt,
    generator: MatExt,
}

impl GabidulinCode {
    /// Requires `0 < k < n <= s` and `h` linearly independent over `F_q`.
    /// The generator is a basis of the parity-check kernel.
    pub fn new(field: &ExtField, h: Vec<Felt>, k: usize) -> Result<Self> {
        let n = h.len();
        let s = field.degree();
        if n > s {
            return Err(Error::InvalidParameters(format!(
                "code length n = {n} exceeds extension degree s = {s}"
            )));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidParameters(format!(
                "dimension k = {k} must satisfy 0 < k < n = {n}"
            )));
        }
        if let Some(&bad) = h.iter().find(|&&x| !field.contains(x)) {
            return Err(Error::NotInField {
                value: bad.to_int(),
                order: field.order(),
            });
        }
        let rank = rank_norm(field, &h);
        if rank != n {
            return Err(Error::DependentDefiningVector { rank, needed: n });
        }
        let parity_check = frobenius_matrix(field, &h, n - k);
        let generator = parity_check.nullspace(field);
        debug_assert_eq!(generator.rows(), k);
        Ok(GabidulinCode {
            field: field.clone(),
            n,
            k,
            h,
            parity_check,
            generator,
        })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn defining_vector(&self) -> &[Felt] {
        &self.h
    }

    pub fn parity_check(&self) -> &MatExt {
        &self.parity_check
    }

    pub fn generator(&self) -> &MatExt {
        &self.generator
    }

    /// Designed minimum rank distance `n - k + 1`.
    pub fn designed_distance(&self) -> usize {
        self.n - self.k + 1
    }

    pub fn encode(&self, u: &[Felt]) -> Result<Vec<Felt>> {
        if u.len() != self.k {
            return Err(shape("message length", self.k, u.len()));
        }
        self.generator.vec_mul(&self.field, u)
    }

    pub fn syndrome(&self, c: &[Felt]) -> Result<Vec<Felt>> {
        self.parity_check.mul_vec(&self.field, c)
    }

    pub fn is_codeword(&self, c: &[Felt]) -> Result<bool> {
        Ok(self.syndrome(c)?.iter().all(|x| x.is_zero()))
    }

    /// Exact minimum rank distance by enumerating every nonzero codeword.
    pub fn min_rank_distance(&self, limit: u128) -> Result<usize> {
        min_rank_distance_of(&self.field, &self.generator, limit).map(|(d, _)| d)
    }

    pub fn verify_mrd(&self, limit: u128) -> Result<MrdReport> {
        verify_mrd_generator(&self.field, &self.generator, limit)
    }
}

/// Outcome of an exhaustive MRD check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrdReport {
    pub n: usize,
    pub k: usize,
    pub singleton_bound: usize,
    pub min_distance: usize,
    pub is_mrd: bool,
    /// A nonzero codeword of minimum rank norm.
    pub witness: Vec<Felt>,
}

/// Minimum rank norm over the nonzero codewords spanned by the rows of
/// `generator`, together with the first codeword attaining it.
pub fn min_rank_distance_of(
    field: &ExtField,
    generator: &MatExt,
    limit: u128,
) -> Result<(usize, Vec<Felt>)> {
    let k = generator.rows();
    let q = field.order() as u128;
    let count =
        q.checked_pow(k as u32)
            .filter(|&c| c <= limit)
            .ok_or(Error::EnumerationTooLarge {
                required: q.saturating_pow(k as u32),
                limit,
            })?;
    let message = |mut idx: u64| -> Vec<Felt> {
        (0..k)
            .map(|_| {
                let d = idx % field.order();
                idx /= field.order();
                Felt::from_raw(d)
            })
            .collect()
    };
    let best = (1..count as u64)
        .into_par_iter()
        .filter_map(|idx| {
            let c = generator.vec_mul(field, &message(idx)).ok()?;
            let r = rank_norm(field, &c);
            (r > 0).then_some((r, idx))
        })
        .min();
    match best {
        Some((r, idx)) => Ok((r, generator.vec_mul(field, &message(idx))?)),
        None => Err(Error::InvalidParameters(
            "generator spans no nonzero codeword".into(),
        )),
    }
}

/// MRD check for the code spanned by an arbitrary generator; `k` is taken
/// as the generator rank.
pub fn verify_mrd_generator(
    field: &ExtField,
    generator: &MatExt,
    limit: u128,
) -> Result<MrdReport> {
    let n = generator.cols();
    let k = generator.rank(field);
    let (min_distance, witness) = min_rank_distance_of(field, generator, limit)?;
    let singleton_bound = n - k + 1;
    Ok(MrdReport {
        n,
        k,
        singleton_bound,
        min_distance,
        is_mrd: min_distance == singleton_bound,
        witness,
    })
}
