//! Extended row distances, free distance and slope of memory-one codes.
//!
//! An order-`l` path has information blocks `u_0, ..., u_{l-1}`, all
//! nonzero, zero input afterwards, and must satisfy `u_{l-1} G1 = 0` so the
//! block after the path is zero as well. Its weight is the sum over
//! `c_j = u_j G0 + u_{j-1} G1`, `j < l`, under the chosen metric.
//!
//! The trellis search does not keep the full memory `u_{j-1}` as its state.
//! Branch weights and the end-of-path condition only see `u_{j-1}` through
//! `u_{j-1} G1`, so states are the points of the row space of `G1`. This
//! takes the state count from `Q^k` down to `Q^{rank G1}`, `Q = q^s`. The
//! all-zero start state is never revisited because every input is nonzero.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{shape, Error, Result};
use crate::field::{ExtField, Felt};
use crate::matrix::{hamming_norm, rank_norm, MatExt};
use crate::pum::{rate_check, PumCode, PumParams, RateClass};

/// Default cap on enumerated paths for [`brute_force_row_distance`].
pub const DEFAULT_PATH_LIMIT: u128 = 1 << 26;

const INF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    SumRank,
    Hamming,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::SumRank => "sum_rank",
            Metric::Hamming => "hamming",
        }
    }

    pub fn block_weight(self, field: &ExtField, block: &[Felt]) -> u32 {
        match self {
            Metric::SumRank => rank_norm(field, block) as u32,
            Metric::Hamming => hamming_norm(block) as u32,
        }
    }
}

/// A memory-one encoder `c_j = u_j G0 + u_{j-1} G1`.
#[derive(Clone, Copy, Debug)]
pub struct TrellisCode<'a> {
    field: &'a ExtField,
    g0: &'a MatExt,
    g1: &'a MatExt,
}

impl<'a> TrellisCode<'a> {
    pub fn new(field: &'a ExtField, g0: &'a MatExt, g1: &'a MatExt) -> Result<Self> {
        if g0.rows() == 0 || g0.cols() == 0 {
            return Err(Error::InvalidParameters("G0 must be non-empty".into()));
        }
        if (g0.rows(), g0.cols()) != (g1.rows(), g1.cols()) {
            return Err(shape(
                "generator pair",
                format!("{}x{}", g0.rows(), g0.cols()),
                format!("{}x{}", g1.rows(), g1.cols()),
            ));
        }
        Ok(TrellisCode { field, g0, g1 })
    }

    pub fn field(&self) -> &'a ExtField {
        self.field
    }

    pub fn g0(&self) -> &'a MatExt {
        self.g0
    }

    pub fn g1(&self) -> &'a MatExt {
        self.g1
    }

    pub fn info_len(&self) -> usize {
        self.g0.rows()
    }

    pub fn block_len(&self) -> usize {
        self.g0.cols()
    }
}

impl PumCode {
    pub fn trellis(&self) -> Result<TrellisCode<'_>> {
        TrellisCode::new(self.field(), self.g0(), self.g1())
    }
}

/// Size limits for the trellis search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpBudget {
    /// Number of state classes `Q^{rank G1}`.
    pub max_states: u128,
    /// Number of information blocks `Q^k` tabulated per branch.
    pub max_inputs: u128,
    /// Branches examined per layer, states times inputs.
    pub max_branches: u128,
}

impl Default for DpBudget {
    fn default() -> Self {
        DpBudget {
            max_states: 1 << 20,
            max_inputs: 1 << 20,
            max_branches: 1 << 28,
        }
    }
}

impl DpBudget {
    /// Same limits with the state cap replaced.
    pub fn with_max_states(self, max_states: u128) -> Self {
        DpBudget { max_states, ..self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeDistanceStatus {
    /// No path longer than the search horizon can be lighter.
    Certified,
    /// The value is the minimum over computed orders only.
    LowerBoundOnly,
}

impl FreeDistanceStatus {
    pub fn name(self) -> &'static str {
        match self {
            FreeDistanceStatus::Certified => "certified",
            FreeDistanceStatus::LowerBoundOnly => "lower_bound_only",
        }
    }
}

/// Extended row distances `d_l` for `l = 1..=max_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub metric: Metric,
    pub max_order: usize,
    /// `d_row[l - 1]`, `None` when no order-`l` path exists.
    pub d_row: Vec<Option<u32>>,
    /// Per order: every minimizing path has some all-zero codeword block.
    pub zero_block_minimizer: Vec<bool>,
    pub d_free: Option<u32>,
    pub status: FreeDistanceStatus,
    /// First order after which the free distance was certified.
    pub certified_at: Option<usize>,
    /// Least accumulated weight of any unfinished path after the last
    /// layer; `None` when no path survives. Uncertified, the true free
    /// distance lies between `min(d_free, frontier)` and `d_free`.
    pub frontier: Option<u32>,
    /// Whether some cycle of nonzero inputs produces only zero blocks.
    pub zero_weight_cycle: bool,
}

impl DistanceProfile {
    pub fn order(&self, l: usize) -> Option<u32> {
        self.d_row.get(l.checked_sub(1)?).copied().flatten()
    }
}

/// Tabulated branch data for the collapsed trellis.
struct CollapsedTrellis {
    n: usize,
    inputs: usize,
    states: usize,
    /// `u G0` for every input index, flattened.
    x0: Vec<Felt>,
    /// State index of `u G1` for every input index.
    next: Vec<u32>,
    /// Representative vector of every state, flattened.
    w: Vec<Felt>,
}

fn checked_power(base: u64, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

fn digits(mut idx: u64, base: u64, len: usize) -> Vec<Felt> {
    (0..len)
        .map(|_| {
            let d = idx % base;
            idx /= base;
            Felt::from_raw(d)
        })
        .collect()
}

impl CollapsedTrellis {
    fn new(code: &TrellisCode<'_>, budget: &DpBudget) -> Result<Self> {
        let field = code.field;
        let order = field.order();
        let (k, n) = (code.info_len(), code.block_len());
        let (g1_rref, pivots) = code.g1.rref(field);
        let rho = pivots.len();

        let states = checked_power(order, rho);
        if states.saturating_add(1) > budget.max_states {
            return Err(Error::BudgetExceeded {
                what: "state classes",
                required: states.saturating_add(1),
                limit: budget.max_states,
            });
        }
        let inputs = checked_power(order, k);
        if inputs > budget.max_inputs {
            return Err(Error::BudgetExceeded {
                what: "information blocks per branch",
                required: inputs,
                limit: budget.max_inputs,
            });
        }
        let branches = states.saturating_mul(inputs);
        if branches > budget.max_branches {
            return Err(Error::BudgetExceeded {
                what: "branches per layer",
                required: branches,
                limit: budget.max_branches,
            });
        }
        let (states, inputs) = (states as usize, inputs as usize);

        let mut x0 = Vec::with_capacity(inputs * n);
        let mut next = Vec::with_capacity(inputs);
        for idx in 0..inputs {
            let u = digits(idx as u64, order, k);
            x0.extend(code.g0.vec_mul(field, &u)?);
            let image = code.g1.vec_mul(field, &u)?;
            // Coordinates in the reduced basis are the entries at the pivots.
            let state = pivots
                .iter()
                .rev()
                .fold(0u64, |acc, &p| acc * order + image[p].to_int());
            next.push(state as u32);
        }

        let basis = g1_rref.slice_rows(0, rho);
        let mut w = Vec::with_capacity(states * n);
        for idx in 0..states {
            let coords = digits(idx as u64, order, rho);
            if rho == 0 {
                w.extend(std::iter::repeat_n(Felt::ZERO, n));
            } else {
                w.extend(basis.vec_mul(field, &coords)?);
            }
        }
        Ok(CollapsedTrellis {
            n,
            inputs,
            states,
            x0,
            next,
            w,
        })
    }

    fn branch(&self, field: &ExtField, state: usize, input: usize, buf: &mut [Felt]) {
        let x = &self.x0[input * self.n..(input + 1) * self.n];
        let w = &self.w[state * self.n..(state + 1) * self.n];
        for ((b, &a), &c) in buf.iter_mut().zip(x).zip(w) {
            *b = field.add(a, c);
        }
    }

    /// One layer of min-sum relaxation for both the unconstrained costs and
    /// the costs of paths whose blocks are all nonzero.
    fn step(
        &self,
        field: &ExtField,
        metric: Metric,
        any: &[u32],
        nonzero: &[u32],
    ) -> (Vec<u32>, Vec<u32>) {
        let s = self.states;
        let fresh = || (vec![INF; s], vec![INF; s], vec![Felt::ZERO; self.n]);
        let (a, b, _) = (0..s)
            .into_par_iter()
            .filter(|&st| any[st] != INF || nonzero[st] != INF)
            .fold(fresh, |(mut na, mut nz, mut buf), st| {
                for u in 1..self.inputs {
                    self.branch(field, st, u, &mut buf);
                    let wt = metric.block_weight(field, &buf);
                    let to = self.next[u] as usize;
                    if any[st] != INF {
                        na[to] = na[to].min(any[st] + wt);
                    }
                    if wt > 0 && nonzero[st] != INF {
                        nz[to] = nz[to].min(nonzero[st] + wt);
                    }
                }
                (na, nz, buf)
            })
            .reduce(fresh, |(mut a1, mut b1, buf), (a2, b2, _)| {
                for (x, y) in a1.iter_mut().zip(a2) {
                    *x = (*x).min(y);
                }
                for (x, y) in b1.iter_mut().zip(b2) {
                    *x = (*x).min(y);
                }
                (a1, b1, buf)
            });
        (a, b)
    }

    /// Detects a cycle of zero-weight branches between state classes.
    fn has_zero_weight_cycle(&self, field: &ExtField, metric: Metric) -> bool {
        let edges: Vec<Vec<u32>> = (0..self.states)
            .into_par_iter()
            .map(|st| {
                let mut buf = vec![Felt::ZERO; self.n];
                let mut out = Vec::new();
                for u in 1..self.inputs {
                    self.branch(field, st, u, &mut buf);
                    if metric.block_weight(field, &buf) == 0 {
                        out.push(self.next[u]);
                    }
                }
                out
            })
            .collect();
        // Iterative three-colour depth-first search.
        let mut colour = vec![0u8; self.states];
        for root in 0..self.states {
            if colour[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = 1;
            while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
                if *pos < edges[node].len() {
                    let nb = edges[node][*pos] as usize;
                    *pos += 1;
                    match colour[nb] {
                        0 => {
                            colour[nb] = 1;
                            stack.push((nb, 0));
                        }
                        1 => return true,
                        _ => {}
                    }
                } else {
                    colour[node] = 2;
                    stack.pop();
                }
            }
        }
        false
    }
}

/// Exact `d_l` for `l = 1..=max_order` by layered min-sum search over the
/// collapsed trellis.
pub fn row_distance_profile(
    code: &TrellisCode<'_>,
    max_order: usize,
    metric: Metric,
    budget: &DpBudget,
) -> Result<DistanceProfile> {
    if max_order == 0 {
        return Err(Error::InvalidOrder);
    }
    let field = code.field;
    let trellis = CollapsedTrellis::new(code, budget)?;
    let zero_weight_cycle = trellis.has_zero_weight_cycle(field, metric);

    // The start state behaves like the zero class for outgoing branches.
    let mut any = vec![INF; trellis.states];
    any[0] = 0;
    let mut nonzero = any.clone();

    let mut d_row = Vec::with_capacity(max_order);
    let mut zero_block_minimizer = Vec::with_capacity(max_order);
    let mut best: Option<u32> = None;
    let mut certified_at = None;
    let mut frontier = None;
    for order in 1..=max_order {
        (any, nonzero) = trellis.step(field, metric, &any, &nonzero);
        let d = (any[0] != INF).then_some(any[0]);
        let d_nz = (nonzero[0] != INF).then_some(nonzero[0]);
        d_row.push(d);
        zero_block_minimizer.push(d.is_some() && d_nz != d);
        if let Some(d) = d {
            best = Some(best.map_or(d, |b| b.min(d)));
        }
        let min_live = any.iter().copied().min().filter(|&m| m != INF);
        frontier = min_live;
        if certified_at.is_none() && !zero_weight_cycle {
            let done = match (best, min_live) {
                (Some(b), Some(m)) => m >= b,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if done {
                certified_at = Some(order);
            }
        }
    }
    Ok(DistanceProfile {
        metric,
        max_order,
        d_row,
        zero_block_minimizer,
        d_free: best,
        status: if certified_at.is_some() {
            FreeDistanceStatus::Certified
        } else {
            FreeDistanceStatus::LowerBoundOnly
        },
        certified_at,
        frontier,
        zero_weight_cycle,
    })
}

/// `d_l` by enumerating every qualifying information path. Independent of
/// the state collapse used by [`row_distance_profile`].
pub fn brute_force_row_distance(
    code: &TrellisCode<'_>,
    order: usize,
    metric: Metric,
    limit: u128,
) -> Result<Option<u32>> {
    if order == 0 {
        return Err(Error::InvalidOrder);
    }
    let field = code.field;
    let q = field.order();
    let (k, n) = (code.info_len(), code.block_len());
    // Left kernel of G1: the admissible last inputs.
    let kernel = code.g1.transpose().nullspace(field);
    let paths = checked_power(q, k)
        .saturating_pow(order as u32 - 1)
        .saturating_mul(checked_power(q, kernel.rows()));
    if paths > limit {
        return Err(Error::EnumerationTooLarge {
            required: paths,
            limit,
        });
    }
    let inputs = checked_power(q, k) as u64;
    let all: Vec<Vec<Felt>> = (0..inputs).map(|i| digits(i, q, k)).collect();
    let image0: Vec<Vec<Felt>> = all
        .iter()
        .map(|u| code.g0.vec_mul(field, u))
        .collect::<Result<_>>()?;
    let image1: Vec<Vec<Felt>> = all
        .iter()
        .map(|u| code.g1.vec_mul(field, u))
        .collect::<Result<_>>()?;
    let last: Vec<usize> = (1..checked_power(q, kernel.rows()) as u64)
        .map(|i| {
            let coeffs = digits(i, q, kernel.rows());
            let u = kernel.vec_mul(field, &coeffs).expect("kernel shape");
            u.iter().rev().fold(0u64, |acc, x| acc * q + x.to_int()) as usize
        })
        .collect();

    struct Search<'s> {
        field: &'s ExtField,
        metric: Metric,
        order: usize,
        n: usize,
        image0: &'s [Vec<Felt>],
        image1: &'s [Vec<Felt>],
        last: &'s [usize],
        best: u32,
    }

    impl Search<'_> {
        fn block_weight(&self, cur: usize, prev: usize) -> u32 {
            let c: Vec<Felt> = (0..self.n)
                .map(|j| self.field.add(self.image0[cur][j], self.image1[prev][j]))
                .collect();
            self.metric.block_weight(self.field, &c)
        }

        fn go(&mut self, depth: usize, prev: usize, acc: u32) {
            if acc >= self.best {
                return;
            }
            if depth + 1 == self.order {
                for i in 0..self.last.len() {
                    let u = self.last[i];
                    let total = acc + self.block_weight(u, prev);
                    self.best = self.best.min(total);
                }
                return;
            }
            for u in 1..self.image0.len() {
                let wt = self.block_weight(u, prev);
                self.go(depth + 1, u, acc + wt);
            }
        }
    }

    let mut search = Search {
        field,
        metric,
        order,
        n,
        image0: &image0,
        image1: &image1,
        last: &last,
        best: INF,
    };
    // Input index 0 is the zero block, so its G1 image is zero.
    search.go(0, 0, 0);
    Ok((search.best != INF).then_some(search.best))
}

/// The free distance carried by a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeDistance {
    pub value: u32,
    pub status: FreeDistanceStatus,
}

pub fn free_rank_distance(profile: &DistanceProfile) -> Result<FreeDistance> {
    profile
        .d_free
        .map(|value| FreeDistance {
            value,
            status: profile.status,
        })
        .ok_or(Error::EmptyProfile)
}

/// Difference quotient `(d_end - d_start) / (end - start)`; a finite-window
/// stand-in for the asymptotic slope.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlopeEstimate {
    pub start: usize,
    pub end: usize,
    pub value: Ratio<i64>,
}

pub fn slope_estimate(
    profile: &DistanceProfile,
    start: usize,
    end: usize,
) -> Result<SlopeEstimate> {
    let bad = |reason: &str| Error::InvalidWindow {
        start,
        end,
        reason: reason.to_string(),
    };
    if start == 0 || end <= start {
        return Err(bad("need 1 <= start < end"));
    }
    if end > profile.max_order {
        return Err(bad("window exceeds the computed orders"));
    }
    let (Some(a), Some(b)) = (profile.order(start), profile.order(end)) else {
        return Err(bad("an endpoint order has no paths"));
    };
    Ok(SlopeEstimate {
        start,
        end,
        value: Ratio::new(b as i64 - a as i64, (end - start) as i64),
    })
}

/// Largest `beta` with `d_l >= alpha l + beta` over every computed order.
pub fn intercept_estimate(profile: &DistanceProfile, slope: Ratio<i64>) -> Option<Ratio<i64>> {
    profile
        .d_row
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| Ratio::from_integer(d as i64) - slope * (i as i64 + 1)))
        .min()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpperBounds {
    pub class: RateClass,
    pub free_distance: usize,
    pub slope: usize,
}

/// Free distance and slope upper bounds: `2n - k + 1` for unit memory,
/// `n - k + k1 + 1` for partial unit memory, slope `n - k` for both.
pub fn upper_bounds(params: &PumParams) -> Result<UpperBounds> {
    let check = rate_check(params);
    let PumParams { n, k, k1, .. } = *params;
    let free_distance = match check.class {
        RateClass::UnitMemory => 2 * n - k + 1,
        RateClass::PartialUnitMemory => n - k + k1 + 1,
        RateClass::Invalid => return Err(Error::RateRestriction(check.explanation)),
    };
    Ok(UpperBounds {
        class: check.class,
        free_distance,
        slope: n - k,
    })
}

/// Guaranteed `d_l` of the chain construction with `mH = 1` and rate at
/// least 1/2: `2(n-k) + 1` at `l = 1`, else `ceil((l+1)/2) (n-k+1)`.
pub fn construction_lower_bound(order: usize, n: usize, k: usize) -> usize {
    assert!(order >= 1, "orders start at 1");
    let r = n - k;
    if order == 1 {
        2 * r + 1
    } else {
        (order + 1).div_ceil(2) * (r + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCheck {
    /// Partial unit memory, `mH = 1` and rate at least 1/2.
    pub applicable: bool,
    /// Per order: bound met (with equality at order 1); `None` if empty.
    pub per_order: Vec<Option<bool>>,
}

impl ConstructionCheck {
    pub fn all_met(&self) -> bool {
        self.per_order.iter().all(|x| x.unwrap_or(true))
    }
}

pub fn construction_bound_check(
    profile: &DistanceProfile,
    params: &PumParams,
) -> ConstructionCheck {
    let applicable = rate_check(params).class == RateClass::PartialUnitMemory
        && params.mh == 1
        && 2 * params.k >= params.n;
    let per_order = profile
        .d_row
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.map(|d| {
                let bound = construction_lower_bound(i + 1, params.n, params.k) as u32;
                if i == 0 {
                    d == bound
                } else {
                    d >= bound
                }
            })
        })
        .collect();
    ConstructionCheck {
        applicable,
        per_order,
    }
}

/// Sum-rank and Hamming profiles side by side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingComparison {
    pub sum_rank: DistanceProfile,
    pub hamming: DistanceProfile,
    /// Orders where the sum-rank value exceeds the Hamming value, or where
    /// exactly one of the two is empty.
    pub violations: Vec<usize>,
    pub free_distance_dominated: bool,
}

impl HammingComparison {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.free_distance_dominated
    }
}

pub fn compare_hamming(
    code: &TrellisCode<'_>,
    max_order: usize,
    budget: &DpBudget,
) -> Result<HammingComparison> {
    let sum_rank = row_distance_profile(code, max_order, Metric::SumRank, budget)?;
    let hamming = row_distance_profile(code, max_order, Metric::Hamming, budget)?;
    let violations = sum_rank
        .d_row
        .iter()
        .zip(&hamming.d_row)
        .enumerate()
        .filter(|(_, pair)| match pair {
            (Some(r), Some(h)) => r > h,
            (None, None) => false,
            _ => true,
        })
        .map(|(i, _)| i + 1)
        .collect();
    let free_distance_dominated = match (sum_rank.d_free, hamming.d_free) {
        (Some(r), Some(h)) => r <= h,
        (None, None) => true,
        _ => false,
    };
    Ok(HammingComparison {
        sum_rank,
        hamming,
        violations,
        free_distance_dominated,
    })
}
