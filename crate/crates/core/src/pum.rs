//! (Partial) unit memory codes whose parity-check submatrices form a chain
//! of Gabidulin parity-check matrices.
//!
//! The semi-infinite parity-check matrix is banded with blocks
//! `H_0, ..., H_{mH}`, each `(n-k) x n`. The construction takes a normal
//! element `b`, lays out the defining vector `h0` on a strided set of its
//! conjugates and cuts `V_{(mH+1)(n-k)}(h0)` into the blocks, so that block
//! `i` is the Frobenius matrix of `h0^[i(n-k)]`. A memory-one generator
//! `(G0, G1)` is then solved from the orthogonality relations.

use crate::error::{shape, Error, Result};
use crate::field::{ExtField, Felt, NormalElement};
use crate::matrix::{frobenius_matrix, rank_norm, BlockSeq, MatExt};
use crate::polymat::PolyMatrix;

/// Code parameters: `(n, k | k1)` with dual memory `mh`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PumParams {
    pub n: usize,
    pub k: usize,
    pub k1: usize,
    pub mh: usize,
}

impl PumParams {
    pub fn new(n: usize, k: usize, k1: usize, mh: usize) -> Self {
        PumParams { n, k, k1, mh }
    }

    /// `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// Overall constraint length, the rank of `G1`.
    pub fn constraint_length(&self) -> usize {
        self.k1
    }
}

/// Smallest extension degree that keeps every element of the chain
/// independent: `(mh + 1) * ceil(n / (n - k)) * (n - k)`.
pub fn min_field_size(n: usize, k: usize, mh: usize) -> Result<usize> {
    if k == 0 || k >= n || mh == 0 {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k < n and mH >= 1, got n = {n}, k = {k}, mH = {mh}"
        )));
    }
    let r = n - k;
    Ok((mh + 1) * n.div_ceil(r) * r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateClass {
    UnitMemory,
    PartialUnitMemory,
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RateCheck {
    pub class: RateClass,
    pub explanation: String,
}

impl RateCheck {
    pub fn is_valid(&self) -> bool {
        self.class != RateClass::Invalid
    }
}

/// Classifies parameters against the rate shapes a chain of `mh + 1`
/// full-rank parity-check blocks allows.
pub fn rate_check(params: &PumParams) -> RateCheck {
    let PumParams { n, k, k1, mh } = *params;
    let invalid = |explanation: String| RateCheck {
        class: RateClass::Invalid,
        explanation,
    };
    if k == 0 || k >= n || mh == 0 {
        return invalid(format!(
            "parameters out of range: need 0 < k < n and mH >= 1 (n = {n}, k = {k}, mH = {mh})"
        ));
    }
    let nu = mh * (n - k);
    if k == nu {
        if k1 == k {
            RateCheck {
                class: RateClass::UnitMemory,
                explanation: format!("unit memory: k = mH(n-k) = {nu}, rate {k}/{n}"),
            }
        } else {
            invalid(format!(
                "unit memory rate restriction: k = mH(n-k) = {nu} forces k1 = k, got k1 = {k1}"
            ))
        }
    } else if nu < k {
        if k1 == nu {
            RateCheck {
                class: RateClass::PartialUnitMemory,
                explanation: format!(
                    "partial unit memory: k1 = mH(n-k) = {nu} < k = {k}, rate {k}/{n} > {mh}/{}",
                    mh + 1
                ),
            }
        } else {
            invalid(format!(
                "partial unit memory rate restriction: constraint length must be k1 = mH(n-k) = {nu}, got k1 = {k1}"
            ))
        }
    } else {
        invalid(format!(
            "partial unit memory rate restriction: rate {k}/{n} must exceed mH/(mH+1) = {mh}/{} \
             (mH(n-k) = {nu} is not below k = {k}), and k != mH(n-k) rules out unit memory",
            mh + 1
        ))
    }
}

/// Frobenius exponents of the normal-element conjugates placed in `h0`:
/// runs of `n-k` consecutive exponents with stride `(mh+1)(n-k)`, the
/// last run cut short when `n-k` does not divide `n`.
pub fn h0_exponents(n: usize, k: usize, mh: usize) -> Vec<u64> {
    let r = n - k;
    let stride = (mh + 1) * r;
    (0..n)
        .map(|idx| ((idx / r) * stride + idx % r) as u64)
        .collect()
}

pub fn build_h0(
    field: &ExtField,
    b: &NormalElement,
    n: usize,
    k: usize,
    mh: usize,
) -> Result<Vec<Felt>> {
    let required = min_field_size(n, k, mh)?;
    if field.degree() < required {
        return Err(Error::FieldTooSmall {
            required,
            actual: field.degree(),
        });
    }
    Ok(h0_from(field, b, n, k, mh))
}

fn h0_from(field: &ExtField, b: &NormalElement, n: usize, k: usize, mh: usize) -> Vec<Felt> {
    h0_exponents(n, k, mh)
        .into_iter()
        .map(|e| b.conjugate(field, e))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Reject fields below [`min_field_size`]. Turning this off is only
    /// useful for demonstrating how the chain breaks.
    pub enforce_field_size: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            enforce_field_size: true,
        }
    }
}

/// A constructed code: parity-check chain plus a memory-one generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumCode {
    field: ExtField,
    params: PumParams,
    normal_element: Felt,
    h0: Vec<Felt>,
    h_blocks: Vec<MatExt>,
    g0: MatExt,
    g1: MatExt,
}

pub fn build_code(field: &ExtField, params: PumParams) -> Result<PumCode> {
    build_code_with(field, params, BuildOptions::default())
}

pub fn build_code_with(
    field: &ExtField,
    params: PumParams,
    options: BuildOptions,
) -> Result<PumCode> {
    let check = rate_check(&params);
    if !check.is_valid() {
        return Err(Error::RateRestriction(check.explanation));
    }
    let PumParams { n, k, k1, mh } = params;
    let required = min_field_size(n, k, mh)?;
    if options.enforce_field_size && field.degree() < required {
        return Err(Error::FieldTooSmall {
            required,
            actual: field.degree(),
        });
    }
    let b = field.find_normal_element()?;
    let h0 = h0_from(field, &b, n, k, mh);
    let r = n - k;
    let stacked = frobenius_matrix(field, &h0, (mh + 1) * r);
    let h_blocks: Vec<MatExt> = (0..=mh)
        .map(|i| stacked.slice_rows(i * r, (i + 1) * r))
        .collect();
    let (g0, g1) = solve_generator(field, &h_blocks, k, k1)?;
    let code = PumCode {
        field: field.clone(),
        params,
        normal_element: b.element(),
        h0,
        h_blocks,
        g0,
        g1,
    };
    let failed: Vec<String> = code
        .structural_checks()
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if !failed.is_empty() {
        return Err(Error::Verification(failed.join("; ")));
    }
    Ok(code)
}

/// One named pass/fail check with a human-readable detail line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl PumCode {
    /// Assembles a code from stored parts without running any checks.
    pub fn from_parts(
        field: ExtField,
        params: PumParams,
        normal_element: Felt,
        h0: Vec<Felt>,
        h_blocks: Vec<MatExt>,
        g0: MatExt,
        g1: MatExt,
    ) -> Self {
        PumCode {
            field,
            params,
            normal_element,
            h0,
            h_blocks,
            g0,
            g1,
        }
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn params(&self) -> &PumParams {
        &self.params
    }

    pub fn normal_element(&self) -> Felt {
        self.normal_element
    }

    pub fn h0(&self) -> &[Felt] {
        &self.h0
    }

    pub fn h_blocks(&self) -> &[MatExt] {
        &self.h_blocks
    }

    pub fn g0(&self) -> &MatExt {
        &self.g0
    }

    pub fn g1(&self) -> &MatExt {
        &self.g1
    }

    /// Defining vector of block `i`, read off its first row.
    pub fn defining_vector(&self, i: usize) -> &[Felt] {
        self.h_blocks[i].row(0)
    }

    pub fn chain_report(&self) -> ChainReport {
        verify_gabidulin_chain(&self.field, &self.h_blocks)
    }

    pub fn minimal_basic_report(&self) -> Result<MinimalBasicReport> {
        check_minimal_basic(&self.field, &self.h_blocks)
    }

    /// Shape, stacking, orthogonality and rank checks on the stored data.
    pub fn structural_checks(&self) -> Vec<CheckOutcome> {
        let PumParams { n, k, k1, mh } = self.params;
        let f = &self.field;
        let mut out = Vec::new();

        let r = n.saturating_sub(k);
        let blocks_ok = self.h_blocks.len() == mh + 1
            && self.h_blocks.iter().all(|h| h.rows() == r && h.cols() == n);
        let gens_ok = [&self.g0, &self.g1]
            .iter()
            .all(|g| g.rows() == k && g.cols() == n);
        let shapes_ok = blocks_ok && gens_ok && self.h0.len() == n;
        out.push(CheckOutcome::new(
            "shapes",
            shapes_ok,
            if shapes_ok {
                format!("{} parity blocks of {r}x{n}, generators {k}x{n}", mh + 1)
            } else {
                format!(
                    "expected {} blocks of {r}x{n}, G0/G1 of {k}x{n}, h0 of length {n}; found {} blocks, G0 {}x{}, G1 {}x{}, h0 of length {}",
                    mh + 1,
                    self.h_blocks.len(),
                    self.g0.rows(),
                    self.g0.cols(),
                    self.g1.rows(),
                    self.g1.cols(),
                    self.h0.len()
                )
            },
        ));
        if !shapes_ok {
            if !self.h_blocks.is_empty() {
                out.push(self.orthogonality_check());
            }
            return out;
        }

        let refs: Vec<&MatExt> = self.h_blocks.iter().collect();
        let stacked = MatExt::vstack(&refs).expect("shapes checked");
        let stacking = stacked == frobenius_matrix(f, &self.h0, (mh + 1) * r);
        out.push(CheckOutcome::new(
            "column stack equals the Frobenius matrix of h0",
            stacking,
            if stacking {
                "parity blocks are consecutive slices of V(h0)".to_string()
            } else {
                "stacked parity blocks differ from V(h0)".to_string()
            },
        ));

        out.push(self.orthogonality_check());

        let r0 = self.g0.rank(f);
        out.push(CheckOutcome::new(
            "rank of G0",
            r0 == k,
            format!("rank {r0}, expected {k}"),
        ));
        let r1 = self.g1.rank(f);
        out.push(CheckOutcome::new(
            "rank of G1",
            r1 == k1,
            format!("rank {r1}, expected {k1}"),
        ));
        let tail_zero = (k1.min(k)..k).all(|i| self.g1.row(i).iter().all(|x| x.is_zero()));
        out.push(CheckOutcome::new(
            "bottom rows of G1 are zero",
            tail_zero,
            format!("rows {}..{k} of G1", k1.min(k)),
        ));
        out
    }

    /// Mismatched shapes count as nonzero relations.
    fn orthogonality_check(&self) -> CheckOutcome {
        let relations = orthogonality_residuals(&self.field, &self.h_blocks, &self.g0, &self.g1);
        let bad: Vec<String> = relations
            .iter()
            .filter(|(_, zero)| !zero)
            .map(|(label, _)| label.clone())
            .collect();
        CheckOutcome::new(
            "generator orthogonality",
            bad.is_empty(),
            if bad.is_empty() {
                format!("all {} relations vanish", relations.len())
            } else {
                format!("nonzero: {}", bad.join(", "))
            },
        )
    }

    pub fn encode_sequence(&self, info: &BlockSeq) -> Result<CodewordSeq> {
        encode_sequence(&self.field, &self.g0, &self.g1, info)
    }

    pub fn syndrome_sequence(&self, code: &BlockSeq) -> Result<bool> {
        syndrome_sequence(&self.field, &self.h_blocks, code)
    }
}

/// `(label, is_zero)` for every relation `G0 H_0^T`, `G0 H_i^T + G1 H_{i-1}^T`,
/// `G1 H_mh^T`.
pub fn orthogonality_residuals(
    field: &ExtField,
    h_blocks: &[MatExt],
    g0: &MatExt,
    g1: &MatExt,
) -> Vec<(String, bool)> {
    let prod = |g: &MatExt, h: &MatExt| g.mul(field, &h.transpose());
    let mh = h_blocks.len() - 1;
    let mut out = Vec::with_capacity(mh + 2);
    out.push((
        "G0 H0^T".to_string(),
        prod(g0, &h_blocks[0]).is_ok_and(|m| m.is_zero()),
    ));
    for i in 1..=mh {
        let zero = prod(g0, &h_blocks[i])
            .and_then(|a| a.add(field, &prod(g1, &h_blocks[i - 1])?))
            .is_ok_and(|m| m.is_zero());
        out.push((format!("G0 H{i}^T + G1 H{}^T", i - 1), zero));
    }
    out.push((
        format!("G1 H{mh}^T"),
        prod(g1, &h_blocks[mh]).is_ok_and(|m| m.is_zero()),
    ));
    out
}

/// One condition of the chain check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCondition {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    /// Nonzero `F_q` coefficients `c` with `sum c_j v_j = 0` over the
    /// defining vector, when independence fails.
    pub dependency: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub conditions: Vec<ChainCondition>,
    /// Length and dimension of the code defined by the column stack.
    pub column_code: (usize, isize),
    /// `(n^(r_i), k^(r_i))` for the row concatenations, `i = 1..=mh`.
    pub row_codes: Vec<(usize, usize)>,
}

impl ChainReport {
    pub fn all_passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }
}

/// Checks that `m` is `V_rows(a)` for its first row `a` and that `a` has
/// full rank norm.
fn frobenius_condition(field: &ExtField, label: String, m: &MatExt) -> ChainCondition {
    if m.rows() == 0 {
        return ChainCondition {
            label,
            passed: false,
            detail: "empty matrix".into(),
            dependency: None,
        };
    }
    let a = m.row(0);
    if frobenius_matrix(field, a, m.rows()) != *m {
        return ChainCondition {
            label,
            passed: false,
            detail: "rows are not successive q-powers of the first row".into(),
            dependency: None,
        };
    }
    let rank = rank_norm(field, a);
    if rank == a.len() {
        return ChainCondition {
            label,
            passed: true,
            detail: format!("Frobenius matrix on {} independent elements", a.len()),
            dependency: None,
        };
    }
    let witness = field.expand(a, None).expect("polynomial basis").nullspace();
    ChainCondition {
        label,
        passed: false,
        detail: format!("defining vector has rank {rank} < {}", a.len()),
        dependency: Some(witness.row(0).to_vec()),
    }
}

/// Checks each block, the column stack and every row concatenation
/// `(H_i ... H_0)` for Frobenius structure on independent elements.
pub fn verify_gabidulin_chain(field: &ExtField, h_blocks: &[MatExt]) -> ChainReport {
    let mh = h_blocks.len().saturating_sub(1);
    let n = h_blocks.first().map_or(0, MatExt::cols);
    let r = h_blocks.first().map_or(0, MatExt::rows);
    let mut conditions: Vec<ChainCondition> = h_blocks
        .iter()
        .enumerate()
        .map(|(i, h)| frobenius_condition(field, format!("H{i} is a Gabidulin parity check"), h))
        .collect();

    let refs: Vec<&MatExt> = h_blocks.iter().collect();
    conditions.push(match MatExt::vstack(&refs) {
        Ok(stack) => frobenius_condition(
            field,
            "column stack is a Gabidulin parity check".into(),
            &stack,
        ),
        Err(e) => ChainCondition {
            label: "column stack is a Gabidulin parity check".into(),
            passed: false,
            detail: e.to_string(),
            dependency: None,
        },
    });

    let mut row_codes = Vec::new();
    for i in 1..=mh {
        let parts: Vec<&MatExt> = h_blocks[..=i].iter().rev().collect();
        let label = format!("row concatenation (H{i} .. H0) is a Gabidulin parity check");
        conditions.push(match MatExt::hstack(&parts) {
            Ok(row) => frobenius_condition(field, label, &row),
            Err(e) => ChainCondition {
                label,
                passed: false,
                detail: e.to_string(),
                dependency: None,
            },
        });
        row_codes.push(((i + 1) * n, (i + 1) * n - r));
    }

    ChainReport {
        conditions,
        column_code: (n, n as isize - ((mh + 1) * r) as isize),
        row_codes,
    }
}

/// Solves `G0 H_0^T = 0`, `G0 H_i^T + G1 H_{i-1}^T = 0` (`i = 1..=mh`) and
/// `G1 H_mh^T = 0` for a generator pair with `rank(G0) = k`,
/// `rank(G1) = k1` and the last `k - k1` rows of `G1` zero.
///
/// The system decouples by generator row. Each of the top `k1` rows
/// `(g0 | g1)` lies in the kernel of the banded block matrix; each bottom row
/// has `g1 = 0` and `g0` in the kernel of the column stack. Both kernels are
/// brought to reduced echelon form and rows are picked greedily in index
/// order, keeping a candidate only if it raises the rank of both `G0` and
/// `G1`.
pub fn solve_generator(
    field: &ExtField,
    h_blocks: &[MatExt],
    k: usize,
    k1: usize,
) -> Result<(MatExt, MatExt)> {
    if h_blocks.len() < 2 {
        return Err(Error::InvalidParameters(
            "need at least two parity-check blocks (mH >= 1)".into(),
        ));
    }
    let mh = h_blocks.len() - 1;
    let n = h_blocks[0].cols();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!(
            "need 0 < k < n, got k = {k}, n = {n}"
        )));
    }
    let r = n - k;
    if let Some(h) = h_blocks.iter().find(|h| h.rows() != r || h.cols() != n) {
        return Err(shape(
            "parity-check block",
            format!("{r}x{n}"),
            format!("{}x{}", h.rows(), h.cols()),
        ));
    }
    if k1 > k {
        return Err(Error::GeneratorPrecondition(format!(
            "k1 = {k1} exceeds k = {k}"
        )));
    }
    // Free-entry count k(k1 - (k-1)/2) must be non-negative.
    if 2 * k1 + 1 < k {
        return Err(Error::GeneratorPrecondition(format!(
            "k1 = {k1} is below (k-1)/2 = {}",
            (k as f64 - 1.0) / 2.0
        )));
    }
    if k * (mh + 1) < mh * n {
        return Err(Error::GeneratorPrecondition(format!(
            "rate {k}/{n} is below mH/(mH+1) = {mh}/{}",
            mh + 1
        )));
    }

    // Banded system for a top row (g0 | g1).
    let mut banded = MatExt::zeros((mh + 2) * r, 2 * n);
    let mut place = |block_row: usize, offset: usize, h: &MatExt| {
        for i in 0..r {
            for j in 0..n {
                banded.set(block_row * r + i, offset + j, h.get(i, j));
            }
        }
    };
    place(0, 0, &h_blocks[0]);
    for i in 1..=mh {
        place(i, 0, &h_blocks[i]);
        place(i, n, &h_blocks[i - 1]);
    }
    place(mh + 1, n, &h_blocks[mh]);
    let top_kernel = banded.nullspace(field).rref(field).0;
    let refs: Vec<&MatExt> = h_blocks.iter().collect();
    let bottom_kernel = MatExt::vstack(&refs)?.nullspace(field).rref(field).0;

    let bottom_needed = k - k1;
    let no_selection = || Error::NoFullRankSelection {
        kernel_dim: top_kernel.rows(),
        bottom_dim: bottom_kernel.rows(),
    };
    if bottom_kernel.rows() < bottom_needed {
        return Err(no_selection());
    }

    let mut g0_rows: Vec<Vec<Felt>> = Vec::with_capacity(k);
    let mut g1_rows: Vec<Vec<Felt>> = Vec::with_capacity(k1);
    let bottom: Vec<Vec<Felt>> = (0..bottom_needed)
        .map(|i| bottom_kernel.row(i).to_vec())
        .collect();

    let rank_of = |rows: &[Vec<Felt>]| -> usize {
        MatExt::from_rows(rows.to_vec(), n)
            .expect("rows have length n")
            .rank(field)
    };

    let accept = |cand: &[Felt], g0_rows: &mut Vec<Vec<Felt>>, g1_rows: &mut Vec<Vec<Felt>>| {
        let (a, b) = cand.split_at(n);
        let mut g0_try: Vec<Vec<Felt>> = g0_rows.iter().chain(&bottom).cloned().collect();
        g0_try.push(a.to_vec());
        let mut g1_try = g1_rows.clone();
        g1_try.push(b.to_vec());
        if rank_of(&g0_try) == g0_try.len() && rank_of(&g1_try) == g1_try.len() {
            g0_rows.push(a.to_vec());
            g1_rows.push(b.to_vec());
        }
    };

    for row in top_kernel.row_iter() {
        if g1_rows.len() == k1 {
            break;
        }
        accept(row, &mut g0_rows, &mut g1_rows);
    }
    // Fall back to two-term combinations x_i + c x_j in a fixed order.
    if g1_rows.len() < k1 {
        let dim = top_kernel.rows();
        'outer: for i in 0..dim {
            for j in i + 1..dim {
                for c in field.elements().skip(1) {
                    if g1_rows.len() == k1 {
                        break 'outer;
                    }
                    let cand: Vec<Felt> = top_kernel
                        .row(i)
                        .iter()
                        .zip(top_kernel.row(j))
                        .map(|(&x, &y)| field.add(x, field.mul(c, y)))
                        .collect();
                    accept(&cand, &mut g0_rows, &mut g1_rows);
                }
            }
        }
    }
    if g1_rows.len() < k1 {
        return Err(no_selection());
    }

    g0_rows.extend(bottom);
    g1_rows.extend(std::iter::repeat_n(vec![Felt::ZERO; n], bottom_needed));
    let g0 = MatExt::from_rows(g0_rows, n)?;
    let g1 = MatExt::from_rows(g1_rows, n)?;
    Ok((g0, g1))
}

/// Information blocks together with the codeword blocks they produce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodewordSeq {
    pub info: BlockSeq,
    pub code: BlockSeq,
}

/// `c_j = u_j G0 + u_{j-1} G1` for `j = 0..=N`; the last block is the
/// memory flush `u_{N-1} G1`.
pub fn encode_sequence(
    field: &ExtField,
    g0: &MatExt,
    g1: &MatExt,
    info: &BlockSeq,
) -> Result<CodewordSeq> {
    let k = g0.rows();
    let n = g0.cols();
    if info.block_len() != k {
        return Err(shape("information block length", k, info.block_len()));
    }
    let zero = vec![Felt::ZERO; k];
    let mut blocks = Vec::with_capacity(info.len() + 1);
    for j in 0..=info.len() {
        let cur = if j < info.len() { info.block(j) } else { &zero };
        let prev = if j > 0 { info.block(j - 1) } else { &zero };
        let a = g0.vec_mul(field, cur)?;
        let b = g1.vec_mul(field, prev)?;
        blocks.push(a.iter().zip(&b).map(|(&x, &y)| field.add(x, y)).collect());
    }
    Ok(CodewordSeq {
        info: info.clone(),
        code: BlockSeq::new(n, blocks)?,
    })
}

/// True iff `sum_i H_i c_{j-i}^T = 0` for every `j`, blocks outside the
/// sequence being zero.
pub fn syndrome_sequence(field: &ExtField, h_blocks: &[MatExt], code: &BlockSeq) -> Result<bool> {
    let n = h_blocks.first().map_or(0, MatExt::cols);
    if code.block_len() != n {
        return Err(shape("codeword block length", n, code.block_len()));
    }
    let r = h_blocks[0].rows();
    let mh = h_blocks.len() - 1;
    for j in 0..code.len() + mh {
        let mut acc = vec![Felt::ZERO; r];
        for (i, h) in h_blocks.iter().enumerate() {
            if i > j || j - i >= code.len() {
                continue;
            }
            let part = h.mul_vec(field, code.block(j - i))?;
            for (a, p) in acc.iter_mut().zip(part) {
                *a = field.add(*a, p);
            }
        }
        if acc.iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalBasicReport {
    /// Determinant degree of each `(n-k)`-column window, `None` if it vanishes.
    pub window_degrees: Vec<Option<usize>>,
    pub max_degree: Option<usize>,
    /// `mh (n - k)`, the constraint length of the obvious realization.
    pub constraint_length: usize,
    pub passed: bool,
}

/// Degrees of the full-size minors of `H(D) = sum_i H_i D^i` over the
/// contiguous column windows starting at columns `0..=k`.
pub fn check_minimal_basic(field: &ExtField, h_blocks: &[MatExt]) -> Result<MinimalBasicReport> {
    let Some(first) = h_blocks.first() else {
        return Err(Error::InvalidParameters("no parity-check blocks".into()));
    };
    let (r, n) = (first.rows(), first.cols());
    if let Some(h) = h_blocks.iter().find(|h| h.rows() != r || h.cols() != n) {
        return Err(shape(
            "parity-check block",
            format!("{r}x{n}"),
            format!("{}x{}", h.rows(), h.cols()),
        ));
    }
    if r == 0 || r > n {
        return Err(Error::InvalidParameters(format!(
            "parity-check blocks must have 1..=n rows, got {r}"
        )));
    }
    let mh = h_blocks.len() - 1;
    let hd = PolyMatrix::from_coefficients(h_blocks);
    let window_degrees: Vec<Option<usize>> = (0..=n - r)
        .map(|start| {
            let cols: Vec<usize> = (start..start + r).collect();
            hd.columns(&cols).determinant(field).degree()
        })
        .collect();
    let max_degree = window_degrees.iter().flatten().copied().max();
    let constraint_length = mh * r;
    Ok(MinimalBasicReport {
        passed: max_degree == Some(constraint_length),
        window_degrees,
        max_degree,
        constraint_length,
    })
}
