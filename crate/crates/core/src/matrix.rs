//! Dense linear algebra over `F_q` and `F_{q^s}`, the rank norm and the
//! sum rank metric on block sequences.

use crate::error::{shape, Result};
use crate::field::{fq, ExtField, Felt};

/// A dense matrix over the prime field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatBase {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl MatBase {
    pub fn zeros(q: u32, rows: usize, cols: usize) -> Self {
        MatBase {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(q: u32, n: usize) -> Self {
        let mut m = Self::zeros(q, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(q, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(shape("matrix row", cols, r.len()));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v % q);
            }
        }
        Ok(m)
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &MatBase) -> MatBase {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = MatBase::zeros(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fq::add(out.get(i, j), fq::mul(a, other.get(k, j), self.q), self.q);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| {
                    fq::add(acc, fq::mul(a, b, self.q), self.q)
                })
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns. Pivots are taken as
    /// the first nonzero entry in column order; only row swaps reorder rows.
    pub fn rref(&self) -> (MatBase, Vec<usize>) {
        let q = self.q;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = fq::inv(m.get(r, c), q);
            for j in 0..m.cols {
                let v = fq::mul(m.get(r, j), inv, q);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = fq::sub(m.get(i, j), fq::mul(f, m.get(r, j), q), q);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : M x^T = 0}`, one vector per row.
    pub fn nullspace(&self) -> MatBase {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatBase::zeros(self.q, free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            out.set(row, f, 1);
            for (i, &p) in pivots.iter().enumerate() {
                out.set(row, p, fq::neg(r.get(i, f), self.q));
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<MatBase> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = MatBase::zeros(self.q, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = MatBase::zeros(self.q, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// A dense matrix over `F_{q^s}`. The field is passed to every operation
/// that needs arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatExt {
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl MatExt {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatExt {
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    /// Builds from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Felt>>, cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            if r.len() != cols {
                return Err(shape("matrix row", cols, r.len()));
            }
            data.extend_from_slice(r);
        }
        Ok(MatExt {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn row_vector(v: &[Felt]) -> Self {
        MatExt {
            rows: 1,
            cols: v.len(),
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Felt]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<Felt>> {
        self.row_iter().map(<[Felt]>::to_vec).collect()
    }

    pub fn entries(&self) -> &[Felt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> MatExt {
        let mut t = MatExt::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Felt) -> Felt) -> MatExt {
        MatExt {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn mul(&self, field: &ExtField, other: &MatExt) -> Result<MatExt> {
        if self.cols != other.rows {
            return Err(shape(
                "matrix product",
                format!("{} rows on the right", self.cols),
                other.rows,
            ));
        }
        let mut out = MatExt::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, field: &ExtField, other: &MatExt) -> Result<MatExt> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(shape(
                "matrix sum",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(MatExt {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        })
    }

    /// Row vector times matrix: `v M`.
    pub fn vec_mul(&self, field: &ExtField, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.rows {
            return Err(shape("vector-matrix product", self.rows, v.len()));
        }
        let mut out = vec![Felt::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(self.row(i)) {
                *o = field.add(*o, field.mul(c, m));
            }
        }
        Ok(out)
    }

    /// Matrix times column vector: `M v^T`.
    pub fn mul_vec(&self, field: &ExtField, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.cols {
            return Err(shape("matrix-vector product", self.cols, v.len()));
        }
        Ok(self
            .row_iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Felt::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect())
    }

    pub fn hstack(blocks: &[&MatExt]) -> Result<MatExt> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if let Some(b) = blocks.iter().find(|b| b.rows != rows) {
            return Err(shape("horizontal stack", rows, b.rows));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = MatExt::zeros(rows, cols);
        for i in 0..rows {
            let mut off = 0;
            for b in blocks {
                for j in 0..b.cols {
                    out.set(i, off + j, b.get(i, j));
                }
                off += b.cols;
            }
        }
        Ok(out)
    }

    pub fn vstack(blocks: &[&MatExt]) -> Result<MatExt> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(shape("vertical stack", cols, b.cols));
        }
        let mut data = Vec::new();
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(MatExt {
            rows: data.len().checked_div(cols).unwrap_or(0),
            cols,
            data,
        })
    }

    pub fn slice_rows(&self, start: usize, end: usize) -> MatExt {
        MatExt {
            rows: end - start,
            cols: self.cols,
            data: self.data[start * self.cols..end * self.cols].to_vec(),
        }
    }

    pub fn slice_cols(&self, start: usize, end: usize) -> MatExt {
        let mut out = MatExt::zeros(self.rows, end - start);
        for i in 0..self.rows {
            for j in start..end {
                out.set(i, j - start, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form over `F_{q^s}` with its pivot columns.
    pub fn rref(&self, field: &ExtField) -> (MatExt, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(r * m.cols + j, p * m.cols + j);
                }
            }
            let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = field.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, field: &ExtField) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right kernel `{x : M x^T = 0}` as the rows of the result.
    /// A trivial kernel yields a `0 x cols` matrix.
    pub fn nullspace(&self, field: &ExtField) -> MatExt {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatExt::zeros(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            out.set(row, f, Felt::ONE);
            for (i, &p) in pivots.iter().enumerate() {
                out.set(row, p, field.neg(r.get(i, f)));
            }
        }
        out
    }
}

/// Rank of the `s x n` expansion of `v` over `F_q`.
pub fn rank_norm(field: &ExtField, v: &[Felt]) -> usize {
    field.rank_of(v)
}

/// Number of nonzero entries of a single vector.
pub fn hamming_norm(v: &[Felt]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

/// `V_m(a)`: row `i` is `a` raised entrywise to the `q^i`-th power.
pub fn frobenius_matrix(field: &ExtField, a: &[Felt], m: usize) -> MatExt {
    let mut out = MatExt::zeros(m, a.len());
    for (j, &x) in a.iter().enumerate() {
        let mut y = x;
        for i in 0..m {
            out.set(i, j, y);
            y = field.frobenius(y, 1);
        }
    }
    out
}

/// A finite sequence of length-`n` blocks over `F_{q^s}`; everything past
/// the last block is implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSeq {
    n: usize,
    blocks: Vec<Vec<Felt>>,
}

impl BlockSeq {
    pub fn new(n: usize, blocks: Vec<Vec<Felt>>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.len() != n) {
            return Err(shape("block length", n, b.len()));
        }
        Ok(BlockSeq { n, blocks })
    }

    pub fn zeros(n: usize, len: usize) -> Self {
        BlockSeq {
            n,
            blocks: vec![vec![Felt::ZERO; n]; len],
        }
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<Felt>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[Felt] {
        &self.blocks[i]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut Vec<Felt> {
        &mut self.blocks[i]
    }

    pub fn into_blocks(self) -> Vec<Vec<Felt>> {
        self.blocks
    }
}

/// Sum of the rank norms of the blocks.
pub fn sum_rank_weight(field: &ExtField, v: &BlockSeq) -> usize {
    v.blocks.iter().map(|b| rank_norm(field, b)).sum()
}

pub fn sum_rank_distance(field: &ExtField, a: &BlockSeq, b: &BlockSeq) -> Result<usize> {
    if a.n != b.n || a.len() != b.len() {
        return Err(shape(
            "sum rank distance",
            format!("{} blocks of length {}", a.len(), a.n),
            format!("{} blocks of length {}", b.len(), b.n),
        ));
    }
    Ok(a.blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| {
            let diff: Vec<Felt> = x.iter().zip(y).map(|(&p, &r)| field.sub(p, r)).collect();
            rank_norm(field, &diff)
        })
        .sum())
}

/// Number of nonzero symbols across all blocks.
pub fn hamming_weight(v: &BlockSeq) -> usize {
    v.blocks.iter().map(|b| hamming_norm(b)).sum()
}
