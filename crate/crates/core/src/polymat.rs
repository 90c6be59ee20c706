//! Polynomials in `D` over `F_{q^s}` and determinants of small polynomial
//! matrices, used for the minimal-basic check on `H(D)`.

use crate::field::{ExtField, Felt};
use crate::matrix::MatExt;

/// A polynomial with coefficients in `F_{q^s}`, constant term first, with
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(Vec<Felt>);

impl Poly {
    pub fn new(mut coeffs: Vec<Felt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.0
    }

    pub fn leading(&self) -> Felt {
        self.0.last().copied().unwrap_or(Felt::ZERO)
    }

    pub fn add(&self, field: &ExtField, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let get = |p: &Poly, i: usize| p.0.get(i).copied().unwrap_or(Felt::ZERO);
        Poly::new(
            (0..len)
                .map(|i| field.add(get(self, i), get(other, i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &ExtField) -> Poly {
        Poly(self.0.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn mul(&self, field: &ExtField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Felt::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }
}

/// A square or rectangular matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// `sum_i coeffs[i] * D^i` for equally shaped coefficient matrices.
    pub fn from_coefficients(coeffs: &[MatExt]) -> Self {
        let rows = coeffs.first().map_or(0, MatExt::rows);
        let cols = coeffs.first().map_or(0, MatExt::cols);
        let entries = (0..rows * cols)
            .map(|idx| {
                let (i, j) = (idx / cols, idx % cols);
                Poly::new(coeffs.iter().map(|m| m.get(i, j)).collect())
            })
            .collect();
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    /// Square submatrix on all rows and the given columns.
    pub fn columns(&self, cols: &[usize]) -> PolyMatrix {
        let entries = (0..self.rows)
            .flat_map(|i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        PolyMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn determinant(&self, field: &ExtField) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let idx: Vec<usize> = (0..self.cols).collect();
        self.minor(field, 0, &idx)
    }

    fn minor(&self, field: &ExtField, row: usize, cols: &[usize]) -> Poly {
        if cols.is_empty() {
            return Poly::new(vec![Felt::ONE]);
        }
        let mut acc = Poly::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = entry.mul(field, &self.minor(field, row + 1, &rest));
            acc = if pos % 2 == 0 {
                acc.add(field, &term)
            } else {
                acc.add(field, &term.neg(field))
            };
        }
        acc
    }
}
