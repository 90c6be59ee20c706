//! Arithmetic in a prime field `F_q` and its extension `F_{q^s}`.
//!
//! Extension elements are stored as their integer encoding
//! `sum(coeffs[i] * q^i)` over the polynomial basis `1, x, ..., x^{s-1}` of
//! the configured modulus. The encoding is the canonical wire form as well,
//! so a [`Felt`] can be written out and read back without conversion.
//!
//! Characteristic 2 gets a bit-packed fast path; every other prime goes
//! through digit vectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatBase;

/// Default cap on the extension degree. Enumeration-heavy routines
/// (normal-element search, irreducibility testing) stay quick below it.
pub const DEFAULT_MAX_DEGREE: usize = 24;

/// Largest degree any field may have; `q^s` must fit the `u64` encoding.
pub const HARD_MAX_DEGREE: usize = 63;

const MAX_DIGITS: usize = HARD_MAX_DEGREE + 1;

/// An element of `F_{q^s}` in integer encoding.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Felt(u64);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Wraps an encoding without range checking; see [`ExtField::element`].
    pub const fn from_raw(value: u64) -> Self {
        Felt(value)
    }

    pub const fn to_int(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Operations accepted by [`ExtField::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add(Felt),
    Sub(Felt),
    Mul(Felt),
    Inv,
    Pow(u64),
}

pub(crate) mod fq {
    pub fn add(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 + b as u64) % q as u64) as u32
    }

    pub fn sub(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 + q as u64 - b as u64) % q as u64) as u32
    }

    pub fn mul(a: u32, b: u32, q: u32) -> u32 {
        ((a as u64 * b as u64) % q as u64) as u32
    }

    pub fn neg(a: u32, q: u32) -> u32 {
        if a == 0 {
            0
        } else {
            q - a
        }
    }

    pub fn pow(mut base: u32, mut exp: u64, q: u32) -> u32 {
        let mut acc = 1 % q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base, q);
            }
            base = mul(base, base, q);
            exp >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element of a prime field.
    pub fn inv(a: u32, q: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(q));
        pow(a, q as u64 - 2, q)
    }

    pub fn is_prime(q: u32) -> bool {
        if q < 2 {
            return false;
        }
        let q = q as u64;
        let mut d = 2u64;
        while d * d <= q {
            if q.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    fn trim(p: &mut Vec<u32>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m` (constant term first).
    pub fn poly_rem(a: &[u32], m: &[u32], q: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (j, &c) in m.iter().enumerate() {
                r[shift + j] = sub(r[shift + j], mul(lead, c, q), q);
            }
            trim(&mut r);
        }
        r
    }
}

/// The field `F_{q^s}` over a prime `q`, with a verified irreducible modulus.
#[derive(Clone, Debug)]
pub struct ExtField {
    q: u32,
    s: usize,
    modulus: Vec<u32>,
    order: u64,
    pow_q: Vec<u64>,
    // Encodings of (x^j)^q, i.e. the columns of the q-power map.
    frob_cols: Vec<u64>,
    // Bit-packed modulus for q = 2.
    mod_bits: u128,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.s == other.s && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds `F_{q^s}`. Without a modulus the smallest monic irreducible
    /// polynomial of degree `s` (by coefficient encoding) is used.
    pub fn new(q: u32, s: usize, modulus: Option<&[u32]>) -> Result<Self> {
        Self::with_max_degree(q, s, modulus, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(
        q: u32,
        s: usize,
        modulus: Option<&[u32]>,
        max_degree: usize,
    ) -> Result<Self> {
        if !fq::is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        if s == 0 {
            return Err(Error::ZeroDegree);
        }
        let cap = max_degree.min(HARD_MAX_DEGREE);
        let order = (q as u64).checked_pow(s as u32);
        if s > cap || order.is_none() {
            return Err(Error::DegreeTooLarge {
                degree: s,
                max: cap,
            });
        }
        let order = order.unwrap();

        let modulus = match modulus {
            Some(m) => {
                validate_modulus(q, s, m)?;
                m.to_vec()
            }
            None => default_modulus(q, s),
        };

        let pow_q = (0..=s).map(|i| (q as u64).pow(i as u32)).collect();
        let mod_bits = if q == 2 {
            modulus
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i))
        } else {
            0
        };
        let mut field = ExtField {
            q,
            s,
            modulus,
            order,
            pow_q,
            frob_cols: Vec::new(),
            mod_bits,
        };

        // Image of x under the q-power map, then its powers give the columns.
        let x = if s >= 2 {
            Felt(q as u64)
        } else {
            Felt(fq::neg(field.modulus[0], q) as u64)
        };
        let xq = field.pow(x, q as u64);
        let mut col = Felt::ONE;
        let mut cols = Vec::with_capacity(s);
        for _ in 0..s {
            cols.push(col.0);
            col = field.mul(col, xq);
        }
        field.frob_cols = cols;

        let probe = Felt(if order > 2 { order - 2 } else { order - 1 });
        let mut y = probe;
        for _ in 0..s {
            y = field.frobenius_step(y);
        }
        debug_assert_eq!(y, probe, "q-power map must have order dividing s");
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.s
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Number of elements `q^s`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn element(&self, value: u64) -> Result<Felt> {
        if value < self.order {
            Ok(Felt(value))
        } else {
            Err(Error::NotInField {
                value,
                order: self.order,
            })
        }
    }

    pub fn contains(&self, x: Felt) -> bool {
        x.0 < self.order
    }

    /// Iterates over all elements in ascending encoding.
    pub fn elements(&self) -> impl Iterator<Item = Felt> {
        (0..self.order).map(Felt)
    }

    /// The prime-field scalar `c` embedded as a constant polynomial.
    pub fn scalar(&self, c: u32) -> Felt {
        Felt((c % self.q) as u64)
    }

    pub fn coeffs(&self, x: Felt) -> Vec<u32> {
        let mut d = [0u32; MAX_DIGITS];
        self.unpack(x, &mut d);
        d[..self.s].to_vec()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Felt> {
        if coeffs.len() != self.s {
            return Err(crate::error::shape(
                "coefficient vector",
                self.s,
                coeffs.len(),
            ));
        }
        if let Some(&value) = coeffs.iter().find(|&&c| c >= self.q) {
            return Err(Error::CoefficientOutOfRange { value, q: self.q });
        }
        Ok(self.pack(coeffs))
    }

    fn unpack(&self, x: Felt, out: &mut [u32]) {
        let mut v = x.0;
        if self.q == 2 {
            for d in out.iter_mut().take(self.s) {
                *d = (v & 1) as u32;
                v >>= 1;
            }
        } else {
            let q = self.q as u64;
            for d in out.iter_mut().take(self.s) {
                *d = (v % q) as u32;
                v /= q;
            }
        }
    }

    fn pack(&self, digits: &[u32]) -> Felt {
        Felt(
            digits
                .iter()
                .take(self.s)
                .zip(&self.pow_q)
                .map(|(&d, &p)| d as u64 * p)
                .sum(),
        )
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if self.q == 2 {
            return Felt(a.0 ^ b.0);
        }
        let (mut da, mut db) = ([0u32; MAX_DIGITS], [0u32; MAX_DIGITS]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        for i in 0..self.s {
            da[i] = fq::add(da[i], db[i], self.q);
        }
        self.pack(&da)
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if self.q == 2 {
            return a;
        }
        let mut d = [0u32; MAX_DIGITS];
        self.unpack(a, &mut d);
        for c in d.iter_mut().take(self.s) {
            *c = fq::neg(*c, self.q);
        }
        self.pack(&d)
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        if self.q == 2 {
            return Felt(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    /// Multiplies by a prime-field scalar.
    pub fn scale(&self, c: u32, a: Felt) -> Felt {
        let c = c % self.q;
        if self.q == 2 {
            return if c == 0 { Felt::ZERO } else { a };
        }
        let mut d = [0u32; MAX_DIGITS];
        self.unpack(a, &mut d);
        for x in d.iter_mut().take(self.s) {
            *x = fq::mul(*x, c, self.q);
        }
        self.pack(&d)
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        if self.q == 2 {
            return self.mul_binary(a, b);
        }
        let s = self.s;
        let q = self.q;
        let (mut da, mut db) = ([0u32; MAX_DIGITS], [0u32; MAX_DIGITS]);
        self.unpack(a, &mut da);
        self.unpack(b, &mut db);
        let mut prod = [0u32; 2 * MAX_DIGITS];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] = fq::add(prod[i + j], fq::mul(da[i], db[j], q), q);
            }
        }
        for d in (s..2 * s - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for j in 0..s {
                prod[d - s + j] = fq::sub(prod[d - s + j], fq::mul(c, self.modulus[j], q), q);
            }
            prod[d] = 0;
        }
        self.pack(&prod[..s])
    }

    fn mul_binary(&self, a: Felt, b: Felt) -> Felt {
        let mut acc: u128 = 0;
        let mut shifted = b.0 as u128;
        let mut bits = a.0;
        while bits != 0 {
            if bits & 1 == 1 {
                acc ^= shifted;
            }
            bits >>= 1;
            shifted <<= 1;
        }
        let s = self.s;
        if s >= 2 {
            for d in (s..2 * s - 1).rev() {
                if (acc >> d) & 1 == 1 {
                    acc ^= self.mod_bits << (d - s);
                }
            }
        }
        Felt(acc as u64)
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.is_zero() {
            return Felt::ZERO;
        }
        let mut e = e % (self.order - 1);
        if e == 0 {
            e = self.order - 1;
        }
        let mut base = a;
        let mut acc = Felt::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Range-checked entry point for a single field operation.
    pub fn apply(&self, x: Felt, op: FieldOp) -> Result<Felt> {
        self.check(x)?;
        match op {
            FieldOp::Add(y) => Ok(self.add(x, self.check(y)?)),
            FieldOp::Sub(y) => Ok(self.sub(x, self.check(y)?)),
            FieldOp::Mul(y) => Ok(self.mul(x, self.check(y)?)),
            FieldOp::Inv => self.inv(x),
            FieldOp::Pow(e) => Ok(self.pow(x, e)),
        }
    }

    fn check(&self, x: Felt) -> Result<Felt> {
        self.element(x.0)
    }

    fn frobenius_step(&self, x: Felt) -> Felt {
        if self.q == 2 {
            let mut out = 0u64;
            let mut bits = x.0;
            let mut j = 0;
            while bits != 0 {
                if bits & 1 == 1 {
                    out ^= self.frob_cols[j];
                }
                bits >>= 1;
                j += 1;
            }
            return Felt(out);
        }
        let mut d = [0u32; MAX_DIGITS];
        self.unpack(x, &mut d);
        let mut acc = Felt::ZERO;
        for (j, &c) in d.iter().take(self.s).enumerate() {
            if c != 0 {
                acc = self.add(acc, self.scale(c, Felt(self.frob_cols[j])));
            }
        }
        acc
    }

    /// `x^[i] = x^(q^i)`, by `i mod s` applications of the q-power map.
    pub fn frobenius(&self, x: Felt, i: u64) -> Felt {
        let steps = (i % self.s as u64) as usize;
        (0..steps).fold(x, |acc, _| self.frobenius_step(acc))
    }

    /// The `s x s` matrix of `x -> x^q` in the polynomial basis.
    pub fn frobenius_map(&self) -> MatBase {
        let mut m = MatBase::zeros(self.q, self.s, self.s);
        for (j, &col) in self.frob_cols.iter().enumerate() {
            for (i, c) in self.coeffs(Felt(col)).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Dimension of the `F_q`-span of `elems`.
    pub fn rank_of(&self, elems: &[Felt]) -> usize {
        if self.q == 2 {
            let mut basis = [0u64; 64];
            let mut rank = 0;
            for e in elems {
                let mut v = e.0;
                while v != 0 {
                    let top = 63 - v.leading_zeros() as usize;
                    if basis[top] == 0 {
                        basis[top] = v;
                        rank += 1;
                        break;
                    }
                    v ^= basis[top];
                }
                if rank == self.s {
                    break;
                }
            }
            return rank;
        }
        self.expand(elems, None)
            .expect("polynomial basis is always independent")
            .rank()
    }

    /// The `s x n` coordinate matrix of `v`: column `j` holds the
    /// coordinates of `v[j]` in `basis` (the polynomial basis when `None`).
    pub fn expand(&self, v: &[Felt], basis: Option<&[Felt]>) -> Result<MatBase> {
        let mut out = MatBase::zeros(self.q, self.s, v.len());
        let change = match basis {
            None => None,
            Some(b) => {
                if b.len() != self.s {
                    return Err(crate::error::shape("basis", self.s, b.len()));
                }
                let mut bm = MatBase::zeros(self.q, self.s, self.s);
                for (j, &e) in b.iter().enumerate() {
                    for (i, c) in self.coeffs(e).into_iter().enumerate() {
                        bm.set(i, j, c);
                    }
                }
                Some(bm.inverse().ok_or(Error::DependentBasis)?)
            }
        };
        for (j, &x) in v.iter().enumerate() {
            let mut coords = self.coeffs(x);
            if let Some(inv) = &change {
                coords = inv.mul_vec(&coords);
            }
            for (i, c) in coords.into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// Inverse of [`ExtField::expand`]: `sum_i basis[i] * m[i][j]` per column.
    pub fn reconstruct(&self, m: &MatBase, basis: Option<&[Felt]>) -> Result<Vec<Felt>> {
        if m.rows() != self.s {
            return Err(crate::error::shape(
                "coordinate matrix rows",
                self.s,
                m.rows(),
            ));
        }
        let poly_basis: Vec<Felt>;
        let basis = match basis {
            Some(b) => b,
            None => {
                poly_basis = (0..self.s).map(|i| Felt(self.pow_q[i])).collect();
                &poly_basis
            }
        };
        Ok((0..m.cols())
            .map(|j| {
                (0..self.s).fold(Felt::ZERO, |acc, i| {
                    self.add(acc, self.scale(m.get(i, j), basis[i]))
                })
            })
            .collect())
    }

    /// Smallest nonzero element (by encoding) whose conjugates
    /// `b, b^[1], ..., b^[s-1]` form a basis over `F_q`.
    pub fn find_normal_element(&self) -> Result<NormalElement> {
        let mut conj = vec![Felt::ZERO; self.s];
        for b in 1..self.order {
            conj[0] = Felt(b);
            for i in 1..self.s {
                conj[i] = self.frobenius_step(conj[i - 1]);
            }
            if self.rank_of(&conj) == self.s {
                return Ok(NormalElement(Felt(b)));
            }
        }
        Err(Error::NoNormalElement)
    }
}

/// An element whose Frobenius conjugates form a normal basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalElement(Felt);

impl NormalElement {
    pub fn new(field: &ExtField, b: Felt) -> Result<Self> {
        field.check(b)?;
        let basis: Vec<Felt> = (0..field.s as u64).map(|i| field.frobenius(b, i)).collect();
        let rank = field.rank_of(&basis);
        if rank != field.s {
            return Err(Error::DependentDefiningVector {
                rank,
                needed: field.s,
            });
        }
        Ok(NormalElement(b))
    }

    pub fn element(&self) -> Felt {
        self.0
    }

    /// `b^[i]`.
    pub fn conjugate(&self, field: &ExtField, i: u64) -> Felt {
        field.frobenius(self.0, i)
    }

    pub fn basis(&self, field: &ExtField) -> Vec<Felt> {
        (0..field.s as u64)
            .map(|i| self.conjugate(field, i))
            .collect()
    }
}

fn validate_modulus(q: u32, s: usize, m: &[u32]) -> Result<()> {
    if m.len() != s + 1 {
        return Err(Error::ModulusLength {
            expected: s + 1,
            degree: s,
            found: m.len(),
        });
    }
    if let Some(&value) = m.iter().find(|&&c| c >= q) {
        return Err(Error::CoefficientOutOfRange { value, q });
    }
    if m[s] != 1 {
        return Err(Error::ModulusNotMonic);
    }
    match find_factor(q, m) {
        Some(factor) => Err(Error::ModulusReducible { factor }),
        None => Ok(()),
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn find_factor(q: u32, m: &[u32]) -> Option<Vec<u32>> {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for e in 0..count {
            let g = monic_from_encoding(q, d, e);
            if fq::poly_rem(m, &g, q).is_empty() {
                return Some(g);
            }
        }
    }
    None
}

fn monic_from_encoding(q: u32, degree: usize, mut e: u64) -> Vec<u32> {
    let mut g = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        g.push((e % q as u64) as u32);
        e /= q as u64;
    }
    g.push(1);
    g
}

/// Polynomials over `F_q` (constant term first) that are monic, degree `s`
/// and irreducible, in ascending coefficient encoding.
pub fn irreducible_polynomials(q: u32, s: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (q as u64).pow(s as u32);
    (0..count)
        .map(move |e| monic_from_encoding(q, s, e))
        .filter(move |g| find_factor(q, g).is_none())
}

fn default_modulus(q: u32, s: usize) -> Vec<u32> {
    irreducible_polynomials(q, s)
        .next()
        .expect("irreducible polynomials exist in every degree")
}
