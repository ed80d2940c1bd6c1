//! Exact scalar arithmetic and the small dense/sparse linear algebra kernel
//! everything else is built on.
//!
//! Two fields are supported: prime fields `F_p` for odd primes `p`, and the
//! rationals backed by arbitrary-precision integers. Elements are always kept
//! in canonical form (least residue mod `p`, lowest-terms fraction with a
//! positive denominator) so `==` on elements is exact equality.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("tensor index ({0}, {1}, {2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("duplicate tensor entry at ({0}, {1}, {2})")]
    DuplicateEntry(usize, usize, usize),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
}

/// Which field a structure lives over; this is what gets serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldKind {
    #[serde(rename = "fp")]
    Prime { p: u64 },
    #[serde(rename = "q")]
    Rationals,
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime { p } => write!(f, "F_{p}"),
            FieldKind::Rationals => write!(f, "Q"),
        }
    }
}

/// An exact field. Implementations are cheap to clone and carry whatever
/// runtime parameters they need (the modulus, for prime fields).
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// All field elements in canonical order, if the field is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Parse an integer or an `"a/b"` string.
    fn parse(&self, v: &serde_json::Value) -> Result<Self::Elem, ExalgError>;
    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// The prime field `F_p`, `p` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, ExalgError> {
        // keep products inside u64
        if p < 3 || p.is_multiple_of(2) || p > u32::MAX as u64 || !is_prime(p) {
            return Err(ExalgError::NotOddPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime { p: self.p }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i128(v as i128)
    }
    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.p).collect())
    }
    fn parse(&self, v: &serde_json::Value) -> Result<u64, ExalgError> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| ExalgError::BadScalar(v.to_string())),
            serde_json::Value::String(s) => {
                let r = parse_fraction(s)?;
                let num = self.reduce_i128(bigint_mod(r.numer(), self.p) as i128);
                let den = self.reduce_i128(bigint_mod(r.denom(), self.p) as i128);
                let den_inv = self
                    .inv(&den)
                    .ok_or_else(|| ExalgError::BadScalar(format!("{s} has denominator divisible by p")))?;
                Ok(self.mul(&num, &den_inv))
            }
            _ => Err(ExalgError::BadScalar(v.to_string())),
        }
    }
    fn to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.try_into().expect("residue fits in u64")
}

fn parse_fraction(s: &str) -> Result<BigRational, ExalgError> {
    let bad = || ExalgError::BadScalar(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// The rationals, with canonical lowest-terms representatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn elements(&self) -> Option<Vec<BigRational>> {
        None
    }
    fn parse(&self, v: &serde_json::Value) -> Result<BigRational, ExalgError> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|i| self.from_i64(i))
                .ok_or_else(|| ExalgError::BadScalar(v.to_string())),
            serde_json::Value::String(s) => parse_fraction(s),
            _ => Err(ExalgError::BadScalar(v.to_string())),
        }
    }
    fn to_json(&self, a: &BigRational) -> serde_json::Value {
        if a.is_integer() {
            if let Ok(i) = i64::try_from(a.numer().clone()) {
                return serde_json::Value::from(i);
            }
        }
        let sign = if a.is_negative() { "-" } else { "" };
        serde_json::Value::from(format!("{sign}{}/{}", a.numer().abs(), a.denom()))
    }
}

// ---------------------------------------------------------------------------
// dense vectors

pub fn zeros<F: Field>(field: &F, n: usize) -> Vec<F::Elem> {
    vec![field.zero(); n]
}

pub fn basis_vector<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

/// `acc += c * x`
pub fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], c: &F::Elem, x: &[F::Elem]) {
    debug_assert_eq!(acc.len(), x.len());
    if field.is_zero(c) {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !field.is_zero(b) {
            *a = field.add(a, &field.mul(c, b));
        }
    }
}

pub fn scale<F: Field>(field: &F, c: &F::Elem, x: &[F::Elem]) -> Vec<F::Elem> {
    x.iter().map(|b| field.mul(c, b)).collect()
}

pub fn dot<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> F::Elem {
    x.iter()
        .zip(y)
        .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
}

/// Kronecker product of two coordinate vectors: index `i * y.len() + j`.
pub fn kron<F: Field>(field: &F, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push(field.mul(a, b));
        }
    }
    out
}

pub fn is_zero_vec<F: Field>(field: &F, x: &[F::Elem]) -> bool {
    x.iter().all(|a| field.is_zero(a))
}

/// Nonzero coordinates of a dense vector.
pub fn support<F: Field>(field: &F, x: &[F::Elem]) -> Vec<(usize, F::Elem)> {
    x.iter()
        .enumerate()
        .filter(|(_, a)| !field.is_zero(a))
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// matrices

/// Dense row-major matrix over an exact field. A matrix acts on column
/// vectors: entry `(i, j)` is the coefficient of `e_i` in the image of `e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.kind())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: zeros(field, rows * cols),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Result<Self, ExalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            field: field.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(field: &F, rows: &[&[i64]]) -> Result<Self, ExalgError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|v| field.from_i64(*v)).collect())
                .collect(),
        )
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zero(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn apply(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows).map(|i| dot(&self.field, self.row(i), x)).collect()
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, ExalgError> {
        if self.cols != other.rows {
            return Err(ExalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        self.field.is_one(v)
                    } else {
                        self.field.is_zero(v)
                    }
                })
            })
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in 0..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in 0..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Exact inverse by Gauss-Jordan elimination on `[A | I]`.
    pub fn invert(&self) -> Result<Self, ExalgError> {
        if !self.is_square() {
            return Err(ExalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Self::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(ExalgError::NotInvertible);
        }
        let mut inv = Self::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// All solutions of `A X = B`.
    pub fn solve_linear(&self, b: &Self) -> Result<LinearSolution<F>, ExalgError> {
        if self.rows != b.rows {
            return Err(ExalgError::DimensionMismatch(format!(
                "A has {} rows, B has {}",
                self.rows, b.rows
            )));
        }
        let f = &self.field;
        let (n, k) = (self.cols, b.cols);
        let mut aug = Self::zero(f, self.rows, n + k);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..k {
                aug.set(i, n + j, b.get(i, j).clone());
            }
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&c| c >= n) {
            return Ok(LinearSolution::Inconsistent);
        }
        let mut particular = Self::zero(f, n, k);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..k {
                particular.set(c, j, aug.get(r, n + j).clone());
            }
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let nullspace = free
            .iter()
            .map(|&fc| {
                let mut v = zeros(f, n);
                v[fc] = f.one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = f.neg(aug.get(r, fc));
                }
                v
            })
            .collect();
        Ok(LinearSolution::Consistent {
            particular,
            nullspace,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinearSolution<F: Field> {
    /// `particular + span(nullspace)` (applied column by column).
    Consistent {
        particular: Matrix<F>,
        nullspace: Vec<Vec<F::Elem>>,
    },
    Inconsistent,
}

// ---------------------------------------------------------------------------
// sparse 3-tensors

/// Sparse structure constants `(i, j, k, c)`. Depending on role the tensor
/// is read as a bilinear map `e_i (x) e_j -> sum c e_k` or as a linear map
/// into a tensor square `e_i -> sum c e_j (x) e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor3<F: Field> {
    field: F,
    dims: (usize, usize, usize),
    entries: Vec<(usize, usize, usize, F::Elem)>,
    by_pair: Vec<Vec<(usize, F::Elem)>>,
    by_first: Vec<Vec<(usize, usize, F::Elem)>>,
}

impl<F: Field> fmt::Debug for Tensor3<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tensor3")
            .field("dims", &self.dims)
            .field("entries", &self.entries)
            .finish()
    }
}

impl<F: Field> Tensor3<F> {
    /// Build from raw entries. Zero coefficients are dropped; duplicate keys
    /// and out-of-range indices are errors.
    pub fn new(
        field: &F,
        dims: (usize, usize, usize),
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Result<Self, ExalgError> {
        let mut list: Vec<_> = entries.into_iter().collect();
        for (i, j, k, _) in &list {
            if *i >= dims.0 || *j >= dims.1 || *k >= dims.2 {
                return Err(ExalgError::IndexOutOfRange(*i, *j, *k));
            }
        }
        list.sort_by_key(|e| (e.0, e.1, e.2));
        for w in list.windows(2) {
            if (w[0].0, w[0].1, w[0].2) == (w[1].0, w[1].1, w[1].2) {
                return Err(ExalgError::DuplicateEntry(w[0].0, w[0].1, w[0].2));
            }
        }
        list.retain(|e| !field.is_zero(&e.3));
        Ok(Self::from_canonical(field, dims, list))
    }

    /// Build by summing contributions; duplicates are accumulated.
    pub fn accumulate(
        field: &F,
        dims: (usize, usize, usize),
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for (i, j, k, c) in entries {
            assert!(i < dims.0 && j < dims.1 && k < dims.2, "tensor index out of range");
            let slot = map.entry((i, j, k)).or_insert_with(|| field.zero());
            *slot = field.add(slot, &c);
        }
        let list = map
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|((i, j, k), c)| (i, j, k, c))
            .collect();
        Self::from_canonical(field, dims, list)
    }

    fn from_canonical(
        field: &F,
        dims: (usize, usize, usize),
        entries: Vec<(usize, usize, usize, F::Elem)>,
    ) -> Self {
        let mut by_pair = vec![Vec::new(); dims.0 * dims.1];
        let mut by_first = vec![Vec::new(); dims.0];
        for (i, j, k, c) in &entries {
            by_pair[i * dims.1 + j].push((*k, c.clone()));
            by_first[*i].push((*j, *k, c.clone()));
        }
        Self {
            field: field.clone(),
            dims,
            entries,
            by_pair,
            by_first,
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn entries(&self) -> &[(usize, usize, usize, F::Elem)] {
        &self.entries
    }

    /// Terms `(k, c)` of the image of `e_i (x) e_j` under the bilinear reading.
    pub fn pair_terms(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.by_pair[i * self.dims.1 + j]
    }

    /// Terms `(j, k, c)` of the image of `e_i` under the coproduct reading.
    pub fn first_terms(&self, i: usize) -> &[(usize, usize, F::Elem)] {
        &self.by_first[i]
    }

    /// Bilinear evaluation on coordinate vectors.
    pub fn bilinear(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = zeros(f, self.dims.2);
        let ys = support(f, y);
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in &ys {
                let ab = f.mul(a, b);
                for (k, c) in self.pair_terms(i, *j) {
                    out[*k] = f.add(&out[*k], &f.mul(&ab, c));
                }
            }
        }
        out
    }

    /// Coproduct-style evaluation; output indexed `j * d2 + k`.
    pub fn colinear(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = zeros(f, self.dims.1 * self.dims.2);
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, k, c) in self.first_terms(i) {
                let idx = j * self.dims.2 + k;
                out[idx] = f.add(&out[idx], &f.mul(a, c));
            }
        }
        out
    }

    /// Copy of this tensor with one coefficient replaced (zero removes it).
    pub fn with_entry(&self, i: usize, j: usize, k: usize, c: F::Elem) -> Self {
        let mut list: Vec<_> = self
            .entries
            .iter()
            .filter(|e| (e.0, e.1, e.2) != (i, j, k))
            .cloned()
            .collect();
        list.push((i, j, k, c));
        Self::new(&self.field, self.dims, list).expect("mutation keeps tensor well-formed")
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> F::Elem {
        self.pair_terms(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(|| self.field.zero(), |(_, c)| c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rejects_non_odd_primes() {
        for p in [0, 1, 2, 4, 9, 15] {
            assert_eq!(PrimeField::new(p), Err(ExalgError::NotOddPrime(p)));
        }
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn identity_times_identity() {
        let f = f5();
        let i2 = Matrix::identity(&f, 2);
        assert_eq!(i2.mat_mul(&i2).unwrap(), i2);
    }

    #[test]
    fn inverse_pair_mod_five() {
        let f = f5();
        let a = Matrix::from_i64_rows(&f, &[&[2, 0], &[0, 3]]).unwrap();
        let b = Matrix::from_i64_rows(&f, &[&[3, 0], &[0, 2]]).unwrap();
        assert!(a.mat_mul(&b).unwrap().is_identity());
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let f = f5();
        let a = Matrix::zero(&f, 2, 3);
        assert!(matches!(a.mat_mul(&a), Err(ExalgError::DimensionMismatch(_))));
    }

    #[test]
    fn invert_examples() {
        let f = f5();
        let i3 = Matrix::identity(&f, 3);
        assert_eq!(i3.invert().unwrap(), i3);
        let swap = Matrix::from_i64_rows(&f, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(swap.invert().unwrap(), swap);
        let singular = Matrix::from_i64_rows(&f, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(singular.invert(), Err(ExalgError::NotInvertible));
        assert!(matches!(
            Matrix::zero(&f, 2, 3).invert(),
            Err(ExalgError::NotSquare { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let f = f5();
        let b = Matrix::from_i64_rows(&f, &[&[1], &[2]]).unwrap();
        match Matrix::identity(&f, 2).solve_linear(&b).unwrap() {
            LinearSolution::Consistent {
                particular,
                nullspace,
            } => {
                assert_eq!(particular, b);
                assert!(nullspace.is_empty());
            }
            LinearSolution::Inconsistent => panic!("consistent system"),
        }
        match Matrix::zero(&f, 2, 2)
            .solve_linear(&Matrix::zero(&f, 2, 1))
            .unwrap()
        {
            LinearSolution::Consistent { nullspace, .. } => assert_eq!(nullspace.len(), 2),
            LinearSolution::Inconsistent => panic!(),
        }
        let a = Matrix::from_i64_rows(&f, &[&[1, 1]]).unwrap();
        match a.solve_linear(&Matrix::zero(&f, 1, 1)).unwrap() {
            LinearSolution::Consistent { nullspace, .. } => {
                assert_eq!(nullspace, vec![vec![4, 1]]);
            }
            LinearSolution::Inconsistent => panic!(),
        }
        let zero = Matrix::zero(&f, 1, 1);
        let one = Matrix::identity(&f, 1);
        assert_eq!(zero.solve_linear(&one).unwrap(), LinearSolution::Inconsistent);
    }

    #[test]
    fn rational_parse_and_print() {
        let q = Rationals;
        let half = q.parse(&serde_json::json!("2/4")).unwrap();
        assert_eq!(q.to_json(&half), serde_json::json!("1/2"));
        let neg = q.parse(&serde_json::json!("3/-6")).unwrap();
        assert_eq!(q.to_json(&neg), serde_json::json!("-1/2"));
        assert_eq!(q.to_json(&q.from_i64(-3)), serde_json::json!(-3));
        let f = f5();
        assert_eq!(f.parse(&serde_json::json!("1/2")).unwrap(), 3);
        assert_eq!(f.parse(&serde_json::json!(-1)).unwrap(), 4);
    }

    #[test]
    fn rational_inverse() {
        let q = Rationals;
        let a = Matrix::from_i64_rows(&q, &[&[2, 1], &[1, 1]]).unwrap();
        let inv = a.invert().unwrap();
        assert!(inv.mat_mul(&a).unwrap().is_identity());
        assert_eq!(inv, Matrix::from_i64_rows(&q, &[&[1, -1], &[-1, 2]]).unwrap());
    }

    #[test]
    fn tensor_rejects_bad_entries() {
        let f = f5();
        assert_eq!(
            Tensor3::new(&f, (2, 2, 2), [(0, 0, 2, 1)]).unwrap_err(),
            ExalgError::IndexOutOfRange(0, 0, 2)
        );
        assert_eq!(
            Tensor3::new(&f, (2, 2, 2), [(0, 0, 0, 1), (0, 0, 0, 2)]).unwrap_err(),
            ExalgError::DuplicateEntry(0, 0, 0)
        );
        let t = Tensor3::new(&f, (2, 2, 2), [(0, 1, 1, 0), (1, 1, 0, 3)]).unwrap();
        assert_eq!(t.entries().len(), 1);
    }

    fn brute_force_product(a: &Matrix<PrimeField>, b: &Matrix<PrimeField>) -> Vec<u64> {
        let p = a.field().modulus();
        let mut out = vec![0u64; a.rows() * b.cols()];
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0u64;
                for k in 0..a.cols() {
                    s = (s + a.get(i, k) * b.get(k, j)) % p;
                }
                out[i * b.cols() + j] = s;
            }
        }
        out
    }

    fn mat_strategy(p: u64, r: usize, c: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
        proptest::collection::vec(0..p, r * c).prop_map(move |data| {
            let f = PrimeField::new(p).unwrap();
            Matrix::from_rows(&f, data.chunks(c).map(<[u64]>::to_vec).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn product_matches_triple_loop(a in mat_strategy(7, 4, 4), b in mat_strategy(7, 4, 4)) {
            let prod = a.mat_mul(&b).unwrap();
            let expected = brute_force_product(&a, &b);
            for i in 0..4 {
                for j in 0..4 {
                    prop_assert_eq!(*prod.get(i, j), expected[i * 4 + j]);
                }
            }
        }

        #[test]
        fn product_is_associative(
            a in mat_strategy(5, 3, 4),
            b in mat_strategy(5, 4, 2),
            c in mat_strategy(5, 2, 3),
        ) {
            let left = a.mat_mul(&b).unwrap().mat_mul(&c).unwrap();
            let right = a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_is_two_sided(a in mat_strategy(7, 4, 4)) {
            if let Ok(inv) = a.invert() {
                prop_assert!(inv.mat_mul(&a).unwrap().is_identity());
                prop_assert!(a.mat_mul(&inv).unwrap().is_identity());
            } else {
                prop_assert!(a.rank() < 4);
            }
        }

        #[test]
        fn solutions_satisfy_system(a in mat_strategy(5, 3, 4), x in mat_strategy(5, 4, 1), t in proptest::collection::vec(0u64..5, 4)) {
            let b = a.mat_mul(&x).unwrap();
            let LinearSolution::Consistent { particular, nullspace } = a.solve_linear(&b).unwrap() else {
                panic!("system built from a solution is consistent");
            };
            let f = *a.field();
            let mut s = particular.column(0);
            for (v, c) in nullspace.iter().zip(&t) {
                axpy(&f, &mut s, c, v);
            }
            prop_assert_eq!(a.apply(&s), b.column(0));
        }
    }
}
