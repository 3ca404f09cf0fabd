//! Exact dense linear algebra over the rationals.
//!
//! Pivoting is deterministic (leftmost column, topmost row) so every basis
//! handed out by this module is reproducible bit for bit.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot parse scalar `{0}`")]
    BadScalar(String),
    #[error("cannot parse matrix: {0}")]
    BadMatrix(String),
}

const SMALL_BOUND: i64 = 1 << 62;

/// Exact rational number. Values that fit comfortably in `i64` stay on the
/// fast path; everything else is promoted to arbitrary precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Scalar::Small(Ratio::from_integer(1))
    }

    pub fn int(n: i64) -> Self {
        Self::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_big(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn small(r: Ratio<i64>) -> Self {
        if r.numer().abs() < SMALL_BOUND && *r.denom() < SMALL_BOUND {
            Scalar::Small(r)
        } else {
            Scalar::Big(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(p), Some(q)) if p.abs() < SMALL_BOUND && q < SMALL_BOUND => {
                Scalar::Small(Ratio::new_raw(p, q))
            }
            _ => Scalar::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Scalar::Small(r) => BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Scalar::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Small(r) => r.numer().is_zero(),
            Scalar::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Small(r) => *r.numer() == 1 && *r.denom() == 1,
            Scalar::Big(_) => false,
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().numer().clone()
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().denom().clone()
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Small(r) => *r.denom() == 1,
            Scalar::Big(r) => r.is_integer(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Small(r) => Self::small(r.recip()),
            Scalar::Big(r) => Self::from_big(r.recip()),
        }
    }

    /// Image in Z/p, or `None` when p divides the denominator.
    pub fn mod_p(&self, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let big = self.to_big();
        let d = big.denom().mod_floor(&pb);
        if d.is_zero() {
            return None;
        }
        let n = big.numer().mod_floor(&pb).to_u64().unwrap();
        let d = d.to_u64().unwrap();
        Some(n * pow_mod(d, p - 2, p) % p)
    }

    fn binop(
        &self,
        other: &Self,
        small: impl Fn(&Ratio<i64>, &Ratio<i64>) -> Option<Ratio<i64>>,
        big: impl Fn(BigRational, BigRational) -> BigRational,
    ) -> Self {
        if let (Scalar::Small(a), Scalar::Small(b)) = (self, other) {
            if let Some(r) = small(a, b) {
                return Self::small(r);
            }
        }
        Self::from_big(big(self.to_big(), other.to_big()))
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Small(a), Scalar::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a.checked_add(b), |a, b| a + b)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.binop(rhs, |a, b| a.checked_sub(b), |a, b| a - b)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        self.binop(rhs, |a, b| a.checked_mul(b), |a, b| a * b)
    }
}

impl<'a> std::ops::Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        self.binop(rhs, |a, b| a.checked_div(b), |a, b| a / b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Small(r) => Scalar::Small(-*r),
            Scalar::Big(r) => Scalar::from_big(-r.clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(&self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Scalar::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Scalar {
    type Err = LinalgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LinalgError::BadScalar(s.to_string());
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_big(BigRational::new(p, q)))
    }
}

pub type Vector = Vec<Scalar>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

pub const DEFAULT_PRIME: u64 = 32003;

static CROSS_PRIME: AtomicU64 = AtomicU64::new(0);
static CROSS_CHECKED: AtomicU64 = AtomicU64::new(0);
static CROSS_MISMATCH: AtomicU64 = AtomicU64::new(0);

/// Turn on the prime-field rank cross-check for every rank computation.
pub fn set_cross_check_prime(p: Option<u64>) {
    CROSS_PRIME.store(p.unwrap_or(0), AtomicOrdering::SeqCst);
}

/// (systems compared, rank disagreements) since start-up.
pub fn cross_check_stats() -> (u64, u64) {
    (CROSS_CHECKED.load(AtomicOrdering::SeqCst), CROSS_MISMATCH.load(AtomicOrdering::SeqCst))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::int(x)).collect()).collect();
        Self::from_rows(&rows, cols)
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(blocks: &[&Matrix], rows: usize) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.put_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Matrix], cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            out.put_block(off, 0, b);
            off += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.put_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        (Matrix::from_rows(&rows, self.cols), pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let r = rref_rows(&mut rows, self.cols).len();
        cross_check(self, r);
        r
    }

    pub fn is_invertible(&self) -> Result<bool, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = Matrix::hstack(&[self, &Matrix::identity(n)], n);
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Serialized form: rows separated by `;`, entries by `,`.
    pub fn serialize(&self) -> String {
        if self.cols == 0 {
            return String::new();
        }
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(s: &str, rows: usize, cols: usize) -> Result<Matrix, LinalgError> {
        let s = s.trim();
        if rows == 0 || cols == 0 {
            if !s.is_empty() {
                return Err(LinalgError::BadMatrix(format!("expected empty {rows}x{cols} matrix")));
            }
            return Ok(Matrix::zeros(rows, cols));
        }
        let mut data = Vec::with_capacity(rows * cols);
        let lines: Vec<&str> = s.split(';').collect();
        if lines.len() != rows {
            return Err(LinalgError::BadMatrix(format!("expected {rows} rows, found {}", lines.len())));
        }
        for line in lines {
            let entries: Vec<&str> = line.split(',').collect();
            if entries.len() != cols {
                return Err(LinalgError::BadMatrix(format!("expected {cols} columns, found {}", entries.len())));
            }
            for e in entries {
                data.push(e.parse()?);
            }
        }
        Matrix::new(rows, cols, data)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

fn rref_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = -&row[c];
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn cross_check(m: &Matrix, rational_rank: usize) {
    let p = CROSS_PRIME.load(AtomicOrdering::Relaxed);
    if p == 0 {
        return;
    }
    if let Some(rp) = rank_mod_p(m, p) {
        CROSS_CHECKED.fetch_add(1, AtomicOrdering::Relaxed);
        if rp != rational_rank {
            CROSS_MISMATCH.fetch_add(1, AtomicOrdering::Relaxed);
        }
    }
}

/// Rank over Z/p, or `None` if some entry has a denominator divisible by p.
pub fn rank_mod_p(m: &Matrix, p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for r in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for x in m.row(r) {
            row.push(x.mod_p(p)?);
        }
        rows.push(row);
    }
    let mut rank = 0;
    for c in 0..m.cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = ((*x as u128 * inv as u128) % p as u128) as u64;
        }
        let pr = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    let sub = ((f as u128 * *y as u128) % p as u128) as u64;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = m.rref();
    cross_check(m, pivots.len());
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec(m.cols);
            v[f] = Scalar::one();
            for (k, &pc) in pivots.iter().enumerate() {
                let x = r.get(k, f);
                if !x.is_zero() {
                    v[pc] = -x;
                }
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solutions {
    /// One particular solution per target, `None` when unsolvable.
    pub particular: Vec<Option<Vector>>,
    pub kernel: Vec<Vector>,
}

pub fn solve_all(m: &Matrix, targets: &[Vector]) -> Result<Solutions, LinalgError> {
    for t in targets {
        if t.len() != m.rows {
            return Err(LinalgError::DimensionMismatch { expected: m.rows, found: t.len() });
        }
    }
    let tm = Matrix::from_columns(targets, m.rows);
    let aug = Matrix::hstack(&[m, &tm], m.rows);
    let mut rows: Vec<Vec<Scalar>> = (0..aug.rows).map(|r| aug.row(r).to_vec()).collect();
    let pivots = rref_rows(&mut rows, m.cols);
    let rank = pivots.len();
    let particular = (0..targets.len())
        .map(|t| {
            let col = m.cols + t;
            if rows[rank..].iter().any(|row| !row[col].is_zero()) {
                return None;
            }
            let mut x = zero_vec(m.cols);
            for (k, &pc) in pivots.iter().enumerate() {
                x[pc] = rows[k][col].clone();
            }
            Some(x)
        })
        .collect();
    Ok(Solutions { particular, kernel: kernel_basis(m) })
}

/// Incrementally maintained, fully reduced row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -&r[p];
                axpy(&mut r, &f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -&row[p];
                axpy(row, &f, &r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    /// Coordinates of `v` against the stored rows, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// Coordinates against a fixed linearly independent family, via an
/// invertible square submatrix chosen once.
#[derive(Clone, Debug)]
pub struct Coords {
    len: usize,
    rows: Vec<usize>,
    inv: Matrix,
    basis: Vec<Vector>,
}

impl Coords {
    pub fn new(basis: &[Vector], len: usize) -> Self {
        let b = Matrix::from_columns(basis, len);
        let (_, rows) = b.transpose().rref();
        assert_eq!(rows.len(), basis.len(), "coordinate family is not independent");
        let mut sq = Matrix::zeros(rows.len(), rows.len());
        for (i, &r) in rows.iter().enumerate() {
            for j in 0..basis.len() {
                sq.set(i, j, b.get(r, j).clone());
            }
        }
        let inv = sq.inverse().expect("pivot rows form an invertible block");
        Coords { len, rows, inv, basis: basis.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v`, which must lie in the span.
    pub fn of(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.len);
        let sub: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        self.inv.mul_vec(&sub)
    }

    /// Coordinates of `v` if it lies in the span.
    pub fn try_of(&self, v: &[Scalar]) -> Option<Vector> {
        let c = self.of(v);
        let mut back = zero_vec(self.len);
        for (x, b) in c.iter().zip(&self.basis) {
            axpy(&mut back, x, b);
        }
        (back.as_slice() == v).then_some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_recover_combination() {
        let b = vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one(), Scalar::one()],
        ];
        let c = Coords::new(&b, 3);
        let v = vec![Scalar::int(2), Scalar::int(-1), Scalar::int(1)];
        assert_eq!(c.of(&v), vec![Scalar::int(2), Scalar::int(-1)]);
        assert!(c.try_of(&[Scalar::one(), Scalar::zero(), Scalar::zero()]).is_none());
    }

    #[test]
    fn scalar_promotes_and_demotes() {
        let big = Scalar::int(1 << 61);
        let sq = &big * &big;
        assert!(matches!(sq, Scalar::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Scalar::Small(_)));
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["0", "3", "-7/2", "123456789012345678901234567891/2"] {
            assert_eq!(s.parse::<Scalar>().unwrap().to_string(), s);
        }
        assert_eq!("4/2".parse::<Scalar>().unwrap().to_string(), "2");
        assert!("1/0".parse::<Scalar>().is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&Matrix::identity(2)).is_empty());
        let k = kernel_basis(&Matrix::zeros(2, 3));
        assert_eq!(k, vec![unit_vec(3, 0), unit_vec(3, 1), unit_vec(3, 2)]);
        let k = kernel_basis(&Matrix::from_ints(&[&[1, 2], &[2, 4]]));
        assert_eq!(k, vec![vec![Scalar::int(-2), Scalar::int(1)]]);
    }

    #[test]
    fn solve_examples() {
        let s = solve_all(&Matrix::identity(2), &[vec![Scalar::int(3), Scalar::int(5)]]).unwrap();
        assert_eq!(s.particular[0], Some(vec![Scalar::int(3), Scalar::int(5)]));
        let s = solve_all(&Matrix::zeros(2, 2), &[vec![Scalar::one(), Scalar::zero()]]).unwrap();
        assert_eq!(s.particular[0], None);
        let m = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        let s = solve_all(&m, &[vec![Scalar::int(2), Scalar::int(1)]]).unwrap();
        assert_eq!(s.particular[0], Some(vec![Scalar::one(), Scalar::one()]));
        assert!(solve_all(&m, &[vec![Scalar::one()]]).is_err());
    }

    #[test]
    fn invertibility_examples() {
        assert!(Matrix::identity(3).is_invertible().unwrap());
        assert!(!Matrix::zeros(1, 1).is_invertible().unwrap());
        assert!(Matrix::from_ints(&[&[0, 1], &[1, 0]]).is_invertible().unwrap());
        assert!(Matrix::zeros(1, 2).is_invertible().is_err());
    }

    #[test]
    fn empty_matrices_behave() {
        let m = Matrix::zeros(0, 3);
        assert_eq!(kernel_basis(&m).len(), 3);
        assert_eq!(Matrix::zeros(3, 0).rank(), 0);
        assert_eq!(Matrix::parse("", 0, 2).unwrap(), Matrix::zeros(0, 2));
        assert_eq!(Matrix::parse(&Matrix::zeros(3, 0).serialize(), 3, 0).unwrap(), Matrix::zeros(3, 0));
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = Matrix::from_rows(
            &[vec![Scalar::frac(1, 2), Scalar::int(-3)], vec![Scalar::zero(), Scalar::int(7)]],
            2,
        );
        assert_eq!(m.serialize(), "1/2,-3;0,7");
        assert_eq!(Matrix::parse(&m.serialize(), 2, 2).unwrap(), m);
    }

    #[test]
    fn echelon_tracks_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[Scalar::one(), Scalar::one(), Scalar::zero()]));
        assert!(e.insert(&[Scalar::zero(), Scalar::one(), Scalar::one()]));
        assert!(!e.insert(&[Scalar::one(), Scalar::int(2), Scalar::one()]));
        assert!(e.contains(&[Scalar::one(), Scalar::zero(), Scalar::int(-1)]));
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn inverse_matches() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_rank_agrees_on_small_example() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank_mod_p(&m, DEFAULT_PRIME), Some(m.rank()));
        assert_eq!(rank_mod_p(&Matrix::from_ints(&[&[3]]), 3), Some(0));
    }
}
