//! Scalars and dense matrices in two arithmetic modes.
//!
//! Exact mode wraps arbitrary-precision rationals and is used wherever
//! structure constants are manipulated; rank, nullspace and inverse are
//! tolerance-free there. Approx mode wraps `f64` and carries the numeric
//! thresholds used by the exponential and finite-difference code. A matrix
//! holds entries of a single mode; the two never mix inside one computation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Pivot threshold for float rank/nullspace/inverse decisions, relative to
/// the largest absolute entry of the matrix.
pub const TAU_RANK: f64 = 1e-10;
/// Residual tolerance for float identity checks.
pub const TAU_RES: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Exact,
    Approx,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        })
    }
}

/// A rational (exact) or floating-point (approx) number.
#[derive(Clone, PartialEq, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(f64),
}

/// Parse "p" or "p/q" into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::schema(format!("bad rational literal {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::schema(format!("bad rational literal {s:?}")))?;
    if den.is_zero() {
        return Err(Error::schema(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Approx(_) => Mode::Approx,
        }
    }

    pub fn zero(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::zero()),
            Mode::Approx => Scalar::Approx(0.0),
        }
    }

    pub fn one(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::one()),
            Mode::Approx => Scalar::Approx(1.0),
        }
    }

    /// Exact integer.
    pub fn int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(n.into()))
    }

    /// Exact ratio; panics on zero denominator.
    pub fn ratio(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar::Exact(BigRational::new(p.into(), q.into()))
    }

    pub fn parse_exact(s: &str) -> Result<Scalar, Error> {
        parse_rational(s).map(Scalar::Exact)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Approx(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(x) => *x,
        }
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }

    pub fn to_approx(&self) -> Scalar {
        Scalar::Approx(self.to_f64())
    }

    /// Division; panics on a zero divisor (callers divide by pivots that are
    /// nonzero by construction).
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            (Scalar::Approx(a), Scalar::Approx(b)) => Scalar::Approx(a / b),
            _ => panic!("mixed exact/approx scalar arithmetic"),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Approx(x) => write!(f, "{x}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Approx(a), Scalar::Approx(b)) => Scalar::Approx(a $op b),
                    _ => panic!("mixed exact/approx scalar arithmetic"),
                }
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Approx(x) => Scalar::Approx(-x),
        }
    }
}

/// Dense row-major matrix with a uniform entry mode.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    mode: Mode,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn from_entries(
        mode: Mode,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Matrix, Error> {
        if entries.len() != rows * cols {
            return Err(Error::dims(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.mode() != mode) {
            return Err(Error::mode(format!(
                "{} entry in a {mode} matrix",
                e.mode()
            )));
        }
        Ok(Matrix {
            mode,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        mode: Mode,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.mode(), mode, "entry mode mismatch");
                entries.push(e);
            }
        }
        Matrix {
            mode,
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(mode: Mode, rows: usize, cols: usize) -> Matrix {
        Matrix {
            mode,
            rows,
            cols,
            entries: vec![Scalar::zero(mode); rows * cols],
        }
    }

    pub fn identity(mode: Mode, n: usize) -> Matrix {
        Matrix::from_fn(mode, n, n, |i, j| {
            if i == j {
                Scalar::one(mode)
            } else {
                Scalar::zero(mode)
            }
        })
    }

    /// Square matrix with the given diagonal; entries fix the mode.
    pub fn diagonal(diag: &[Scalar]) -> Matrix {
        assert!(!diag.is_empty());
        let mode = diag[0].mode();
        Matrix::from_fn(mode, diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Scalar::zero(mode)
            }
        })
    }

    /// Build from column vectors.
    pub fn from_cols(mode: Mode, rows: usize, cols: &[Vec<Scalar>]) -> Matrix {
        for c in cols {
            assert_eq!(c.len(), rows);
        }
        Matrix::from_fn(mode, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn mode(&self) -> Mode {
        self.mode
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        debug_assert_eq!(v.mode(), self.mode, "entry mode mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.mode, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape");
        Matrix::from_fn(self.mode, self.rows, self.cols, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape");
        Matrix::from_fn(self.mode, self.rows, self.cols, |i, j| {
            self.get(i, j) - rhs.get(i, j)
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.mode, self.rows, self.cols, |i, j| -self.get(i, j))
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        Matrix::from_fn(self.mode, self.rows, self.cols, |i, j| self.get(i, j) * k)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension");
        assert_eq!(self.mode, rhs.mode, "mode");
        Matrix::from_fn(self.mode, self.rows, rhs.cols, |i, j| {
            let mut acc = Scalar::zero(self.mode);
            for k in 0..self.cols {
                let p = self.get(i, k) * rhs.get(k, j);
                acc = &acc + &p;
            }
            acc
        })
    }

    /// Matrix–vector product.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.mode);
                for k in 0..self.cols {
                    let p = self.get(i, k) * &x[k];
                    acc = &acc + &p;
                }
                acc
            })
            .collect()
    }

    pub fn to_approx(&self) -> Matrix {
        Matrix {
            mode: Mode::Approx,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(Scalar::to_approx).collect(),
        }
    }

    /// Max row sum of absolute values (operator infinity norm).
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::abs_f64).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(Scalar::abs_f64)
            .fold(0.0, f64::max)
    }

    /// Largest absolute entry of self − other (same shape and mode).
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}

pub fn max_abs_vec(v: &[Scalar]) -> f64 {
    v.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Rank. Exact mode clears denominators row by row and runs fraction-free
/// (Bareiss) elimination over the integers, with no tolerance anywhere;
/// approx mode eliminates with partial pivoting and drops pivots below
/// `TAU_RANK` relative to the largest absolute entry.
pub fn rank(m: &Matrix) -> usize {
    match m.mode() {
        Mode::Exact => bareiss_rank(clear_denominators(m)),
        Mode::Approx => rref_f64(&mut m.clone()).len(),
    }
}

fn clear_denominators(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let lcm = m.row(i).iter().fold(BigInt::one(), |acc, e| {
                acc.lcm(e.as_exact().expect("exact mode").denom())
            });
            m.row(i)
                .iter()
                .map(|e| {
                    let r = e.as_exact().unwrap();
                    r.numer() * (&lcm / r.denom())
                })
                .collect()
        })
        .collect()
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination lost exactness");
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Indices of the columns that carry pivots in the row echelon form, i.e. a
/// lexicographically-first maximal independent subset of the columns.
pub fn column_pivots(m: &Matrix) -> Vec<usize> {
    let mut work = m.clone();
    match m.mode() {
        Mode::Exact => rref_exact(&mut work),
        Mode::Approx => rref_f64(&mut work),
    }
}

/// In-place reduced row echelon form over exact rationals; returns the pivot
/// column indices.
fn rref_exact(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        swap_rows(m, r, p);
        let inv = Scalar::one(Mode::Exact).div(m.get(r, c));
        scale_row(m, r, &inv);
        for i in 0..rows {
            if i != r && !m.get(i, c).is_zero() {
                let factor = m.get(i, c).clone();
                sub_scaled_row(m, i, r, &factor);
                m.set(i, c, Scalar::zero(Mode::Exact));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Thresholded RREF for floats; pivots below `TAU_RANK * max_abs(M)` are
/// treated as zero.
fn rref_f64(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let tol = TAU_RANK * m.max_abs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let p = (r..rows).max_by(|&a, &b| {
            m.get(a, c)
                .abs_f64()
                .partial_cmp(&m.get(b, c).abs_f64())
                .unwrap()
        });
        let Some(p) = p else { continue };
        if m.get(p, c).abs_f64() <= tol {
            continue;
        }
        swap_rows(m, r, p);
        let inv = Scalar::one(Mode::Approx).div(m.get(r, c));
        scale_row(m, r, &inv);
        for i in 0..rows {
            if i != r && !m.get(i, c).is_zero() {
                let factor = m.get(i, c).clone();
                sub_scaled_row(m, i, r, &factor);
                m.set(i, c, Scalar::zero(Mode::Approx));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let x = m.get(a, j).clone();
        let y = m.get(b, j).clone();
        m.set(a, j, y);
        m.set(b, j, x);
    }
}

fn scale_row(m: &mut Matrix, i: usize, k: &Scalar) {
    for j in 0..m.cols() {
        let v = m.get(i, j) * k;
        m.set(i, j, v);
    }
}

/// row_i -= k * row_src
fn sub_scaled_row(m: &mut Matrix, i: usize, src: usize, k: &Scalar) {
    for j in 0..m.cols() {
        let v = m.get(i, j) - &(m.get(src, j) * k);
        m.set(i, j, v);
    }
}

fn rref(m: &mut Matrix) -> Vec<usize> {
    match m.mode() {
        Mode::Exact => rref_exact(m),
        Mode::Approx => rref_f64(m),
    }
}

/// Kernel basis, returned as the columns of an n×k matrix. Free coordinates
/// are set to one in increasing column order, so the basis is canonical.
pub fn nullspace(m: &Matrix) -> Matrix {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let n = m.cols();
    let mode = m.mode();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let cols: Vec<Vec<Scalar>> = free
        .iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(mode); n];
            x[f] = Scalar::one(mode);
            for (pi, &pc) in pivots.iter().enumerate() {
                x[pc] = -r.get(pi, f);
            }
            x
        })
        .collect();
    Matrix::from_cols(mode, n, &cols)
}

/// Inverse by Gauss–Jordan on the augmented matrix. Exact mode fails only on
/// true singularity; approx mode declares singularity when no pivot exceeds
/// `TAU_RANK` relative to the largest input entry.
pub fn inverse(m: &Matrix) -> Result<Matrix, Error> {
    if !m.is_square() {
        return Err(Error::dims("inverse of a non-square matrix"));
    }
    let n = m.rows();
    let mode = m.mode();
    let mut aug = Matrix::from_fn(mode, n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            Scalar::one(mode)
        } else {
            Scalar::zero(mode)
        }
    });
    let pivots = rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return Err(Error::SingularMatrix);
    }
    Ok(Matrix::from_fn(mode, n, n, |i, j| {
        aug.get(i, j + n).clone()
    }))
}

/// Determinant of a float matrix via partially pivoted LU (used for
/// conditioning rejection when sampling).
pub fn det_approx(m: &Matrix) -> Result<f64, Error> {
    if m.mode() != Mode::Approx {
        return Err(Error::mode("det_approx requires approx mode"));
    }
    if !m.is_square() {
        return Err(Error::dims("determinant of a non-square matrix"));
    }
    let n = m.rows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| m.row(i).iter().map(|e| e.to_f64()).collect())
        .collect();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&x, &y| a[x][c].abs().partial_cmp(&a[y][c].abs()).unwrap())
            .unwrap();
        if a[p][c] == 0.0 {
            return Ok(0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    Ok(det)
}

/// Matrix exponential by scaling and squaring: scale so the infinity norm of
/// M/2^s is at most 0.5, sum the Taylor series through the 18th term, then
/// square s times. Defined for float matrices only.
pub fn mat_exp(m: &Matrix) -> Result<Matrix, Error> {
    if m.mode() != Mode::Approx {
        return Err(Error::mode("mat_exp requires approx mode"));
    }
    if !m.is_square() {
        return Err(Error::dims("mat_exp of a non-square matrix"));
    }
    let norm = m.norm_inf();
    if !norm.is_finite() {
        return Err(Error::BadParameter("non-finite matrix entry".into()));
    }
    let s = if norm <= 0.5 {
        0
    } else {
        (norm / 0.5).log2().ceil() as i32
    };
    let x = m.scale(&Scalar::Approx(0.5f64.powi(s)));
    let n = m.rows();
    let mut acc = Matrix::identity(Mode::Approx, n);
    let mut term = Matrix::identity(Mode::Approx, n);
    for k in 1..=18u32 {
        term = term.mul(&x).scale(&Scalar::Approx(1.0 / f64::from(k)));
        acc = acc.add(&term);
    }
    for _ in 0..s {
        acc = acc.mul(&acc);
    }
    Ok(acc)
}
