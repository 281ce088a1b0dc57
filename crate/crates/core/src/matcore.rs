//! Dense complex matrices sized for one and two qubits, plus the spectral
//! helpers (eigenvalues, partial traces, entropies) the rest of the crate
//! is built on.
//!
//! Everything here is deliberately small: matrices are row-major `Vec`s of
//! [`C64`] and every operation allocates a fresh value. The Hermitian
//! eigensolver is delegated to `nalgebra`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::{DMatrix, SymmetricEigen};

pub use nalgebra::Complex;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Default absolute tolerance (Frobenius norm for matrices).
pub const DEFAULT_TOL: f64 = 1e-10;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols} = {} entries", rows * cols),
                got: format!("{} entries", data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| re(x)).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn diag(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = re(x);
        }
        m
    }

    /// `|v><v|` for a column vector `v`.
    pub fn outer(v: &[C64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn dagger(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)];
            }
        }
        m
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance; `f64::INFINITY` when shapes differ.
    pub fn distance(&self, other: &CMat) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &CMat, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.distance(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol
    }

    /// `self * x * self^dagger`.
    pub fn sandwich(&self, x: &CMat) -> CMat {
        &(self * x) * &self.dagger()
    }

    pub fn expect_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::DimensionMismatch {
                expected: format!("{rows}x{cols}"),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        Ok(())
    }

    fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &CMat {
    type Output = CMat;

    fn mul(self, rhs: &CMat) -> CMat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &CMat {
    type Output = CMat;

    fn add(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMat {
    type Output = CMat;

    fn sub(self, rhs: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// The identity and the three Pauli matrices, in the order used for every
/// Kraus list in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> CMat {
        let data = match self {
            Pauli::I => vec![ONE, ZERO, ZERO, ONE],
            Pauli::X => vec![ZERO, ONE, ONE, ZERO],
            Pauli::Y => vec![ZERO, -I, I, ZERO],
            Pauli::Z => vec![ONE, ZERO, ZERO, -ONE],
        };
        CMat {
            rows: 2,
            cols: 2,
            data,
        }
    }
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

pub fn kron(a: &CMat, b: &CMat) -> Result<CMat> {
    for m in [a, b] {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
    }
    let (n, k) = (a.rows, b.rows);
    let mut out = CMat::zeros(n * k, n * k);
    for i in 0..n {
        for j in 0..n {
            let aij = a[(i, j)];
            for r in 0..k {
                for s in 0..k {
                    out[(i * k + r, j * k + s)] = aij * b[(r, s)];
                }
            }
        }
    }
    Ok(out)
}

pub fn hermitian_eigenvalues(m: &CMat, tol: f64) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let deviation = m.hermiticity_defect();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    let h = (m + &m.dagger()).scale(re(0.5));
    let eig = SymmetricEigen::new(h.to_nalgebra());
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(Spectrum { eigenvalues })
}

/// Traces out the first (control) qubit of a two-qubit operator.
pub fn partial_trace_a(m: &CMat) -> Result<CMat> {
    m.expect_shape(4, 4)?;
    let mut out = CMat::zeros(2, 2);
    for j in 0..2 {
        for l in 0..2 {
            out[(j, l)] = m[(j, l)] + m[(2 + j, 2 + l)];
        }
    }
    Ok(out)
}

/// Traces out the second (memory) qubit of a two-qubit operator.
pub fn partial_trace_b(m: &CMat) -> Result<CMat> {
    m.expect_shape(4, 4)?;
    let mut out = CMat::zeros(2, 2);
    for i in 0..2 {
        for k in 0..2 {
            out[(i, k)] = m[(2 * i, 2 * k)] + m[(2 * i + 1, 2 * k + 1)];
        }
    }
    Ok(out)
}

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub fn neg_xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy in bits. Non-positive weights contribute nothing.
pub fn shannon_entropy(probabilities: &[f64]) -> f64 {
    probabilities.iter().copied().map(neg_xlog2x).sum()
}

pub fn von_neumann_entropy(m: &CMat, tol: f64) -> Result<f64> {
    let trace = m.trace();
    if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
        return Err(Error::TraceNotUnit { trace: trace.re });
    }
    let spectrum = hermitian_eigenvalues(m, tol)?;
    let min = spectrum.min();
    if min < -tol {
        return Err(Error::NegativeEigenvalue { value: min });
    }
    Ok(shannon_entropy(spectrum.values()))
}

pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-DEFAULT_TOL..=1.0 + DEFAULT_TOL).contains(&x) {
        return Err(Error::OutOfRange {
            what: "binary entropy argument",
            value: x,
        });
    }
    let x = x.clamp(0.0, 1.0);
    Ok(neg_xlog2x(x) + neg_xlog2x(1.0 - x))
}
