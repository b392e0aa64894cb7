//! Dense row-major matrices and vectors over dual quaternions and dual
//! complex numbers.

use std::fmt::Debug;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{DualComplex, DualNumber, DualQuaternion, Quaternion};

/// Default absolute tolerance for the Hermitian and unitary predicates.
pub const PREDICATE_TOL: f64 = 1e-10;

/// Entry type shared by the dual quaternion and dual complex containers.
pub trait DualScalar:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn conj(self) -> Self;
    fn from_dual(d: DualNumber) -> Self;
    /// Real scalar parts, plus the largest discarded non-real component.
    fn to_dual(self) -> (DualNumber, f64);
    fn scale(self, k: DualNumber) -> Self;
    fn st_norm_sqr(self) -> f64;
    fn du_norm_sqr(self) -> f64;
    /// Real inner product of the standard part with the dual part.
    fn st_du_inner(self) -> f64;
    fn is_st_zero(self) -> bool;
    /// Moves the dual part into the standard slot and clears the dual slot.
    fn du_as_st(self) -> Self;
    /// Largest absolute difference over all real components.
    fn max_abs_diff(self, other: Self) -> f64;
}

impl DualScalar for DualQuaternion {
    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn conj(self) -> Self {
        DualQuaternion::conj(self)
    }
    fn from_dual(d: DualNumber) -> Self {
        DualQuaternion::from_dual(d)
    }
    fn to_dual(self) -> (DualNumber, f64) {
        DualQuaternion::to_dual(self)
    }
    fn scale(self, k: DualNumber) -> Self {
        DualQuaternion::scale(self, k)
    }
    fn st_norm_sqr(self) -> f64 {
        self.st.norm_sqr()
    }
    fn du_norm_sqr(self) -> f64 {
        self.du.norm_sqr()
    }
    fn st_du_inner(self) -> f64 {
        self.st.dot(self.du)
    }
    fn is_st_zero(self) -> bool {
        self.st.is_zero()
    }
    fn du_as_st(self) -> Self {
        Self::new(self.du, Quaternion::ZERO)
    }
    fn max_abs_diff(self, other: Self) -> f64 {
        DualQuaternion::max_abs_diff(self, other)
    }
}

fn cdiff(a: Complex64, b: Complex64) -> f64 {
    (a.re - b.re).abs().max((a.im - b.im).abs())
}

impl DualScalar for DualComplex {
    fn zero() -> Self {
        Self::ZERO
    }
    fn one() -> Self {
        Self::ONE
    }
    fn conj(self) -> Self {
        DualComplex::conj(self)
    }
    fn from_dual(d: DualNumber) -> Self {
        DualComplex::from_dual(d)
    }
    fn to_dual(self) -> (DualNumber, f64) {
        DualComplex::to_dual(self)
    }
    fn scale(self, k: DualNumber) -> Self {
        DualComplex::scale(self, k)
    }
    fn st_norm_sqr(self) -> f64 {
        self.st.norm_sqr()
    }
    fn du_norm_sqr(self) -> f64 {
        self.du.norm_sqr()
    }
    fn st_du_inner(self) -> f64 {
        self.st.re * self.du.re + self.st.im * self.du.im
    }
    fn is_st_zero(self) -> bool {
        self.st.re == 0.0 && self.st.im == 0.0
    }
    fn du_as_st(self) -> Self {
        Self::new(self.du, Complex64::new(0.0, 0.0))
    }
    fn max_abs_diff(self, other: Self) -> f64 {
        cdiff(self.st, other.st).max(cdiff(self.du, other.du))
    }
}

/// Turns `(‖st‖², Σ inner, ‖du‖²)` into the dual 2-norm or F-norm.
fn dual_norm(st_sq: f64, inner: f64, du_sq: f64) -> DualNumber {
    let n = st_sq.sqrt();
    if n > 0.0 {
        DualNumber::new(n, inner / n)
    } else {
        DualNumber::new(0.0, du_sq.sqrt())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T> {
    pub entries: Vec<T>,
}

pub type DualQuaternionVector = Vector<DualQuaternion>;
pub type DualComplexVector = Vector<DualComplex>;

impl<T: DualScalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![T::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[i] = T::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_appreciable(&self) -> bool {
        self.entries.iter().any(|e| !e.is_st_zero())
    }

    fn parts(&self) -> (f64, f64, f64) {
        self.entries.iter().fold((0.0, 0.0, 0.0), |(s, i, d), e| {
            (
                s + e.st_norm_sqr(),
                i + e.st_du_inner(),
                d + e.du_norm_sqr(),
            )
        })
    }

    /// Dual 2-norm `sqrt(x*x)`, with the `‖x_du‖ε` branch for a vanishing
    /// standard part.
    pub fn norm2(&self) -> DualNumber {
        let (s, i, d) = self.parts();
        dual_norm(s, i, d)
    }

    /// `sqrt(‖x_st‖² + ‖x_du‖²)`.
    pub fn norm2r(&self) -> f64 {
        let (s, _, d) = self.parts();
        (s + d).sqrt()
    }

    /// Projection onto the unit 2-norm set.
    pub fn normalize(&self) -> Result<Self> {
        let (s, i, d) = self.parts();
        if s > 0.0 {
            let n = s.sqrt();
            let inv = DualNumber::new(1.0 / n, -i / (n * n * n));
            Ok(self.scale(inv))
        } else if d > 0.0 {
            let inv = DualNumber::real(1.0 / d.sqrt());
            Ok(Self::new(
                self.entries
                    .iter()
                    .map(|e| e.du_as_st().scale(inv))
                    .collect(),
            ))
        } else {
            Err(Error::ZeroVector)
        }
    }

    pub fn scale(&self, k: DualNumber) -> Self {
        Self::new(self.entries.iter().map(|e| e.scale(k)).collect())
    }

    /// `x·t` with `t` multiplied on the right of every entry.
    pub fn mul_right(&self, t: T) -> Self {
        Self::new(self.entries.iter().map(|&e| e * t).collect())
    }

    /// `self* · other`.
    pub fn dot(&self, other: &Self) -> Result<T> {
        check_len(self.len(), other.len())?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (&a, &b)| acc + a.conj() * b))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_len(self.len(), other.len())?;
        Ok(Self::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(0.0_f64, |m, (&a, &b)| m.max(a.max_abs_diff(b)))
    }

    /// Outer product `self · other*`.
    pub fn outer(&self, other: &Self) -> Matrix<T> {
        Matrix::from_fn(self.len(), other.len(), |i, j| {
            self.entries[i] * other.entries[j].conj()
        })
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.entries[i]
    }
}

impl<T> IndexMut<usize> for Vector<T> {
    fn index_mut(&mut self, i: usize) -> &mut T {
        &mut self.entries[i]
    }
}

fn check_len(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(format!(
            "vector lengths {a} and {b}"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type DualQuaternionMatrix = Matrix<DualQuaternion>;
pub type DualComplexMatrix = Matrix<DualComplex>;

impl<T: DualScalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_diag(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i] } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns(cols: &[Vector<T>]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        Ok(Self::from_fn(rows, cols.len(), |i, j| cols[j].entries[i]))
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

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::new((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn scale(&self, k: DualNumber) -> Self {
        self.map(|e| e.scale(k))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = *d + a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(Vector::new(
            self.data
                .chunks(self.cols.max(1))
                .take(self.rows)
                .map(|row| {
                    row.iter()
                        .zip(&v.entries)
                        .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (&a, &b)| m.max(a.max_abs_diff(b)))
    }

    /// Largest entrywise deviation of `A` from `A*`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max(self[(i, j)].max_abs_diff(self[(j, i)].conj()));
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let id = Self::identity(self.rows);
        let ok = |p: Result<Self>| p.map(|p| p.max_abs_diff(&id) <= tol).unwrap_or(false);
        ok(self.conj_transpose().matmul(self)) && ok(self.matmul(&self.conj_transpose()))
    }

    fn parts(&self) -> (f64, f64, f64) {
        self.data.iter().fold((0.0, 0.0, 0.0), |(s, i, d), e| {
            (
                s + e.st_norm_sqr(),
                i + e.st_du_inner(),
                d + e.du_norm_sqr(),
            )
        })
    }

    /// Dual F-norm `‖A_st‖_F + sc(tr(A_st* A_du))/‖A_st‖_F ε`.
    pub fn norm_f(&self) -> DualNumber {
        let (s, i, d) = self.parts();
        dual_norm(s, i, d)
    }

    /// `sqrt(‖A_st‖²_F + ‖A_du‖²_F)`.
    pub fn norm_fr(&self) -> f64 {
        let (s, _, d) = self.parts();
        (s + d).sqrt()
    }

    /// `x* A x` collapsed to a dual number, plus the discarded residue.
    pub fn quadratic_form(&self, x: &Vector<T>) -> Result<(DualNumber, f64)> {
        Ok(x.dot(&self.mul_vec(x)?)?.to_dual())
    }
}

impl DualComplexMatrix {
    /// `sqrt(‖P₁‖²_F + ‖P₂‖²_F ε)`; when `P₁ = 0` the value is `‖P₂‖_F ε`.
    pub fn norm_f_star(&self) -> DualNumber {
        let (s, _, d) = self.parts();
        if s > 0.0 {
            DualNumber::new(s, d).sqrt()
        } else {
            DualNumber::new(0.0, d.sqrt())
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}
