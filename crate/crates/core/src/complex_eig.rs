//! Complex Hermitian eigensolver (cyclic Jacobi) and eigenvalue clustering.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal mass, relative to `max(1, ‖H‖_F)`, at which sweeping stops.
pub const EIG_TOL: f64 = 1e-14;
/// Largest accepted entrywise deviation from Hermitian input.
pub const HERMITIAN_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 60;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
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
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn norm_f(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn hermitian_deviation(&self) -> f64 {
        if self.rows != self.cols {
            return f64::INFINITY;
        }
        let mut dev = 0.0_f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn from_diag_real(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues in non-increasing order with unitary eigenvector columns.
#[derive(Debug, Clone)]
pub struct ComplexHermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

fn off_norm(a: &CMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `A ← G*AG` and `V ← VG` for the rotation acting on `(p, q)`.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    let phase = Complex64::new(apq.re / mag, -apq.im / mag);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * mag);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * -s;
    let g_qq = phase * c;
    let n = a.rows;
    let d = &mut a.data;
    for k in 0..n {
        let (ip, iq) = (k * n + p, k * n + q);
        let (akp, akq) = (d[ip], d[iq]);
        d[ip] = akp * g_pp + akq * g_qp;
        d[iq] = akp * g_pq + akq * g_qq;
    }
    let (rp, rq) = (p * n, q * n);
    for k in 0..n {
        let (apk, aqk) = (d[rp + k], d[rq + k]);
        d[rp + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        d[rq + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    let zero = Complex64::new(0.0, 0.0);
    d[rp + q] = zero;
    d[rq + p] = zero;
    d[rp + p].im = 0.0;
    d[rq + q].im = 0.0;
    let d = &mut v.data;
    for k in 0..n {
        let (ip, iq) = (k * n + p, k * n + q);
        let (vkp, vkq) = (d[ip], d[iq]);
        d[ip] = vkp * g_pp + vkq * g_qp;
        d[iq] = vkp * g_pq + vkq * g_qq;
    }
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi sweeps.
///
/// Sweeping stops once the off-diagonal Frobenius mass is at most
/// `tol · max(1, ‖H‖_F)`.
pub fn eig_hermitian(h: &CMatrix, tol: f64) -> Result<ComplexHermitianEig> {
    if h.rows != h.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            h.rows, h.cols
        )));
    }
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = h.rows;
    let mut a = h.hermitian_part();
    let mut v = CMatrix::identity(n);
    let target = tol * a.norm_f().max(1.0);
    // entries this small cannot keep the off-diagonal mass above target
    let skip = target / n.max(1) as f64;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].norm() > skip {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(ComplexHermitianEig { values, vectors })
}

/// A run of numerically equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    /// Mean of the members.
    pub value: f64,
    pub multiplicity: usize,
    /// Index of the first member in the sorted value list.
    pub start: usize,
}

/// Merges consecutive sorted values closer than `tol_group · max(1, max|λ|)`.
pub fn cluster_eigenvalues(values: &[f64], tol_group: f64) -> Vec<Cluster> {
    let scale = values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let gap = tol_group * scale;
    let mut out: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    for (i, &x) in values.iter().enumerate() {
        match out.last_mut() {
            Some(c) if (values[i - 1] - x).abs() <= gap => {
                c.multiplicity += 1;
                sum += x;
                c.value = sum / c.multiplicity as f64;
            }
            _ => {
                out.push(Cluster {
                    value: x,
                    multiplicity: 1,
                    start: i,
                });
                sum = x;
            }
        }
    }
    out
}
