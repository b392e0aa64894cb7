//! Dual complex Hermitian eigendecomposition and the full-spectrum solver
//! for dual quaternion Hermitian matrices built on top of it.
//!
//! The decomposition diagonalizes the standard part, refines each eigenvalue
//! cluster with the projected dual part, and corrects the basis to first
//! order: `Û = UV(I + Tε)`.

use std::cmp::Ordering;

use num_complex::Complex64;

use crate::adjoint::{adjoint, vec_f_inverse};
use crate::complex_eig::{cluster_eigenvalues, eig_hermitian, CMatrix, Cluster, EIG_TOL};
use crate::error::{Error, Result};
use crate::matrix::{DualComplexMatrix, DualQuaternionMatrix, DualQuaternionVector, PREDICATE_TOL};
use crate::scalar::{DualComplex, DualNumber, DualQuaternion};

/// Default relative tolerance for merging eigenvalues.
pub const TOL_GROUP: f64 = 1e-8;
/// Default relative threshold below which a Gram-Schmidt residual is dropped.
pub const TOL_RANK: f64 = 1e-8;
/// Largest accepted `‖Qv − vλ‖₂ᴿ / max(1, ‖Q‖_Fᴿ)` for an eigenvector input.
pub const EIGENVECTOR_CHECK: f64 = 1e-8;

/// Standard and dual parts as separate complex matrices.
pub fn split_parts(p: &DualComplexMatrix) -> (CMatrix, CMatrix) {
    let st = CMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)].st);
    let du = CMatrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)].du);
    (st, du)
}

pub fn join_parts(st: &CMatrix, du: &CMatrix) -> DualComplexMatrix {
    DualComplexMatrix::from_fn(st.rows(), st.cols(), |i, j| {
        DualComplex::new(st[(i, j)], du[(i, j)])
    })
}

/// `P = Û Σ̂ Û*` with `Û` unitary and `Σ̂` a dual number diagonal.
#[derive(Debug, Clone)]
pub struct DualEigenDecomposition {
    pub u_hat: DualComplexMatrix,
    /// Diagonal of `Σ̂`, in descending dual order.
    pub sigma: Vec<DualNumber>,
    /// Standard-part clusters in descending order.
    pub clusters: Vec<Cluster>,
    /// Dual part expressed in the refined standard basis, `(UV)* P₂ (UV)`.
    pub coupling: CMatrix,
    /// First-order basis correction; zero on the cluster diagonal blocks.
    pub correction: CMatrix,
}

pub fn eig_dual_complex_hermitian(
    p: &DualComplexMatrix,
    tol_group: f64,
) -> Result<DualEigenDecomposition> {
    if !p.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            p.rows(),
            p.cols()
        )));
    }
    let dev = p.hermitian_deviation();
    if dev > PREDICATE_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = p.rows();
    let (p1, p2) = split_parts(p);
    let (p1, p2) = (p1.hermitian_part(), p2.hermitian_part());
    let eig = eig_hermitian(&p1, EIG_TOL)?;
    let clusters = cluster_eigenvalues(&eig.values, tol_group);
    let scale = eig.values.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    for w in clusters.windows(2) {
        if (w[0].value - w[1].value).abs() < 10.0 * tol_group * scale {
            return Err(Error::ClusterInstability {
                left: w[0].value,
                right: w[1].value,
            });
        }
    }

    let u = eig.vectors;
    let b = u.conj_transpose().matmul(&p2)?.matmul(&u)?.hermitian_part();
    let mut v = CMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for c in &clusters {
        let blk = b.block(c.start, c.start, c.multiplicity, c.multiplicity);
        let e = eig_hermitian(&blk, EIG_TOL)?;
        v.set_block(c.start, c.start, &e.vectors);
        sigma.extend(e.values.iter().map(|&mu| DualNumber::new(c.value, mu)));
    }
    let w = u.matmul(&v)?;
    let coupling = w.conj_transpose().matmul(&p2)?.matmul(&w)?;
    let mut t = CMatrix::zeros(n, n);
    for (bi, ci) in clusters.iter().enumerate() {
        for (bj, cj) in clusters.iter().enumerate() {
            if bi == bj {
                continue;
            }
            let gap = cj.value - ci.value;
            for i in ci.start..ci.start + ci.multiplicity {
                for j in cj.start..cj.start + cj.multiplicity {
                    t[(i, j)] = coupling[(i, j)] / gap;
                }
            }
        }
    }
    let u_hat = join_parts(&w, &w.matmul(&t)?);
    Ok(DualEigenDecomposition {
        u_hat,
        sigma,
        clusters,
        coupling,
        correction: t,
    })
}

/// One eigenvalue with an orthonormal set of eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: DualNumber,
    pub vectors: Vec<DualQuaternionVector>,
}

/// Solver output: eigenpairs in descending dual order and the mean residual.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EigenResult {
    pub pairs: Vec<EigenPair>,
    /// `(1/m) Σₖ ‖Q uₖ − uₖ λₖ‖₂ᴿ` over all `m` returned eigenvectors.
    pub residual: f64,
    /// Total power iterations spent; zero for direct solvers.
    pub iterations: usize,
}

impl EigenResult {
    pub fn vector_count(&self) -> usize {
        self.pairs.iter().map(|p| p.vectors.len()).sum()
    }

    /// Eigenvalues repeated by the number of eigenvectors found for each.
    pub fn values(&self) -> Vec<DualNumber> {
        self.pairs
            .iter()
            .flat_map(|p| std::iter::repeat(p.value).take(p.vectors.len()))
            .collect()
    }

    /// `Û Σ̂ Û*` assembled from every returned eigenpair.
    pub fn reconstruct(&self, n: usize) -> Result<DualQuaternionMatrix> {
        let mut acc = DualQuaternionMatrix::zeros(n, n);
        for p in &self.pairs {
            for v in &p.vectors {
                acc = acc.try_add(&v.outer(v).scale(p.value))?;
            }
        }
        Ok(acc)
    }
}

/// `‖Q v − v λ‖₂ᴿ`.
pub fn pair_residual(
    q: &DualQuaternionMatrix,
    value: DualNumber,
    v: &DualQuaternionVector,
) -> Result<f64> {
    Ok(q.mul_vec(v)?.try_sub(&v.scale(value))?.norm2r())
}

/// Mean eigen residual over every eigenvector in `pairs`.
pub fn mean_residual(q: &DualQuaternionMatrix, pairs: &[EigenPair]) -> Result<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for p in pairs {
        for v in &p.vectors {
            sum += pair_residual(q, p.value, v)?;
            count += 1;
        }
    }
    Ok(if count == 0 { 0.0 } else { sum / count as f64 })
}

/// Orders pairs by descending dual value.
pub fn sort_pairs(pairs: &mut [EigenPair]) {
    pairs.sort_by(|a, b| b.value.compare(&a.value));
}

/// Right-multiplies `v` by the unit dual quaternion that turns its entry of
/// largest standard magnitude into a nonnegative dual number.
pub fn canonicalize_phase(v: &DualQuaternionVector) -> DualQuaternionVector {
    let pivot = v.entries.iter().copied().max_by(|a, b| {
        a.st.norm_sqr()
            .partial_cmp(&b.st.norm_sqr())
            .unwrap_or(Ordering::Equal)
    });
    let Some(e) = pivot else { return v.clone() };
    let Ok(inv) = e.magnitude().recip() else {
        return v.clone();
    };
    if e.st.is_zero() {
        return v.clone();
    }
    v.mul_right(e.conj().scale(inv))
}

/// Gram-Schmidt over eigenvectors that share one eigenvalue.
///
/// Each input is checked to be an eigenvector first. A candidate whose
/// residual has standard norm at most `tol_rank · max(1, ‖v‖₂ᴿ)` is dropped.
pub fn orthogonalize_eigenvectors(
    vs: &[DualQuaternionVector],
    q: &DualQuaternionMatrix,
    value: DualNumber,
    tol_rank: f64,
) -> Result<Vec<DualQuaternionVector>> {
    let check = EIGENVECTOR_CHECK * q.norm_fr().max(1.0);
    for v in vs {
        let residual = pair_residual(q, value, v)?;
        if residual > check {
            return Err(Error::NotAnEigenvector { residual });
        }
    }
    let mut basis: Vec<DualQuaternionVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        // two passes keep the result orthogonal to rounding level
        for _ in 0..2 {
            for u in &basis {
                w = w.try_sub(&u.mul_right(u.dot(&w)?))?;
            }
        }
        if w.norm2().st > tol_rank * v.norm2r().max(1.0) {
            basis.push(w.normalize()?);
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EddcamOptions {
    pub tol_group: f64,
    pub tol_rank: f64,
}

impl Default for EddcamOptions {
    fn default() -> Self {
        Self {
            tol_group: TOL_GROUP,
            tol_rank: TOL_RANK,
        }
    }
}

/// Full eigendecomposition of a dual quaternion Hermitian matrix through
/// its dual complex adjoint.
pub fn eddcam_ea(q: &DualQuaternionMatrix, opts: EddcamOptions) -> Result<EigenResult> {
    if !q.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            q.rows(),
            q.cols()
        )));
    }
    let dev = q.hermitian_deviation();
    if dev > PREDICATE_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let dec = eig_dual_complex_hermitian(&adjoint(q), opts.tol_group)?;
    let scale = dec
        .sigma
        .iter()
        .fold(1.0_f64, |m, s| m.max(s.st.abs()).max(s.du.abs()));
    let same = |a: DualNumber, b: DualNumber| a.approx_eq(&b, opts.tol_group * scale);

    let mut pairs = Vec::new();
    let mut start = 0;
    while start < dec.sigma.len() {
        let mut end = start + 1;
        while end < dec.sigma.len() && same(dec.sigma[end - 1], dec.sigma[end]) {
            end += 1;
        }
        let group = &dec.sigma[start..end];
        let value = DualNumber::new(
            group.iter().map(|s| s.st).sum::<f64>() / group.len() as f64,
            group.iter().map(|s| s.du).sum::<f64>() / group.len() as f64,
        );
        let vs = (start..end)
            .map(|j| vec_f_inverse(&dec.u_hat.column(j)))
            .collect::<Result<Vec<_>>>()?;
        let ws = orthogonalize_eigenvectors(&vs, q, value, opts.tol_rank)?;
        let adjoint_count = end - start;
        if adjoint_count % 2 != 0 || ws.len() * 2 != adjoint_count {
            return Err(Error::EigenvectorCountMismatch {
                value: format!("{value:.6}"),
                adjoint: adjoint_count,
                found: ws.len(),
            });
        }
        pairs.push(EigenPair {
            value,
            vectors: ws.iter().map(canonicalize_phase).collect(),
        });
        start = end;
    }
    sort_pairs(&mut pairs);
    let residual = mean_residual(q, &pairs)?;
    Ok(EigenResult {
        pairs,
        residual,
        iterations: 0,
    })
}

/// `Û* P Û`, used to check the decomposition.
pub fn diagonalized(
    dec: &DualEigenDecomposition,
    p: &DualComplexMatrix,
) -> Result<DualComplexMatrix> {
    dec.u_hat.conj_transpose().matmul(p)?.matmul(&dec.u_hat)
}

/// Largest entry of `Q_ij + λ_j T*_ji + λ_i T_ij` over off-diagonal cluster blocks.
pub fn off_block_cancellation(dec: &DualEigenDecomposition) -> f64 {
    let (q, t) = (&dec.coupling, &dec.correction);
    let mut owner = vec![0usize; q.rows()];
    for (k, c) in dec.clusters.iter().enumerate() {
        for o in owner.iter_mut().skip(c.start).take(c.multiplicity) {
            *o = k;
        }
    }
    let mut worst = 0.0_f64;
    for i in 0..q.rows() {
        for j in 0..q.cols() {
            if owner[i] == owner[j] {
                continue;
            }
            let li = Complex64::new(dec.clusters[owner[i]].value, 0.0);
            let lj = Complex64::new(dec.clusters[owner[j]].value, 0.0);
            let r = q[(i, j)] + lj * t[(j, i)].conj() + li * t[(i, j)];
            worst = worst.max(r.norm());
        }
    }
    worst
}

/// Largest deviation of an eigenvector set from orthonormality.
pub fn orthonormality_defect(vs: &[DualQuaternionVector]) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let target = if i == j {
                DualQuaternion::ONE
            } else {
                DualQuaternion::ZERO
            };
            worst = worst.max(a.dot(b)?.max_abs_diff(target));
        }
    }
    Ok(worst)
}
