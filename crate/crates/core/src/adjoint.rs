//! Maps between dual quaternion objects and their dual complex adjoints.
//!
//! Every quaternion splits as `q = a₁ + a₂·j` with complex `a₁, a₂`. An
//! m×n dual quaternion matrix maps to the 2m×2n block matrix
//! `[A₁ A₂; −Ā₂ Ā₁]`, applied to the standard and dual parts alike. Vectors
//! map to the first block column, `F(v) = [v₁; −v̄₂]`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{
    DualComplexMatrix, DualComplexVector, DualQuaternionMatrix, DualQuaternionVector,
};
use crate::scalar::{DualComplex, DualQuaternion, Quaternion};

/// Relative tolerance on the redundant blocks accepted by [`adjoint_inverse`].
pub const ADJOINT_PATTERN_TOL: f64 = 1e-12;

fn split(p: DualQuaternion) -> (DualComplex, DualComplex) {
    let (s1, s2) = p.st.to_complex_pair();
    let (d1, d2) = p.du.to_complex_pair();
    (DualComplex::new(s1, d1), DualComplex::new(s2, d2))
}

fn join(a1: DualComplex, a2: DualComplex) -> DualQuaternion {
    DualQuaternion::new(
        Quaternion::from_complex_pair(a1.st, a2.st),
        Quaternion::from_complex_pair(a1.du, a2.du),
    )
}

pub fn adjoint(q: &DualQuaternionMatrix) -> DualComplexMatrix {
    let (m, n) = (q.rows(), q.cols());
    let mut out = DualComplexMatrix::zeros(2 * m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let (a1, a2) = split(q[(i, j)]);
            out[(i, j)] = a1;
            out[(i, n + j)] = a2;
            out[(m + i, j)] = -a2.conj();
            out[(m + i, n + j)] = a1.conj();
        }
    }
    out
}

/// Inverse of [`adjoint`]; redundant blocks are averaged first.
///
/// Fails when the blocks disagree by more than
/// `ADJOINT_PATTERN_TOL · max(1, max |entry|)`.
pub fn adjoint_inverse(p: &DualComplexMatrix) -> Result<DualQuaternionMatrix> {
    let (r, c) = (p.rows(), p.cols());
    if r % 2 != 0 || c % 2 != 0 {
        return Err(Error::DimensionMismatch(format!(
            "{r}x{c} is not an adjoint shape"
        )));
    }
    let (m, n) = (r / 2, c / 2);
    let mut scale = 1.0_f64;
    let mut dev = 0.0_f64;
    let mut out = DualQuaternionMatrix::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            let a1 = p[(i, j)];
            let a1b = p[(m + i, n + j)].conj();
            let a2 = p[(i, n + j)];
            let a2b = -p[(m + i, j)].conj();
            for e in [a1, a2] {
                scale = scale.max(e.st.norm()).max(e.du.norm());
            }
            dev = dev.max(max_diff(a1, a1b)).max(max_diff(a2, a2b));
            out[(i, j)] = join(mid(a1, a1b), mid(a2, a2b));
        }
    }
    if dev > ADJOINT_PATTERN_TOL * scale {
        return Err(Error::NotAdjointStructured { deviation: dev });
    }
    Ok(out)
}

fn max_diff(a: DualComplex, b: DualComplex) -> f64 {
    (a.st - b.st).norm().max((a.du - b.du).norm())
}

fn mid(a: DualComplex, b: DualComplex) -> DualComplex {
    DualComplex::new((a.st + b.st) * 0.5, (a.du + b.du) * 0.5)
}

pub fn vec_f(v: &DualQuaternionVector) -> DualComplexVector {
    let n = v.len();
    let mut out = vec![DualComplex::ZERO; 2 * n];
    for (i, &e) in v.entries.iter().enumerate() {
        let (a1, a2) = split(e);
        out[i] = a1;
        out[n + i] = -a2.conj();
    }
    DualComplexVector::new(out)
}

pub fn vec_f_inverse(u: &DualComplexVector) -> Result<DualQuaternionVector> {
    if u.len() % 2 != 0 {
        return Err(Error::OddLength(u.len()));
    }
    let n = u.len() / 2;
    Ok(DualQuaternionVector::new(
        (0..n).map(|i| join(u[i], -u[n + i].conj())).collect(),
    ))
}

/// `H([u₁; u₂]) = [ū₂; −ū₁]`, so that `H(F(v)) = F(v·j)`.
pub fn vec_h(u: &DualComplexVector) -> Result<DualComplexVector> {
    if u.len() % 2 != 0 {
        return Err(Error::OddLength(u.len()));
    }
    let n = u.len() / 2;
    let mut out = vec![DualComplex::ZERO; 2 * n];
    for i in 0..n {
        out[i] = u[n + i].conj();
        out[n + i] = -u[i].conj();
    }
    Ok(DualComplexVector::new(out))
}

/// Residuals of the three equivalent eigen-equations for one candidate pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenEquivalence {
    /// `‖Qv − vλ‖₂ᴿ` in dual quaternion arithmetic.
    pub quaternion: f64,
    /// `‖P·F(v) − λ·F(v)‖₂ᴿ` on the adjoint.
    pub first: f64,
    /// `‖P·F(vj) − λ̄·F(vj)‖₂ᴿ` on the adjoint.
    pub second: f64,
}

impl EigenEquivalence {
    pub fn max(&self) -> f64 {
        self.quaternion.max(self.first).max(self.second)
    }

    /// All three residuals agree with each other within `tol`.
    pub fn agree(&self, tol: f64) -> bool {
        let r = [self.quaternion, self.first, self.second];
        let hi = r.iter().cloned().fold(f64::MIN, f64::max);
        let lo = r.iter().cloned().fold(f64::MAX, f64::min);
        hi - lo <= tol
    }
}

fn complex_as_quaternion(c: Complex64) -> Quaternion {
    Quaternion::new(c.re, c.im, 0.0, 0.0)
}

pub fn check_eigen_equivalence(
    q: &DualQuaternionMatrix,
    lambda: DualComplex,
    v: &DualQuaternionVector,
) -> Result<EigenEquivalence> {
    let lq = DualQuaternion::new(
        complex_as_quaternion(lambda.st),
        complex_as_quaternion(lambda.du),
    );
    let quaternion = q.mul_vec(v)?.try_sub(&v.mul_right(lq))?.norm2r();
    let p = adjoint(q);
    let u1 = vec_f(v);
    let u2 = vec_h(&u1)?;
    let left = |u: &DualComplexVector, l: DualComplex| -> Result<f64> {
        let lu = DualComplexVector::new(u.entries.iter().map(|&e| l * e).collect());
        Ok(p.mul_vec(u)?.try_sub(&lu)?.norm2r())
    };
    Ok(EigenEquivalence {
        quaternion,
        first: left(&u1, lambda)?,
        second: left(&u2, lambda.conj())?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::DualNumber;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dc(re: f64, im: f64) -> DualComplex {
        DualComplex::new(c(re, im), c(0.0, 0.0))
    }

    #[test]
    fn identity_maps_to_identity() {
        assert_eq!(
            adjoint(&DualQuaternionMatrix::identity(3)),
            DualComplexMatrix::identity(6)
        );
        assert_eq!(
            adjoint_inverse(&DualComplexMatrix::identity(6)).unwrap(),
            DualQuaternionMatrix::identity(3)
        );
    }

    #[test]
    fn unit_k_block() {
        let k = DualQuaternionMatrix::from_diag(&[DualQuaternion::new(
            Quaternion::K,
            Quaternion::ZERO,
        )]);
        let p = adjoint(&k);
        assert_eq!(p[(0, 0)], DualComplex::ZERO);
        assert_eq!(p[(0, 1)], dc(0.0, 1.0));
        assert_eq!(p[(1, 0)], dc(0.0, 1.0));
        assert_eq!(p[(1, 1)], DualComplex::ZERO);
    }

    #[test]
    fn pattern_violation_rejected() {
        let mut p = DualComplexMatrix::identity(4);
        p[(0, 0)] = dc(2.0, 0.0);
        assert!(matches!(
            adjoint_inverse(&p),
            Err(Error::NotAdjointStructured { .. })
        ));
        let odd = DualComplexMatrix::identity(3);
        assert!(matches!(
            adjoint_inverse(&odd),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn vector_maps() {
        let one = DualQuaternionVector::new(vec![DualQuaternion::ONE]);
        assert_eq!(
            vec_f(&one).entries,
            vec![DualComplex::ONE, DualComplex::ZERO]
        );
        let u = DualComplexVector::new(vec![
            DualComplex::new(c(1.0, 2.0), c(0.5, 0.0)),
            DualComplex::new(c(-3.0, 4.0), c(0.0, -1.0)),
        ]);
        let h = vec_h(&u).unwrap();
        assert_eq!(h[0], u[1].conj());
        assert_eq!(h[1], -u[0].conj());
        assert!(matches!(
            vec_h(&DualComplexVector::zeros(3)),
            Err(Error::OddLength(3))
        ));
        assert!(matches!(
            vec_f_inverse(&DualComplexVector::zeros(3)),
            Err(Error::OddLength(3))
        ));
    }

    #[test]
    fn diagonal_equivalence() {
        let d = |st: f64, du: f64| DualQuaternion::from_dual(DualNumber::new(st, du));
        let q = DualQuaternionMatrix::from_diag(&[d(2.0, 1.0), d(1.0, 0.0)]);
        let v = DualQuaternionVector::basis(2, 0);
        let lam = DualComplex::from_dual(DualNumber::new(2.0, 1.0));
        let r = check_eigen_equivalence(&q, lam, &v).unwrap();
        assert_eq!(r.max(), 0.0);
        let off = DualComplex::from_dual(DualNumber::new(2.1, 1.0));
        let r = check_eigen_equivalence(&q, off, &v).unwrap();
        assert!((r.quaternion - 0.1).abs() < 1e-12);
        assert!(r.agree(1e-12));
    }
}
