//! Componentwise Aitken Δ² extrapolation.

use num_complex::Complex64;

use crate::matrix::Vector;
use crate::scalar::{DualComplex, DualNumber, DualQuaternion, Quaternion};

/// Denominator guard used by the solvers.
pub const AITKEN_GUARD: f64 = 1e-14;

/// `x₀ − (x₁ − x₀)² / (x₂ + x₀ − 2x₁)`, or `x₀` itself when the denominator
/// is below `guard · max(1, |x₀|)`.
pub fn aitken(x0: f64, x1: f64, x2: f64, guard: f64) -> f64 {
    let den = x2 + x0 - 2.0 * x1;
    if den.abs() < guard * x0.abs().max(1.0) {
        return x0;
    }
    let d = x1 - x0;
    x0 - d * d / den
}

/// Values that extrapolate one real component at a time.
pub trait Extrapolate: Sized {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self;
}

impl Extrapolate for f64 {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        aitken(*a, *b, *c, guard)
    }
}

impl Extrapolate for DualNumber {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        DualNumber::new(
            aitken(a.st, b.st, c.st, guard),
            aitken(a.du, b.du, c.du, guard),
        )
    }
}

impl Extrapolate for Complex64 {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        Complex64::new(
            aitken(a.re, b.re, c.re, guard),
            aitken(a.im, b.im, c.im, guard),
        )
    }
}

impl Extrapolate for DualComplex {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        DualComplex::new(
            Extrapolate::aitken(&a.st, &b.st, &c.st, guard),
            Extrapolate::aitken(&a.du, &b.du, &c.du, guard),
        )
    }
}

impl Extrapolate for Quaternion {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        let (a, b, c) = (a.to_array(), b.to_array(), c.to_array());
        Quaternion::from_array(std::array::from_fn(|i| aitken(a[i], b[i], c[i], guard)))
    }
}

impl Extrapolate for DualQuaternion {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        DualQuaternion::new(
            Extrapolate::aitken(&a.st, &b.st, &c.st, guard),
            Extrapolate::aitken(&a.du, &b.du, &c.du, guard),
        )
    }
}

impl<T: Extrapolate> Extrapolate for Vector<T> {
    fn aitken(a: &Self, b: &Self, c: &Self, guard: f64) -> Self {
        Vector {
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .zip(&c.entries)
                .map(|((x, y), z)| T::aitken(x, y, z, guard))
                .collect(),
        }
    }
}

pub fn aitken_extrapolate<T: Extrapolate>(x0: &T, x1: &T, x2: &T, guard: f64) -> T {
    T::aitken(x0, x1, x2, guard)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_geometric() {
        let x = |k: i32| 5.0 + 3.0 * 0.5f64.powi(k);
        assert_eq!(aitken(x(7), x(8), x(9), AITKEN_GUARD), 5.0);
    }

    #[test]
    fn constant_passes_through() {
        assert_eq!(aitken(2.5, 2.5, 2.5, AITKEN_GUARD), 2.5);
        let d = DualNumber::new(1.0, -4.0);
        assert_eq!(aitken_extrapolate(&d, &d, &d, AITKEN_GUARD), d);
    }

    #[test]
    fn two_rate_sequence_improves() {
        let x = |k: i32| 2.0 + 0.9f64.powi(k) + 0.1 * 0.5f64.powi(k);
        let y = aitken(x(20), x(21), x(22), AITKEN_GUARD);
        assert!((y - 2.0).abs() < (x(20) - 2.0).abs());
    }

    #[test]
    fn dual_parts_separately() {
        let s = |k: i32| DualNumber::new(1.0 + 0.3f64.powi(k), -2.0 + 4.0 * 0.9f64.powi(k));
        let y = aitken_extrapolate(&s(3), &s(4), &s(5), AITKEN_GUARD);
        assert!((y.st - 1.0).abs() < 1e-14 && (y.du + 2.0).abs() < 1e-13);
    }
}
