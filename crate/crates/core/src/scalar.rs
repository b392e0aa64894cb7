//! Scalar carriers: dual numbers, dual complex numbers, quaternions and dual
//! quaternions.
//!
//! Every type stores a standard part and a dual part; products never produce
//! an ε² term, so the nilpotency of ε is structural rather than checked.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A dual number `st + du·ε` with real parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualNumber {
    pub st: f64,
    pub du: f64,
}

impl DualNumber {
    pub const ZERO: Self = Self { st: 0.0, du: 0.0 };
    pub const ONE: Self = Self { st: 1.0, du: 0.0 };

    pub const fn new(st: f64, du: f64) -> Self {
        Self { st, du }
    }

    pub const fn real(st: f64) -> Self {
        Self { st, du: 0.0 }
    }

    pub fn is_appreciable(&self) -> bool {
        self.st != 0.0
    }

    /// Division with the degenerate branch `(0 + aε)/(0 + bε) = a/b + 0ε`.
    ///
    /// The free constant of the degenerate quotient is fixed to zero.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        if rhs.st != 0.0 {
            let q = self.st / rhs.st;
            Ok(Self::new(
                q,
                self.du / rhs.st - self.st * rhs.du / (rhs.st * rhs.st),
            ))
        } else if self.st == 0.0 && rhs.du != 0.0 {
            Ok(Self::new(self.du / rhs.du, 0.0))
        } else {
            Err(Error::DivisionUndefined)
        }
    }

    pub fn recip(self) -> Result<Self> {
        Self::ONE.checked_div(self)
    }

    /// Lexicographic total order on `(st, du)`.
    pub fn compare(&self, other: &Self) -> Ordering {
        self.st
            .total_cmp(&other.st)
            .then_with(|| self.du.total_cmp(&other.du))
    }

    /// `|a|`: `|st| + sgn(st)·du·ε`, or `|du|ε` when the standard part vanishes.
    pub fn abs(self) -> Self {
        if self.st != 0.0 {
            Self::new(self.st.abs(), self.st.signum() * self.du)
        } else {
            Self::new(0.0, self.du.abs())
        }
    }

    /// Square root of a nonnegative appreciable dual number.
    pub fn sqrt(self) -> Self {
        let s = self.st.sqrt();
        if s > 0.0 {
            Self::new(s, self.du / (2.0 * s))
        } else {
            Self::ZERO
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.st * k, self.du * k)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.st - other.st).abs() <= tol && (self.du - other.du).abs() <= tol
    }
}

impl PartialOrd for DualNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.compare(other))
    }
}

impl fmt::Display for DualNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = f.precision().unwrap_or(6);
        if self.du < 0.0 {
            write!(f, "{:.*}-{:.*}ε", prec, self.st, prec, -self.du)
        } else {
            write!(f, "{:.*}+{:.*}ε", prec, self.st, prec, self.du)
        }
    }
}

impl Add for DualNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.st + rhs.st, self.du + rhs.du)
    }
}

impl Sub for DualNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.st - rhs.st, self.du - rhs.du)
    }
}

impl Mul for DualNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.st * rhs.st, self.st * rhs.du + self.du * rhs.st)
    }
}

impl Neg for DualNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.st, -self.du)
    }
}

/// A dual complex number `st + du·ε` with complex parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualComplex {
    pub st: Complex64,
    pub du: Complex64,
}

impl DualComplex {
    pub const ZERO: Self = Self {
        st: Complex64::new(0.0, 0.0),
        du: Complex64::new(0.0, 0.0),
    };
    pub const ONE: Self = Self {
        st: Complex64::new(1.0, 0.0),
        du: Complex64::new(0.0, 0.0),
    };

    pub const fn new(st: Complex64, du: Complex64) -> Self {
        Self { st, du }
    }

    pub fn conj(self) -> Self {
        Self::new(self.st.conj(), self.du.conj())
    }

    pub fn from_dual(d: DualNumber) -> Self {
        Self::new(Complex64::new(d.st, 0.0), Complex64::new(d.du, 0.0))
    }

    /// Real parts as a dual number, plus the magnitude of the discarded
    /// imaginary parts.
    pub fn to_dual(self) -> (DualNumber, f64) {
        let residue = self.st.im.abs().max(self.du.im.abs());
        (DualNumber::new(self.st.re, self.du.re), residue)
    }

    pub fn scale(self, k: DualNumber) -> Self {
        Self::new(self.st * k.st, self.st * k.du + self.du * k.st)
    }
}

impl Add for DualComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.st + rhs.st, self.du + rhs.du)
    }
}

impl Sub for DualComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.st - rhs.st, self.du - rhs.du)
    }
}

impl Mul for DualComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(self.st * rhs.st, self.st * rhs.du + self.du * rhs.st)
    }
}

impl Neg for DualComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.st, -self.du)
    }
}

/// A quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn scalar(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Splits `q = a₁ + a₂·j` into its complex components.
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.w, self.x),
            Complex64::new(self.y, self.z),
        )
    }

    pub fn from_complex_pair(a1: Complex64, a2: Complex64) -> Self {
        Self::new(a1.re, a1.im, a2.re, a2.im)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.w * k, self.x * k, self.y * k, self.z * k)
    }

    /// Scalar part `sc(q) = (q + q*)/2`.
    pub fn sc(self) -> f64 {
        self.w
    }

    /// Real inner product `sc(self* · other)`.
    pub fn dot(self, other: Self) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn inverse(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.w + r.w, self.x + r.x, self.y + r.y, self.z + r.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, r: Self) {
        *self = *self + r;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.w - r.w, self.x - r.x, self.y - r.y, self.z - r.z)
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, r: Self) {
        *self = *self - r;
    }
}

impl Mul for Quaternion {
    type Output = Self;
    // [p₀q₀ − p·q, p₀q + q₀p + p×q]
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// A dual quaternion `st + du·ε` with quaternion parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualQuaternion {
    pub st: Quaternion,
    pub du: Quaternion,
}

impl DualQuaternion {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO);
    pub const ONE: Self = Self::new(Quaternion::ONE, Quaternion::ZERO);

    pub const fn new(st: Quaternion, du: Quaternion) -> Self {
        Self { st, du }
    }

    pub fn from_dual(d: DualNumber) -> Self {
        Self::new(Quaternion::scalar(d.st), Quaternion::scalar(d.du))
    }

    /// Builds from the eight reals `[q₀,q₁,q₂,q₃, d₀,d₁,d₂,d₃]`.
    pub fn from_array(a: [f64; 8]) -> Self {
        Self::new(
            Quaternion::new(a[0], a[1], a[2], a[3]),
            Quaternion::new(a[4], a[5], a[6], a[7]),
        )
    }

    pub fn to_array(self) -> [f64; 8] {
        let (s, d) = (self.st, self.du);
        [s.w, s.x, s.y, s.z, d.w, d.x, d.y, d.z]
    }

    pub fn is_appreciable(&self) -> bool {
        !self.st.is_zero()
    }

    pub fn conj(self) -> Self {
        Self::new(self.st.conj(), self.du.conj())
    }

    /// Scalar parts as a dual number, plus the largest discarded vector
    /// component.
    pub fn to_dual(self) -> (DualNumber, f64) {
        let residue = [
            self.st.x, self.st.y, self.st.z, self.du.x, self.du.y, self.du.z,
        ]
        .iter()
        .fold(0.0_f64, |m, v| m.max(v.abs()));
        (DualNumber::new(self.st.w, self.du.w), residue)
    }

    pub fn scale(self, k: DualNumber) -> Self {
        Self::new(
            self.st.scale(k.st),
            self.st.scale(k.du) + self.du.scale(k.st),
        )
    }

    /// `|p|` as a dual number.
    pub fn magnitude(self) -> DualNumber {
        let n = self.st.norm();
        if n > 0.0 {
            DualNumber::new(n, self.st.dot(self.du) / n)
        } else {
            DualNumber::new(0.0, self.du.norm())
        }
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        let m = self.magnitude();
        (m.st - 1.0).abs() <= tol && m.du.abs() <= tol
    }

    pub fn inverse(self) -> Result<Self> {
        let inv = self.st.inverse().map_err(|_| Error::NotAppreciable)?;
        Ok(Self::new(inv, -(inv * self.du * inv)))
    }

    /// Nearest unit dual quaternion.
    ///
    /// When the standard part vanishes the result is `du/|du| + 0ε`.
    pub fn project_unit(self) -> Result<Self> {
        let n = self.st.norm();
        if n > 0.0 {
            let s = self.st.scale(1.0 / n);
            let d = self.du.scale(1.0 / n);
            Ok(Self::new(s, d - s.scale(s.dot(d))))
        } else {
            let m = self.du.norm();
            if m == 0.0 {
                return Err(Error::ZeroInput);
            }
            Ok(Self::new(self.du.scale(1.0 / m), Quaternion::ZERO))
        }
    }

    pub fn max_abs_diff(self, other: Self) -> f64 {
        self.st
            .max_abs_diff(other.st)
            .max(self.du.max_abs_diff(other.du))
    }
}

impl Add for DualQuaternion {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.st + r.st, self.du + r.du)
    }
}

impl Sub for DualQuaternion {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.st - r.st, self.du - r.du)
    }
}

impl Mul for DualQuaternion {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(self.st * r.st, self.st * r.du + self.du * r.st)
    }
}

impl Neg for DualQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.st, -self.du)
    }
}
