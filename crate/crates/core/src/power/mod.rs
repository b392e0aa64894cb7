//! Power iterations for the dominant eigenpair of a dual quaternion
//! Hermitian matrix, plus deflation sweeps for the whole spectrum.
//!
//! The baseline iterates in dual quaternion arithmetic. The adjoint variants
//! iterate on `P = J(Q)` with dual complex vectors and map the limit back.

pub mod aitken;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::adjoint::{adjoint, vec_f, vec_f_inverse, vec_h};
use crate::error::{Error, Result};
use crate::matrix::{
    DualComplexVector, DualQuaternionMatrix, DualQuaternionVector, DualScalar, Matrix, Vector,
};
use crate::scalar::{DualNumber, DualQuaternion};
use crate::spectral::{canonicalize_phase, mean_residual, sort_pairs, EigenPair, EigenResult};

use self::aitken::{aitken_extrapolate, AITKEN_GUARD};

/// Imaginary residue of a Rayleigh quotient that is dropped silently,
/// relative to `max(1, |λ|)`.
pub const IMAG_DROP_TOL: f64 = 1e-10;
/// Default `‖P_k‖_Fᴿ` at which a deflation sweep stops.
pub const DEFLATE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIterConfig {
    pub max_iter: usize,
    /// Stopping threshold δ on the 2ᴿ residual.
    pub tol: f64,
    /// Residual γ below which Aitken extrapolation starts.
    pub aitken_trigger: f64,
    pub seed: u64,
}

impl Default for PowerIterConfig {
    fn default() -> Self {
        Self {
            max_iter: 5000,
            tol: 1e-6,
            aitken_trigger: 1e-3,
            seed: 0,
        }
    }
}

impl PowerIterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter == 0
            || self.tol.is_nan()
            || self.tol <= 0.0
            || self.aitken_trigger.is_nan()
            || self.aitken_trigger < self.tol
        {
            return Err(Error::InvalidConfig(format!(
                "need max_iter > 0, tol > 0 and aitken_trigger >= tol (got {}, {}, {})",
                self.max_iter, self.tol, self.aitken_trigger
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterRecord {
    pub lambda: DualNumber,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct IterTrace {
    pub records: Vec<IterRecord>,
    pub converged: bool,
    pub iterations: usize,
    /// Residual of the returned iterate.
    pub final_residual: f64,
    /// Largest non-real residue discarded from a Rayleigh quotient.
    pub max_dropped_imag: f64,
    /// Set when a discarded residue exceeded [`IMAG_DROP_TOL`].
    pub imag_flagged: bool,
}

impl IterTrace {
    fn note_residue(&mut self, residue: f64, lambda: DualNumber) {
        self.max_dropped_imag = self.max_dropped_imag.max(residue);
        let scale = lambda.st.abs().max(lambda.du.abs()).max(1.0);
        if residue > IMAG_DROP_TOL * scale {
            self.imag_flagged = true;
        }
    }

    fn push(&mut self, lambda: DualNumber, residual: f64) {
        self.records.push(IterRecord { lambda, residual });
        self.iterations = self.records.len();
        self.final_residual = residual;
    }
}

/// Result of a single-eigenpair solver.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantPair {
    pub value: DualNumber,
    pub vector: DualQuaternionVector,
    pub trace: IterTrace,
}

/// Splitmix64 finalizer over `seed` and a stream index.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Unit 2-norm start vector with standard-normal components.
pub fn random_unit_vector(n: usize, seed: u64) -> DualQuaternionVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let entries = (0..n)
            .map(|_| {
                DualQuaternion::from_array(std::array::from_fn(|_| rng.sample(StandardNormal)))
            })
            .collect();
        if let Ok(v) = DualQuaternionVector::new(entries).normalize() {
            return v;
        }
    }
}

struct Step<T> {
    lambda: DualNumber,
    residual: f64,
    next: Vector<T>,
}

fn step<T: DualScalar>(p: &Matrix<T>, u: &Vector<T>, trace: &mut IterTrace) -> Result<Step<T>> {
    let y = p.mul_vec(u)?;
    let raw = u.dot(&y)?;
    let (lambda, residue) = raw.to_dual();
    trace.note_residue(residue, lambda);
    let residual = y.try_sub(&u.mul_right(raw))?.norm2r();
    let next = y.normalize().unwrap_or_else(|_| u.clone());
    Ok(Step {
        lambda,
        residual,
        next,
    })
}

fn iterate<T: DualScalar>(
    p: &Matrix<T>,
    u0: Vector<T>,
    cfg: &PowerIterConfig,
) -> Result<(DualNumber, Vector<T>, IterTrace)> {
    cfg.validate()?;
    let mut trace = IterTrace::default();
    let mut u = u0;
    let mut lambda = DualNumber::ZERO;
    for _ in 0..cfg.max_iter {
        let s = step(p, &u, &mut trace)?;
        trace.push(s.lambda, s.residual);
        lambda = s.lambda;
        u = s.next;
        if s.residual <= cfg.tol {
            trace.converged = true;
            break;
        }
    }
    Ok((lambda, u, trace))
}

/// Power method in dual quaternion arithmetic.
pub fn power_method_baseline(
    q: &DualQuaternionMatrix,
    v0: &DualQuaternionVector,
    cfg: &PowerIterConfig,
) -> Result<DominantPair> {
    let (value, vector, trace) = iterate(q, v0.clone(), cfg)?;
    Ok(DominantPair {
        value,
        vector,
        trace,
    })
}

/// Power method on the dual complex adjoint.
pub fn dcam_pm(
    q: &DualQuaternionMatrix,
    v0: &DualQuaternionVector,
    cfg: &PowerIterConfig,
) -> Result<DominantPair> {
    let (value, u, trace) = iterate(&adjoint(q), vec_f(v0), cfg)?;
    Ok(DominantPair {
        value,
        vector: vec_f_inverse(&u)?,
        trace,
    })
}

/// Adjoint power method with Aitken extrapolation.
///
/// Once the raw residual reaches `aitken_trigger`, every iteration
/// extrapolates the last three eigenvalue and eigenvector iterates and stops
/// when the extrapolated pair has residual at most `tol`. If the raw
/// iterate meets `tol` first, it is returned instead.
pub fn adcam_pm(
    q: &DualQuaternionMatrix,
    v0: &DualQuaternionVector,
    cfg: &PowerIterConfig,
) -> Result<DominantPair> {
    cfg.validate()?;
    let p = adjoint(q);
    let mut trace = IterTrace::default();
    let mut u = vec_f(v0);
    let mut hist: Vec<(DualNumber, DualComplexVector)> = Vec::with_capacity(3);
    let mut value = DualNumber::ZERO;
    for _ in 0..cfg.max_iter {
        let s = step(&p, &u, &mut trace)?;
        trace.push(s.lambda, s.residual);
        if hist.len() == 3 {
            hist.remove(0);
        }
        hist.push((s.lambda, s.next.clone()));
        value = s.lambda;
        u = s.next;
        if s.residual <= cfg.aitken_trigger && hist.len() == 3 {
            let (l0, v0) = &hist[0];
            let (l1, v1) = &hist[1];
            let (l2, v2) = &hist[2];
            // a negative dominant value flips the iterate every step
            let mid = if l2.st < 0.0 {
                v1.scale(DualNumber::real(-1.0))
            } else {
                v1.clone()
            };
            let kappa = aitken_extrapolate(l0, l1, l2, AITKEN_GUARD);
            if let Ok(w) = aitken_extrapolate(v0, &mid, v2, AITKEN_GUARD).normalize() {
                let r = p.mul_vec(&w)?.try_sub(&w.scale(kappa))?.norm2r();
                if r <= cfg.tol {
                    trace.final_residual = r;
                    trace.converged = true;
                    return Ok(DominantPair {
                        value: kappa,
                        vector: vec_f_inverse(&w)?,
                        trace,
                    });
                }
            }
        }
        if s.residual <= cfg.tol {
            trace.converged = true;
            break;
        }
    }
    Ok(DominantPair {
        value,
        vector: vec_f_inverse(&u)?,
        trace,
    })
}

fn sweep<T: DualScalar>(
    q: &DualQuaternionMatrix,
    mut p: Matrix<T>,
    cfg: &PowerIterConfig,
    deflate_tol: f64,
    lift: impl Fn(&DualQuaternionVector) -> Vector<T>,
    deflate: impl Fn(&Matrix<T>, DualNumber, &Vector<T>) -> Result<Matrix<T>>,
    lower: impl Fn(&Vector<T>) -> Result<DualQuaternionVector>,
) -> Result<EigenResult> {
    let n = q.rows();
    let mut pairs = Vec::new();
    let mut total = 0;
    for stage in 0..n {
        if p.norm_fr() <= deflate_tol {
            break;
        }
        let v0 = random_unit_vector(n, mix_seed(cfg.seed, stage as u64));
        let (value, u, trace) = iterate(&p, lift(&v0), cfg)?;
        total += trace.iterations;
        if !trace.converged {
            sort_pairs(&mut pairs);
            let residual = mean_residual(q, &pairs)?;
            return Err(Error::InnerNoConvergence {
                stage,
                partial: Box::new(EigenResult {
                    pairs,
                    residual,
                    iterations: total,
                }),
                trace: Box::new(trace),
            });
        }
        p = deflate(&p, value, &u)?;
        pairs.push(EigenPair {
            value,
            vectors: vec![canonicalize_phase(&lower(&u)?)],
        });
    }
    sort_pairs(&mut pairs);
    let residual = mean_residual(q, &pairs)?;
    Ok(EigenResult {
        pairs,
        residual,
        iterations: total,
    })
}

/// Whole spectrum by repeated adjoint power iteration with deflation by
/// `λuu* + λvv*`, `v = H(u)`.
pub fn dcama_pm(
    q: &DualQuaternionMatrix,
    cfg: &PowerIterConfig,
    deflate_tol: f64,
) -> Result<EigenResult> {
    sweep(
        q,
        adjoint(q),
        cfg,
        deflate_tol,
        vec_f,
        |p, value, u| {
            let v = vec_h(u)?;
            p.try_sub(&u.outer(u).scale(value))?
                .try_sub(&v.outer(&v).scale(value))
        },
        vec_f_inverse,
    )
}

/// Whole spectrum by repeated baseline power iteration with deflation by
/// `λvv*` in dual quaternion arithmetic.
pub fn power_method_sweep(
    q: &DualQuaternionMatrix,
    cfg: &PowerIterConfig,
    deflate_tol: f64,
) -> Result<EigenResult> {
    sweep(
        q,
        q.clone(),
        cfg,
        deflate_tol,
        |v| v.clone(),
        |p, value, v| p.try_sub(&v.outer(v).scale(value)),
        |v| Ok(v.clone()),
    )
}
