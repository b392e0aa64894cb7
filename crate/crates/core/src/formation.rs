//! Problem generators and benchmark drivers: visibility-graph Laplacians,
//! random Hermitian matrices, planted-spectrum fixtures and the pentagon
//! formation.

use std::time::Instant;

use rand::distr::{Distribution, Uniform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{DualQuaternionMatrix, DualQuaternionVector};
use crate::power::{
    adcam_pm, dcam_pm, dcama_pm, mix_seed, power_method_sweep, random_unit_vector, DominantPair,
    PowerIterConfig, DEFLATE_TOL,
};
use crate::scalar::{DualNumber, DualQuaternion, Quaternion};
use crate::spectral::{eddcam_ea, pair_residual, EddcamOptions, EigenResult};

/// Graph of mutually visible agents with one pose per agent.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityGraph {
    pub n: usize,
    /// Unordered pairs stored as `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    pub poses: Vec<DualQuaternion>,
}

impl VisibilityGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, poses: Vec<DualQuaternion>) -> Result<Self> {
        if poses.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} poses for {n} agents",
                poses.len()
            )));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::DimensionMismatch(format!("invalid edge ({a}, {b})")));
            }
            let e = (a.min(b), a.max(b));
            if norm.contains(&e) {
                return Err(Error::DimensionMismatch(format!(
                    "duplicate edge ({a}, {b})"
                )));
            }
            norm.push(e);
        }
        if let Some(p) = poses.iter().find(|p| !p.is_unit(1e-12)) {
            return Err(Error::DimensionMismatch(format!(
                "pose {p:?} is not a unit dual quaternion"
            )));
        }
        Ok(Self {
            n,
            edges: norm,
            poses,
        })
    }

    /// `s = 2|E|/n²`.
    pub fn sparsity(&self) -> f64 {
        2.0 * self.edges.len() as f64 / (self.n * self.n) as f64
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

/// `L = D − A` with `a_ij = q_i* q_j` on edges.
pub fn build_laplacian(g: &VisibilityGraph) -> DualQuaternionMatrix {
    let mut l = DualQuaternionMatrix::zeros(g.n, g.n);
    for (i, d) in g.degrees().into_iter().enumerate() {
        l[(i, i)] = DualQuaternion::from_dual(DualNumber::real(d as f64));
    }
    for &(i, j) in &g.edges {
        let a = g.poses[i].conj() * g.poses[j];
        l[(i, j)] = -a;
        l[(j, i)] = -a.conj();
    }
    l
}

const PENTAGON_ST: [[f64; 4]; 5] = [
    [-0.5103, -0.2661, -0.2632, -0.7743],
    [0.2881, -0.6705, -0.2305, -0.6437],
    [-0.1236, 0.1789, -0.7519, -0.6223],
    [-0.5605, -0.2485, -0.6001, -0.5138],
    [-0.5946, -0.1002, -0.2584, -0.7547],
];

const PENTAGON_DU: [[f64; 4]; 5] = [
    [0.2645, -0.4286, 0.4180, -0.1691],
    [-0.3885, -0.5378, 0.2295, 0.3042],
    [-0.9227, -0.9461, 0.1770, -0.3027],
    [-0.2963, -0.3621, 0.6937, -0.3117],
    [-0.2488, 0.2520, 0.0635, 0.1408],
];

/// Published eigenvalues of the pentagon fixture, rounded to four decimals.
pub const PENTAGON_EIGENVALUES: [DualNumber; 5] = [
    DualNumber::new(2.0, 3.0),
    DualNumber::new(0.6180, 3.5257),
    DualNumber::new(0.6180, 2.4743),
    DualNumber::new(-1.6180, 3.8507),
    DualNumber::new(-1.6180, 2.1493),
];

/// Pentagon poses as printed (four decimals), before projection.
pub fn pentagon_raw_poses() -> Vec<DualQuaternion> {
    PENTAGON_ST
        .iter()
        .zip(PENTAGON_DU.iter())
        .map(|(s, d)| DualQuaternion::new(Quaternion::from_array(*s), Quaternion::from_array(*d)))
        .collect()
}

/// Five agents on a cycle: `p_ij = q_i* q_j` on edges and `i·ε` on the
/// diagonal (1-based `i`).
///
/// The printed poses carry four decimals and miss the unit constraint by
/// about 1e-4; each is projected onto the unit set first so that the two
/// repeated standard eigenvalues are exactly degenerate.
pub fn pentagon_fixture() -> DualQuaternionMatrix {
    let poses: Vec<DualQuaternion> = pentagon_raw_poses()
        .into_iter()
        .map(|p| p.project_unit().expect("printed poses are appreciable"))
        .collect();
    let mut m = DualQuaternionMatrix::zeros(5, 5);
    for i in 0..5 {
        m[(i, i)] = DualQuaternion::from_dual(DualNumber::new(0.0, (i + 1) as f64));
        let j = (i + 1) % 5;
        let a = poses[i].conj() * poses[j];
        m[(i, j)] = a;
        m[(j, i)] = a.conj();
    }
    m
}

fn random_unit_pose(rng: &mut ChaCha8Rng) -> DualQuaternion {
    loop {
        let p = DualQuaternion::from_array(std::array::from_fn(|_| rng.sample(StandardNormal)));
        if let Ok(u) = p.project_unit() {
            return u;
        }
    }
}

/// Uniform graph with `round(s·n²/2)` edges and random unit poses.
pub fn random_graph(n: usize, s: f64, seed: u64) -> Result<VisibilityGraph> {
    let capacity = n * n.saturating_sub(1) / 2;
    let edges = (s * (n * n) as f64 / 2.0).round() as usize;
    if edges > capacity {
        return Err(Error::SparsityTooHigh { edges, capacity });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut picked: Vec<(usize, usize)> = rand::seq::index::sample(&mut rng, capacity, edges)
        .into_iter()
        .map(|k| all[k])
        .collect();
    picked.sort_unstable();
    let poses = (0..n).map(|_| random_unit_pose(&mut rng)).collect();
    VisibilityGraph::new(n, picked, poses)
}

/// `(A + A*)/2` with every real component of `A` uniform in `[−1, 1]`.
pub fn random_hermitian(n: usize, seed: u64) -> DualQuaternionMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let unif = Uniform::new_inclusive(-1.0, 1.0).expect("valid range");
    let a = DualQuaternionMatrix::from_fn(n, n, |_, _| {
        DualQuaternion::from_array(std::array::from_fn(|_| unif.sample(&mut rng)))
    });
    hermitian_part(&a)
}

fn hermitian_part(a: &DualQuaternionMatrix) -> DualQuaternionMatrix {
    let half = DualNumber::real(0.5);
    DualQuaternionMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        (a[(i, j)] + a[(j, i)].conj()).scale(half)
    })
}

/// Random unitary quaternion matrix by Gram-Schmidt on Gaussian columns.
pub fn random_unitary(n: usize, seed: u64) -> Result<DualQuaternionMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cols: Vec<DualQuaternionVector> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v = DualQuaternionVector::new(
            (0..n)
                .map(|_| {
                    let q =
                        Quaternion::from_array(std::array::from_fn(|_| rng.sample(StandardNormal)));
                    DualQuaternion::new(q, Quaternion::ZERO)
                })
                .collect(),
        );
        let before = v.norm2r();
        for _ in 0..2 {
            for u in &cols {
                v = v.try_sub(&u.mul_right(u.dot(&v)?))?;
            }
        }
        if v.norm2r() <= 1e-8 * before {
            return Err(Error::DegenerateRandomDraw);
        }
        cols.push(v.normalize()?);
    }
    DualQuaternionMatrix::from_columns(&cols)
}

/// `V diag(σ) V*` for a random unitary quaternion `V`; returns the matrix
/// and `σ` sorted in descending dual order.
pub fn synth_known_spectrum(
    n: usize,
    sigma: &[DualNumber],
    seed: u64,
) -> Result<(DualQuaternionMatrix, Vec<DualNumber>)> {
    if sigma.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} values for n = {n}",
            sigma.len()
        )));
    }
    let v = random_unitary(n, seed)?;
    let d = DualQuaternionMatrix::from_diag(
        &sigma
            .iter()
            .map(|&s| DualQuaternion::from_dual(s))
            .collect::<Vec<_>>(),
    );
    let q = hermitian_part(&v.matmul(&d)?.matmul(&v.conj_transpose())?);
    let mut planted = sigma.to_vec();
    planted.sort_by(|a, b| b.compare(a));
    Ok((q, planted))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchKind {
    /// DCAM-PM against ADCAM-PM on random Hermitian matrices.
    Aitken,
    /// Baseline sweep, DCAMA-PM and EDDCAM-EA on random graph Laplacians.
    Laplacian,
    /// EDDCAM-EA and the baseline sweep on the pentagon fixture.
    Pentagon,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchParams {
    pub sizes: Vec<usize>,
    /// Only used by the Laplacian kind.
    pub sparsities: Vec<f64>,
    pub trials: usize,
    pub power: PowerIterConfig,
    pub deflate_tol: f64,
    /// Worker threads; 0 picks automatically, 1 runs sequentially.
    pub threads: usize,
}

impl Default for BenchParams {
    fn default() -> Self {
        Self {
            sizes: vec![10],
            sparsities: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6],
            trials: 10,
            power: PowerIterConfig::default(),
            deflate_tol: DEFLATE_TOL,
            threads: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub algorithm: String,
    pub n: usize,
    pub sparsity: f64,
    pub seed: u64,
    pub e_lambda: f64,
    pub iterations: f64,
    pub wall_seconds: f64,
    pub converged: bool,
}

pub const ALG_DCAM: &str = "DCAM-PM";
pub const ALG_ADCAM: &str = "ADCAM-PM";
pub const ALG_PM: &str = "PM";
pub const ALG_DCAMA: &str = "DCAMA-PM";
pub const ALG_EDDCAM: &str = "EDDCAM-EA";

fn trial_seed(seed: u64, n: usize, s: f64, t: usize) -> u64 {
    mix_seed(mix_seed(mix_seed(seed, n as u64), s.to_bits()), t as u64)
}

fn dominant_record(
    name: &str,
    q: &DualQuaternionMatrix,
    n: usize,
    seed: u64,
    run: impl FnOnce() -> Result<DominantPair>,
) -> BenchRecord {
    let start = Instant::now();
    let out = run();
    let wall_seconds = start.elapsed().as_secs_f64();
    let (e_lambda, iterations, converged) = match out {
        Ok(p) => {
            let e = pair_residual(q, p.value, &p.vector).unwrap_or(f64::INFINITY);
            (e, p.trace.iterations as f64, p.trace.converged)
        }
        Err(_) => (f64::INFINITY, 0.0, false),
    };
    BenchRecord {
        algorithm: name.into(),
        n,
        sparsity: 1.0,
        seed,
        e_lambda,
        iterations,
        wall_seconds,
        converged,
    }
}

fn spectrum_record(
    name: &str,
    n: usize,
    sparsity: f64,
    seed: u64,
    run: impl FnOnce() -> Result<EigenResult>,
) -> BenchRecord {
    let start = Instant::now();
    let out = run();
    let wall_seconds = start.elapsed().as_secs_f64();
    let (e_lambda, iterations, converged) = match out {
        Ok(r) => (r.residual, r.iterations as f64, true),
        Err(Error::InnerNoConvergence { partial, .. }) => {
            (partial.residual, partial.iterations as f64, false)
        }
        Err(_) => (f64::INFINITY, 0.0, false),
    };
    BenchRecord {
        algorithm: name.into(),
        n,
        sparsity,
        seed,
        e_lambda,
        iterations,
        wall_seconds,
        converged,
    }
}

fn run_aitken_trial(n: usize, seed: u64, cfg: &PowerIterConfig) -> Vec<BenchRecord> {
    let q = random_hermitian(n, seed);
    let v0 = random_unit_vector(n, mix_seed(seed, u64::MAX));
    let cfg = PowerIterConfig { seed, ..*cfg };
    vec![
        dominant_record(ALG_DCAM, &q, n, seed, || dcam_pm(&q, &v0, &cfg)),
        dominant_record(ALG_ADCAM, &q, n, seed, || adcam_pm(&q, &v0, &cfg)),
    ]
}

fn run_laplacian_trial(
    n: usize,
    s: f64,
    seed: u64,
    params: &BenchParams,
) -> Result<Vec<BenchRecord>> {
    let g = random_graph(n, s, seed)?;
    let l = build_laplacian(&g);
    let cfg = PowerIterConfig {
        seed,
        ..params.power
    };
    let tol = params.deflate_tol;
    Ok(vec![
        spectrum_record(ALG_PM, n, s, seed, || power_method_sweep(&l, &cfg, tol)),
        spectrum_record(ALG_DCAMA, n, s, seed, || dcama_pm(&l, &cfg, tol)),
        spectrum_record(ALG_EDDCAM, n, s, seed, || {
            eddcam_ea(&l, EddcamOptions::default())
        }),
    ])
}

fn run_pentagon_trial(seed: u64, params: &BenchParams) -> Vec<BenchRecord> {
    let p = pentagon_fixture();
    let cfg = PowerIterConfig {
        seed,
        ..params.power
    };
    let s = 1.0;
    vec![
        spectrum_record(ALG_EDDCAM, 5, s, seed, || {
            eddcam_ea(&p, EddcamOptions::default())
        }),
        spectrum_record(ALG_PM, 5, s, seed, || {
            power_method_sweep(&p, &cfg, params.deflate_tol)
        }),
    ]
}

/// Runs every trial of a benchmark; records come back in a fixed order
/// (size, sparsity, trial, algorithm) regardless of thread count.
pub fn run_benchmark(kind: BenchKind, params: &BenchParams, seed: u64) -> Result<Vec<BenchRecord>> {
    if params.trials == 0 {
        return Err(Error::InvalidConfig("trials must be positive".into()));
    }
    params.power.validate()?;
    let mut jobs: Vec<(usize, f64, usize)> = Vec::new();
    match kind {
        BenchKind::Aitken => {
            for &n in &params.sizes {
                jobs.extend((0..params.trials).map(|t| (n, 1.0, t)));
            }
        }
        BenchKind::Laplacian => {
            for &n in &params.sizes {
                for &s in &params.sparsities {
                    let capacity = n * n.saturating_sub(1) / 2;
                    let edges = (s * (n * n) as f64 / 2.0).round() as usize;
                    if edges > capacity || s.is_nan() || s <= 0.0 {
                        return Err(Error::SparsityTooHigh { edges, capacity });
                    }
                    jobs.extend((0..params.trials).map(|t| (n, s, t)));
                }
            }
        }
        BenchKind::Pentagon => jobs.extend((0..params.trials).map(|t| (5, 1.0, t))),
    }
    let run = |&(n, s, t): &(usize, f64, usize)| -> Result<Vec<BenchRecord>> {
        let ts = trial_seed(seed, n, s, t);
        match kind {
            BenchKind::Aitken => Ok(run_aitken_trial(n, ts, &params.power)),
            BenchKind::Laplacian => run_laplacian_trial(n, s, ts, params),
            BenchKind::Pentagon => Ok(run_pentagon_trial(ts, params)),
        }
    };
    let chunks: Vec<Result<Vec<BenchRecord>>> = if params.threads == 1 {
        jobs.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(run).collect())
    };
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// One table row: means over every trial of one (algorithm, n, sparsity).
#[derive(Debug, Clone, PartialEq)]
pub struct BenchSummary {
    pub algorithm: String,
    pub n: usize,
    pub sparsity: f64,
    pub trials: usize,
    pub converged: usize,
    pub mean_e_lambda: f64,
    pub mean_iters: f64,
    pub mean_seconds: f64,
}

/// Groups records by (algorithm, n, sparsity) in first-seen order.
pub fn summarize(records: &[BenchRecord]) -> Vec<BenchSummary> {
    let mut rows: Vec<BenchSummary> = Vec::new();
    for r in records {
        let row = match rows
            .iter_mut()
            .find(|x| x.algorithm == r.algorithm && x.n == r.n && x.sparsity == r.sparsity)
        {
            Some(x) => x,
            None => {
                rows.push(BenchSummary {
                    algorithm: r.algorithm.clone(),
                    n: r.n,
                    sparsity: r.sparsity,
                    trials: 0,
                    converged: 0,
                    mean_e_lambda: 0.0,
                    mean_iters: 0.0,
                    mean_seconds: 0.0,
                });
                rows.last_mut().expect("just pushed")
            }
        };
        row.trials += 1;
        row.converged += usize::from(r.converged);
        row.mean_e_lambda += r.e_lambda;
        row.mean_iters += r.iterations;
        row.mean_seconds += r.wall_seconds;
    }
    for row in &mut rows {
        let k = row.trials as f64;
        row.mean_e_lambda /= k;
        row.mean_iters /= k;
        row.mean_seconds /= k;
    }
    rows
}
