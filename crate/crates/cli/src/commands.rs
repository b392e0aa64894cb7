//! The `solve`, `bench` and `pentagon` commands.

use std::fs;
use std::path::PathBuf;

use dqeig::matrix::PREDICATE_TOL;
use dqeig::power::DEFLATE_TOL;
use dqeig::spectral::pair_residual;
use dqeig::{
    adcam_pm, dcam_pm, dcama_pm, eddcam_ea, pentagon_fixture, power_method_sweep,
    random_unit_vector, run_benchmark, summarize, BenchKind, BenchParams, DominantPair, DualNumber,
    EddcamOptions, EigenResult, Error, IterTrace, PowerIterConfig, PENTAGON_EIGENVALUES,
};
use serde::Serialize;

use crate::matrix_file::read_matrix;
use crate::{
    Algorithm, BenchChoice, CliError, PentagonAlgorithm, EXIT_INPUT, EXIT_NO_CONVERGENCE, EXIT_OK,
};

/// Iteration cap for benchmark runs; the stopping rule is the tolerance.
pub const BENCH_MAX_ITER: usize = 1_000_000;
pub const AITKEN_BENCH_TOL: f64 = 1e-6;
pub const LAPLACIAN_BENCH_TOL: f64 = 1e-10;
pub const PENTAGON_MATCH_TOL: f64 = 5e-4;

#[derive(Debug, Clone)]
pub struct SolveArgs {
    pub file: PathBuf,
    pub alg: Algorithm,
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

/// Where an iterative solver gave up.
#[derive(Debug, Clone, Serialize)]
pub struct Stall {
    /// One-based index of the eigenpair being computed.
    pub eigenpair: usize,
    pub iterations: usize,
    pub final_residual: f64,
    pub last_value: [f64; 2],
    /// Raw residuals of the last recorded iterations, oldest first.
    pub residual_tail: Vec<f64>,
}

impl Stall {
    fn new(stage: usize, trace: &IterTrace) -> Self {
        let tail = trace.records.len().saturating_sub(10);
        Self {
            eigenpair: stage + 1,
            iterations: trace.iterations,
            final_residual: trace.final_residual,
            last_value: trace
                .records
                .last()
                .map_or([f64::NAN; 2], |r| [r.lambda.st, r.lambda.du]),
            residual_tail: trace.records[tail..].iter().map(|r| r.residual).collect(),
        }
    }
}

/// Result document written by `solve`. Eigenvalues repeat once per
/// eigenvector so the two lists line up.
#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub algorithm: String,
    pub n: usize,
    pub converged: bool,
    pub eigenvalues: Vec<[f64; 2]>,
    pub eigenvectors: Vec<Vec<[f64; 8]>>,
    pub residual: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stall: Option<Stall>,
}

fn pair_value(d: DualNumber) -> [f64; 2] {
    [d.st, d.du]
}

fn spectrum_report(
    alg: &str,
    n: usize,
    r: &EigenResult,
    converged: bool,
    stall: Option<Stall>,
) -> SolveReport {
    SolveReport {
        algorithm: alg.into(),
        n,
        converged,
        eigenvalues: r.values().into_iter().map(pair_value).collect(),
        eigenvectors: r
            .pairs
            .iter()
            .flat_map(|p| {
                p.vectors
                    .iter()
                    .map(|v| v.entries.iter().map(|e| e.to_array()).collect())
            })
            .collect(),
        residual: r.residual,
        iterations: r.iterations,
        stall,
    }
}

fn spectrum_outcome(
    alg: &str,
    n: usize,
    out: dqeig::Result<EigenResult>,
) -> Result<SolveReport, CliError> {
    match out {
        Ok(r) => Ok(spectrum_report(alg, n, &r, true, None)),
        Err(Error::InnerNoConvergence {
            stage,
            partial,
            trace,
        }) => Ok(spectrum_report(
            alg,
            n,
            &partial,
            false,
            Some(Stall::new(stage, &trace)),
        )),
        Err(e) => Err(e.into()),
    }
}

fn dominant_report(
    alg: &str,
    q: &dqeig::DualQuaternionMatrix,
    p: DominantPair,
) -> Result<SolveReport, CliError> {
    let converged = p.trace.converged;
    Ok(SolveReport {
        algorithm: alg.into(),
        n: q.rows(),
        converged,
        eigenvalues: vec![pair_value(p.value)],
        eigenvectors: vec![p.vector.entries.iter().map(|e| e.to_array()).collect()],
        residual: pair_residual(q, p.value, &p.vector)?,
        iterations: p.trace.iterations,
        stall: (!converged).then(|| Stall::new(0, &p.trace)),
    })
}

pub fn solve(args: &SolveArgs) -> Result<SolveReport, CliError> {
    let q = read_matrix(&args.file)?;
    let dev = q.hermitian_deviation();
    if dev > PREDICATE_TOL {
        return Err(Error::NotHermitian { deviation: dev }.into());
    }
    let cfg = PowerIterConfig {
        max_iter: args.max_iter,
        tol: args.tol,
        seed: args.seed,
        ..Default::default()
    };
    cfg.validate()?;
    let n = q.rows();
    match args.alg {
        Algorithm::Eddcam => spectrum_outcome("eddcam", n, eddcam_ea(&q, EddcamOptions::default())),
        Algorithm::Dcama => spectrum_outcome("dcama", n, dcama_pm(&q, &cfg, DEFLATE_TOL)),
        Algorithm::Pm => spectrum_outcome("pm", n, power_method_sweep(&q, &cfg, DEFLATE_TOL)),
        Algorithm::Dcam => dominant_report(
            "dcam",
            &q,
            dcam_pm(&q, &random_unit_vector(n, args.seed), &cfg)?,
        ),
        Algorithm::Adcam => dominant_report(
            "adcam",
            &q,
            adcam_pm(&q, &random_unit_vector(n, args.seed), &cfg)?,
        ),
    }
}

pub fn cmd_solve(args: &SolveArgs) -> Result<i32, CliError> {
    let report = solve(args)?;
    let text = serde_json::to_string_pretty(&report).expect("plain data serializes");
    match &args.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            println!(
                "{}: {} eigenvalues, residual {:.3e}, {} iterations{}",
                report.algorithm,
                report.eigenvalues.len(),
                report.residual,
                report.iterations,
                if report.converged {
                    ""
                } else {
                    ", not converged"
                }
            );
        }
        None => println!("{text}"),
    }
    if let Some(s) = &report.stall {
        eprintln!(
            "no convergence on eigenpair {} after {} iterations (residual {:.3e})",
            s.eigenpair, s.iterations, s.final_residual
        );
    }
    Ok(if report.converged {
        EXIT_OK
    } else {
        EXIT_NO_CONVERGENCE
    })
}

#[derive(Debug, Clone)]
pub struct BenchArgs {
    pub kind: BenchChoice,
    pub sizes: Vec<usize>,
    pub sparsities: Vec<f64>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub max_iter: usize,
    pub csv: PathBuf,
    /// Worker threads; zero picks the rayon default.
    pub threads: usize,
}

/// One CSV row. Field order is the column order.
#[derive(Debug, Clone, Serialize)]
struct CsvRow<'a> {
    algorithm: &'a str,
    n: usize,
    sparsity: f64,
    trials: usize,
    mean_e_lambda: f64,
    mean_iters: f64,
    mean_seconds: f64,
    seed: u64,
}

/// Reads `DQEIG_THREADS`; unset means automatic.
pub fn threads_from_env() -> Result<usize, CliError> {
    match std::env::var("DQEIG_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("DQEIG_THREADS={v:?} is not a count"))),
        Err(_) => Ok(0),
    }
}

pub fn bench_params(args: &BenchArgs) -> Result<(BenchKind, BenchParams), CliError> {
    let (kind, trials, tol) = match args.kind {
        BenchChoice::Aitken => (
            BenchKind::Aitken,
            args.trials.unwrap_or(100),
            args.tol.unwrap_or(AITKEN_BENCH_TOL),
        ),
        BenchChoice::Laplacian => (
            BenchKind::Laplacian,
            args.trials.unwrap_or(10),
            args.tol.unwrap_or(LAPLACIAN_BENCH_TOL),
        ),
    };
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    if args.sizes.is_empty() || args.sizes.contains(&0) {
        return Err(CliError::Usage("--sizes must list positive sizes".into()));
    }
    if kind == BenchKind::Laplacian
        && (args.sparsities.is_empty() || args.sparsities.iter().any(|s| s.is_nan() || *s <= 0.0))
    {
        return Err(CliError::Usage(
            "--sparsities must list positive fractions".into(),
        ));
    }
    let power = PowerIterConfig {
        max_iter: args.max_iter,
        tol,
        ..Default::default()
    };
    power.validate()?;
    let params = BenchParams {
        sizes: args.sizes.clone(),
        sparsities: args.sparsities.clone(),
        trials,
        power,
        deflate_tol: DEFLATE_TOL,
        threads: args.threads,
    };
    Ok((kind, params))
}

pub fn cmd_bench(args: &BenchArgs) -> Result<i32, CliError> {
    let (kind, params) = bench_params(args)?;
    let rows = summarize(&run_benchmark(kind, &params, args.seed)?);
    let mut w = csv::Writer::from_path(&args.csv)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.csv.display())))?;
    println!(
        "{:<10} {:>5} {:>9} {:>7} {:>12} {:>12} {:>12}",
        "algorithm", "n", "sparsity", "conv", "mean_e", "mean_iters", "mean_secs"
    );
    for r in &rows {
        println!(
            "{:<10} {:>5} {:>9.2} {:>3}/{:<3} {:>12.4e} {:>12.2} {:>12.4e}",
            r.algorithm,
            r.n,
            r.sparsity,
            r.converged,
            r.trials,
            r.mean_e_lambda,
            r.mean_iters,
            r.mean_seconds
        );
        w.serialize(CsvRow {
            algorithm: &r.algorithm,
            n: r.n,
            sparsity: r.sparsity,
            trials: r.trials,
            mean_e_lambda: r.mean_e_lambda,
            mean_iters: r.mean_iters,
            mean_seconds: r.mean_seconds,
            seed: args.seed,
        })
        .map_err(|e| CliError::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(EXIT_OK)
}

#[derive(Debug, Clone)]
pub struct PentagonArgs {
    pub alg: PentagonAlgorithm,
    pub json: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PentagonReport {
    pub algorithm: String,
    pub converged: bool,
    pub eigenvalues: Vec<[f64; 2]>,
    pub e_lambda: f64,
    pub iterations: usize,
    /// True when the five known eigenvalues were all found within tolerance.
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stall: Option<Stall>,
}

fn matches_known(values: &[DualNumber]) -> bool {
    values.len() == PENTAGON_EIGENVALUES.len()
        && values
            .iter()
            .zip(PENTAGON_EIGENVALUES.iter())
            .all(|(a, b)| {
                (a.st - b.st).abs() <= PENTAGON_MATCH_TOL
                    && (a.du - b.du).abs() <= PENTAGON_MATCH_TOL
            })
}

pub fn pentagon(alg: PentagonAlgorithm) -> Result<PentagonReport, CliError> {
    let p = pentagon_fixture();
    let (name, out) = match alg {
        PentagonAlgorithm::Eddcam => ("EDDCAM-EA", eddcam_ea(&p, EddcamOptions::default())),
        PentagonAlgorithm::Pm => (
            "PM",
            power_method_sweep(&p, &PowerIterConfig::default(), DEFLATE_TOL),
        ),
    };
    let (r, stall) = match out {
        Ok(r) => (r, None),
        Err(Error::InnerNoConvergence {
            stage,
            partial,
            trace,
        }) => (*partial, Some(Stall::new(stage, &trace))),
        Err(e) => return Err(e.into()),
    };
    let values = r.values();
    Ok(PentagonReport {
        algorithm: name.into(),
        converged: stall.is_none(),
        matches: stall.is_none() && matches_known(&values),
        eigenvalues: values.into_iter().map(pair_value).collect(),
        e_lambda: r.residual,
        iterations: r.iterations,
        stall,
    })
}

pub fn cmd_pentagon(args: &PentagonArgs) -> Result<i32, CliError> {
    let report = pentagon(args.alg)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("plain data serializes")
        );
    } else {
        println!("{} on the pentagon formation", report.algorithm);
        for v in &report.eigenvalues {
            println!("  {:.4}", DualNumber::new(v[0], v[1]));
        }
        println!("e_lambda = {:.4e}", report.e_lambda);
        match &report.stall {
            Some(s) => println!(
                "no convergence on eigenpair {} after {} iterations (residual {:.3e}, current estimate {:.4})",
                s.eigenpair,
                s.iterations,
                s.final_residual,
                DualNumber::new(s.last_value[0], s.last_value[1])
            ),
            None if report.matches => println!("all five eigenvalues match within {PENTAGON_MATCH_TOL:e}"),
            None => println!("eigenvalues differ from the known spectrum"),
        }
    }
    Ok(if report.stall.is_some() {
        EXIT_NO_CONVERGENCE
    } else if report.matches {
        EXIT_OK
    } else {
        EXIT_INPUT
    })
}
