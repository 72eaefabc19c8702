//! Monte Carlo error-rate sweeps and least-squares link fitting.

use rayon::prelude::*;

use crate::algorithms::Algorithm;
use crate::distance::distance_matrix;
use crate::error::{Error, Result};
use crate::model::{leader_links, partitions_equal, DataMatrix, LinearLink, Partition, Pattern};
use crate::synthesis::{experiment_id, generate_with, Distribution, NoiseSpec, Seed};

/// Iterations per grid point used throughout the reference study.
pub const DEFAULT_ITERATIONS: usize = 10_000;

/// `sigma = j / steps` for `j = 1..=steps`.
pub fn sigma_grid(steps: usize) -> Vec<f64> {
    (1..=steps).map(|j| j as f64 / steps as f64).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub algorithm: Algorithm,
    pub pattern: u8,
    pub n: usize,
    pub distribution: Distribution,
    pub sigma_grid: Vec<f64>,
    pub iterations: usize,
    pub seed: Seed,
    pub k: usize,
}

impl SweepConfig {
    /// Three clusters, the 30-point grid and 10,000 iterations.
    pub fn new(algorithm: Algorithm, pattern: u8, n: usize, distribution: Distribution, seed: u64) -> Self {
        Self {
            algorithm,
            pattern,
            n,
            distribution,
            sigma_grid: sigma_grid(30),
            iterations: DEFAULT_ITERATIONS,
            seed: Seed(seed),
            k: 3,
        }
    }

    pub fn validate(&self) -> Result<Pattern> {
        let pattern = Pattern::new(self.pattern)?;
        if self.n < 2 {
            return Err(Error::Domain(format!("sample size must be >= 2, got {}", self.n)));
        }
        if self.iterations == 0 {
            return Err(Error::Domain("iterations must be >= 1".into()));
        }
        if self.k == 0 || self.k > pattern.clusters().p() {
            return Err(Error::Domain(format!("k={} outside 1..=6", self.k)));
        }
        if self.sigma_grid.is_empty() {
            return Err(Error::Domain("empty sigma grid".into()));
        }
        if self.sigma_grid.iter().any(|s| !(*s >= 0.0) || !s.is_finite()) {
            return Err(Error::Domain("sigma values must be finite and >= 0".into()));
        }
        if self.sigma_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("sigma grid must be strictly increasing".into()));
        }
        Ok(pattern)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub sigma: f64,
    pub errors: usize,
    pub error_rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
}

pub const SWEEP_CSV_HEADER: &str = "algorithm,pattern,distribution,n,k,B,sigma,errors,error_rate";

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let c = &self.config;
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                c.algorithm, c.pattern, c.distribution, c.n, c.k, c.iterations, pt.sigma, pt.errors, pt.error_rate
            ));
        }
        out
    }

    /// Mean error rate over grid points with `lo <= sigma <= hi`.
    pub fn mean_rate_between(&self, lo: f64, hi: f64) -> Option<f64> {
        let rates: Vec<f64> = self
            .points
            .iter()
            .filter(|pt| pt.sigma >= lo && pt.sigma <= hi)
            .map(|pt| pt.error_rate)
            .collect();
        (!rates.is_empty()).then(|| rates.iter().sum::<f64>() / rates.len() as f64)
    }
}

fn iteration_correct(config: &SweepConfig, pattern: &Pattern, sigma: f64, iteration: u64) -> bool {
    let id = experiment_id(config.pattern, config.n, config.distribution);
    let mut rng = config.seed.substream(&[id, sigma.to_bits(), iteration]);
    let noise = NoiseSpec {
        distribution: config.distribution,
        sigma,
    };
    let Ok(m) = generate_with(pattern, config.n, noise, &mut rng) else {
        return false;
    };
    // a numerically constant column can only arise from degenerate draws; score it as a miss
    let Ok(d) = distance_matrix(&m) else {
        return false;
    };
    match config.algorithm.cluster(&d, config.k) {
        Ok(found) => partitions_equal(&found, pattern.clusters()).unwrap_or(false),
        Err(_) => false,
    }
}

/// Generates one data set for `(sigma, iteration)`, clusters it and reports
/// whether the generating pattern was recovered exactly.
pub fn run_iteration(config: &SweepConfig, sigma: f64, iteration: u64) -> Result<bool> {
    let pattern = config.validate()?;
    Ok(iteration_correct(config, &pattern, sigma, iteration))
}

/// Error rate at every grid point. The result does not depend on how many
/// worker threads run the iterations.
pub fn sweep(config: &SweepConfig) -> Result<SweepResult> {
    let pattern = config.validate()?;
    let points = config
        .sigma_grid
        .iter()
        .map(|&sigma| {
            let errors = (0..config.iterations as u64)
                .into_par_iter()
                .filter(|&it| !iteration_correct(config, &pattern, sigma, it))
                .count();
            SweepPoint {
                sigma,
                errors,
                error_rate: errors as f64 / config.iterations as f64,
            }
        })
        .collect();
    Ok(SweepResult {
        config: config.clone(),
        points,
    })
}

/// Runs `f` on a dedicated pool of `workers` threads, or on the global pool.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match workers {
        None => Ok(f()),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Ordinary least squares of `y` on `x`: `(intercept, slope, residual sd)`
/// with `n - 2` residual degrees of freedom.
pub fn fit_line(x: &[f64], y: &[f64]) -> Option<(f64, f64, f64)> {
    let n = x.len();
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    if !(sxx > 0.0) {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - intercept - slope * a;
            r * r
        })
        .sum();
    Some((intercept, slope, (rss / (nf - 2.0)).sqrt()))
}

/// Fits every non-leader member of every cluster on its cluster's leader
/// (the lowest-index member). Singleton clusters contribute no links.
pub fn estimate_noise_sd(m: &DataMatrix, hypothesis: &Partition) -> Result<Vec<LinearLink>> {
    if m.n() < 3 {
        return Err(Error::Domain(format!(
            "residual variance needs at least 3 rows, got {}",
            m.n()
        )));
    }
    if hypothesis.p() != m.p() {
        return Err(Error::Structural(format!(
            "hypothesis over {} columns, data has {}",
            hypothesis.p(),
            m.p()
        )));
    }
    leader_links(hypothesis)
        .map(|(leader, member)| {
            let (a, b, s) = fit_line(m.column(leader), m.column(member)).ok_or_else(|| Error::DegenerateColumn {
                column: m.col_names()[leader].clone(),
            })?;
            LinearLink::new(leader, member, a, b, s)
        })
        .collect()
}
