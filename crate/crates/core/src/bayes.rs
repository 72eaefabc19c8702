//! A-posteriori choice between discordant clustering results.
//!
//! Each observed result `(algorithm, c)` is scored by `P(C | c)`, the posterior
//! probability of the theoretical pattern `C` that `c` describes. The
//! conditionals `P(c | C')` are estimated by simulating data from the links
//! fitted to the observed data under each candidate pattern `C'`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algorithms::Algorithm;
use crate::distance::distance_matrix;
use crate::error::{Error, Result};
use crate::harness::estimate_noise_sd;
use crate::model::{leaders, DataMatrix, Partition};
use crate::synthesis::{generate_general, Distribution, Seed};

/// Tolerance on the sum of priors.
const PRIOR_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Hypothesis {
    pub pattern: Partition,
    pub prior: f64,
}

/// Monte Carlo estimate of `P(c | C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conditional {
    pub hits: usize,
    pub iterations: usize,
}

impl Conditional {
    pub fn probability(&self) -> f64 {
        self.hits as f64 / self.iterations as f64
    }

    /// Binomial standard error of the estimate.
    pub fn std_error(&self) -> f64 {
        let q = self.probability();
        (q * (1.0 - q) / self.iterations as f64).sqrt()
    }
}

/// Experiment key of a hypothesis: a hash of its canonical text, so the same
/// pattern always draws the same synthetic data sets.
fn hypothesis_stream(pattern: &Partition) -> u64 {
    pattern
        .to_string()
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// Fraction of `iterations` synthetic data sets, generated from the links
/// fitted to `m` under `hypothesis`, on which `algorithm` returns `observed`.
pub fn conditional(
    observed: &Partition,
    hypothesis: &Partition,
    algorithm: Algorithm,
    m: &DataMatrix,
    iterations: usize,
    seed: Seed,
) -> Result<Conditional> {
    if iterations == 0 {
        return Err(Error::Domain("iterations must be >= 1".into()));
    }
    if observed.p() != m.p() {
        return Err(Error::Structural(format!(
            "observed partition over {} columns, data has {}",
            observed.p(),
            m.p()
        )));
    }
    let links = estimate_noise_sd(m, hypothesis)?;
    let roots = leaders(hypothesis);
    let k = hypothesis.k();
    let stream = hypothesis_stream(hypothesis);

    let hits = (0..iterations as u64)
        .into_par_iter()
        .filter(|&it| {
            let mut rng = seed.substream(&[stream, it]);
            let Ok(sim) = generate_general(&links, &roots, m.n(), Distribution::Normal, &mut rng) else {
                return false;
            };
            let Ok(d) = distance_matrix(&sim) else {
                return false;
            };
            algorithm
                .cluster(&d, k)
                .is_ok_and(|found| &found == observed)
        })
        .count();
    Ok(Conditional { hits, iterations })
}

/// Bayes' rule over the hypotheses for one observation:
/// `P(C_j | c) = P(c | C_j) P(C_j) / sum_l P(c | C_l) P(C_l)`.
pub fn bayes_rule(conditionals: &[f64], priors: &[f64]) -> Option<Vec<f64>> {
    let joint: Vec<f64> = conditionals.iter().zip(priors).map(|(c, p)| c * p).collect();
    let total: f64 = joint.iter().sum();
    (total > 0.0).then(|| joint.iter().map(|j| j / total).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmReport {
    pub algorithm: Algorithm,
    pub observed: Partition,
    /// `P(c | C_j)` for every hypothesis `j`.
    pub conditionals: Vec<Conditional>,
    /// `P(C_j | c)` for every hypothesis `j`.
    pub posteriors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PosteriorReport {
    pub hypotheses: Vec<Hypothesis>,
    pub results: Vec<AlgorithmReport>,
    pub iterations: usize,
    pub seed: Seed,
    /// Index of the result with the highest `P(C_i | c_i)`.
    pub recommended: usize,
}

impl PosteriorReport {
    /// `P(C_i | c_i)`: the posterior of each result's own hypothesis.
    pub fn own_posterior(&self, i: usize) -> f64 {
        self.results[i].posteriors[i]
    }

    pub fn recommended_algorithm(&self) -> Algorithm {
        self.results[self.recommended].algorithm
    }

    pub fn to_text(&self, labels: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "iterations: {}  seed: {}", self.iterations, self.seed.0);
        for (j, h) in self.hypotheses.iter().enumerate() {
            let _ = writeln!(out, "C{}: {}  prior {}", j + 1, h.pattern.render(labels), h.prior);
        }
        for (i, r) in self.results.iter().enumerate() {
            let _ = writeln!(out, "{} observed c{}: {}", r.algorithm, i + 1, r.observed.render(labels));
            for (j, c) in r.conditionals.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  P(c{}|C{}) = {:.4} (se {:.4})",
                    i + 1,
                    j + 1,
                    c.probability(),
                    c.std_error()
                );
            }
            let _ = writeln!(out, "  P(C{}|c{}) = {:.4}", i + 1, i + 1, self.own_posterior(i));
        }
        let _ = writeln!(out, "recommended: {}", self.recommended_algorithm());
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("algorithm,hypothesis,conditional,stderr,prior,posterior,recommended\n");
        for (i, r) in self.results.iter().enumerate() {
            for (j, c) in r.conditionals.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},C{},{},{},{},{},{}",
                    r.algorithm,
                    j + 1,
                    c.probability(),
                    c.std_error(),
                    self.hypotheses[j].prior,
                    r.posteriors[j],
                    i == self.recommended
                );
            }
        }
        out
    }
}

/// Scores each observed `(algorithm, c_i)` against all hypotheses and
/// recommends the algorithm whose own hypothesis is most probable a posteriori.
pub fn posterior(
    observed: &[(Algorithm, Partition)],
    hypotheses: &[Hypothesis],
    m: &DataMatrix,
    iterations: usize,
    seed: Seed,
) -> Result<PosteriorReport> {
    if observed.is_empty() || observed.len() != hypotheses.len() {
        return Err(Error::Structural(format!(
            "{} observed results for {} hypotheses",
            observed.len(),
            hypotheses.len()
        )));
    }
    if hypotheses.iter().any(|h| !(0.0..=1.0).contains(&h.prior)) {
        return Err(Error::Domain("priors must lie in [0, 1]".into()));
    }
    let prior_sum: f64 = hypotheses.iter().map(|h| h.prior).sum();
    if (prior_sum - 1.0).abs() > PRIOR_SUM_TOLERANCE {
        return Err(Error::Domain(format!("priors sum to {prior_sum}, not 1")));
    }
    let priors: Vec<f64> = hypotheses.iter().map(|h| h.prior).collect();

    let mut results = Vec::with_capacity(observed.len());
    for (algorithm, c) in observed {
        let conditionals = hypotheses
            .iter()
            .map(|h| conditional(c, &h.pattern, *algorithm, m, iterations, seed))
            .collect::<Result<Vec<_>>>()?;
        let probs: Vec<f64> = conditionals.iter().map(Conditional::probability).collect();
        let posteriors = bayes_rule(&probs, &priors).ok_or_else(|| Error::UndefinedPosterior {
            algorithm: algorithm.to_string(),
        })?;
        results.push(AlgorithmReport {
            algorithm: *algorithm,
            observed: c.clone(),
            conditionals,
            posteriors,
        });
    }
    let mut recommended = 0;
    for i in 1..results.len() {
        if results[i].posteriors[i] > results[recommended].posteriors[recommended] {
            recommended = i;
        }
    }
    Ok(PosteriorReport {
        hypotheses: hypotheses.to_vec(),
        results,
        iterations,
        seed,
        recommended,
    })
}
