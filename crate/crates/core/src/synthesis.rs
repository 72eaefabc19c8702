//! Seeded generation of linearly linked data sets.
//!
//! Every column is either an independent draw from a standardized family or
//! `intercept + slope * source + noise`, where the noise comes from the same
//! standardized family scaled to the link's standard deviation.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{DataMatrix, LinearLink, Pattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Normal,
    /// Student's t with 3 degrees of freedom, rescaled to unit variance.
    StudentT3,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Normal => "normal",
            Distribution::StudentT3 => "t3",
        }
    }

    fn code(self) -> u64 {
        match self {
            Distribution::Normal => 0,
            Distribution::StudentT3 => 1,
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "normal" | "gaussian" => Ok(Distribution::Normal),
            "t3" | "student_t3" | "student-t3" => Ok(Distribution::StudentT3),
            other => Err(Error::Domain(format!("unknown distribution `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub distribution: Distribution,
    pub sigma: f64,
}

impl NoiseSpec {
    pub fn new(distribution: Distribution, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) || !sigma.is_finite() {
            return Err(Error::Domain(format!("sigma must be finite and >= 0, got {sigma}")));
        }
        Ok(Self { distribution, sigma })
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Master seed of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent stream keyed by a path of indices, e.g.
    /// `(experiment, grid point, iteration)`. Streams for distinct paths do not
    /// depend on each other, so adding iterations never changes earlier ones.
    pub fn substream(self, path: &[u64]) -> ChaCha8Rng {
        let key = path.iter().fold(mix64(self.0), |h, &part| {
            mix64(h ^ mix64(part.wrapping_add(0x9e37_79b9_7f4a_7c15)))
        });
        ChaCha8Rng::seed_from_u64(key)
    }
}

/// Experiment identifier for the generating process; algorithm-independent so
/// all algorithms see the same data sets.
pub(crate) fn experiment_id(pattern: u8, n: usize, dist: Distribution) -> u64 {
    mix64(mix64(u64::from(pattern)) ^ mix64(n as u64).rotate_left(17) ^ dist.code().rotate_left(41))
}

fn draw<R: Rng + ?Sized>(dist: Distribution, rng: &mut R) -> f64 {
    match dist {
        Distribution::Normal => rng.sample(StandardNormal),
        Distribution::StudentT3 => {
            // t(3) = Z / sqrt(chi2_3 / 3), variance 3
            let z: f64 = rng.sample(StandardNormal);
            let chi2: f64 = (0..3)
                .map(|_| {
                    let g: f64 = rng.sample(StandardNormal);
                    g * g
                })
                .sum();
            let t = z / (chi2 / 3.0).sqrt();
            t / 3f64.sqrt()
        }
    }
}

/// `count` i.i.d. draws with mean 0 and variance 1 from `dist`.
pub fn sample_standardized<R: Rng + ?Sized>(dist: Distribution, count: usize, rng: &mut R) -> Vec<f64> {
    (0..count).map(|_| draw(dist, rng)).collect()
}

/// Generates `n` rows over columns `0..p`, where `p` is the number of
/// independents plus links.
///
/// Columns are produced in topological order (lowest ready index first);
/// each consumes `n` draws from `rng`.
pub fn generate_general<R: Rng + ?Sized>(
    links: &[LinearLink],
    independents: &[usize],
    n: usize,
    dist: Distribution,
    rng: &mut R,
) -> Result<DataMatrix> {
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 rows, got {n}")));
    }
    let p = independents.len() + links.len();
    let mut incoming: Vec<Option<&LinearLink>> = vec![None; p];
    let mut is_root = vec![false; p];
    for &i in independents {
        if i >= p || std::mem::replace(&mut is_root[i], true) {
            return Err(Error::Structural(format!("independent column {i} is out of range or repeated")));
        }
    }
    for link in links {
        if link.target >= p || link.source >= p {
            return Err(Error::Structural(format!(
                "link {} -> {} outside 0..{p}",
                link.source, link.target
            )));
        }
        if is_root[link.target] || incoming[link.target].is_some() {
            return Err(Error::Structural(format!("column {} is generated twice", link.target)));
        }
        incoming[link.target] = Some(link);
    }

    let mut columns: Vec<Option<Vec<f64>>> = vec![None; p];
    for _ in 0..p {
        let next = (0..p).find(|&j| {
            columns[j].is_none() && incoming[j].is_none_or(|l| columns[l.source].is_some())
        });
        let Some(j) = next else {
            return Err(Error::Structural("links contain a cycle".into()));
        };
        let col = match incoming[j] {
            None => sample_standardized(dist, n, rng),
            Some(l) => {
                let source = columns[l.source].as_ref().expect("source generated first");
                let noise = sample_standardized(dist, n, rng);
                source
                    .iter()
                    .zip(noise)
                    .map(|(x, e)| l.intercept + l.slope * x + l.noise_sd * e)
                    .collect()
            }
        };
        columns[j] = Some(col);
    }
    DataMatrix::from_columns(columns.into_iter().map(|c| c.expect("all generated")).collect())
}

/// One data set drawn from a ground-truth pattern: leaders are independent,
/// every other member is `leader + noise`.
pub fn generate_with<R: Rng + ?Sized>(
    pattern: &Pattern,
    n: usize,
    noise: NoiseSpec,
    rng: &mut R,
) -> Result<DataMatrix> {
    generate_general(
        &pattern.links(noise.sigma),
        &pattern.leaders(),
        n,
        noise.distribution,
        rng,
    )
}

pub fn generate(pattern: &Pattern, n: usize, noise: NoiseSpec, seed: Seed) -> Result<DataMatrix> {
    generate_with(pattern, n, noise, &mut seed.rng())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{distance_matrix, pearson};

    fn moments(x: &[f64]) -> (f64, f64) {
        let n = x.len() as f64;
        let mean = x.iter().sum::<f64>() / n;
        let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var)
    }

    #[test]
    fn normal_moments() {
        let n = 200_000;
        let x = sample_standardized(Distribution::Normal, n, &mut Seed(3).rng());
        let (mean, var) = moments(&x);
        let bound = 4.0 / (n as f64).sqrt();
        assert!(mean.abs() < bound, "mean {mean}");
        assert!((var - 1.0).abs() < bound, "var {var}");
    }

    #[test]
    fn t3_is_standardized() {
        let x = sample_standardized(Distribution::StudentT3, 100_000, &mut Seed(11).rng());
        let (mean, var) = moments(&x);
        assert!(mean.abs() < 0.05, "mean {mean}");
        assert!((0.9..=1.1).contains(&var), "var {var}");
    }

    #[test]
    fn same_seed_same_draws() {
        for dist in [Distribution::Normal, Distribution::StudentT3] {
            let a = sample_standardized(dist, 50, &mut Seed(9).substream(&[1, 2]));
            let b = sample_standardized(dist, 50, &mut Seed(9).substream(&[1, 2]));
            let c = sample_standardized(dist, 50, &mut Seed(9).substream(&[1, 3]));
            assert_eq!(a, b);
            assert_ne!(a, c);
        }
    }

    #[test]
    fn noiseless_pattern_one() {
        let pat = Pattern::new(1).unwrap();
        let m = generate(&pat, 10, NoiseSpec::new(Distribution::Normal, 0.0).unwrap(), Seed(5)).unwrap();
        assert_eq!(m.column(1), m.column(0));
        assert_eq!(m.column(3), m.column(2));
        assert_eq!(m.column(5), m.column(4));
        let d = distance_matrix(&m).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
        assert_eq!(d.get(4, 5), 0.0);
    }

    #[test]
    fn pattern_three_residual_sd() {
        let sigma = 0.4;
        let pat = Pattern::new(3).unwrap();
        let m = generate(&pat, 100_000, NoiseSpec::new(Distribution::Normal, sigma).unwrap(), Seed(21)).unwrap();
        for j in 1..4 {
            let resid: Vec<f64> = m.column(j).iter().zip(m.column(0)).map(|(y, x)| y - x).collect();
            let sd = moments(&resid).1.sqrt();
            assert!((sd / sigma - 1.0).abs() < 0.02, "column {j} sd {sd}");
        }
    }

    #[test]
    fn pattern_two_singleton_is_independent() {
        let pat = Pattern::new(2).unwrap();
        let n = 100_000;
        let m = generate(&pat, n, NoiseSpec::new(Distribution::Normal, 0.3).unwrap(), Seed(8)).unwrap();
        let bound = 4.0 / (n as f64).sqrt();
        for j in 0..5 {
            assert!(pearson(m.column(5), m.column(j)).unwrap().abs() < bound);
        }
        // leaders of distinct clusters are uncorrelated too
        assert!(pearson(m.column(0), m.column(3)).unwrap().abs() < bound);
        assert!(pearson(m.column(0), m.column(1)).unwrap() > 0.9);
    }

    #[test]
    fn general_links() {
        let mut rng = Seed(1).rng();
        let same = generate_general(&[LinearLink::new(0, 1, 0.0, 1.0, 0.0).unwrap()], &[0], 5, Distribution::Normal, &mut rng).unwrap();
        assert_eq!(same.column(0), same.column(1));
        let affine = generate_general(&[LinearLink::new(0, 1, 5.0, 2.0, 0.0).unwrap()], &[0], 8, Distribution::Normal, &mut rng).unwrap();
        assert!(distance_matrix(&affine).unwrap().get(0, 1) < 1e-7);
        let flipped = generate_general(&[LinearLink::new(0, 1, 0.0, -1.0, 0.0).unwrap()], &[0], 8, Distribution::Normal, &mut rng).unwrap();
        assert_eq!(distance_matrix(&flipped).unwrap().get(0, 1), 2.0);
    }

    #[test]
    fn general_rejects_bad_link_sets() {
        let mut rng = Seed(1).rng();
        let l = |s, t| LinearLink::new(s, t, 0.0, 1.0, 0.1).unwrap();
        // cycle 1 -> 2 -> 1 beside root 0
        assert!(generate_general(&[l(1, 2), l(2, 1)], &[0], 4, Distribution::Normal, &mut rng).is_err());
        // duplicated target
        assert!(generate_general(&[l(0, 1), l(2, 1)], &[0, 2], 4, Distribution::Normal, &mut rng).is_err());
        // target that is also independent
        assert!(generate_general(&[l(0, 1)], &[0, 1], 4, Distribution::Normal, &mut rng).is_err());
        assert!(generate_general(&[l(0, 1)], &[0], 1, Distribution::Normal, &mut rng).is_err());
    }

    #[test]
    fn chained_links_generate_in_order() {
        let mut rng = Seed(4).rng();
        let links = [
            LinearLink::new(2, 0, 0.0, 1.0, 0.0).unwrap(),
            LinearLink::new(0, 1, 1.0, 1.0, 0.0).unwrap(),
        ];
        let m = generate_general(&links, &[2], 4, Distribution::StudentT3, &mut rng).unwrap();
        for i in 0..4 {
            assert_eq!(m.get(i, 0), m.get(i, 2));
            assert_eq!(m.get(i, 1), m.get(i, 0) + 1.0);
        }
    }
}
