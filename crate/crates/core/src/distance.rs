//! Pearson correlation and the correlation distance `d = sqrt(2 (1 - rho))`.

use crate::error::{Error, Result};
use crate::model::DataMatrix;

/// Correlations this far outside `[-1, 1]` are treated as corruption rather
/// than rounding.
pub const RHO_CLIP_TOLERANCE: f64 = 1e-9;

/// Symmetric `p × p` matrix of correlation distances, zero on the diagonal,
/// every entry in `[0, 2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    p: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a row-major `p × p` grid after checking the invariants.
    pub fn new(p: usize, d: Vec<f64>) -> Result<Self> {
        if d.len() != p * p {
            return Err(Error::Structural(format!("{} entries for a {p}x{p} matrix", d.len())));
        }
        for i in 0..p {
            if d[i * p + i] != 0.0 {
                return Err(Error::Structural(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                let v = d[i * p + j];
                if v != d[j * p + i] {
                    return Err(Error::Structural(format!("asymmetric at ({i}, {j})")));
                }
                if !(0.0..=2.0).contains(&v) {
                    return Err(Error::Structural(format!("entry ({i}, {j}) = {v} outside [0, 2]")));
                }
            }
        }
        Ok(Self { p, d })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.p + j]
    }

    /// Matrix of the relabelled variables: entry `(a, b)` of the result is
    /// entry `(perm[a], perm[b])` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let p = self.p;
        let mut d = vec![0.0; p * p];
        for a in 0..p {
            for b in 0..p {
                d[a * p + b] = self.get(perm[a], perm[b]);
            }
        }
        Self { p, d }
    }
}

fn centered(x: &[f64]) -> (Vec<f64>, f64) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    let dev: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let ss = dev.iter().map(|v| v * v).sum();
    (dev, ss)
}

fn clip_rho(rho: f64) -> Result<f64> {
    if !rho.is_finite() || rho.abs() > 1.0 + RHO_CLIP_TOLERANCE {
        return Err(Error::Domain(format!("correlation {rho} outside [-1, 1]")));
    }
    Ok(rho.clamp(-1.0, 1.0))
}

fn correlate(dx: &[f64], sxx: f64, dy: &[f64], syy: f64) -> Result<f64> {
    let sxy: f64 = dx.iter().zip(dy).map(|(a, b)| a * b).sum();
    // sqrt of the product keeps identical columns at exactly 1
    clip_rho(sxy / (sxx * syy).sqrt())
}

/// Sample correlation coefficient of two equally long columns, computed with
/// the two-pass (mean-subtracted) formula.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Structural(format!("columns of length {} and {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::Structural("correlation needs at least 2 observations".into()));
    }
    let (dx, sxx) = centered(x);
    let (dy, syy) = centered(y);
    if !(sxx > 0.0) {
        return Err(Error::DegenerateColumn { column: "x".into() });
    }
    if !(syy > 0.0) {
        return Err(Error::DegenerateColumn { column: "y".into() });
    }
    correlate(&dx, sxx, &dy, syy)
}

/// `sqrt(2 (1 - rho))`.
pub fn corr_distance(rho: f64) -> Result<f64> {
    let rho = clip_rho(rho)?;
    Ok((2.0 * (1.0 - rho)).sqrt())
}

/// Correlation distances between all pairs of columns of `m`.
pub fn distance_matrix(m: &DataMatrix) -> Result<DistanceMatrix> {
    let p = m.p();
    let cols: Vec<(Vec<f64>, f64)> = (0..p).map(|j| centered(m.column(j))).collect();
    if let Some(j) = cols.iter().position(|(_, ss)| !(*ss > 0.0)) {
        return Err(Error::DegenerateColumn {
            column: m.col_names()[j].clone(),
        });
    }
    let mut d = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..i {
            let rho = correlate(&cols[i].0, cols[i].1, &cols[j].0, cols[j].1)?;
            let v = corr_distance(rho)?;
            d[i * p + j] = v;
            d[j * p + i] = v;
        }
    }
    Ok(DistanceMatrix { p, d })
}
