use crate::error::{Error, Result};
use crate::model::partition::Partition;

/// `target = intercept + slope * source + noise`, with noise of standard
/// deviation `noise_sd`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearLink {
    pub source: usize,
    pub target: usize,
    pub intercept: f64,
    pub slope: f64,
    pub noise_sd: f64,
}

impl LinearLink {
    pub fn new(source: usize, target: usize, intercept: f64, slope: f64, noise_sd: f64) -> Result<Self> {
        if source == target {
            return Err(Error::Structural(format!("link from column {source} to itself")));
        }
        if !(noise_sd >= 0.0) || !noise_sd.is_finite() {
            return Err(Error::Domain(format!("noise sd must be finite and >= 0, got {noise_sd}")));
        }
        Ok(Self {
            source,
            target,
            intercept,
            slope,
            noise_sd,
        })
    }
}

/// Number of variables in every ground-truth pattern.
pub const PATTERN_VARIABLES: usize = 6;

/// One of the three ground-truth structures of six variables in three clusters.
///
/// Within each cluster the lowest-index variable is the independent leader and
/// every other member is `leader + noise`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    id: u8,
    clusters: Partition,
}

impl Pattern {
    pub fn new(id: u8) -> Result<Self> {
        let clusters: Vec<Vec<usize>> = match id {
            1 => vec![vec![0, 1], vec![2, 3], vec![4, 5]],
            2 => vec![vec![0, 1, 2], vec![3, 4], vec![5]],
            3 => vec![vec![0, 1, 2, 3], vec![4], vec![5]],
            _ => return Err(Error::Domain(format!("pattern must be 1, 2 or 3, got {id}"))),
        };
        Ok(Self {
            id,
            clusters: Partition::new(PATTERN_VARIABLES, clusters)?,
        })
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn clusters(&self) -> &Partition {
        &self.clusters
    }

    /// Leaders of every cluster, i.e. the columns drawn independently.
    pub fn leaders(&self) -> Vec<usize> {
        leaders(&self.clusters)
    }

    /// The unit-slope, zero-intercept links of the pattern at noise level `sigma`.
    pub fn links(&self, sigma: f64) -> Vec<LinearLink> {
        leader_links(&self.clusters)
            .map(|(source, target)| LinearLink {
                source,
                target,
                intercept: 0.0,
                slope: 1.0,
                noise_sd: sigma,
            })
            .collect()
    }
}

pub(crate) fn leaders(p: &Partition) -> Vec<usize> {
    p.clusters().iter().map(|c| c[0]).collect()
}

/// `(leader, member)` for every non-leader member of every cluster.
pub(crate) fn leader_links(p: &Partition) -> impl Iterator<Item = (usize, usize)> + '_ {
    p.clusters()
        .iter()
        .flat_map(|c| c[1..].iter().map(move |&m| (c[0], m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_shapes() {
        let shapes: Vec<String> = (1..=3).map(|i| Pattern::new(i).unwrap().clusters().to_string()).collect();
        assert_eq!(
            shapes,
            [
                "{X1,X2}|{X3,X4}|{X5,X6}",
                "{X1,X2,X3}|{X4,X5}|{X6}",
                "{X1,X2,X3,X4}|{X5}|{X6}"
            ]
        );
        assert!(Pattern::new(0).is_err());
        assert!(Pattern::new(4).is_err());
    }

    #[test]
    fn links_induce_pattern() {
        for id in 1..=3 {
            let pat = Pattern::new(id).unwrap();
            let links = pat.links(0.5);
            let mut covered: Vec<usize> = pat.leaders();
            covered.extend(links.iter().map(|l| l.target));
            covered.sort_unstable();
            assert_eq!(covered, (0..6).collect::<Vec<_>>());

            // every link hangs off its cluster's leader
            let mut labels: Vec<usize> = (0..6).collect();
            for l in &links {
                assert!(pat.leaders().contains(&l.source));
                labels[l.target] = l.source;
            }
            assert_eq!(&Partition::from_labels(&labels), pat.clusters());
        }
    }

    #[test]
    fn pattern_one_pairs_x6_with_x5() {
        let links = Pattern::new(1).unwrap().links(0.1);
        assert!(links.iter().any(|l| l.source == 4 && l.target == 5));
    }

    #[test]
    fn link_validation() {
        assert!(LinearLink::new(1, 1, 0.0, 1.0, 0.0).is_err());
        assert!(LinearLink::new(0, 1, 0.0, 1.0, -0.1).is_err());
        assert!(LinearLink::new(0, 1, 0.0, 1.0, 0.0).is_ok());
    }
}
