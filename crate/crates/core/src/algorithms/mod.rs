//! Single-linkage, DIANA and PAM over a correlation distance matrix.

mod diana;
mod linkage;
mod pam;

use std::fmt;
use std::str::FromStr;

pub use diana::{diana, diana_levels};
pub use linkage::{single_linkage, Dendrogram, Merge};
pub use pam::{objective as pam_objective, pam, PamState};

use crate::distance::DistanceMatrix;
use crate::error::{Error, Result};
use crate::model::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    SingleLinkage,
    Diana,
    Pam,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::SingleLinkage, Algorithm::Diana, Algorithm::Pam];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::SingleLinkage => "single",
            Algorithm::Diana => "diana",
            Algorithm::Pam => "pam",
        }
    }

    /// Clusters the variables behind `d` into exactly `k` groups.
    pub fn cluster(self, d: &DistanceMatrix, k: usize) -> Result<Partition> {
        match self {
            Algorithm::SingleLinkage => single_linkage(d).cut(k),
            Algorithm::Diana => diana(d, k),
            Algorithm::Pam => pam(d, k).map(|(part, _)| part),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "single" | "single-linkage" | "single_linkage" => Ok(Algorithm::SingleLinkage),
            "diana" => Ok(Algorithm::Diana),
            "pam" => Ok(Algorithm::Pam),
            other => Err(Error::Domain(format!("unknown algorithm `{other}`"))),
        }
    }
}
