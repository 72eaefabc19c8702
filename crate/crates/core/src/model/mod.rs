//! Domain types shared by every stage: data matrices, partitions, the
//! ground-truth patterns and the allocation count.

mod matrix;
mod partition;
mod pattern;

pub use matrix::{default_labels, DataMatrix};
pub use partition::{canonicalize, partitions_equal, Partition};
pub use pattern::{LinearLink, Pattern, PATTERN_VARIABLES};
pub(crate) use pattern::{leader_links, leaders};

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// `n` objects to be allocated among `g` categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllocationCount {
    pub n_objects: u64,
    pub g_categories: u64,
}

impl AllocationCount {
    pub fn new(n_objects: u64, g_categories: u64) -> Result<Self> {
        if n_objects == 0 || g_categories == 0 {
            return Err(Error::Domain("objects and categories must both be >= 1".into()));
        }
        Ok(Self {
            n_objects,
            g_categories,
        })
    }
}

/// Number of ways to allocate the objects among the categories,
/// `C(n + g - 1, g - 1)`, computed exactly.
pub fn count_assignments(q: AllocationCount) -> BigUint {
    binomial(q.n_objects + q.g_categories - 1, q.g_categories - 1)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    // each prefix product is itself a binomial coefficient, so the division is exact
    (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1))
}
