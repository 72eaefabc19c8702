//! Correlation-distance clustering of small samples: single-linkage, DIANA
//! and PAM, a Monte Carlo harness measuring how often each recovers a known
//! cluster structure under noise, and a Bayes-rule criterion for choosing
//! between two discordant clustering results.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod bayes;
pub mod distance;
pub mod error;
pub mod harness;
pub mod io;
pub mod model;
pub mod synthesis;

pub use algorithms::Algorithm;
pub use error::{Error, Result};
pub use model::{DataMatrix, Partition, Pattern};
