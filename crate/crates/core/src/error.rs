use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A partition, link set or matrix violates its structural invariants.
    #[error("structural error: {0}")]
    Structural(String),

    /// A column has zero sample variance, so its correlation is undefined.
    #[error("degenerate column {column}: zero variance")]
    DegenerateColumn { column: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    /// Every conditional for an observation is zero, so Bayes' rule divides by zero.
    #[error("posterior undefined for {algorithm}: all conditionals are zero")]
    UndefinedPosterior { algorithm: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
