use thiserror::Error;

/// Errors produced by generators, tessellation and energy evaluation.
#[derive(Error, Debug)]
pub enum Error {
    /// A family was requested with a point count it cannot produce.
    #[error("invalid cardinality: {0}")]
    InvalidCardinality(String),

    /// Input point set is degenerate (too few points, all coplanar, ...).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// A row of an external point file failed to parse.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A point of an external file is too far from the unit sphere.
    #[error("validation error at line {line}: {msg}")]
    Validation { line: usize, msg: String },

    /// Coincident points make the requested energy infinite.
    #[error("infinite energy: points {0} and {1} coincide")]
    InfiniteEnergy(usize, usize),

    /// Kernel/series-order combination is not defined.
    #[error("kernel mismatch: {0}")]
    KernelMismatch(String),

    /// Evaluation at a pole of the zeta factorization.
    #[error("pole at s = {0}")]
    Pole(f64),

    /// Numerical identity violated beyond tolerance.
    #[error("internal consistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
