//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two signals were combined although their grids differ.
    #[error("grid spec mismatch: {0}")]
    SpecMismatch(String),
    /// A translation or representation step does not land on the grid.
    #[error("shift {shift} is not grid-aligned (step {step})")]
    NotAligned { shift: f64, step: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// Dense frame-operator path refuses grids beyond this size.
    #[error("grid too large for dense frame operator: {n} > {max}")]
    GridTooLarge { n: usize, max: usize },
    #[error("density gate failed: d * sum|h_j| = {value} > 1")]
    DensityGateFailed { value: f64 },
    #[error("index range mismatch: {0}")]
    RangeMismatch(String),
    #[error("zero-norm test signal")]
    ZeroNorm,
    #[error("no field node at h = {0}")]
    NoSuchNode(f64),
    #[error("serialization: {0}")]
    Serialization(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
