use thiserror::Error;

/// Errors raised by the numerical library surface.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("non-finite value (NaN or infinity) in {0}")]
    NonFinite(&'static str),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized: norm {norm}")]
    NotNormalized { norm: f64 },

    #[error("basis states are not orthogonal: |overlap| = {overlap}")]
    NotOrthogonal { overlap: f64 },

    #[error("vector has (near) zero norm: {norm}")]
    ZeroNorm { norm: f64 },

    #[error("gate {gate} is not unitary: defect {defect}")]
    NotUnitary { gate: &'static str, defect: f64 },

    /// The two processes are the same up to a phase, so no order can be
    /// attached to them.
    #[error("order undefined: processes are parallel (|normalized overlap| = {overlap})")]
    OrderUndefined { overlap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
