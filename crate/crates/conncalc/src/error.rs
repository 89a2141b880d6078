use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix denominators do not divide a power of the base denominator")]
    DenominatorOutsideBase,
    #[error("gauge matrix is singular")]
    SingularGauge,
    #[error("rescaling by zero")]
    ZeroScale,
}
