use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("filtration is malformed: {0}")]
    InvalidFiltration(String),
    #[error("Griffiths transversality fails at level {level}, basis vector {index}")]
    GriffithsViolation { level: i32, index: usize },
    #[error("p-curvature is not nilpotent")]
    NotNilpotent,
    #[error("comparison implemented for rank-2 two-step filtrations only")]
    RankUnsupported,
    #[error("Cartier identification degenerates: {0}")]
    DegenerateCartier(String),
}
