use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdError {
    #[error("operands live in different rings or have different truncation bounds")]
    RingMismatch,
    #[error("element is not p-nilpotent: a^p != 0")]
    NotPNilpotent,
    #[error("output truncation {requested} needs entry {needed} beyond input bound {available}")]
    TruncationTooSmall {
        requested: usize,
        needed: usize,
        available: usize,
    },
}
