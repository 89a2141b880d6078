//! Divided-power calculus on truncated test rings: the group of nilpotent
//! PD sequences, the canonical structure on p-nilpotents, the Verschiebung
//! embedding with its exact sequence, and the kernel-of-Frobenius check.

pub mod error;
pub mod frobenius;
pub mod fuzz;
pub mod sequence;

pub use error::PdError;
pub use frobenius::{frobenius_kernel_check, FrobeniusKernelReport};
pub use sequence::{
    binomial_mod, pd_add, pd_canonical, pd_forget, pd_neg, pd_verschiebung, PdSequence,
    PdValidationReport, PdViolation,
};
