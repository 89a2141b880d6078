//! The kernel-of-Frobenius check on truncated rings.
//!
//! In F_p[x]/(x^N) the p-power map is coefficientwise Frobenius composed
//! with x -> x^p, so its kernel is exactly the ideal (x^v) with
//! v = ceil(N/p). This module verifies that prediction constructively.

use exactcore::TruncatedRing;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Result of verifying that {a : a^p = 0} equals (x^{ceil(N/p)}).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusKernelReport {
    pub prime: u64,
    pub order: usize,
    /// Predicted valuation v with kernel (x^v).
    pub predicted_valuation: usize,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Verify that the p-th-power kernel in F_p[x]/(x^N) is the ideal
/// (x^{ceil(N/p)}): monomial generators are checked exhaustively and
/// general elements by deterministic sampling.
pub fn frobenius_kernel_check(ring: &TruncatedRing) -> FrobeniusKernelReport {
    let p = ring.prime().value();
    let n = ring.order();
    let v = n.div_ceil(p as usize);
    let mut failures = Vec::new();

    // Monomials c x^m for every scalar and exponent.
    for m in 0..n {
        for c in 1..p {
            let a = ring.monomial_scaled(m, c);
            let in_kernel = a.pow(p as usize).is_zero();
            if (m >= v) != in_kernel {
                failures.push(format!("monomial {c}x^{m}: kernel membership {in_kernel}"));
            }
        }
    }

    // Sampled general elements: a^p = 0 iff every coefficient below v is 0.
    let mut rng = ChaCha8Rng::seed_from_u64(0x66726f62);
    for _ in 0..200 {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let a = ring.element(&coeffs);
        let in_ideal = coeffs[..v.min(n)].iter().all(|&c| c == 0);
        let in_kernel = a.pow(p as usize).is_zero();
        if in_ideal != in_kernel {
            failures.push(format!("element {a}: ideal {in_ideal} vs kernel {in_kernel}"));
        }
    }

    FrobeniusKernelReport {
        prime: p,
        order: n,
        predicted_valuation: v,
        pass: failures.is_empty(),
        failures,
    }
}
