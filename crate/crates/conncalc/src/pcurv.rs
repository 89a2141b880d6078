//! p-curvature: the matrix of the p-th iterate of the connection operator.
//!
//! The recursion B_1 = A, B_{k+1} = B_k' + A B_k computes the matrix of the
//! k-th iterate on coordinate vectors, so B_p is the p-curvature. It is
//! linear over the function field, horizontal, and gauge-covariant.

use crate::connection::Connection;
use crate::error::ConnError;
use exactcore::{MatrixRF, Prime, RationalFunction};

/// The p-curvature matrix of a connection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PCurvature {
    prime: Prime,
    matrix: MatrixRF,
}

impl PCurvature {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn matrix(&self) -> &MatrixRF {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Conjugate by a gauge: psi -> g psi g^{-1}.
    pub fn gauge_conjugate(&self, g: &MatrixRF) -> Result<PCurvature, ConnError> {
        let g_inv = g.inverse().ok_or(ConnError::SingularGauge)?;
        Ok(PCurvature {
            prime: self.prime,
            matrix: &(g * &self.matrix) * &g_inv,
        })
    }
}

/// Compute the p-curvature via the iterate recursion B_{k+1} = B_k' + A B_k.
/// Left multiplication is forced by acting on constant basis vectors; the
/// operator identity D^p = B_p is what the fuzz suite checks.
pub fn p_curvature(conn: &Connection) -> PCurvature {
    let a = conn.matrix();
    let p = conn.prime().value();
    let mut b = a.clone();
    for _ in 1..p {
        b = &b.derivative() + &(a * &b);
    }
    PCurvature {
        prime: conn.prime(),
        matrix: b,
    }
}

/// Independent rank-1 oracle: psi = a^p + a^{(p-1)}.
pub fn rank1_jacobson_oracle(a: &RationalFunction, prime: Prime) -> RationalFunction {
    let p = prime.value() as usize;
    let mut deriv = a.clone();
    for _ in 0..p - 1 {
        deriv = deriv.derivative();
    }
    &a.pow(p) + &deriv
}

/// Report for the horizontality identity psi' = psi A - A psi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HorizontalityReport {
    pub pass: bool,
}

/// Verify the one-variable horizontality of p-curvature.
pub fn horizontality_check(conn: &Connection, psi: &PCurvature) -> HorizontalityReport {
    let a = conn.matrix();
    let lhs = psi.matrix().derivative();
    let rhs = &(psi.matrix() * a) - &(a * psi.matrix());
    HorizontalityReport { pass: lhs == rhs }
}
