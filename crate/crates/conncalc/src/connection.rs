//! Flat connections on free modules over F_p[t, 1/s(t)].
//!
//! A connection is stored by its matrix A; the operator acts on coordinate
//! vectors as v -> v' + A v, which obeys the Leibniz rule by construction.
//! Over a one-dimensional base flatness is automatic.

use crate::error::ConnError;
use exactcore::{DensePoly, FpElement, MatrixRF, Prime, RationalFunction};

/// A rank-n flat connection over F_p[t, 1/s(t)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    base_den: DensePoly,
    matrix: MatrixRF,
}

impl Connection {
    /// Wrap a connection matrix over the base localized at `base_den`.
    /// Every entry denominator must divide a power of `base_den`.
    pub fn new(base_den: DensePoly, matrix: MatrixRF) -> Result<Connection, ConnError> {
        if matrix.rows() != matrix.cols() {
            return Err(ConnError::DimensionMismatch {
                expected: matrix.rows(),
                got: matrix.cols(),
            });
        }
        assert!(matrix.rows() >= 1, "rank must be positive");
        assert!(!base_den.is_zero(), "base denominator must be nonzero");
        for i in 0..matrix.rows() {
            for j in 0..matrix.cols() {
                if !matrix[(i, j)].den().divides_power_of(&base_den) {
                    return Err(ConnError::DenominatorOutsideBase);
                }
            }
        }
        Ok(Connection { base_den, matrix })
    }

    /// The trivial connection (A = 0) of the given rank over F_p[t].
    pub fn trivial(prime: Prime, var: char, rank: usize) -> Connection {
        Connection {
            base_den: DensePoly::one(prime, var),
            matrix: MatrixRF::zero(prime, var, rank, rank),
        }
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    pub fn var(&self) -> char {
        self.matrix.var()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn base_den(&self) -> &DensePoly {
        &self.base_den
    }

    pub fn matrix(&self) -> &MatrixRF {
        &self.matrix
    }

    /// Apply the connection operator: v' + A v.
    pub fn nabla(&self, v: &[RationalFunction]) -> Result<Vec<RationalFunction>, ConnError> {
        if v.len() != self.rank() {
            return Err(ConnError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        let av = self.matrix.apply(v);
        Ok(v.iter()
            .zip(av)
            .map(|(x, ax)| &x.derivative() + &ax)
            .collect())
    }

    /// Iterate the connection operator k times.
    pub fn nabla_iterate(
        &self,
        v: &[RationalFunction],
        k: usize,
    ) -> Result<Vec<RationalFunction>, ConnError> {
        let mut w = v.to_vec();
        for _ in 0..k {
            w = self.nabla(&w)?;
        }
        Ok(w)
    }
}

/// Apply the connection operator; bare-function form of [`Connection::nabla`].
pub fn nabla_apply(
    conn: &Connection,
    v: &[RationalFunction],
) -> Result<Vec<RationalFunction>, ConnError> {
    conn.nabla(v)
}

/// Change of trivialization: A -> g A g^{-1} - g' g^{-1}. The base
/// localization grows by the factors needed to invert g.
pub fn gauge_transform(conn: &Connection, g: &MatrixRF) -> Result<Connection, ConnError> {
    assert_eq!(g.rows(), conn.rank(), "gauge size mismatch");
    assert_eq!(g.cols(), conn.rank(), "gauge size mismatch");
    let g_inv = g.inverse().ok_or(ConnError::SingularGauge)?;
    let matrix = &(&(g * conn.matrix()) * &g_inv) - &(&g.derivative() * &g_inv);
    let mut base = conn.base_den.clone();
    let det = g.determinant();
    for p in [det.num(), det.den()] {
        if !p.is_constant() {
            base = &base * &p.monic();
        }
    }
    for i in 0..g.rows() {
        for e in g.row(i) {
            if !e.den().is_one() {
                base = &base * e.den();
            }
        }
    }
    Connection::new(base, matrix)
}

/// How the deformation parameter of a lambda-connection is recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaScale {
    Value(FpElement),
    /// The generic point of the deformation line; only rescaling and
    /// comparison make sense here.
    Formal,
}

/// A lambda-connection: the operator v -> lambda v' + A v, obeying the
/// scaled Leibniz rule nabla(f s) = f nabla(s) + lambda f' s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaConnection {
    base_den: DensePoly,
    matrix: MatrixRF,
    lambda: LambdaScale,
}

impl LambdaConnection {
    pub fn new(
        base_den: DensePoly,
        matrix: MatrixRF,
        lambda: LambdaScale,
    ) -> Result<LambdaConnection, ConnError> {
        if matrix.rows() != matrix.cols() {
            return Err(ConnError::DimensionMismatch {
                expected: matrix.rows(),
                got: matrix.cols(),
            });
        }
        Ok(LambdaConnection {
            base_den,
            matrix,
            lambda,
        })
    }

    /// View an ordinary connection as the lambda = 1 point.
    pub fn from_connection(conn: &Connection) -> LambdaConnection {
        LambdaConnection {
            base_den: conn.base_den().clone(),
            matrix: conn.matrix().clone(),
            lambda: LambdaScale::Value(FpElement::one(conn.prime())),
        }
    }

    pub fn matrix(&self) -> &MatrixRF {
        &self.matrix
    }

    pub fn base_den(&self) -> &DensePoly {
        &self.base_den
    }

    pub fn lambda(&self) -> LambdaScale {
        self.lambda
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn prime(&self) -> Prime {
        self.matrix.prime()
    }

    /// Apply v -> lambda v' + A v. Panics on the formal marker, which has
    /// no pointwise action.
    pub fn apply(&self, v: &[RationalFunction]) -> Result<Vec<RationalFunction>, ConnError> {
        let LambdaScale::Value(lambda) = self.lambda else {
            panic!("formal lambda-connections have no pointwise action")
        };
        if v.len() != self.rank() {
            return Err(ConnError::DimensionMismatch {
                expected: self.rank(),
                got: v.len(),
            });
        }
        let av = self.matrix.apply(v);
        let scale = RationalFunction::constant(lambda, self.matrix.var());
        Ok(v.iter()
            .zip(av)
            .map(|(x, ax)| &(&x.derivative() * &scale) + &ax)
            .collect())
    }
}

/// The unit action on lambda-connections: u sends the lambda-operator
/// v -> lambda v' + A v to the (u lambda)-operator v -> (u lambda) v' + (u A) v.
pub fn lambda_rescale(
    lc: &LambdaConnection,
    u: FpElement,
) -> Result<LambdaConnection, ConnError> {
    if u.is_zero() {
        return Err(ConnError::ZeroScale);
    }
    let scale = RationalFunction::constant(u, lc.matrix.var());
    let lambda = match lc.lambda {
        LambdaScale::Value(l) => LambdaScale::Value(l * u),
        LambdaScale::Formal => LambdaScale::Formal,
    };
    Ok(LambdaConnection {
        base_den: lc.base_den.clone(),
        matrix: lc.matrix.scale(&scale),
        lambda,
    })
}
