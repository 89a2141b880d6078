//! The Rees realization of a filtered connection: a module over an
//! auxiliary deformation line whose fiber at 1 is the connection and whose
//! fiber at 0 is the associated graded carrying the Higgs field.

use crate::error::FiltrationError;
use crate::filtered::{adapted_completions, check_griffiths, FilteredConnection};
use crate::span::{coords_in, Vector};
use conncalc::{Connection, LambdaConnection, LambdaScale};
use exactcore::{FpElement, MatrixRF, RationalFunction};

/// The Rees module of a filtered connection in an adapted basis: each basis
/// vector carries its filtration degree, and the deformation-line action is
/// recorded by the matrices of each lambda power.
#[derive(Debug, Clone)]
pub struct ReesModule {
    degrees: Vec<i32>,
    adapted: MatrixRF,
    /// lambda_coeffs[k] is the coefficient of lambda^k in R(lambda); the
    /// fiber action at u is u * d/dt + R(u).
    lambda_coeffs: Vec<MatrixRF>,
    conn: Connection,
}

impl ReesModule {
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Columns are the adapted basis in the original coordinates.
    pub fn adapted(&self) -> &MatrixRF {
        &self.adapted
    }

    pub fn lambda_coeffs(&self) -> &[MatrixRF] {
        &self.lambda_coeffs
    }

    pub fn evaluate(&self, u: FpElement) -> MatrixRF {
        let prime = self.conn.prime();
        let var = self.conn.var();
        let n = self.degrees.len();
        let mut acc = MatrixRF::zero(prime, var, n, n);
        let mut power = FpElement::one(prime);
        for coeff in &self.lambda_coeffs {
            let scale = RationalFunction::constant(power, var);
            acc = &acc + &coeff.scale(&scale);
            power = power * u;
        }
        acc
    }

    /// The diagonal grading action diag(u^{-d_j}); conjugating the fiber at
    /// u by it recovers the u-rescaled fiber at 1.
    pub fn grading_conjugator(&self, u: FpElement) -> MatrixRF {
        let prime = self.conn.prime();
        let var = self.conn.var();
        let n = self.degrees.len();
        let mut g = MatrixRF::zero(prime, var, n, n);
        for (j, &d) in self.degrees.iter().enumerate() {
            let scalar = if d >= 0 {
                u.inv().pow(d as u64)
            } else {
                u.pow((-d) as u64)
            };
            g.set(j, j, RationalFunction::constant(scalar, var));
        }
        g
    }
}

/// Build the Rees module of a Griffiths-transverse filtration: adapted
/// basis vectors of degree d enter as lambda^{-d} generators, and the
/// connection matrix entry c_{ij} picks up lambda^{1 + d_i - d_j}.
/// Transversality is exactly what keeps every exponent nonnegative.
pub fn rees_build(fc: &FilteredConnection) -> Result<ReesModule, FiltrationError> {
    let report = check_griffiths(fc);
    if let Some((level, index)) = report.first_failure {
        return Err(FiltrationError::GriffithsViolation { level, index });
    }
    let conn = fc.connection();
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    let completions = adapted_completions(fc);

    let mut basis: Vec<Vector> = Vec::new();
    let mut degrees: Vec<i32> = Vec::new();
    for (d, level) in completions.iter().enumerate() {
        for v in level {
            basis.push(v.clone());
            degrees.push(fc.lo() + d as i32);
        }
    }
    let adapted = MatrixRF::from_columns(prime, var, n, &basis);

    // matrix of nabla in the adapted basis
    let mut c = MatrixRF::zero(prime, var, n, n);
    for (j, v) in basis.iter().enumerate() {
        let nv = conn.nabla(v).expect("length");
        let coords = coords_in(prime, var, n, &basis, &nv).expect("full basis");
        for (i, coord) in coords.into_iter().enumerate() {
            c.set(i, j, coord);
        }
    }

    let max_power = (1 + (fc.hi() - fc.lo()).max(0)) as usize;
    let mut lambda_coeffs = vec![MatrixRF::zero(prime, var, n, n); max_power + 1];
    for i in 0..n {
        for j in 0..n {
            if c[(i, j)].is_zero() {
                continue;
            }
            let e = 1 + degrees[i] - degrees[j];
            assert!(
                (0..=max_power as i32).contains(&e),
                "transversality bounds the lambda exponent"
            );
            lambda_coeffs[e as usize].set(i, j, c[(i, j)].clone());
        }
    }

    Ok(ReesModule {
        degrees,
        adapted,
        lambda_coeffs,
        conn: conn.clone(),
    })
}

/// The fiber of the Rees module at a point of the deformation line: the
/// lambda-connection u d/dt + R(u) in the adapted basis.
pub fn rees_fiber(rm: &ReesModule, at: FpElement) -> LambdaConnection {
    let matrix = rm.evaluate(at);
    let base = crate::conjugate::extend_base_for(rm.conn.base_den(), &matrix);
    LambdaConnection::new(base, matrix, LambdaScale::Value(at))
        .expect("square by construction")
}
