//! JSON wire formats shared by every module and the CLI.
//!
//! Polynomials serialize as little-endian coefficient arrays of integers,
//! rational functions as `{"num": [...], "den": [...]}`, and matrices as
//! row-major nested arrays. The prime is carried out of band (CLI flag or
//! report field), so deserialization takes it explicitly.

use crate::error::ExactError;
use crate::fp::Prime;
use crate::matrix::MatrixRF;
use crate::poly::DensePoly;
use crate::ratfunc::RationalFunction;
use serde::{Deserialize, Serialize};

/// Little-endian coefficient array.
pub type PolyJson = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RfJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

/// Row-major nested array of rational functions.
pub type MatrixJson = Vec<Vec<RfJson>>;

pub fn poly_to_json(p: &DensePoly) -> PolyJson {
    p.coeffs().to_vec()
}

pub fn poly_from_json(prime: Prime, var: char, coeffs: &PolyJson) -> DensePoly {
    DensePoly::new(prime, var, coeffs.clone())
}

pub fn rf_to_json(r: &RationalFunction) -> RfJson {
    RfJson {
        num: poly_to_json(r.num()),
        den: poly_to_json(r.den()),
    }
}

pub fn rf_from_json(prime: Prime, var: char, r: &RfJson) -> Result<RationalFunction, ExactError> {
    RationalFunction::new(
        poly_from_json(prime, var, &r.num),
        poly_from_json(prime, var, &r.den),
    )
}

pub fn matrix_to_json(m: &MatrixRF) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rf_to_json).collect())
        .collect()
}

pub fn matrix_from_json(prime: Prime, var: char, m: &MatrixJson) -> Result<MatrixRF, ExactError> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut entries = Vec::with_capacity(rows * cols);
    for row in m {
        if row.len() != cols {
            return Err(ExactError::DimensionMismatch {
                expected: cols,
                got: row.len(),
            });
        }
        for e in row {
            entries.push(rf_from_json(prime, var, e)?);
        }
    }
    Ok(MatrixRF::new(rows, cols, entries))
}

/// Vectors serialize as arrays of rational functions.
pub fn vector_to_json(v: &[RationalFunction]) -> Vec<RfJson> {
    v.iter().map(rf_to_json).collect()
}
