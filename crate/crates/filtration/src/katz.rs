//! The abelian Katz comparison: transport the graded p-curvature through
//! the Cartier identifications and compare with the Frobenius twist of the
//! Higgs field. The expected ratio is the constant -1.

use crate::conjugate::{graded_p_curvature, ConjFiltered};
use crate::error::FiltrationError;
use crate::filtered::{higgs_field, FilteredConnection};
use exactcore::json::{matrix_to_json, rf_to_json, vector_to_json, MatrixJson, RfJson};
use exactcore::{MatrixRF, RationalFunction};
use serde::Serialize;

/// Comparison report; serialized shape is the CLI contract.
#[derive(Debug, Clone, Serialize)]
pub struct KatzComparison {
    pub p: u64,
    pub family: String,
    pub ratio: RfJson,
    pub is_constant: bool,
    pub sign: i64,
    pub pass: bool,
    /// Both the Higgs field and the graded p-curvature vanish (isotrivial
    /// case); the comparison then passes vacuously.
    pub both_sides_zero: bool,
    /// Basis data pinning the conventions: Hodge graded lifts, conjugate
    /// graded lifts, and the two Cartier identification matrices.
    pub hodge_graded_bases: Vec<Vec<RfJson>>,
    pub conjugate_graded_bases: Vec<Vec<RfJson>>,
    pub kappa0: MatrixJson,
    pub kappa1: MatrixJson,
    pub theta: MatrixJson,
    pub psi_bar: MatrixJson,
}

/// Compare the transported graded p-curvature with the Frobenius twist of
/// the Higgs field for a rank-2, two-step pair of filtrations.
///
/// kappa0 and kappa1 identify the conjugate graded pieces (in the bases
/// stored on `cf`) with the Frobenius twists of the Hodge graded pieces (in
/// the bases chosen by `higgs_field`). The transported map is
/// kappa0 . psi-bar_1 . kappa1^{-1}; the reference is theta_1 with every
/// coefficient pulled back along lambda -> lambda^p.
pub fn katz_compare(
    fc: &FilteredConnection,
    cf: &ConjFiltered,
    kappa0: &MatrixRF,
    kappa1: &MatrixRF,
    family: &str,
) -> Result<KatzComparison, FiltrationError> {
    let conn = fc.connection();
    let p = conn.prime();
    let var = conn.var();
    if conn.rank() != 2 || fc.hi() - fc.lo() != 1 || fc.rank_of(fc.hi()) != 1 {
        return Err(FiltrationError::RankUnsupported);
    }
    if cf.levels() > 2 {
        return Err(FiltrationError::RankUnsupported);
    }

    let higgs = higgs_field(fc)?;
    let theta = higgs.theta(fc.hi()).clone();

    // psi-bar_1, or the zero map when the conjugate filtration is one-step
    let psi_bar = if cf.levels() == 2 {
        graded_p_curvature(cf).map(1).clone()
    } else {
        MatrixRF::zero(p, var, 1, 1)
    };

    let zero = RationalFunction::zero(p, var);
    let theta_val = theta[(0, 0)].clone();
    let psi_val = psi_bar[(0, 0)].clone();

    let hodge_bases: Vec<Vec<RfJson>> = vec![
        vector_to_json(&higgs.graded_basis(fc.lo())[0]),
        vector_to_json(&higgs.graded_basis(fc.hi())[0]),
    ];
    let conj_bases: Vec<Vec<RfJson>> = (0..cf.levels())
        .map(|i| vector_to_json(&cf.step(i)[0]))
        .collect();

    let report = |ratio: RationalFunction, both_zero: bool| {
        let is_constant = ratio.is_constant();
        let sign = ratio.as_constant().map_or(0, |c| c.symmetric());
        KatzComparison {
            p: p.value(),
            family: family.to_string(),
            ratio: rf_to_json(&ratio),
            is_constant,
            sign,
            pass: both_zero || (is_constant && sign == -1),
            both_sides_zero: both_zero,
            hodge_graded_bases: hodge_bases.clone(),
            conjugate_graded_bases: conj_bases.clone(),
            kappa0: matrix_to_json(kappa0),
            kappa1: matrix_to_json(kappa1),
            theta: matrix_to_json(&theta),
            psi_bar: matrix_to_json(&psi_bar),
        }
    };

    if theta_val.is_zero() && psi_val.is_zero() {
        return Ok(report(zero, true));
    }
    if theta_val.is_zero() || psi_val.is_zero() {
        // one side vanishes identically: the comparison fails, ratio 0
        return Ok(report(zero, false));
    }

    let k0 = kappa0[(0, 0)].clone();
    let k1 = kappa1[(0, 0)].clone();
    if k0.is_zero() || k1.is_zero() {
        return Err(FiltrationError::DegenerateCartier(
            "kappa matrix is singular over the function field".into(),
        ));
    }

    let lhs = &(&k0 * &psi_val) / &k1;
    let rhs = theta_val.substitute_power(p.value() as usize);
    let ratio = &lhs / &rhs;
    Ok(report(ratio, false))
}
