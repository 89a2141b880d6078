//! Decreasing Hodge-type filtrations: Griffiths transversality and the
//! induced Higgs field on the associated graded.

use crate::error::FiltrationError;
use crate::span::{coords_in, extend_greedy, minor_gcd, spans_contain, Vector};
use conncalc::Connection;
use exactcore::{clear_vector, DensePoly, MatrixRF, RationalFunction};

/// A connection with a decreasing filtration F^lo .. F^hi by saturated free
/// submodules, F^lo the full module and F^{hi+1} = 0.
#[derive(Debug, Clone)]
pub struct FilteredConnection {
    conn: Connection,
    lo: i32,
    bases: Vec<Vec<Vector>>,
    saturation_loci: Vec<DensePoly>,
}

impl FilteredConnection {
    /// Wrap a filtration given by per-level bases, `bases[d]` spanning
    /// F^{lo+d}. Vectors are cleared to polynomial content-1 form; nesting
    /// and rank conditions are validated, and the locus where each level
    /// fails to be saturated is recorded.
    pub fn new(
        conn: Connection,
        lo: i32,
        bases: Vec<Vec<Vector>>,
    ) -> Result<FilteredConnection, FiltrationError> {
        let n = conn.rank();
        let prime = conn.prime();
        let var = conn.var();
        if bases.is_empty() {
            return Err(FiltrationError::InvalidFiltration("no levels given".into()));
        }
        if bases[0].len() != n {
            return Err(FiltrationError::InvalidFiltration(format!(
                "F^lo must be the full module of rank {n}"
            )));
        }
        let cleared: Vec<Vec<Vector>> = bases
            .iter()
            .map(|level| level.iter().map(|v| clear_vector(v)).collect())
            .collect();
        for (d, level) in cleared.iter().enumerate() {
            for v in level {
                if v.len() != n {
                    return Err(FiltrationError::InvalidFiltration(
                        "basis vector length mismatch".into(),
                    ));
                }
                if d > 0 && !spans_contain(prime, var, n, &cleared[d - 1], v) {
                    return Err(FiltrationError::InvalidFiltration(format!(
                        "F^{} is not contained in F^{}",
                        lo + d as i32,
                        lo + d as i32 - 1
                    )));
                }
            }
            let rank = MatrixRF::from_columns(prime, var, n, level).rank();
            if rank != level.len() {
                return Err(FiltrationError::InvalidFiltration(format!(
                    "level {} basis is dependent",
                    lo + d as i32
                )));
            }
        }
        let saturation_loci = cleared
            .iter()
            .map(|level| minor_gcd(prime, var, n, level))
            .collect();
        Ok(FilteredConnection {
            conn,
            lo,
            bases: cleared,
            saturation_loci,
        })
    }

    /// The two-step filtration with F^1 spanned by `sub` inside the full
    /// module; any such filtration is Griffiths-transverse.
    pub fn two_step(conn: Connection, sub: Vec<Vector>) -> Result<FilteredConnection, FiltrationError> {
        let n = conn.rank();
        let full = crate::span::standard_basis(conn.prime(), conn.var(), n);
        FilteredConnection::new(conn, 0, vec![full, sub])
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.bases.len() as i32 - 1
    }

    /// Basis of F^i (empty above hi).
    pub fn basis(&self, i: i32) -> &[Vector] {
        if i < self.lo {
            panic!("level below lo holds the full module; query lo instead");
        }
        let d = (i - self.lo) as usize;
        if d < self.bases.len() {
            &self.bases[d]
        } else {
            &[]
        }
    }

    pub fn rank_of(&self, i: i32) -> usize {
        self.basis(i).len()
    }

    /// Product of the per-level minor gcds: where it vanishes outside the
    /// base denominator, some level fails to be a saturated submodule.
    pub fn saturation_locus(&self) -> DensePoly {
        let mut acc = DensePoly::one(self.conn.prime(), self.conn.var());
        for l in &self.saturation_loci {
            if !l.is_zero() {
                acc = &acc * &l.monic();
            }
        }
        acc
    }
}

/// Outcome of the Griffiths transversality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GriffithsReport {
    pub pass: bool,
    /// First failing (level, basis index), if any.
    pub first_failure: Option<(i32, usize)>,
}

/// Verify nabla(F^i) lies in F^{i-1} for every level, by exact solve.
pub fn check_griffiths(fc: &FilteredConnection) -> GriffithsReport {
    let conn = fc.connection();
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    for i in (fc.lo() + 1)..=fc.hi() {
        let lower = fc.basis(i - 1);
        for (idx, v) in fc.basis(i).iter().enumerate() {
            let nv = conn.nabla(v).expect("basis vectors have full length");
            if !spans_contain(prime, var, n, lower, &nv) {
                return GriffithsReport {
                    pass: false,
                    first_failure: Some((i, idx)),
                };
            }
        }
    }
    GriffithsReport {
        pass: true,
        first_failure: None,
    }
}

/// Whether nabla preserves F^i (stronger than transversality at i).
pub fn is_nabla_stable(fc: &FilteredConnection, i: i32) -> bool {
    let conn = fc.connection();
    let basis = fc.basis(i);
    basis.iter().all(|v| {
        let nv = conn.nabla(v).expect("basis vectors have full length");
        spans_contain(conn.prime(), conn.var(), conn.rank(), basis, &nv)
    })
}

/// The Higgs field on the associated graded of a Griffiths-transverse
/// filtration: graded basis lifts per degree and the maps
/// theta_i : gr^i -> gr^{i-1} in those bases.
#[derive(Debug, Clone)]
pub struct HiggsField {
    lo: i32,
    /// graded_bases[d] are lifts of a basis of gr^{lo+d}.
    graded_bases: Vec<Vec<Vector>>,
    /// maps[d-1] is theta_{lo+d} : gr^{lo+d} -> gr^{lo+d-1}.
    maps: Vec<MatrixRF>,
}

impl HiggsField {
    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.graded_bases.len() as i32 - 1
    }

    pub fn graded_basis(&self, i: i32) -> &[Vector] {
        &self.graded_bases[(i - self.lo) as usize]
    }

    /// theta_i for lo < i <= hi.
    pub fn theta(&self, i: i32) -> &MatrixRF {
        assert!(i > self.lo && i <= self.hi(), "theta index out of range");
        &self.maps[(i - self.lo) as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(MatrixRF::is_zero)
    }
}

/// Adapted chain: per degree d (descending from hi), the new basis vectors
/// completing F^{d+1} inside F^d. Shared by the Higgs and Rees builders.
pub(crate) fn adapted_completions(fc: &FilteredConnection) -> Vec<Vec<Vector>> {
    let conn = fc.connection();
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    let mut completions: Vec<Vec<Vector>> = Vec::new();
    let mut accumulated: Vec<Vector> = Vec::new();
    for i in (fc.lo()..=fc.hi()).rev() {
        let before = accumulated.len();
        let ok = extend_greedy(prime, var, n, &mut accumulated, fc.basis(i), fc.rank_of(i));
        assert!(ok, "filtration bases are nested by construction");
        completions.push(accumulated[before..].to_vec());
    }
    completions.reverse(); // index d = degree - lo
    completions
}

/// Compute the Higgs field of a transverse filtration: theta_i sends a
/// graded basis vector of gr^i to the class of its nabla-image in gr^{i-1}.
/// The df term dies in the quotient, so the result is a matrix over the
/// function field.
pub fn higgs_field(fc: &FilteredConnection) -> Result<HiggsField, FiltrationError> {
    let report = check_griffiths(fc);
    if let Some((level, index)) = report.first_failure {
        return Err(FiltrationError::GriffithsViolation { level, index });
    }
    let conn = fc.connection();
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    let completions = adapted_completions(fc);

    let mut maps = Vec::new();
    for d in 1..completions.len() {
        let upper = &completions[d]; // lifts of gr^{lo+d}
        let lower = &completions[d - 1]; // lifts of gr^{lo+d-1}
        // adapted basis of F^{lo+d-1}: everything of degree >= lo+d, then lower
        let mut adapted: Vec<Vector> = completions[d..].iter().flatten().cloned().collect();
        let offset = adapted.len();
        adapted.extend(lower.iter().cloned());
        let mut theta = MatrixRF::zero(prime, var, lower.len(), upper.len());
        for (j, v) in upper.iter().enumerate() {
            let nv = conn.nabla(v).expect("length");
            let coords = coords_in(prime, var, n, &adapted, &nv)
                .expect("transversality puts nabla(F^i) inside F^{i-1}");
            for (k, c) in coords[offset..].iter().enumerate() {
                theta.set(k, j, c.clone());
            }
        }
        maps.push(theta);
    }
    maps.reverse(); // maps[d-1] = theta_{lo+d}
    Ok(HiggsField {
        lo: fc.lo(),
        graded_bases: completions,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::{DensePoly, Prime, RationalFunction};

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn rfp(coeffs: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::from_i64(p5(), 't', coeffs))
    }

    fn e(i: usize, n: usize) -> Vector {
        (0..n)
            .map(|k| if k == i { rfp(&[1]) } else { rfp(&[0]) })
            .collect()
    }

    #[test]
    fn trivial_filtration_is_transverse() {
        let conn = Connection::trivial(p5(), 't', 2);
        let fc = FilteredConnection::new(conn, 0, vec![vec![e(0, 2), e(1, 2)]]).unwrap();
        assert!(check_griffiths(&fc).pass);
        let h = higgs_field(&fc).unwrap();
        assert!(h.is_zero());
    }

    #[test]
    fn coordinate_filtration_of_trivial_connection() {
        // A = 0: the plain derivative preserves coordinate spans
        let conn = Connection::trivial(p5(), 't', 3);
        let fc = FilteredConnection::new(
            conn,
            0,
            vec![vec![e(0, 3), e(1, 3), e(2, 3)], vec![e(0, 3), e(1, 3)], vec![e(0, 3)]],
        )
        .unwrap();
        assert!(check_griffiths(&fc).pass);
        for i in 0..=2 {
            assert!(is_nabla_stable(&fc, i));
        }
        assert!(higgs_field(&fc).unwrap().is_zero());
    }

    #[test]
    fn nilpotent_block_has_nonzero_higgs() {
        // A = [[0,0],[1,0]], F^1 = span(e0): theta_1(e0) = e1 != 0
        let m = MatrixRF::from_rows(vec![vec![rfp(&[0]), rfp(&[0])], vec![rfp(&[1]), rfp(&[0])]]);
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let fc = FilteredConnection::two_step(conn, vec![e(0, 2)]).unwrap();
        assert!(check_griffiths(&fc).pass);
        assert!(!is_nabla_stable(&fc, 1));
        let h = higgs_field(&fc).unwrap();
        let theta = h.theta(1);
        assert_eq!(theta.rows(), 1);
        assert_eq!(theta.cols(), 1);
        assert_eq!(theta[(0, 0)], rfp(&[1]));
        assert_eq!(h.graded_basis(1), &[e(0, 2)]);
        assert_eq!(h.graded_basis(0), &[e(1, 2)]);
    }

    #[test]
    fn stable_filtration_gives_zero_higgs() {
        // A diagonal: coordinate filtration is nabla-stable, theta = 0
        let m = MatrixRF::from_rows(vec![vec![rfp(&[2]), rfp(&[0])], vec![rfp(&[0]), rfp(&[3])]]);
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let fc = FilteredConnection::two_step(conn, vec![e(0, 2)]).unwrap();
        assert!(is_nabla_stable(&fc, 1));
        assert!(higgs_field(&fc).unwrap().is_zero());
    }

    #[test]
    fn griffiths_violation_detected_and_reported() {
        // rank 3, A = [[0,0,0],[0,0,0],[1,0,0]]: nabla e0 = e2 jumps two steps
        let mut m = MatrixRF::zero(p5(), 't', 3, 3);
        m.set(2, 0, rfp(&[1]));
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let fc = FilteredConnection::new(
            conn,
            0,
            vec![vec![e(0, 3), e(1, 3), e(2, 3)], vec![e(0, 3), e(1, 3)], vec![e(0, 3)]],
        )
        .unwrap();
        let report = check_griffiths(&fc);
        assert!(!report.pass);
        assert_eq!(report.first_failure, Some((2, 0)));
        assert!(matches!(
            higgs_field(&fc),
            Err(FiltrationError::GriffithsViolation { level: 2, index: 0 })
        ));
    }

    #[test]
    fn malformed_filtrations_rejected() {
        let conn = Connection::trivial(p5(), 't', 2);
        // F^1 not inside F^0-span is impossible with full F^0, but a
        // dependent level is caught
        let err = FilteredConnection::new(
            conn.clone(),
            0,
            vec![vec![e(0, 2), e(1, 2)], vec![e(0, 2), e(0, 2)]],
        )
        .unwrap_err();
        assert!(matches!(err, FiltrationError::InvalidFiltration(_)));
        // F^lo must be full
        let err = FilteredConnection::new(conn, 0, vec![vec![e(0, 2)]]).unwrap_err();
        assert!(matches!(err, FiltrationError::InvalidFiltration(_)));
    }

    #[test]
    fn higgs_independent_of_lift_choice() {
        let m = MatrixRF::from_rows(vec![
            vec![rfp(&[1]), rfp(&[0, 1])],
            vec![rfp(&[2, 1]), rfp(&[3])],
        ]);
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let sub = vec![vec![rfp(&[1]), rfp(&[0, 2])]];
        let fc = FilteredConnection::two_step(conn.clone(), sub.clone()).unwrap();
        let h1 = higgs_field(&fc).unwrap();
        // replace the completion implicitly by feeding a different (scaled)
        // spanning vector for F^1; theta in matched graded bases agrees
        let sub2 = vec![vec![rfp(&[2]), rfp(&[0, 4])]];
        let fc2 = FilteredConnection::two_step(conn, sub2).unwrap();
        let h2 = higgs_field(&fc2).unwrap();
        // cleared bases coincide, so the matrices must agree exactly
        assert_eq!(h1.graded_basis(1), h2.graded_basis(1));
        assert_eq!(h1.theta(1), h2.theta(1));
    }
}
