//! The conjugate-type filtration: the kernel filtration of p-curvature.
//!
//! For nilpotent psi the increasing filtration G_i = ker(psi^{i+1}) is the
//! minimal nabla-stable filtration whose graded pieces kill the induced
//! p-curvature; psi itself lowers it by one step, giving the graded maps.

use crate::error::FiltrationError;
use crate::span::{coords_in, extend_greedy, spans_contain, Vector};
use conncalc::{p_curvature, Connection, PCurvature};
use exactcore::{DensePoly, MatrixRF};

/// A connection with the increasing kernel filtration of its p-curvature.
/// `steps[i]` holds the basis vectors added at level i, so the basis of
/// G_i is the concatenation of steps[0..=i].
#[derive(Debug, Clone)]
pub struct ConjFiltered {
    conn: Connection,
    psi: PCurvature,
    steps: Vec<Vec<Vector>>,
}

impl ConjFiltered {
    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn psi(&self) -> &PCurvature {
        &self.psi
    }

    /// Number of filtration levels (G_0 .. G_{levels-1} = everything).
    pub fn levels(&self) -> usize {
        self.steps.len()
    }

    /// New basis vectors at level i (lifts of a basis of gr_i).
    pub fn step(&self, i: usize) -> &[Vector] {
        &self.steps[i]
    }

    /// Basis of G_i.
    pub fn basis_of(&self, i: usize) -> Vec<Vector> {
        self.steps[..=i].iter().flatten().cloned().collect()
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.steps[..=i].iter().map(Vec::len).sum()
    }

    /// The induced connection on gr_i in the stored lifts: coordinates of
    /// nabla on the level-i block.
    pub fn graded_connection(&self, i: usize) -> Connection {
        let conn = &self.conn;
        let n = conn.rank();
        let prime = conn.prime();
        let var = conn.var();
        let adapted = self.basis_of(i);
        let offset = adapted.len() - self.steps[i].len();
        let r = self.steps[i].len();
        let mut matrix = MatrixRF::zero(prime, var, r, r);
        for (j, v) in self.steps[i].iter().enumerate() {
            let nv = conn.nabla(v).expect("length");
            let coords = coords_in(prime, var, n, &adapted, &nv)
                .expect("each G_i is nabla-stable by horizontality");
            for (k, c) in coords[offset..].iter().enumerate() {
                matrix.set(k, j, c.clone());
            }
        }
        // the coordinate solve can introduce denominators beyond the base;
        // extend the localization to cover them
        let base = extend_base_for(conn.base_den(), &matrix);
        Connection::new(base, matrix).expect("base extended to cover denominators")
    }
}

/// Build the kernel filtration G_i = ker(psi^{i+1}) with saturated adapted
/// bases. Fails with NotNilpotent when psi^rank != 0. The postconditions
/// (nabla-stability of each G_i, psi lowering the filtration) are checked
/// exactly and asserted.
pub fn conj_filtration(conn: &Connection) -> Result<ConjFiltered, FiltrationError> {
    let psi = p_curvature(conn);
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    if !psi.matrix().pow(n).is_zero() {
        return Err(FiltrationError::NotNilpotent);
    }

    let mut steps: Vec<Vec<Vector>> = Vec::new();
    let mut accumulated: Vec<Vector> = Vec::new();
    let mut power = psi.matrix().clone();
    loop {
        let kernel = power.kernel();
        let target = kernel.len().max(accumulated.len());
        let before = accumulated.len();
        let ok = extend_greedy(prime, var, n, &mut accumulated, &kernel, target);
        assert!(ok, "kernel chain extends");
        steps.push(accumulated[before..].to_vec());
        if accumulated.len() == n {
            break;
        }
        power = &power * psi.matrix();
    }

    let cf = ConjFiltered {
        conn: conn.clone(),
        psi,
        steps,
    };

    // nabla-stability of every level, a consequence of horizontality
    for i in 0..cf.levels() {
        let basis = cf.basis_of(i);
        for v in &basis {
            let nv = conn.nabla(v).expect("length");
            assert!(
                spans_contain(prime, var, n, &basis, &nv),
                "kernel filtration level {i} is not nabla-stable"
            );
        }
    }
    // psi lowers the filtration by one step
    for i in 0..cf.levels() {
        let target: Vec<Vector> = if i == 0 { Vec::new() } else { cf.basis_of(i - 1) };
        for v in cf.basis_of(i) {
            let pv = cf.psi.matrix().apply(&v);
            if pv.iter().all(exactcore::RationalFunction::is_zero) {
                continue;
            }
            assert!(
                spans_contain(prime, var, n, &target, &pv),
                "psi does not lower level {i}"
            );
        }
    }
    // the induced p-curvature on each graded piece vanishes
    for i in 0..cf.levels() {
        if cf.step(i).is_empty() {
            continue;
        }
        let graded = cf.graded_connection(i);
        assert!(
            p_curvature(&graded).is_zero(),
            "graded piece {i} has nonzero p-curvature"
        );
    }
    Ok(cf)
}

/// The graded maps induced by psi on the kernel filtration:
/// maps[i-1] is the matrix of psi-bar_i : gr_i -> gr_{i-1} in the stored
/// lifts (the level-0 map is zero and omitted).
#[derive(Debug, Clone)]
pub struct GradedPCurv {
    maps: Vec<MatrixRF>,
}

impl GradedPCurv {
    /// psi-bar_i for i >= 1.
    pub fn map(&self, i: usize) -> &MatrixRF {
        assert!(i >= 1, "psi-bar_0 is the zero map");
        &self.maps[i - 1]
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn all_zero(&self) -> bool {
        self.maps.iter().all(MatrixRF::is_zero)
    }
}

/// Extract the graded p-curvature maps psi-bar_i : gr_i -> gr_{i-1}.
pub fn graded_p_curvature(cf: &ConjFiltered) -> GradedPCurv {
    let conn = cf.connection();
    let n = conn.rank();
    let prime = conn.prime();
    let var = conn.var();
    let mut maps = Vec::new();
    for i in 1..cf.levels() {
        let adapted = cf.basis_of(i - 1);
        let offset = adapted.len() - cf.step(i - 1).len();
        let rows = cf.step(i - 1).len();
        let cols = cf.step(i).len();
        let mut m = MatrixRF::zero(prime, var, rows, cols);
        for (j, v) in cf.step(i).iter().enumerate() {
            let pv = cf.psi().matrix().apply(v);
            let coords = coords_in(prime, var, n, &adapted, &pv)
                .expect("psi lowers the kernel filtration");
            for (k, c) in coords[offset..].iter().enumerate() {
                m.set(k, j, c.clone());
            }
        }
        maps.push(m);
    }
    GradedPCurv { maps }
}

/// Extend a localization so it covers the denominators of a matrix.
pub(crate) fn extend_base_for(base: &DensePoly, m: &MatrixRF) -> DensePoly {
    let mut out = base.clone();
    for i in 0..m.rows() {
        for e in m.row(i) {
            if !e.den().is_one() && !e.den().divides_power_of(&out) {
                out = &out * e.den();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::{DensePoly, Prime, RationalFunction};

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn rfp(p: Prime, coeffs: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::from_i64(p, 't', coeffs))
    }

    #[test]
    fn zero_curvature_gives_single_step() {
        let conn = Connection::trivial(p3(), 't', 2);
        let cf = conj_filtration(&conn).unwrap();
        assert_eq!(cf.levels(), 1);
        assert_eq!(cf.rank_of(0), 2);
        let graded = graded_p_curvature(&cf);
        assert!(graded.is_empty() || graded.all_zero());
    }

    #[test]
    fn strictly_triangular_rank_two() {
        // A = [[0,0],[t,0]]: psi nilpotent nonzero, G_0 = ker psi rank 1
        let p = p3();
        let mut m = MatrixRF::zero(p, 't', 2, 2);
        m.set(1, 0, rfp(p, &[0, 1]));
        let conn = Connection::new(DensePoly::one(p, 't'), m).unwrap();
        let cf = conj_filtration(&conn).unwrap();
        assert!(!cf.psi().is_zero());
        assert_eq!(cf.levels(), 2);
        assert_eq!(cf.rank_of(0), 1);
        assert_eq!(cf.rank_of(1), 2);
        let graded = graded_p_curvature(&cf);
        assert_eq!(graded.len(), 1);
        assert!(!graded.map(1).is_zero());
    }

    #[test]
    fn non_nilpotent_rejected() {
        // A = diag(1, 0): psi = diag(1, 0) is not nilpotent
        let p = p3();
        let mut m = MatrixRF::zero(p, 't', 2, 2);
        m.set(0, 0, rfp(p, &[1]));
        let conn = Connection::new(DensePoly::one(p, 't'), m).unwrap();
        assert!(matches!(
            conj_filtration(&conn),
            Err(FiltrationError::NotNilpotent)
        ));
    }
}
