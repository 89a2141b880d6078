//! Seeded suites for the filtration layer: conjugate-filtration structure
//! on random nilpotent connections, Higgs lift independence, and Rees fiber
//! identities.

use crate::conjugate::{conj_filtration, graded_p_curvature};
use crate::filtered::{check_griffiths, higgs_field, FilteredConnection};
use crate::rees::{rees_build, rees_fiber};
use crate::span::spans_contain;
use conncalc::fuzz::PropertyReport;
use conncalc::{gauge_transform, lambda_rescale, p_curvature, Connection};
use exactcore::{DensePoly, FpElement, MatrixRF, Prime, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationFuzzReport {
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl FiltrationFuzzReport {
    pub fn pass(&self) -> bool {
        self.properties.iter().all(PropertyReport::pass)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> DensePoly {
    let deg = rng.gen_range(0..=max_deg);
    DensePoly::new(p, 't', (0..=deg).map(|_| rng.gen_range(0..p.value())).collect())
}

fn random_rf(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> RationalFunction {
    let pole = rng.gen_range(0..=1);
    RationalFunction::new(random_poly(rng, p, max_deg), DensePoly::monomial(p, 't', pole))
        .expect("nonzero denominator")
}

/// Random rank-2 connection with nilpotent p-curvature: a strictly
/// triangular matrix conjugated by a random gauge.
pub fn random_nilpotent_connection(rng: &mut ChaCha8Rng, p: Prime) -> Connection {
    let mut m = MatrixRF::zero(p, 't', 2, 2);
    m.set(1, 0, random_rf(rng, p, 2));
    let conn = Connection::new(DensePoly::x(p, 't'), m).unwrap();
    loop {
        let entries = (0..4).map(|_| random_rf(rng, p, 1)).collect();
        let g = MatrixRF::new(2, 2, entries);
        if g.determinant().is_zero() {
            continue;
        }
        return gauge_transform(&conn, &g).unwrap();
    }
}

/// Conjugate filtration structure on fuzzed nilpotent connections:
/// stability, lowering, graded flatness, and a nonzero graded map whenever
/// psi is nonzero.
pub fn conjugate_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let conn = random_nilpotent_connection(&mut rng, p);
        let psi = p_curvature(&conn);
        let cf = match conj_filtration(&conn) {
            Ok(cf) => cf,
            Err(e) => {
                violations.push(format!("case {case}: {e}"));
                continue;
            }
        };
        if psi.is_zero() {
            if cf.levels() != 1 {
                violations.push(format!("case {case}: zero psi should give one level"));
            }
            continue;
        }
        if cf.levels() != 2 || cf.rank_of(0) != 1 {
            violations.push(format!("case {case}: unexpected filtration shape"));
            continue;
        }
        let graded = graded_p_curvature(&cf);
        if graded.map(1).is_zero() {
            violations.push(format!("case {case}: psi != 0 but psi-bar = 0"));
        }
        // psi sends G_1 into G_0 = ker psi
        let g0 = cf.basis_of(0);
        for v in cf.basis_of(1) {
            let pv = psi.matrix().apply(&v);
            if !pv.iter().all(RationalFunction::is_zero)
                && !spans_contain(p, 't', 2, &g0, &pv)
            {
                violations.push(format!("case {case}: psi does not lower the filtration"));
            }
        }
    }
    PropertyReport {
        property: "conjugate_filtration".into(),
        cases,
        violations,
    }
}

/// Higgs matrices do not depend on the choice of graded lifts: shifting a
/// completion vector by an element of the deeper level leaves theta fixed.
pub fn higgs_lift_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let entries = (0..4).map(|_| random_rf(&mut rng, p, 2)).collect();
        let conn = match Connection::new(DensePoly::x(p, 't'), MatrixRF::new(2, 2, entries)) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let sub = vec![vec![random_rf(&mut rng, p, 1), random_rf(&mut rng, p, 1)]];
        if sub[0].iter().all(RationalFunction::is_zero) {
            continue;
        }
        let fc = FilteredConnection::two_step(conn.clone(), sub.clone()).unwrap();
        if !check_griffiths(&fc).pass {
            violations.push(format!("case {case}: two-step filtration not transverse"));
            continue;
        }
        let h = higgs_field(&fc).unwrap();
        let theta = h.theta(1).clone();
        // recompute theta against a hand-shifted completion lift
        let v1 = h.graded_basis(1)[0].clone();
        let u = h.graded_basis(0)[0].clone();
        let c = random_rf(&mut rng, p, 1);
        let shifted: Vec<RationalFunction> =
            u.iter().zip(&v1).map(|(a, b)| a + &(&c * b)).collect();
        let nv = conn.nabla(&v1).unwrap();
        let coords = exactcore::in_span(p, 't', 2, &[v1.clone(), shifted.clone()], &nv)
            .expect("transversality");
        if coords[1] != theta[(0, 0)] {
            violations.push(format!("case {case}: theta depends on the lift"));
        }
    }
    PropertyReport {
        property: "higgs_lift_independence".into(),
        cases,
        violations,
    }
}

/// Rees fiber identities: fiber at 1 is gauge-equivalent to the input,
/// fiber at 0 is the Higgs block, and the fiber at a unit matches the
/// rescaled fiber at 1 under the grading action.
pub fn rees_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let entries = (0..4).map(|_| random_rf(&mut rng, p, 2)).collect();
        let conn = match Connection::new(DensePoly::x(p, 't'), MatrixRF::new(2, 2, entries)) {
            Ok(c) => c,
            Err(_) => continue,
        };
        let sub = vec![vec![random_rf(&mut rng, p, 1), random_rf(&mut rng, p, 1)]];
        if sub[0].iter().all(RationalFunction::is_zero) {
            continue;
        }
        let fc = FilteredConnection::two_step(conn.clone(), sub).unwrap();
        let rm = match rees_build(&fc) {
            Ok(rm) => rm,
            Err(e) => {
                violations.push(format!("case {case}: rees build failed: {e}"));
                continue;
            }
        };
        let one = FpElement::one(p);
        let fiber1 = rees_fiber(&rm, one);
        let g = rm.adapted().inverse().expect("adapted basis invertible");
        let gauged = gauge_transform(&conn, &g).unwrap();
        if fiber1.matrix() != gauged.matrix() {
            violations.push(format!("case {case}: fiber at 1 is not the gauged input"));
        }
        if p.value() > 2 {
            let u = FpElement::new(rng.gen_range(2..p.value()), p);
            let fiber_u = rees_fiber(&rm, u);
            let rescaled = lambda_rescale(&fiber1, u).unwrap();
            let gr = rm.grading_conjugator(u);
            let gr_inv = gr.inverse().unwrap();
            if &(&gr * fiber_u.matrix()) * &gr_inv != *rescaled.matrix() {
                violations.push(format!("case {case}: unit fiber mismatch"));
            }
        }
        let h = higgs_field(&fc).unwrap();
        let fiber0 = rees_fiber(&rm, FpElement::zero(p));
        if fiber0.matrix()[(1, 0)] != h.theta(1)[(0, 0)] {
            violations.push(format!("case {case}: zero fiber is not the Higgs block"));
        }
    }
    PropertyReport {
        property: "rees_fibers".into(),
        cases,
        violations,
    }
}

/// The full filtration suite at one prime.
pub fn filtration_fuzz(p: Prime, cases: usize, seed: u64) -> FiltrationFuzzReport {
    FiltrationFuzzReport {
        seed,
        properties: vec![
            conjugate_suite(p, cases, seed),
            higgs_lift_suite(p, cases, seed.wrapping_add(1)),
            rees_suite(p, cases, seed.wrapping_add(2)),
        ],
    }
}
