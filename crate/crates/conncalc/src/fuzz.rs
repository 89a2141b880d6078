//! Seeded property suites for connections: O-linearity of the p-th iterate,
//! horizontality, gauge covariance, rank-1 oracle agreement, rank-1
//! additivity, and Taylor multiplicativity.

use crate::connection::{gauge_transform, Connection};
use crate::pcurv::{horizontality_check, p_curvature, rank1_jacobson_oracle};
use crate::taylor::taylor_multiplicativity_check;
use exactcore::{DensePoly, MatrixRF, Prime, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one fuzzed property.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub cases: usize,
    pub violations: Vec<String>,
}

impl PropertyReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Aggregate over all properties of the suite.
#[derive(Debug, Clone, Serialize)]
pub struct ConnFuzzReport {
    pub seed: u64,
    pub properties: Vec<PropertyReport>,
}

impl ConnFuzzReport {
    pub fn pass(&self) -> bool {
        self.properties.iter().all(PropertyReport::pass)
    }
}

fn random_poly(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> DensePoly {
    let deg = rng.gen_range(0..=max_deg);
    DensePoly::new(p, 't', (0..=deg).map(|_| rng.gen_range(0..p.value())).collect())
}

/// Random rational function with denominator a power of t, so everything
/// lives over F_p[t, 1/t].
fn random_rf_over_base(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> RationalFunction {
    let pole = rng.gen_range(0..=2);
    RationalFunction::new(random_poly(rng, p, max_deg), DensePoly::monomial(p, 't', pole))
        .expect("monomial denominator is nonzero")
}

/// Random connection over F_p[t, 1/t] of the given rank.
pub fn random_connection(rng: &mut ChaCha8Rng, p: Prime, rank: usize) -> Connection {
    let entries = (0..rank * rank)
        .map(|_| {
            if rng.gen_bool(0.25) {
                RationalFunction::zero(p, 't')
            } else {
                random_rf_over_base(rng, p, 2)
            }
        })
        .collect();
    Connection::new(DensePoly::x(p, 't'), MatrixRF::new(rank, rank, entries))
        .expect("denominators are powers of t")
}

fn random_vector(rng: &mut ChaCha8Rng, p: Prime, rank: usize) -> Vec<RationalFunction> {
    (0..rank).map(|_| random_rf_over_base(rng, p, 2)).collect()
}

fn random_invertible_gauge(rng: &mut ChaCha8Rng, p: Prime, rank: usize) -> MatrixRF {
    loop {
        let entries = (0..rank * rank)
            .map(|_| random_rf_over_base(rng, p, 1))
            .collect();
        let g = MatrixRF::new(rank, rank, entries);
        if !g.determinant().is_zero() {
            return g;
        }
    }
}

/// O-linearity of the p-th iterate: D^p(f v) = f D^p(v), and the operator
/// identity D^p(v) = psi v.
pub fn olinearity_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let q = p.value() as usize;
    for case in 0..cases {
        let rank = rng.gen_range(1..=2);
        let conn = random_connection(&mut rng, p, rank);
        let v = random_vector(&mut rng, p, rank);
        let f = random_rf_over_base(&mut rng, p, 2);
        let fv: Vec<_> = v.iter().map(|x| &f * x).collect();
        let dp_fv = conn.nabla_iterate(&fv, q).unwrap();
        let dp_v = conn.nabla_iterate(&v, q).unwrap();
        let f_dp_v: Vec<_> = dp_v.iter().map(|x| &f * x).collect();
        if dp_fv != f_dp_v {
            violations.push(format!("case {case}: D^p not O-linear"));
        }
        let psi = p_curvature(&conn);
        if psi.matrix().apply(&v) != dp_v {
            violations.push(format!("case {case}: D^p(v) != psi v"));
        }
    }
    PropertyReport {
        property: "olinearity".into(),
        cases,
        violations,
    }
}

/// Horizontality psi' = psi A - A psi on fuzzed connections.
pub fn horizontality_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let rank = rng.gen_range(1..=2);
        let conn = random_connection(&mut rng, p, rank);
        let psi = p_curvature(&conn);
        if !horizontality_check(&conn, &psi).pass {
            violations.push(format!("case {case}: psi' != [psi, A]"));
        }
    }
    PropertyReport {
        property: "horizontality".into(),
        cases,
        violations,
    }
}

/// Gauge covariance psi(conn^g) = g psi(conn) g^{-1}.
pub fn gauge_covariance_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let rank = rng.gen_range(1..=2);
        let conn = random_connection(&mut rng, p, rank);
        let g = random_invertible_gauge(&mut rng, p, rank);
        let transformed = match gauge_transform(&conn, &g) {
            Ok(c) => c,
            Err(e) => {
                violations.push(format!("case {case}: gauge failed: {e}"));
                continue;
            }
        };
        let lhs = p_curvature(&transformed);
        let rhs = p_curvature(&conn).gauge_conjugate(&g).unwrap();
        if lhs.matrix() != rhs.matrix() {
            violations.push(format!("case {case}: psi^g != g psi g^-1"));
        }
    }
    PropertyReport {
        property: "gauge_covariance".into(),
        cases,
        violations,
    }
}

/// Rank-1 agreement between the recursion and the oracle a^p + a^{(p-1)},
/// plus additivity psi(a + b) = psi(a) + psi(b).
pub fn rank1_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        let a = random_rf_over_base(&mut rng, p, 3);
        let b = random_rf_over_base(&mut rng, p, 3);
        let conn_a =
            Connection::new(DensePoly::x(p, 't'), MatrixRF::from_rows(vec![vec![a.clone()]]))
                .unwrap();
        let psi_a = p_curvature(&conn_a).matrix()[(0, 0)].clone();
        if psi_a != rank1_jacobson_oracle(&a, p) {
            violations.push(format!("case {case}: recursion disagrees with oracle"));
        }
        let sum_conn = Connection::new(
            DensePoly::x(p, 't'),
            MatrixRF::from_rows(vec![vec![&a + &b]]),
        )
        .unwrap();
        let lhs = p_curvature(&sum_conn).matrix()[(0, 0)].clone();
        let conn_b =
            Connection::new(DensePoly::x(p, 't'), MatrixRF::from_rows(vec![vec![b.clone()]]))
                .unwrap();
        let rhs = &psi_a + &p_curvature(&conn_b).matrix()[(0, 0)];
        if lhs != rhs {
            violations.push(format!("case {case}: rank-1 additivity fails"));
        }
    }
    PropertyReport {
        property: "rank1_oracle".into(),
        cases,
        violations,
    }
}

/// Taylor multiplicativity to order 2p on fuzzed (connection, f, v).
pub fn taylor_suite(p: Prime, cases: usize, seed: u64) -> PropertyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let order = 2 * p.value() as usize;
    for case in 0..cases {
        let rank = rng.gen_range(1..=3);
        let conn = random_connection(&mut rng, p, rank);
        let v = random_vector(&mut rng, p, rank);
        let f = random_rf_over_base(&mut rng, p, 2);
        match taylor_multiplicativity_check(&conn, &f, &v, order) {
            Ok(r) if r.pass => {}
            Ok(r) => violations.push(format!(
                "case {case}: mismatch at order {:?}",
                r.first_mismatch
            )),
            Err(e) => violations.push(format!("case {case}: {e}")),
        }
    }
    PropertyReport {
        property: "taylor_multiplicativity".into(),
        cases,
        violations,
    }
}

/// The full connection suite at one prime.
pub fn conn_fuzz(p: Prime, cases: usize, seed: u64) -> ConnFuzzReport {
    ConnFuzzReport {
        seed,
        properties: vec![
            olinearity_suite(p, cases, seed),
            horizontality_suite(p, cases, seed.wrapping_add(1)),
            gauge_covariance_suite(p, cases, seed.wrapping_add(2)),
            rank1_suite(p, cases, seed.wrapping_add(3)),
            taylor_suite(p, cases.min(50), seed.wrapping_add(4)),
        ],
    }
}
