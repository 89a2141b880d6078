//! Fuzzed invariants for the exact-arithmetic layer: field axioms, the
//! Leibniz rule, canonical rational-function forms, and kernel properties.

use exactcore::{DensePoly, FpElement, MatrixRF, Prime, RationalFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> DensePoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg).map(|_| rng.gen_range(0..p.value())).collect();
    DensePoly::new(p, 't', coeffs)
}

fn random_nonzero_poly(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> DensePoly {
    loop {
        let f = random_poly(rng, p, max_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_rf(rng: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> RationalFunction {
    RationalFunction::new(
        random_poly(rng, p, max_deg),
        random_nonzero_poly(rng, p, max_deg),
    )
    .unwrap()
}

#[test]
fn field_axioms_under_fuzzing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u64, 3, 5, 7, 13] {
        let p = Prime::new(q).unwrap();
        for _ in 0..200 {
            let a = FpElement::new(rng.gen_range(0..q), p);
            let b = FpElement::new(rng.gen_range(0..q), p);
            let c = FpElement::new(rng.gen_range(0..q), p);
            assert_eq!((a + b) + c, a + (b + c));
            assert_eq!((a * b) * c, a * (b * c));
            assert_eq!(a * (b + c), a * b + a * c);
            assert_eq!(a + b, b + a);
            assert_eq!(a * b, b * a);
            assert_eq!(a - a, FpElement::zero(p));
            if !a.is_zero() {
                assert_eq!(a * a.inv(), FpElement::one(p));
            }
        }
    }
}

#[test]
fn derivative_is_linear_and_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in [2u64, 3, 5, 7] {
        let p = Prime::new(q).unwrap();
        for _ in 0..100 {
            let f = random_poly(&mut rng, p, 8);
            let g = random_poly(&mut rng, p, 8);
            let c = FpElement::new(rng.gen_range(0..q), p);
            assert_eq!((&f + &g).derivative(), &f.derivative() + &g.derivative());
            assert_eq!(f.scale(c).derivative(), f.derivative().scale(c));
            let product_rule = &(&f.derivative() * &g) + &(&f * &g.derivative());
            assert_eq!((&f * &g).derivative(), product_rule);
        }
    }
}

#[test]
fn p_fold_derivative_annihilates_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for q in [2u64, 3, 5] {
        let p = Prime::new(q).unwrap();
        for _ in 0..50 {
            let mut f = random_poly(&mut rng, p, 10);
            let mut r = random_rf(&mut rng, p, 4);
            for _ in 0..q {
                f = f.derivative();
                r = r.derivative();
            }
            assert!(f.is_zero());
            assert!(r.is_zero());
        }
    }
}

#[test]
fn rational_forms_are_canonical() {
    // a + b - b = a exactly, for 1000 random pairs
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let p = Prime::new(5).unwrap();
    for _ in 0..1000 {
        let a = random_rf(&mut rng, p, 5);
        let b = random_rf(&mut rng, p, 5);
        assert_eq!(&(&a + &b) - &b, a);
    }
}

#[test]
fn kernel_vectors_annihilate_and_count() {
    // rank(A) + kernel dimension = cols, and A v = 0 for each basis vector
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for q in [2u64, 3, 5, 7] {
        let p = Prime::new(q).unwrap();
        for _ in 0..60 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let entries = (0..rows * cols)
                .map(|_| {
                    if rng.gen_bool(0.3) {
                        RationalFunction::zero(p, 't')
                    } else {
                        random_rf(&mut rng, p, 2)
                    }
                })
                .collect();
            let m = MatrixRF::new(rows, cols, entries);
            let kernel = m.kernel();
            assert_eq!(m.rank() + kernel.len(), cols);
            for v in &kernel {
                assert!(m.apply(v).iter().all(RationalFunction::is_zero));
                // cleared form: polynomial entries, first nonzero entry monic
                assert!(v.iter().all(RationalFunction::is_polynomial));
                let first = v.iter().find(|e| !e.is_zero()).expect("nonzero vector");
                assert!(first.num().is_monic());
            }
        }
    }
}

#[test]
fn inverse_agrees_with_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let p = Prime::new(7).unwrap();
    let mut seen_invertible = 0;
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let m = MatrixRF::new(
            n,
            n,
            (0..n * n).map(|_| random_rf(&mut rng, p, 2)).collect(),
        );
        match m.inverse() {
            Some(inv) => {
                seen_invertible += 1;
                assert_eq!(&m * &inv, MatrixRF::identity(p, 't', n));
                assert_eq!(&inv * &m, MatrixRF::identity(p, 't', n));
                assert!(!m.determinant().is_zero());
            }
            None => assert!(m.determinant().is_zero()),
        }
    }
    assert!(seen_invertible > 10);
}
