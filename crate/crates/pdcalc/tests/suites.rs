//! The pdcalc fuzz suites across the working primes, exercised the same way
//! the CLI runs them.

use exactcore::{Prime, TruncatedRing};
use pdcalc::fuzz::{
    exactness_suite, group_law_suite, pd_check, random_pd_sequence, verschiebung_injectivity,
};
use pdcalc::{pd_add, pd_forget};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(p: u64, n: usize) -> TruncatedRing {
    TruncatedRing::new(Prime::new(p).unwrap(), n)
}

#[test]
fn group_laws_across_primes() {
    for p in [2u64, 3, 5, 7] {
        let r = ring(p, 16);
        let violations = group_law_suite(&r, 16, 60, 42);
        assert!(violations.is_empty(), "p={p}: {violations:?}");
    }
}

#[test]
fn exactness_across_primes() {
    for p in [2u64, 3, 5, 7] {
        let r = ring(p, 16);
        let violations = exactness_suite(&r, 16, 60, 42);
        assert!(violations.is_empty(), "p={p}: {violations:?}");
    }
}

#[test]
fn verschiebung_injective_on_random_pairs() {
    for p in [2u64, 3, 5] {
        let r = ring(p, 16);
        let violations = verschiebung_injectivity(&r, 16, 50, 7);
        assert!(violations.is_empty(), "p={p}: {violations:?}");
    }
}

#[test]
fn forget_is_additive() {
    // pd_forget(a + b) = a_1 + b_1
    let r = ring(3, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = random_pd_sequence(&r, 12, &mut rng);
        let b = random_pd_sequence(&r, 12, &mut rng);
        let sum = pd_add(&a, &b).unwrap();
        assert_eq!(pd_forget(&sum), &pd_forget(&a) + &pd_forget(&b));
    }
}

#[test]
fn pd_check_report_shape() {
    let r = ring(3, 8);
    let report = pd_check(&r, 8, 25, 42);
    assert!(report.pass(), "{:?}", report.violations);
    let json = serde_json::to_value(&report).unwrap();
    assert_eq!(json["group_law"], "pass");
    assert_eq!(json["exactness"], "pass");
    assert!(json["violations"].as_array().unwrap().is_empty());
}
