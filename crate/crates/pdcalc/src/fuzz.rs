//! Seeded fuzz suites for the divided-power group: the group law, Lemma-155
//! style nilpotence of a_1, and the Verschiebung exact sequence.
//!
//! Random valid sequences are built as sums of iterated Verschiebung images
//! of canonical sequences, which realizes the general point of the group:
//! every PD sequence in characteristic p is determined by its p-power-index
//! digits.

use crate::sequence::{
    pd_add, pd_canonical, pd_forget, pd_neg, pd_verschiebung, PdSequence,
};
use exactcore::{TruncElem, TruncatedRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Per-suite outcome in the shape the CLI report expects.
#[derive(Debug, Clone, Serialize)]
pub struct PdCheckReport {
    pub group_law: String,
    pub exactness: String,
    pub violations: Vec<String>,
}

impl PdCheckReport {
    pub fn pass(&self) -> bool {
        self.group_law == "pass" && self.exactness == "pass"
    }
}

/// A random element of the p-th-power kernel ideal (x^{ceil(N/p)}).
pub fn random_p_nilpotent(ring: &TruncatedRing, rng: &mut impl Rng) -> TruncElem {
    random_nilpotent_of_exponent(ring, ring.prime().value() as usize, rng)
}

/// A random element with e-th power zero, drawn from (x^{ceil(N/e)}).
fn random_nilpotent_of_exponent(
    ring: &TruncatedRing,
    e: usize,
    rng: &mut impl Rng,
) -> TruncElem {
    let p = ring.prime().value();
    let n = ring.order();
    if e == 0 {
        return ring.zero();
    }
    let v = n.div_ceil(e);
    let coeffs: Vec<u64> = (0..n)
        .map(|i| if i < v { 0 } else { rng.gen_range(0..p) })
        .collect();
    ring.element(&coeffs)
}

/// A random valid sequence: the sum over k of Verschiebung^k images of
/// canonical sequences on random p-nilpotents.
pub fn random_pd_sequence(
    ring: &TruncatedRing,
    bound: usize,
    rng: &mut impl Rng,
) -> PdSequence {
    let p = ring.prime().value() as usize;
    let mut acc = PdSequence::zero(*ring, bound);
    let mut level_bound = bound;
    let mut levels = 0;
    while level_bound >= 1 {
        levels += 1;
        level_bound /= p;
    }
    for k in 0..levels {
        if rng.gen_bool(0.25) {
            continue; // sparse digits keep the samples varied
        }
        let mut digit_bound = bound;
        for _ in 0..k {
            digit_bound /= p;
        }
        if digit_bound < 1 {
            break;
        }
        // Below bound p the tail witness needs u^bound = 0, not just u^p = 0.
        let u = random_nilpotent_of_exponent(ring, digit_bound.min(p), rng);
        let mut seq = match pd_canonical(&u, digit_bound) {
            Ok(s) => s,
            Err(_) => unreachable!("kernel ideal elements are p-nilpotent"),
        };
        for step in (0..k).rev() {
            let mut out_bound = bound;
            for _ in 0..step {
                out_bound /= p;
            }
            seq = pd_verschiebung(&seq, out_bound).expect("bounds chosen to fit");
        }
        acc = pd_add(&acc, &seq).expect("same ring and bound");
    }
    acc
}

/// Fuzz the abelian group structure: associativity, commutativity, identity,
/// inverses, and validity of all intermediate results.
pub fn group_law_suite(
    ring: &TruncatedRing,
    bound: usize,
    cases: usize,
    seed: u64,
) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let zero = PdSequence::zero(*ring, bound);
    for case in 0..cases {
        let a = random_pd_sequence(ring, bound, &mut rng);
        let b = random_pd_sequence(ring, bound, &mut rng);
        let c = random_pd_sequence(ring, bound, &mut rng);
        for (name, s) in [("a", &a), ("b", &b), ("c", &c)] {
            if !s.validate().valid {
                violations.push(format!("case {case}: generated {name} invalid"));
            }
        }
        let ab = pd_add(&a, &b).unwrap();
        if !ab.validate().valid {
            violations.push(format!("case {case}: a+b violates PD relations"));
        }
        let assoc_l = pd_add(&ab, &c).unwrap();
        let assoc_r = pd_add(&a, &pd_add(&b, &c).unwrap()).unwrap();
        if assoc_l != assoc_r {
            violations.push(format!("case {case}: associativity fails"));
        }
        if pd_add(&b, &a).unwrap() != ab {
            violations.push(format!("case {case}: commutativity fails"));
        }
        if pd_add(&a, &zero).unwrap() != a {
            violations.push(format!("case {case}: identity fails"));
        }
        if !pd_add(&a, &pd_neg(&a)).unwrap().is_zero() {
            violations.push(format!("case {case}: inverse fails"));
        }
    }
    violations
}

/// Fuzz the exact sequence: forget(verschiebung(a)) = 0, every valid
/// sequence with a_1 = 0 is a Verschiebung image (reconstructed
/// constructively from the p-divisible entries), and a_1^p = 0.
pub fn exactness_suite(
    ring: &TruncatedRing,
    bound: usize,
    cases: usize,
    seed: u64,
) -> Vec<String> {
    let p = ring.prime().value() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    for case in 0..cases {
        // forget . verschiebung = 0, on a sequence small enough to embed
        let small = random_pd_sequence(ring, bound / p, &mut rng);
        let v = pd_verschiebung(&small, bound).expect("bound fits");
        if !pd_forget(&v).is_zero() {
            violations.push(format!("case {case}: forget(verschiebung) != 0"));
        }

        // a_1^p = 0 for every valid sequence
        let a = random_pd_sequence(ring, bound, &mut rng);
        if !pd_forget(&a).pow(p).is_zero() {
            violations.push(format!("case {case}: a_1^p != 0"));
        }

        // sequences with a_1 = 0 are hit by verschiebung: rebuild the
        // preimage (1, a_p, a_2p, ...) and push it back through
        let kernel_elt = strip_first_digit(ring, bound, &mut rng);
        if !pd_forget(&kernel_elt).is_zero() {
            violations.push(format!("case {case}: generator not in kernel"));
            continue;
        }
        let preimage_entries: Vec<TruncElem> = (0..=bound / p)
            .map(|n| kernel_elt.entry(p * n).clone())
            .collect();
        if preimage_entries.len() < 2 {
            continue;
        }
        let preimage = PdSequence::from_entries(*ring, preimage_entries);
        if !preimage.validate().valid {
            violations.push(format!("case {case}: extracted preimage invalid"));
            continue;
        }
        match pd_verschiebung(&preimage, bound) {
            Ok(image) if image == kernel_elt => {}
            Ok(_) => violations.push(format!("case {case}: verschiebung misses target")),
            Err(e) => violations.push(format!("case {case}: verschiebung failed: {e}")),
        }
    }
    violations
}

/// A random valid sequence with vanishing first entry: a sum of strictly
/// positive Verschiebung levels.
fn strip_first_digit(ring: &TruncatedRing, bound: usize, rng: &mut impl Rng) -> PdSequence {
    let p = ring.prime().value() as usize;
    let mut acc = PdSequence::zero(*ring, bound);
    if bound / p < 1 {
        return acc;
    }
    for k in 1..=2usize {
        let mut digit_bound = bound;
        for _ in 0..k {
            digit_bound /= p;
        }
        if digit_bound < 1 {
            break;
        }
        if rng.gen_bool(0.2) {
            continue;
        }
        let u = random_nilpotent_of_exponent(ring, digit_bound.min(p), rng);
        let mut seq = pd_canonical(&u, digit_bound).expect("p-nilpotent");
        for step in (0..k).rev() {
            let mut out_bound = bound;
            for _ in 0..step {
                out_bound /= p;
            }
            seq = pd_verschiebung(&seq, out_bound).expect("bounds fit");
        }
        acc = pd_add(&acc, &seq).expect("same shape");
    }
    acc
}

/// Run both suites and package the CLI-facing report.
pub fn pd_check(ring: &TruncatedRing, bound: usize, cases: usize, seed: u64) -> PdCheckReport {
    let group = group_law_suite(ring, bound, cases, seed);
    let exact = exactness_suite(ring, bound, cases, seed.wrapping_add(1));
    let status = |v: &[String]| if v.is_empty() { "pass" } else { "fail" }.to_string();
    PdCheckReport {
        group_law: status(&group),
        exactness: status(&exact),
        violations: group.into_iter().chain(exact).collect(),
    }
}

/// Verschiebung injectivity spot-check: distinct inputs map to distinct
/// outputs.
pub fn verschiebung_injectivity(
    ring: &TruncatedRing,
    bound: usize,
    cases: usize,
    seed: u64,
) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.prime().value() as usize;
    let mut violations = Vec::new();
    for case in 0..cases {
        let a = random_pd_sequence(ring, bound / p, &mut rng);
        let b = random_pd_sequence(ring, bound / p, &mut rng);
        let va = pd_verschiebung(&a, bound).unwrap();
        let vb = pd_verschiebung(&b, bound).unwrap();
        if (a == b) != (va == vb) {
            violations.push(format!("case {case}: injectivity fails"));
        }
    }
    violations
}
