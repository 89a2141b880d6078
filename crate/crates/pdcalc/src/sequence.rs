//! Truncated nilpotent divided-power sequences and their group law.
//!
//! A sequence (a_0, a_1, ..., a_K) over a truncated ring stands for the
//! divided powers (1, a, a^2/2!, ...): a_0 = 1, the relations
//! binom(n+m, n) a_{n+m} = a_n a_m hold for n+m <= K, and nilpotence is
//! witnessed inside the window by a vanishing tail.

use crate::error::PdError;
pub use exactcore::binomial_mod;
use exactcore::{FpElement, TruncElem, TruncatedRing};

/// A divided-power sequence truncated at bound K (entries 0..=K).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdSequence {
    ring: TruncatedRing,
    entries: Vec<TruncElem>,
}

/// Which invariant a sequence violates, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PdViolation {
    LeadingEntryNotOne,
    Relation { n: usize, m: usize },
    TailNotNilpotent,
}

/// Outcome of divided-power validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdValidationReport {
    pub valid: bool,
    pub violation: Option<PdViolation>,
}

impl PdValidationReport {
    /// The first violated relation (n, m), when the failure is relational.
    pub fn first_violation(&self) -> Option<(usize, usize)> {
        match self.violation {
            Some(PdViolation::Relation { n, m }) => Some((n, m)),
            _ => None,
        }
    }
}

impl PdSequence {
    /// Wrap raw entries; callers are responsible for the invariants
    /// (see [`PdSequence::validate`]). Bound must be at least 1.
    pub fn from_entries(ring: TruncatedRing, entries: Vec<TruncElem>) -> PdSequence {
        assert!(entries.len() >= 2, "truncation bound must be at least 1");
        assert!(entries.iter().all(|e| e.ring() == ring), "mixed rings");
        PdSequence { ring, entries }
    }

    /// The identity element (1, 0, ..., 0).
    pub fn zero(ring: TruncatedRing, bound: usize) -> PdSequence {
        assert!(bound >= 1);
        let mut entries = vec![ring.zero(); bound + 1];
        entries[0] = ring.one();
        PdSequence { ring, entries }
    }

    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    /// The truncation bound K.
    pub fn bound(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entry(&self, n: usize) -> &TruncElem {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[TruncElem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries[0].is_one() && self.entries[1..].iter().all(TruncElem::is_zero)
    }

    /// Check all invariants: a_0 = 1, the divided-power relations
    /// binom(n+m, n) a_{n+m} = a_n a_m for n + m <= K, and a vanishing tail
    /// witnessing nilpotence inside the window.
    pub fn validate(&self) -> PdValidationReport {
        if !self.entries[0].is_one() {
            return PdValidationReport {
                valid: false,
                violation: Some(PdViolation::LeadingEntryNotOne),
            };
        }
        let p = self.ring.prime().value();
        let k = self.bound();
        for n in 1..=k {
            for m in n..=k.saturating_sub(n) {
                let binom = binomial_mod(n + m, n, p);
                let lhs = self.entries[n + m].scale(FpElement::new(binom, self.ring.prime()));
                let rhs = &self.entries[n] * &self.entries[m];
                if lhs != rhs {
                    return PdValidationReport {
                        valid: false,
                        violation: Some(PdViolation::Relation { n, m }),
                    };
                }
            }
        }
        if !self.entries[k].is_zero() {
            return PdValidationReport {
                valid: false,
                violation: Some(PdViolation::TailNotNilpotent),
            };
        }
        PdValidationReport {
            valid: true,
            violation: None,
        }
    }
}

/// Group law: entry n of a + b is the convolution sum of a_i b_j over
/// i + j = n.
pub fn pd_add(a: &PdSequence, b: &PdSequence) -> Result<PdSequence, PdError> {
    if a.ring != b.ring || a.bound() != b.bound() {
        return Err(PdError::RingMismatch);
    }
    let k = a.bound();
    let entries = (0..=k)
        .map(|n| {
            let mut acc = a.ring.zero();
            for i in 0..=n {
                let term = &a.entries[i] * &b.entries[n - i];
                acc = &acc + &term;
            }
            acc
        })
        .collect();
    Ok(PdSequence {
        ring: a.ring,
        entries,
    })
}

/// Group inverse: entrywise (-1)^n a_n. The alternating-sign sequence
/// convolves with the original to (1, 0, 0, ...) by the binomial theorem.
pub fn pd_neg(a: &PdSequence) -> PdSequence {
    let entries = a
        .entries
        .iter()
        .enumerate()
        .map(|(n, e)| if n % 2 == 0 { e.clone() } else { -e })
        .collect();
    PdSequence {
        ring: a.ring,
        entries,
    }
}

/// The canonical divided powers of a p-nilpotent element: a_n = a^n / n!
/// for n < p and 0 beyond.
pub fn pd_canonical(a: &TruncElem, bound: usize) -> Result<PdSequence, PdError> {
    let ring = a.ring();
    let p = ring.prime().value() as usize;
    if !a.pow(p).is_zero() {
        return Err(PdError::NotPNilpotent);
    }
    assert!(bound >= 1);
    let mut entries = Vec::with_capacity(bound + 1);
    entries.push(ring.one());
    let mut power = ring.one();
    let mut factorial = FpElement::one(ring.prime());
    for n in 1..=bound {
        if n < p {
            power = &power * a;
            factorial = factorial * FpElement::new(n as u64, ring.prime());
            entries.push(power.scale(factorial.inv()));
        } else {
            entries.push(ring.zero());
        }
    }
    let seq = PdSequence {
        ring,
        entries,
    };
    debug_assert!(seq.validate().valid);
    Ok(seq)
}

/// The Verschiebung-type embedding: b_{pn} = a_n and b_m = 0 for p not
/// dividing m. The output validates against the divided-power relations,
/// which is exactly the Lucas congruence binom(pn, pm) = binom(n, m) mod p.
pub fn pd_verschiebung(a: &PdSequence, out_bound: usize) -> Result<PdSequence, PdError> {
    let p = a.ring.prime().value() as usize;
    let needed = out_bound / p;
    if needed > a.bound() {
        return Err(PdError::TruncationTooSmall {
            requested: out_bound,
            needed,
            available: a.bound(),
        });
    }
    assert!(out_bound >= 1);
    let entries = (0..=out_bound)
        .map(|m| {
            if m % p == 0 {
                a.entries[m / p].clone()
            } else {
                a.ring.zero()
            }
        })
        .collect();
    let out = PdSequence {
        ring: a.ring,
        entries,
    };
    let report = out.validate();
    assert!(
        report.valid,
        "verschiebung output violates PD relations at {:?}",
        report.violation
    );
    Ok(out)
}

/// The quasi-ideal map: extract a_1.
pub fn pd_forget(a: &PdSequence) -> TruncElem {
    a.entries[1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::Prime;

    fn ring(p: u64, n: usize) -> TruncatedRing {
        TruncatedRing::new(Prime::new(p).unwrap(), n)
    }

    #[test]
    fn binomials_mod_p() {
        assert_eq!(binomial_mod(4, 2, 3), 0); // 6 = 0 mod 3
        assert_eq!(binomial_mod(4, 1, 3), 1); // 4 = 1 mod 3
        assert_eq!(binomial_mod(6, 3, 2), 0); // 20 = 0 mod 2
        assert_eq!(binomial_mod(2, 1, 5), 2);
        assert_eq!(binomial_mod(64, 32, 7), binomial_mod(64, 32, 7));
    }

    #[test]
    fn canonical_over_f3() {
        // F_3[x]/(x^3), a = x: (1, x, 2x^2, 0, ...) since (2!)^{-1} = 2
        let r = ring(3, 3);
        let seq = pd_canonical(&r.x(), 4).unwrap();
        assert!(seq.entry(0).is_one());
        assert_eq!(seq.entry(1), &r.x());
        assert_eq!(seq.entry(2), &r.monomial_scaled(2, 2));
        assert!(seq.entry(3).is_zero());
        assert!(seq.validate().valid);
    }

    #[test]
    fn canonical_needs_p_nilpotence() {
        // x is not 2-nilpotent in F_2[x]/(x^4)
        let r = ring(2, 4);
        assert_eq!(pd_canonical(&r.x(), 4).unwrap_err(), PdError::NotPNilpotent);
    }

    #[test]
    fn canonical_truncation_kills_high_powers() {
        // F_5[x]/(x^4), a = x^2: (x^2)^5 = 0, and (2!)^{-1} x^4 = 0
        let r = ring(5, 4);
        let a = r.monomial_scaled(2, 1);
        let seq = pd_canonical(&a, 6).unwrap();
        assert_eq!(seq.entry(1), &a);
        assert!(seq.entry(2).is_zero());
        assert!(seq.validate().valid);
    }

    #[test]
    fn add_identity_and_paper_entry() {
        let r = ring(3, 9);
        let u = r.monomial_scaled(3, 1); // x^3, with (x^3)^3 = 0
        let a = pd_canonical(&u, 6).unwrap();
        let zero = PdSequence::zero(r, 6);
        assert_eq!(pd_add(&a, &zero).unwrap(), a);
        // entry 2 of a + b is a_2 + a_1 b_1 + b_2
        let b = pd_canonical(&r.element(&[0, 0, 0, 2, 1]), 6).unwrap();
        let sum = pd_add(&a, &b).unwrap();
        let expected = &(a.entry(2) + &(a.entry(1) * b.entry(1))) + b.entry(2);
        assert_eq!(sum.entry(2), &expected);
    }

    #[test]
    fn canonical_inverse_over_f3() {
        // canonical(a) + canonical(-a) = zero sequence in F_3[x]/(x^9),
        // checked by expanding the convolution; a = x^3 is p-nilpotent there
        let r = ring(3, 9);
        let u = r.monomial_scaled(3, 1);
        let a = pd_canonical(&u, 8).unwrap();
        let b = pd_canonical(&-&u, 8).unwrap();
        assert!(pd_add(&a, &b).unwrap().is_zero());
        // and the entrywise inverse agrees with it
        assert_eq!(pd_neg(&a), b);
        // x itself is not p-nilpotent in this ring, so no canonical
        // structure exists on it (the Lemma-155 criterion)
        assert_eq!(pd_canonical(&r.x(), 8).unwrap_err(), PdError::NotPNilpotent);
    }

    #[test]
    fn ring_mismatch_detected() {
        let a = PdSequence::zero(ring(3, 4), 3);
        let b = PdSequence::zero(ring(3, 5), 3);
        assert_eq!(pd_add(&a, &b).unwrap_err(), PdError::RingMismatch);
        let c = PdSequence::zero(ring(3, 4), 4);
        assert_eq!(pd_add(&a, &c).unwrap_err(), PdError::RingMismatch);
    }

    #[test]
    fn verschiebung_formula() {
        // F_2[x]/(x^4): canonical(x^2) = (1, x^2, 0) -> (1, 0, x^2, 0)
        let r = ring(2, 4);
        let a = pd_canonical(&r.monomial_scaled(2, 1), 2).unwrap();
        let v = pd_verschiebung(&a, 4).unwrap();
        assert!(v.entry(0).is_one());
        assert!(v.entry(1).is_zero());
        assert_eq!(v.entry(2), a.entry(1));
        assert!(v.entry(3).is_zero());
    }

    #[test]
    fn verschiebung_zero_maps_to_zero() {
        let r = ring(3, 9);
        let z = PdSequence::zero(r, 4);
        let v = pd_verschiebung(&z, 12).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn verschiebung_truncation_guard() {
        let r = ring(3, 9);
        let z = PdSequence::zero(r, 2);
        assert!(matches!(
            pd_verschiebung(&z, 9),
            Err(PdError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn forget_examples() {
        let r = ring(3, 9);
        assert!(pd_forget(&PdSequence::zero(r, 4)).is_zero());
        let u = r.monomial_scaled(3, 1);
        let a = pd_canonical(&u, 4).unwrap();
        assert_eq!(pd_forget(&a), u);
        // forget of a verschiebung image is always zero
        let v = pd_verschiebung(&a, 12).unwrap();
        assert!(pd_forget(&v).is_zero());
    }

    #[test]
    fn validation_reports_first_relation_failure() {
        let r = ring(3, 6);
        // entries (1, x, 0, ...) violate (1,1): binom(2,1) a_2 = 2*0 = 0 but a_1^2 = x^2
        let mut entries = vec![r.zero(); 5];
        entries[0] = r.one();
        entries[1] = r.x();
        let seq = PdSequence::from_entries(r, entries);
        let report = seq.validate();
        assert!(!report.valid);
        assert_eq!(report.first_violation(), Some((1, 1)));
    }
}
