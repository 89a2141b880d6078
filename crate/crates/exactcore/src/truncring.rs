//! The truncated test rings F_p[x]/(x^N).
//!
//! These are the finite stand-ins for the test algebras the divided-power
//! calculus is evaluated on. Elements are coefficient vectors of fixed
//! length N; every product is truncated at x^N.

use crate::fp::{FpElement, Prime};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// The ring F_p[x]/(x^N), identified by its prime and nilpotence order N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncatedRing {
    prime: Prime,
    order: usize,
}

impl TruncatedRing {
    pub fn new(prime: Prime, order: usize) -> TruncatedRing {
        assert!(order >= 1, "nilpotence order must be at least 1");
        TruncatedRing { prime, order }
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    /// The nilpotence order N, so x^N = 0.
    pub fn order(self) -> usize {
        self.order
    }

    pub fn zero(self) -> TruncElem {
        TruncElem {
            ring: self,
            coeffs: vec![0; self.order],
        }
    }

    pub fn one(self) -> TruncElem {
        self.monomial_scaled(0, 1)
    }

    /// The class of x.
    pub fn x(self) -> TruncElem {
        self.monomial_scaled(1, 1)
    }

    /// c * x^k, truncated to zero when k >= N.
    pub fn monomial_scaled(self, k: usize, c: u64) -> TruncElem {
        let mut coeffs = vec![0; self.order];
        if k < self.order {
            coeffs[k] = c % self.prime.value();
        }
        TruncElem { ring: self, coeffs }
    }

    /// Build from low-first coefficients, truncating at x^N.
    pub fn element(self, coeffs: &[u64]) -> TruncElem {
        let p = self.prime.value();
        let mut out = vec![0; self.order];
        for (i, &c) in coeffs.iter().enumerate().take(self.order) {
            out[i] = c % p;
        }
        TruncElem {
            ring: self,
            coeffs: out,
        }
    }

    pub fn from_constant(self, c: FpElement) -> TruncElem {
        assert_eq!(c.prime(), self.prime, "mixed moduli");
        self.monomial_scaled(0, c.value())
    }
}

impl fmt::Display for TruncatedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[x]/(x^{})", self.prime, self.order)
    }
}

/// An element of a truncated ring; `coeffs` always has length N.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncElem {
    ring: TruncatedRing,
    coeffs: Vec<u64>,
}

impl TruncElem {
    pub fn ring(&self) -> TruncatedRing {
        self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: FpElement) -> TruncElem {
        assert_eq!(c.prime(), self.ring.prime, "mixed moduli");
        let p = self.ring.prime.value() as u128;
        let cv = c.value() as u128;
        TruncElem {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&a| (a as u128 * cv % p) as u64).collect(),
        }
    }

    pub fn pow(&self, mut exp: usize) -> TruncElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Lowest index with a nonzero coefficient, or None for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }
}

impl fmt::Debug for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Trunc({self})")
    }
}

impl fmt::Display for TruncElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{c}x")?,
                _ if c == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &TruncElem {
    type Output = TruncElem;
    fn add(self, rhs: &TruncElem) -> TruncElem {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let p = self.ring.prime.value();
        TruncElem {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }
}

impl Sub for &TruncElem {
    type Output = TruncElem;
    fn sub(self, rhs: &TruncElem) -> TruncElem {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let p = self.ring.prime.value();
        TruncElem {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(&a, &b)| (a + p - b) % p)
                .collect(),
        }
    }
}

impl Mul for &TruncElem {
    type Output = TruncElem;
    fn mul(self, rhs: &TruncElem) -> TruncElem {
        assert_eq!(self.ring, rhs.ring, "mixed rings");
        let n = self.ring.order;
        let p = self.ring.prime.value() as u128;
        let mut acc = vec![0u128; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate().take(n - i) {
                acc[i + j] += a as u128 * b as u128;
            }
        }
        TruncElem {
            ring: self.ring,
            coeffs: acc.into_iter().map(|c| (c % p) as u64).collect(),
        }
    }
}

impl Neg for &TruncElem {
    type Output = TruncElem;
    fn neg(self) -> TruncElem {
        let p = self.ring.prime.value();
        TruncElem {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        }
    }
}
