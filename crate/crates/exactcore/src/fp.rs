//! Prime fields F_p with exact residue arithmetic.

use crate::error::ExactError;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime, ExactError> {
        if p < 2 {
            return Err(ExactError::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(ExactError::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of F_p, stored as the residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElement {
    value: u64,
    prime: Prime,
}

impl FpElement {
    pub fn new(value: u64, prime: Prime) -> FpElement {
        FpElement {
            value: value % prime.0,
            prime,
        }
    }

    /// Reduce a signed integer into `[0, p)`.
    pub fn from_i64(value: i64, prime: Prime) -> FpElement {
        let p = prime.0 as i64;
        FpElement::new(value.rem_euclid(p) as u64, prime)
    }

    pub fn zero(prime: Prime) -> FpElement {
        FpElement::new(0, prime)
    }

    pub fn one(prime: Prime) -> FpElement {
        FpElement::new(1, prime)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> FpElement {
        let p = self.prime.0 as u128;
        let mut base = self.value as u128;
        let mut acc = 1u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        FpElement::new(acc as u64, self.prime)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self) -> FpElement {
        assert!(self.value != 0, "inverse of zero in F_{}", self.prime);
        self.pow(self.prime.0 - 2)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for sign reporting.
    pub fn symmetric(self) -> i64 {
        let p = self.prime.0;
        if self.value * 2 > p {
            self.value as i64 - p as i64
        } else {
            self.value as i64
        }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// binom(n, k) mod p. Arguments stay desk-scale (n <= 64), so the exact
/// integer fits in u128 before reduction.
pub fn binomial_mod(n: usize, k: usize, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i as u128 + 1);
    }
    (acc % p as u128) as u64
}

impl Add for FpElement {
    type Output = FpElement;
    fn add(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        FpElement::new(self.value + rhs.value, self.prime)
    }
}

impl Sub for FpElement {
    type Output = FpElement;
    fn sub(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        FpElement::new(self.value + self.prime.0 - rhs.value, self.prime)
    }
}

impl Mul for FpElement {
    type Output = FpElement;
    fn mul(self, rhs: FpElement) -> FpElement {
        assert_eq!(self.prime, rhs.prime, "mixed moduli");
        let p = self.prime.0 as u128;
        FpElement::new((self.value as u128 * rhs.value as u128 % p) as u64, self.prime)
    }
}

impl Div for FpElement {
    type Output = FpElement;
    fn div(self, rhs: FpElement) -> FpElement {
        self * rhs.inv()
    }
}

impl Neg for FpElement {
    type Output = FpElement;
    fn neg(self) -> FpElement {
        FpElement::new(self.prime.0 - self.value % self.prime.0, self.prime)
    }
}
