//! Dense univariate polynomials over F_p.
//!
//! Coefficients are stored low degree first. The representation is canonical:
//! the zero polynomial is the empty list, and the last coefficient is nonzero
//! otherwise.

use crate::fp::{FpElement, Prime};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A dense polynomial over F_p in a single tagged variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    prime: Prime,
    var: char,
    coeffs: Vec<u64>,
}

fn trim(coeffs: &mut Vec<u64>) {
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
}

impl DensePoly {
    /// Build from raw residues, low degree first. Trailing zeros are trimmed.
    pub fn new(prime: Prime, var: char, mut coeffs: Vec<u64>) -> DensePoly {
        let p = prime.value();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        trim(&mut coeffs);
        DensePoly { prime, var, coeffs }
    }

    /// Build from signed coefficients, reducing into `[0, p)`.
    pub fn from_i64(prime: Prime, var: char, coeffs: &[i64]) -> DensePoly {
        let p = prime.value() as i64;
        DensePoly::new(
            prime,
            var,
            coeffs.iter().map(|&c| c.rem_euclid(p) as u64).collect(),
        )
    }

    pub fn zero(prime: Prime, var: char) -> DensePoly {
        DensePoly {
            prime,
            var,
            coeffs: Vec::new(),
        }
    }

    pub fn one(prime: Prime, var: char) -> DensePoly {
        DensePoly::new(prime, var, vec![1])
    }

    pub fn constant(c: FpElement, var: char) -> DensePoly {
        DensePoly::new(c.prime(), var, vec![c.value()])
    }

    /// The monomial `x^k` in the tagged variable.
    pub fn monomial(prime: Prime, var: char, k: usize) -> DensePoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        DensePoly::new(prime, var, coeffs)
    }

    pub fn x(prime: Prime, var: char) -> DensePoly {
        DensePoly::monomial(prime, var, 1)
    }

    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> FpElement {
        FpElement::new(self.coeffs.get(k).copied().unwrap_or(0), self.prime)
    }

    pub fn leading_coeff(&self) -> FpElement {
        FpElement::new(self.coeffs.last().copied().unwrap_or(0), self.prime)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn assert_compatible(&self, other: &DensePoly) {
        assert_eq!(self.prime, other.prime, "mixed moduli");
        assert_eq!(self.var, other.var, "mixed variables");
    }

    pub fn scale(&self, c: FpElement) -> DensePoly {
        let p = self.prime.value() as u128;
        let cv = c.value() as u128;
        DensePoly::new(
            self.prime,
            self.var,
            self.coeffs.iter().map(|&a| (a as u128 * cv % p) as u64).collect(),
        )
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> DensePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        DensePoly::new(self.prime, self.var, coeffs)
    }

    /// Formal derivative d/dx.
    pub fn derivative(&self) -> DensePoly {
        let p = self.prime.value() as u128;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u128 * c as u128 % p) as u64)
            .collect();
        DensePoly::new(self.prime, self.var, coeffs)
    }

    pub fn eval(&self, x: FpElement) -> FpElement {
        assert_eq!(self.prime, x.prime(), "mixed moduli");
        let p = self.prime.value() as u128;
        let xv = x.value() as u128;
        let mut acc = 0u128;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * xv + c as u128) % p;
        }
        FpElement::new(acc as u64, self.prime)
    }

    /// Substitute `x -> x^k`, stretching the coefficient vector.
    pub fn substitute_power(&self, k: usize) -> DensePoly {
        assert!(k >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k * (self.coeffs.len() - 1) + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[k * i] = c;
        }
        DensePoly::new(self.prime, self.var, coeffs)
    }

    pub fn pow(&self, mut exp: usize) -> DensePoly {
        let mut base = self.clone();
        let mut acc = DensePoly::one(self.prime, self.var);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> DensePoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.leading_coeff().inv())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &DensePoly) -> (DensePoly, DensePoly) {
        self.assert_compatible(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.prime.value() as u128;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return (DensePoly::zero(self.prime, self.var), self.clone());
        }
        let lead_inv = divisor.leading_coeff().inv().value() as u128;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - dlen + 1];
        for i in (dlen - 1..rem.len()).rev() {
            let c = rem[i] as u128 * lead_inv % p;
            if c == 0 {
                continue;
            }
            let shift = i + 1 - dlen;
            quot[shift] = c as u64;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = c * d as u128 % p;
                rem[shift + j] = ((rem[shift + j] as u128 + p - sub) % p) as u64;
            }
        }
        (
            DensePoly::new(self.prime, self.var, quot),
            DensePoly::new(self.prime, self.var, rem),
        )
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &DensePoly) -> DensePoly {
        let (q, r) = self.divrem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &DensePoly) -> DensePoly {
        self.assert_compatible(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Least common multiple, monic.
    pub fn lcm(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero(self.prime, self.var);
        }
        let g = self.gcd(other);
        (&self.div_exact(&g) * other).monic()
    }

    /// Whether every irreducible factor of `self` divides `modulus`, i.e.
    /// `self` divides some power of `modulus`. Constants count as dividing.
    pub fn divides_power_of(&self, modulus: &DensePoly) -> bool {
        if self.is_constant() {
            return !self.is_zero();
        }
        if modulus.is_zero() {
            return false;
        }
        let mut d = self.monic();
        loop {
            if d.is_constant() {
                return true;
            }
            let g = d.gcd(modulus);
            if g.is_constant() {
                return false;
            }
            d = d.div_exact(&g);
        }
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.var, self)
    }
}

impl fmt::Display for DensePoly {
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
                1 if c == 1 => write!(f, "{}", self.var)?,
                1 => write!(f, "{c}{}", self.var)?,
                _ if c == 1 => write!(f, "{}^{i}", self.var)?,
                _ => write!(f, "{c}{}^{i}", self.var)?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        self.assert_compatible(rhs);
        let p = self.prime.value();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + rhs.coeffs.get(i).copied().unwrap_or(0))
                    % p
            })
            .collect();
        DensePoly::new(self.prime, self.var, coeffs)
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        self.assert_compatible(rhs);
        let p = self.prime.value();
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + p
                    - rhs.coeffs.get(i).copied().unwrap_or(0))
                    % p
            })
            .collect();
        DensePoly::new(self.prime, self.var, coeffs)
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        self.assert_compatible(rhs);
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero(self.prime, self.var);
        }
        let p = self.prime.value() as u128;
        let mut acc = vec![0u128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        DensePoly::new(self.prime, self.var, acc.into_iter().map(|c| c as u64).collect())
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        let p = self.prime.value();
        DensePoly::new(
            self.prime,
            self.var,
            self.coeffs.iter().map(|&c| (p - c) % p).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn poly(prime: u64, coeffs: &[i64]) -> DensePoly {
        DensePoly::from_i64(p(prime), 't', coeffs)
    }

    #[test]
    fn canonical_form() {
        let f = poly(5, &[1, 2, 0, 0]);
        assert_eq!(f.coeffs(), &[1, 2]);
        assert!(poly(5, &[0, 0]).is_zero());
        assert_eq!(poly(5, &[0]).degree(), None);
    }

    #[test]
    fn derivative_of_x_to_p_vanishes() {
        for q in [2u64, 3, 5, 7] {
            let f = DensePoly::monomial(p(q), 't', q as usize);
            assert!(f.derivative().is_zero());
        }
    }

    #[test]
    fn derivative_power_rule() {
        // x^2 over F_5 -> 2x
        let f = poly(5, &[0, 0, 1]);
        assert_eq!(f.derivative(), poly(5, &[0, 2]));
        // x^{p+1} over F_3 -> x^3 since 4 = 1 mod 3
        let g = DensePoly::monomial(p(3), 't', 4);
        assert_eq!(g.derivative(), DensePoly::monomial(p(3), 't', 3));
    }

    #[test]
    fn p_fold_derivative_annihilates() {
        for q in [2u64, 3, 5] {
            let mut f = poly(q, &[1, 4, 2, 3, 1, 2, 3, 4, 1, 1, 2]);
            for _ in 0..q {
                f = f.derivative();
            }
            assert!(f.is_zero(), "d^p should annihilate over F_{q}");
        }
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) / (t - 1) = t + 1 over F_7
        let f = poly(7, &[-1, 0, 1]);
        let g = poly(7, &[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert_eq!(q, poly(7, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&g), g.monic());
        // gcd(t^2 - t, t) = t
        assert_eq!(poly(5, &[0, -1, 1]).gcd(&poly(5, &[0, 1])), poly(5, &[0, 1]));
    }

    #[test]
    fn substitute_power_stretches() {
        let f = poly(5, &[1, 2, 3]);
        let g = f.substitute_power(5);
        assert_eq!(g.coeff(0).value(), 1);
        assert_eq!(g.coeff(5).value(), 2);
        assert_eq!(g.coeff(10).value(), 3);
        assert_eq!(g.degree(), Some(10));
    }

    #[test]
    fn divides_power_of_checks_support() {
        let s = poly(5, &[0, 1]); // t
        assert!(poly(5, &[0, 0, 0, 1]).divides_power_of(&s)); // t^3
        assert!(poly(5, &[3]).divides_power_of(&s)); // constants
        assert!(!poly(5, &[0, -1, 1]).divides_power_of(&s)); // t(t-1)
        let s2 = poly(5, &[0, -1, 1]); // t(t-1)
        assert!(poly(5, &[0, -2, 2]).divides_power_of(&s2));
    }
}
