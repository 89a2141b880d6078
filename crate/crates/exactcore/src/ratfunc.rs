//! Reduced rational functions over F_p.
//!
//! Every value is kept in canonical form: gcd(num, den) = 1 and the
//! denominator monic. Equal fractions therefore compare equal structurally.

use crate::error::ExactError;
use crate::fp::{FpElement, Prime};
use crate::poly::DensePoly;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A rational function num/den in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: DensePoly,
    den: DensePoly,
}

impl RationalFunction {
    /// Normalize a fraction: reject zero denominators, reduce by the gcd,
    /// and scale the denominator monic. Zero numerators normalize to 0/1.
    pub fn new(num: DensePoly, den: DensePoly) -> Result<RationalFunction, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        assert_eq!(num.prime(), den.prime(), "mixed moduli");
        assert_eq!(num.var(), den.var(), "mixed variables");
        if num.is_zero() {
            return Ok(RationalFunction {
                den: DensePoly::one(num.prime(), num.var()),
                num,
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading_coeff();
        if lead.value() != 1 {
            let inv = lead.inv();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(num: DensePoly) -> RationalFunction {
        RationalFunction {
            den: DensePoly::one(num.prime(), num.var()),
            num,
        }
    }

    pub fn zero(prime: Prime, var: char) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::zero(prime, var))
    }

    pub fn one(prime: Prime, var: char) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::one(prime, var))
    }

    pub fn constant(c: FpElement, var: char) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::constant(c, var))
    }

    pub fn num(&self) -> &DensePoly {
        &self.num
    }

    pub fn den(&self) -> &DensePoly {
        &self.den
    }

    pub fn prime(&self) -> Prime {
        self.num.prime()
    }

    pub fn var(&self) -> char {
        self.num.var()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The value as a field constant, if the function is constant.
    pub fn as_constant(&self) -> Option<FpElement> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<RationalFunction, ExactError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Derivative via the quotient rule, reduced.
    pub fn derivative(&self) -> RationalFunction {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::new(n, &self.den * &self.den).expect("nonzero denominator squared")
    }

    /// Substitute the variable by its k-th power in both numerator and
    /// denominator (pullback along the power map).
    pub fn substitute_power(&self, k: usize) -> RationalFunction {
        RationalFunction::new(self.num.substitute_power(k), self.den.substitute_power(k))
            .expect("substitution preserves nonzero denominators")
    }

    /// Evaluate at a point where the denominator does not vanish.
    pub fn eval(&self, x: FpElement) -> Result<FpElement, ExactError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactError::EvalAtPole);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn pow(&self, exp: usize) -> RationalFunction {
        RationalFunction::new(self.num.pow(exp), self.den.pow(exp)).expect("nonzero power")
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rf({self})")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
            .expect("nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
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

    fn rf(prime: u64, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(poly(prime, num), poly(prime, den)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        // (t^2 - t, t) -> (t - 1, 1)
        let r = rf(5, &[0, -1, 1], &[0, 1]);
        assert_eq!(r.num(), &poly(5, &[-1, 1]));
        assert!(r.is_polynomial());
        // (0, t^3) -> (0, 1)
        let z = rf(5, &[0], &[0, 0, 0, 1]);
        assert!(z.is_zero());
        assert!(z.den().is_one());
        // (2t, 2) over F_5 -> (t, 1)
        let m = rf(5, &[0, 2], &[2]);
        assert_eq!(m.num(), &poly(5, &[0, 1]));
        assert!(m.den().is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        let e = RationalFunction::new(poly(5, &[1]), poly(5, &[0]));
        assert_eq!(e.unwrap_err(), ExactError::ZeroDenominator);
    }

    #[test]
    fn canonical_equality() {
        // 1/t + t == (1 + t^2)/t should normalize identically
        let a = &rf(7, &[1], &[0, 1]) + &rf(7, &[0, 1], &[1]);
        let b = rf(7, &[1, 0, 1], &[0, 1]);
        assert_eq!(a, b);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dt (1/t) = -1/t^2
        let r = rf(5, &[1], &[0, 1]);
        assert_eq!(r.derivative(), rf(5, &[-1], &[0, 0, 1]));
    }

    #[test]
    fn p_fold_derivative_annihilates_rationals() {
        let mut r = rf(3, &[1, 2], &[2, 0, 1]);
        for _ in 0..3 {
            r = r.derivative();
        }
        assert!(r.is_zero());
    }

    #[test]
    fn eval_and_poles() {
        let r = rf(7, &[1], &[0, 1]); // 1/t
        assert_eq!(r.eval(FpElement::new(2, p(7))).unwrap().value(), 4);
        assert!(r.eval(FpElement::zero(p(7))).is_err());
    }
}
