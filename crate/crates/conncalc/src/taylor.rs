//! Taylor cocycles: the divided-power expansion attached to a connection.
//!
//! The expansion of a section v collects the iterates (v, nabla v,
//! nabla^2 v, ...); these are the coefficients of the cocycle against the
//! divided powers h^n/n!. The cocycle/Leibniz equivalence becomes the
//! multiplicativity law T(f v)_n = sum binom(n,i) f^(i) T(v)_{n-i}.

use crate::connection::Connection;
use crate::error::ConnError;
use exactcore::{binomial_mod, FpElement, RationalFunction};

/// One Taylor-cocycle sample: the iterates of the connection operator on a
/// section, up to the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorCocycle {
    order: usize,
    terms: Vec<Vec<RationalFunction>>,
}

impl TaylorCocycle {
    pub fn order(&self) -> usize {
        self.order
    }

    /// terms()[n] is the n-th iterate of the connection operator.
    pub fn terms(&self) -> &[Vec<RationalFunction>] {
        &self.terms
    }
}

/// Expand a section to order K: (v, nabla v, ..., nabla^{K-1} v).
pub fn taylor_expand(
    conn: &Connection,
    v: &[RationalFunction],
    order: usize,
) -> Result<TaylorCocycle, ConnError> {
    assert!(order >= 1, "expansion order must be at least 1");
    let mut terms = Vec::with_capacity(order);
    terms.push(v.to_vec());
    for n in 1..order {
        let next = conn.nabla(&terms[n - 1])?;
        terms.push(next);
    }
    Ok(TaylorCocycle { order, terms })
}

/// Report from the multiplicativity comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaylorReport {
    pub pass: bool,
    /// First order at which the two expansions disagree.
    pub first_mismatch: Option<usize>,
}

/// Verify T(f v) = taylor(f) * T(v) up to the given order, where taylor(f)
/// has n-th coefficient f^(n) and the product is taken against divided
/// powers: T(f v)_n = sum_i binom(n, i) f^(i) T(v)_{n-i}. This is the
/// iterated Leibniz rule, i.e. the cocycle condition in coordinates.
pub fn taylor_multiplicativity_check(
    conn: &Connection,
    f: &RationalFunction,
    v: &[RationalFunction],
    order: usize,
) -> Result<TaylorReport, ConnError> {
    let p = conn.prime();
    let var = conn.var();
    let fv: Vec<RationalFunction> = v.iter().map(|x| f * x).collect();
    let lhs = taylor_expand(conn, &fv, order)?;
    let tv = taylor_expand(conn, v, order)?;

    let mut f_derivs = Vec::with_capacity(order);
    f_derivs.push(f.clone());
    for n in 1..order {
        let next = f_derivs[n - 1].derivative();
        f_derivs.push(next);
    }

    for n in 0..order {
        let mut rhs = vec![RationalFunction::zero(p, var); conn.rank()];
        for i in 0..=n {
            let b = binomial_mod(n, i, p.value());
            if b == 0 {
                continue;
            }
            let coeff = &f_derivs[i] * &RationalFunction::constant(FpElement::new(b, p), var);
            for (k, slot) in rhs.iter_mut().enumerate() {
                *slot = &*slot + &(&coeff * &tv.terms()[n - i][k]);
            }
        }
        if lhs.terms()[n] != rhs {
            return Ok(TaylorReport {
                pass: false,
                first_mismatch: Some(n),
            });
        }
    }
    Ok(TaylorReport {
        pass: true,
        first_mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactcore::{DensePoly, MatrixRF, Prime};

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn rfp(coeffs: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::from_i64(p5(), 't', coeffs))
    }

    #[test]
    fn constant_section_of_trivial_connection() {
        let conn = Connection::trivial(p5(), 't', 2);
        let v = vec![rfp(&[3]), rfp(&[1])];
        let t = taylor_expand(&conn, &v, 4).unwrap();
        assert_eq!(t.terms()[0], v);
        for n in 1..4 {
            assert!(t.terms()[n].iter().all(RationalFunction::is_zero));
        }
    }

    #[test]
    fn rank_one_exponential_pattern() {
        // rank 1, A = (1), v = (1), K = 4 -> (1, 1, 1, 1)
        let m = MatrixRF::from_rows(vec![vec![rfp(&[1])]]);
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let t = taylor_expand(&conn, &[rfp(&[1])], 4).unwrap();
        for n in 0..4 {
            assert_eq!(t.terms()[n], vec![rfp(&[1])]);
        }
    }

    #[test]
    fn comodule_identity() {
        // expanding the m-th iterate reproduces the tail: nabla_n nabla_m = nabla_{n+m}
        let m = MatrixRF::from_rows(vec![
            vec![rfp(&[0, 1]), rfp(&[1])],
            vec![rfp(&[2]), rfp(&[0, 0, 1])],
        ]);
        let conn = Connection::new(DensePoly::one(p5(), 't'), m).unwrap();
        let v = vec![rfp(&[1, 1]), rfp(&[0, 2])];
        let t = taylor_expand(&conn, &v, 6).unwrap();
        for shift in 1..3 {
            let t_shift = taylor_expand(&conn, &t.terms()[shift], 6 - shift).unwrap();
            for n in 0..6 - shift {
                assert_eq!(t_shift.terms()[n], t.terms()[n + shift]);
            }
        }
    }

    #[test]
    fn multiplicativity_trivial_cases() {
        let conn = Connection::trivial(p5(), 't', 1);
        // f = 1 is trivially multiplicative
        let one = rfp(&[1]);
        let r = taylor_multiplicativity_check(&conn, &one, &[rfp(&[0, 1])], 3).unwrap();
        assert!(r.pass);
        // rank 1, A = 0, f = t, v = 1, K = 2: both sides are (t, 1)
        let t = rfp(&[0, 1]);
        let r = taylor_multiplicativity_check(&conn, &t, &[rfp(&[1])], 2).unwrap();
        assert!(r.pass);
        let lhs = taylor_expand(&conn, &[t.clone()], 2).unwrap();
        assert_eq!(lhs.terms()[0], vec![rfp(&[0, 1])]);
        assert_eq!(lhs.terms()[1], vec![rfp(&[1])]);
    }
}
