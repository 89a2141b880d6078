//! Matrices over the rational-function field and exact linear algebra.
//!
//! Kernels are computed by fraction-free (Bareiss) elimination on
//! denominator-cleared rows, with all divisions postponed to the final
//! back-substitution. Solving and inversion use ordinary reduced fractions,
//! which stay canonical at every step.

use crate::fp::Prime;
use crate::poly::DensePoly;
use crate::ratfunc::RationalFunction;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// A rectangular matrix of rational functions, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixRF {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl MatrixRF {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFunction>) -> MatrixRF {
        assert_eq!(rows * cols, entries.len(), "entry count mismatch");
        MatrixRF { rows, cols, entries }
    }

    pub fn zero(prime: Prime, var: char, rows: usize, cols: usize) -> MatrixRF {
        MatrixRF {
            rows,
            cols,
            entries: vec![RationalFunction::zero(prime, var); rows * cols],
        }
    }

    pub fn identity(prime: Prime, var: char, n: usize) -> MatrixRF {
        let mut m = MatrixRF::zero(prime, var, n, n);
        for i in 0..n {
            m.set(i, i, RationalFunction::one(prime, var));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RationalFunction>>) -> MatrixRF {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        MatrixRF {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(prime: Prime, var: char, dim: usize, cols: &[Vec<RationalFunction>]) -> MatrixRF {
        let mut m = MatrixRF::zero(prime, var, dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prime(&self) -> Prime {
        self.entries
            .first()
            .map(RationalFunction::prime)
            .expect("empty matrix has no prime")
    }

    pub fn var(&self) -> char {
        self.entries
            .first()
            .map(RationalFunction::var)
            .expect("empty matrix has no variable")
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        assert!(i < self.rows && j < self.cols);
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<RationalFunction> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> MatrixRF {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self[(i, j)].clone());
            }
        }
        MatrixRF {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> MatrixRF {
        MatrixRF {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise derivative.
    pub fn derivative(&self) -> MatrixRF {
        self.map(RationalFunction::derivative)
    }

    /// Entrywise variable substitution x -> x^k.
    pub fn substitute_power(&self, k: usize) -> MatrixRF {
        self.map(|e| e.substitute_power(k))
    }

    pub fn scale(&self, c: &RationalFunction) -> MatrixRF {
        self.map(|e| e * c)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[RationalFunction]) -> Vec<RationalFunction> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = RationalFunction::zero(self.prime(), self.var());
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc = &acc + &(&self[(i, j)] * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, exp: usize) -> MatrixRF {
        assert!(self.is_square());
        let mut acc = MatrixRF::identity(self.prime(), self.var(), self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Rank over the rational-function field.
    pub fn rank(&self) -> usize {
        let (_, pivots) = bareiss_echelon(self.cleared_rows());
        pivots.len()
    }

    /// Exact basis of the right kernel. Basis vectors are cleared to
    /// polynomial entries with content 1 and a monic first nonzero entry;
    /// an empty basis means the kernel is trivial.
    pub fn kernel(&self) -> Vec<Vec<RationalFunction>> {
        let prime = self.prime();
        let var = self.var();
        let (ech, pivots) = bareiss_echelon(self.cleared_rows());
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![RationalFunction::zero(prime, var); self.cols];
            v[free] = RationalFunction::one(prime, var);
            for &(r, c) in pivots.iter().rev() {
                let mut acc = RationalFunction::zero(prime, var);
                for j in c + 1..self.cols {
                    if !ech[r][j].is_zero() && !v[j].is_zero() {
                        acc = &acc + &(&RationalFunction::from_poly(ech[r][j].clone()) * &v[j]);
                    }
                }
                v[c] = &(-&acc) / &RationalFunction::from_poly(ech[r][c].clone());
            }
            basis.push(clear_vector(&v));
        }
        basis
    }

    /// Solve `self * x = rhs` exactly; None when inconsistent.
    pub fn solve(&self, rhs: &[RationalFunction]) -> Option<Vec<RationalFunction>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let prime = self.prime();
        let var = self.var();
        let mut aug: Vec<Vec<RationalFunction>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, self.cols);
        // Inconsistent if some row is zero on the left with nonzero rhs.
        for row in &aug {
            if row[..self.cols].iter().all(RationalFunction::is_zero) && !row[self.cols].is_zero() {
                return None;
            }
        }
        let mut x = vec![RationalFunction::zero(prime, var); self.cols];
        for &(r, c) in &pivots {
            x[c] = aug[r][self.cols].clone();
        }
        Some(x)
    }

    /// Exact inverse; None when singular.
    pub fn inverse(&self) -> Option<MatrixRF> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let prime = self.prime();
        let var = self.var();
        let mut aug: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                for j in 0..n {
                    row.push(if i == j {
                        RationalFunction::one(prime, var)
                    } else {
                        RationalFunction::zero(prime, var)
                    });
                }
                row
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = MatrixRF::zero(prime, var, n, n);
        for &(r, c) in &pivots {
            for j in 0..n {
                inv.set(c, j, aug[r][n + j].clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> RationalFunction {
        assert!(self.is_square());
        let n = self.rows;
        let prime = self.prime();
        let var = self.var();
        match n {
            0 => RationalFunction::one(prime, var),
            1 => self[(0, 0)].clone(),
            2 => &(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)]),
            _ => {
                // cofactor expansion along the first row; fine at these sizes
                let mut acc = RationalFunction::zero(prime, var);
                for j in 0..n {
                    if self[(0, j)].is_zero() {
                        continue;
                    }
                    let minor = MatrixRF::from_rows(
                        (1..n)
                            .map(|i| {
                                (0..n)
                                    .filter(|&k| k != j)
                                    .map(|k| self[(i, k)].clone())
                                    .collect()
                            })
                            .collect(),
                    );
                    let term = &self[(0, j)] * &minor.determinant();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Rows with denominators cleared; row scaling preserves rank and kernel.
    fn cleared_rows(&self) -> Vec<Vec<DensePoly>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut l = DensePoly::one(self.prime(), self.var());
                for e in row {
                    l = l.lcm(e.den());
                }
                row.iter()
                    .map(|e| e.num() * &l.div_exact(e.den()))
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for MatrixRF {
    type Output = RationalFunction;
    fn index(&self, (i, j): (usize, usize)) -> &RationalFunction {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for MatrixRF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixRF {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Add for &MatrixRF {
    type Output = MatrixRF;
    fn add(self, rhs: &MatrixRF) -> MatrixRF {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        MatrixRF {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &MatrixRF {
    type Output = MatrixRF;
    fn sub(self, rhs: &MatrixRF) -> MatrixRF {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        MatrixRF {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &MatrixRF {
    type Output = MatrixRF;
    fn mul(self, rhs: &MatrixRF) -> MatrixRF {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let prime = self.prime();
        let var = self.var();
        let mut out = MatrixRF::zero(prime, var, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RationalFunction::zero(prime, var);
                for k in 0..self.cols {
                    if !self[(i, k)].is_zero() && !rhs[(k, j)].is_zero() {
                        acc = &acc + &(&self[(i, k)] * &rhs[(k, j)]);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

impl Neg for &MatrixRF {
    type Output = MatrixRF;
    fn neg(self) -> MatrixRF {
        self.map(|e| -e)
    }
}

/// Fraction-free Bareiss elimination on a polynomial matrix. Returns the
/// echelon matrix together with the pivot positions (row, col).
fn bareiss_echelon(mut m: Vec<Vec<DensePoly>>) -> (Vec<Vec<DensePoly>>, Vec<(usize, usize)>) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev: Option<DensePoly> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = match &prev {
                    Some(d) => t.div_exact(d),
                    None => t,
                };
            }
            m[i][c] = DensePoly::zero(m[i][c].prime(), m[i][c].var());
        }
        prev = Some(m[r][c].clone());
        pivots.push((r, c));
        r += 1;
    }
    (m, pivots)
}

/// In-place reduced row echelon form over the rational-function field on the
/// first `cols` columns (extra columns ride along). Returns pivot positions.
fn rref(m: &mut [Vec<RationalFunction>], cols: usize) -> Vec<(usize, usize)> {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for j in 0..width {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..width {
                    let t = &m[r][j] * &factor;
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    pivots
}

/// Scale a rational vector to polynomial entries with content 1 and a monic
/// first nonzero entry.
pub fn clear_vector(v: &[RationalFunction]) -> Vec<RationalFunction> {
    assert!(!v.is_empty());
    let prime = v[0].prime();
    let var = v[0].var();
    let mut l = DensePoly::one(prime, var);
    for e in v {
        l = l.lcm(e.den());
    }
    let mut polys: Vec<DensePoly> = v
        .iter()
        .map(|e| e.num() * &l.div_exact(e.den()))
        .collect();
    let mut content = DensePoly::zero(prime, var);
    for c in &polys {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        polys = polys.iter().map(|c| c.div_exact(&content)).collect();
    }
    if let Some(first) = polys.iter().find(|c| !c.is_zero()) {
        let scale = first.leading_coeff().inv();
        polys = polys.iter().map(|c| c.scale(scale)).collect();
    }
    polys.into_iter().map(RationalFunction::from_poly).collect()
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
pub fn in_span(
    prime: Prime,
    var: char,
    dim: usize,
    basis: &[Vec<RationalFunction>],
    target: &[RationalFunction],
) -> Option<Vec<RationalFunction>> {
    if basis.is_empty() {
        return target.iter().all(RationalFunction::is_zero).then(Vec::new);
    }
    MatrixRF::from_columns(prime, var, dim, basis).solve(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(
            DensePoly::from_i64(p5(), 't', num),
            DensePoly::from_i64(p5(), 't', den),
        )
        .unwrap()
    }

    fn rfp(num: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(DensePoly::from_i64(p5(), 't', num))
    }

    #[test]
    fn kernel_of_zero_matrix_is_standard_basis() {
        let m = MatrixRF::zero(p5(), 't', 2, 2);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![rfp(&[1]), rfp(&[0])]);
        assert_eq!(k[1], vec![rfp(&[0]), rfp(&[1])]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let m = MatrixRF::identity(p5(), 't', 2);
        assert!(m.kernel().is_empty());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_rank_one_example() {
        // [[t, t^2], [1, t]] has kernel spanned by (t, -1)
        let m = MatrixRF::from_rows(vec![
            vec![rfp(&[0, 1]), rfp(&[0, 0, 1])],
            vec![rfp(&[1]), rfp(&[0, 1])],
        ]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![rfp(&[0, 1]), rfp(&[-1])]);
        for v in &k {
            assert!(m.apply(v).iter().all(RationalFunction::is_zero));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let m = MatrixRF::from_rows(vec![
            vec![rfp(&[0, 1]), rfp(&[1])],
            vec![rfp(&[1]), rfp(&[0])],
        ]);
        let b = vec![rfp(&[1, 1]), rfp(&[2])];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, MatrixRF::identity(p5(), 't', 2));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = MatrixRF::from_rows(vec![
            vec![rfp(&[1]), rfp(&[1])],
            vec![rfp(&[2]), rfp(&[2])],
        ]);
        assert!(m.solve(&[rfp(&[1]), rfp(&[1])]).is_none());
        assert!(m.solve(&[rfp(&[1]), rfp(&[2])]).is_some());
    }

    #[test]
    fn determinant_with_fractions() {
        let m = MatrixRF::from_rows(vec![
            vec![rf(&[1], &[0, 1]), rfp(&[1])],
            vec![rfp(&[1]), rf(&[0, 1], &[1])],
        ]);
        // det = (1/t)(t) - 1 = 0
        assert!(m.determinant().is_zero());
    }
}
