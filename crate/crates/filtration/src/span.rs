//! Span bookkeeping shared by the filtration machinery: membership tests,
//! greedy basis extension, and saturation loci.

use exactcore::{clear_vector, in_span, DensePoly, MatrixRF, Prime, RationalFunction};

pub type Vector = Vec<RationalFunction>;

/// Coordinates of `target` against `basis`, if it lies in the span.
pub fn coords_in(
    prime: Prime,
    var: char,
    dim: usize,
    basis: &[Vector],
    target: &Vector,
) -> Option<Vec<RationalFunction>> {
    in_span(prime, var, dim, basis, target)
}

pub fn spans_contain(prime: Prime, var: char, dim: usize, basis: &[Vector], target: &Vector) -> bool {
    coords_in(prime, var, dim, basis, target).is_some()
}

/// Extend `current` greedily by candidates until it has `target_rank`
/// vectors; chosen candidates are cleared to polynomial content-1 form.
/// Returns false if the candidates cannot reach the target rank.
pub fn extend_greedy(
    prime: Prime,
    var: char,
    dim: usize,
    current: &mut Vec<Vector>,
    candidates: &[Vector],
    target_rank: usize,
) -> bool {
    for cand in candidates {
        if current.len() == target_rank {
            break;
        }
        if !spans_contain(prime, var, dim, current, cand) {
            current.push(clear_vector(cand));
        }
    }
    current.len() == target_rank
}

/// The standard basis vectors of F_p(t)^dim.
pub fn standard_basis(prime: Prime, var: char, dim: usize) -> Vec<Vector> {
    (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| {
                    if i == j {
                        RationalFunction::one(prime, var)
                    } else {
                        RationalFunction::zero(prime, var)
                    }
                })
                .collect()
        })
        .collect()
}

/// gcd of all maximal minors of the matrix with the given columns; the
/// locus where it vanishes (outside the base denominator) is where the
/// spanned submodule fails to be saturated.
pub fn minor_gcd(prime: Prime, var: char, dim: usize, columns: &[Vector]) -> DensePoly {
    let r = columns.len();
    if r == 0 || r > dim {
        return DensePoly::one(prime, var);
    }
    let cleared: Vec<Vector> = columns.iter().map(|c| clear_vector(c)).collect();
    let mut gcd = DensePoly::zero(prime, var);
    for rows in combinations(dim, r) {
        let minor_matrix = MatrixRF::from_rows(
            rows.iter()
                .map(|&i| cleared.iter().map(|c| c[i].clone()).collect())
                .collect(),
        );
        let det = minor_matrix.determinant();
        debug_assert!(det.is_polynomial());
        gcd = gcd.gcd(det.num());
        if gcd.is_one() {
            break;
        }
    }
    gcd
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}
