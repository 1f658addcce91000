//! Brute-force cross-checks by truncating polynomial degrees and doing plain
//! linear algebra over `k`. Nothing here touches Hermite or Smith forms.
//!
//! Null-homotopic maps are parametrized through the injective hull of the
//! source: every map `M → N` that factors through a projective-injective is
//! `Σ_i  d'^{(j-i) mod n} · h_i · d^{(i-1-j) mod n}` in slot `j`, for
//! arbitrary `h_i: M_{i-1} → N_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kmatrix::Matrix;
use crate::matrix::PolyMatrix;
use crate::mf::{MatrixFactorization, MfMorphism};
use crate::stable::{hom_system, HomLayout};

/// Outcome of evaluating a truncated quantity at two consecutive bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncated {
    pub bound: usize,
    pub at_bound: usize,
    pub at_next: usize,
}

impl Truncated {
    /// The common value if the two truncations agree.
    pub fn stable(&self) -> Option<usize> {
        (self.at_bound == self.at_next).then_some(self.at_bound)
    }
}

/// The `k`-linear map induced by `a` on vectors of polynomials of degree `≤ deg`.
/// Coordinates are degree-major: coefficient `t` of entry `r` sits at `t·rows + r`.
fn linearize(a: &PolyMatrix, deg: usize) -> Matrix {
    let k = a.field();
    let out_deg = deg + a.max_degree();
    let mut m = Matrix::zeros(k, (out_deg + 1) * a.rows(), (deg + 1) * a.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            for (e, coef) in a.get(r, c).coeffs().iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for d in 0..=deg {
                    m.set((d + e) * a.rows() + r, d * a.cols() + c, coef.clone());
                }
            }
        }
    }
    m
}

/// Rows `0..keep` and the remaining rows of `m`.
fn split_rows(m: &Matrix, keep: usize) -> (Matrix, Matrix) {
    let k = m.field();
    let keep = keep.min(m.rows());
    let low = Matrix::from_fn(k, keep, m.cols(), |i, j| m.get(i, j).clone());
    let high = Matrix::from_fn(k, m.rows() - keep, m.cols(), |i, j| m.get(keep + i, j).clone());
    (low, high)
}

/// Dimension of `im(images) ∩ {vectors supported in the first `keep` rows}`.
fn low_image_rank(images: &Matrix, keep: usize) -> usize {
    let (low, high) = split_rows(images, keep);
    let combos = high.kernel();
    if combos.cols() == 0 {
        return 0;
    }
    low.mul(&combos).rank()
}

/// `Φ: ⊕_i Hom_k[x](M_{i-1}, N_i) → ⊕_j Hom_k[x](M_j, N_j)` as a polynomial matrix.
fn homotopy_map(m: &MatrixFactorization, n: &MatrixFactorization) -> (usize, PolyMatrix) {
    let k = m.field();
    let slots = m.n();
    let layout = HomLayout::new(m, n);
    let mut h_off = Vec::with_capacity(slots);
    let mut h_len = 0;
    for i in 0..slots {
        h_off.push(h_len);
        h_len += n.rank(i) * m.rank(i + slots - 1);
    }
    let mut phi = PolyMatrix::zeros(k, layout.len(), h_len);
    for i in 0..slots {
        let src = (i + slots - 1) % slots;
        let cols = m.rank(src);
        for j in 0..slots {
            let a = n.path(i, (j + slots - i) % slots);
            let b = m.path(j, (src + slots - j) % slots);
            for (ra, rb) in (0..n.rank(j)).flat_map(|ra| (0..m.rank(j)).map(move |rb| (ra, rb))) {
                let row = layout.index(j, ra, rb);
                for c in 0..n.rank(i) {
                    if a.get(ra, c).is_zero() {
                        continue;
                    }
                    for e in 0..cols {
                        let t = a.get(ra, c) * b.get(e, rb);
                        if t.is_zero() {
                            continue;
                        }
                        let col = h_off[i] + c * cols + e;
                        let v = phi.get(row, col) + &t;
                        phi.set(row, col, v);
                    }
                }
            }
        }
    }
    (h_len, phi)
}

/// Default truncation bound: comfortably above the degrees of Hom generators
/// for the small objects this is meant for.
pub fn default_bound(m: &MatrixFactorization, n: &MatrixFactorization) -> usize {
    let w = m.potential().w().degree_or_zero();
    let ranks: usize = m.ranks().iter().chain(n.ranks()).sum();
    ranks.max(1) * m.max_degree().max(n.max_degree()).max(1) + 2 * w + 2
}

fn stable_hom_at(
    m: &MatrixFactorization,
    n: &MatrixFactorization,
    sys: &PolyMatrix,
    phi: &PolyMatrix,
    bound: usize,
) -> usize {
    let e = sys.cols();
    let hom = linearize(sys, bound).kernel().cols();
    let slack = m.n() * m.max_degree().max(n.max_degree()) + m.potential().w().degree_or_zero();
    let images = linearize(phi, bound + slack);
    hom - low_image_rank(&images, (bound + 1) * e)
}

/// `dim_k` of stable Hom, computed at truncation `bound` and `bound + 1`.
pub fn oracle_stable_hom_dim(m: &MatrixFactorization, n: &MatrixFactorization, bound: Option<usize>) -> Result<Truncated> {
    let (_, sys) = hom_system(m, n)?;
    let (_, phi) = homotopy_map(m, n);
    let bound = bound.unwrap_or_else(|| default_bound(m, n));
    Ok(Truncated {
        bound,
        at_bound: stable_hom_at(m, n, &sys, &phi, bound),
        at_next: stable_hom_at(m, n, &sys, &phi, bound + 1),
    })
}

/// Whether `f` is `Φ(h)` for some homotopy of degree `≤ deg f + slack`.
pub fn oracle_factors_through(f: &MfMorphism, slack: Option<usize>) -> Result<bool> {
    let (m, n) = (f.source(), f.target());
    if m.potential() != n.potential() {
        return Err(Error::PotentialMismatch);
    }
    let (_, phi) = homotopy_map(m, n);
    let layout = HomLayout::new(m, n);
    let slack = slack.unwrap_or(m.n() * m.max_degree().max(n.max_degree()) + m.potential().w().degree_or_zero());
    let hdeg = f.max_degree() + slack;
    let images = linearize(&phi, hdeg);
    let target = linearize(&layout.flatten(f), 0);
    let k = m.field();
    let rhs = Matrix::from_fn(k, images.rows(), 1, |i, _| {
        if i < target.rows() {
            target.get(i, 0).clone()
        } else {
            k.zero()
        }
    });
    Ok(images.solve(&rhs).is_some())
}

/// `dim_k coker(a)` truncated at `bound` and `bound + 1`; the two differ
/// when the cokernel has a free part.
pub fn oracle_coker_kdim(a: &PolyMatrix, bound: usize) -> Truncated {
    let at = |b: usize| {
        let slack = a.max_degree() * a.rows().max(1);
        let images = linearize(a, b + slack);
        (b + 1) * a.rows() - low_image_rank(&images, (b + 1) * a.rows())
    };
    Truncated { bound, at_bound: at(bound), at_next: at(bound + 1) }
}

/// `k`-dimension of `Hom(M, N)` in degrees `≤ bound`.
pub fn truncated_hom_dim(m: &MatrixFactorization, n: &MatrixFactorization, bound: usize) -> Result<usize> {
    let (_, sys) = hom_system(m, n)?;
    Ok(linearize(&sys, bound).kernel().cols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mf::{trivial_p, Potential};
    use crate::poly::Poly;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn mono(k: usize, exps: &[usize]) -> MatrixFactorization {
        let pot = Potential::monomial(Q, k, exps.len()).unwrap();
        let maps = exps.iter().map(|&a| PolyMatrix::scalar(&Poly::x_pow(Q, a), 1)).collect();
        MatrixFactorization::new(pot, maps).unwrap()
    }

    #[test]
    fn oracle_on_rank_one_monomials() {
        // Rank-one monomial objects have stable End of dimension k - max(a).
        for (k, exps) in [(2, vec![1, 1]), (2, vec![1, 1, 0]), (3, vec![1, 2]), (3, vec![1, 1, 1]), (4, vec![2, 1, 1])] {
            let m = mono(k, &exps);
            let r = oracle_stable_hom_dim(&m, &m, None).unwrap();
            assert_eq!(r.stable(), Some(k - exps.iter().max().unwrap()), "{exps:?}");
        }
    }

    #[test]
    fn oracle_trivial_is_zero() {
        let pot = Potential::monomial(Q, 2, 3).unwrap();
        let p = trivial_p(&pot, 1, 1).unwrap();
        assert_eq!(oracle_stable_hom_dim(&p, &p, None).unwrap().stable(), Some(0));
        assert!(oracle_factors_through(&MfMorphism::identity(p), None).unwrap());
    }

    #[test]
    fn oracle_identity_on_x_x_is_not_null() {
        let m = mono(2, &[1, 1]);
        assert!(!oracle_factors_through(&MfMorphism::identity(m.clone()), None).unwrap());
        let w = m.potential().w().clone();
        assert!(oracle_factors_through(&MfMorphism::identity(m).scale(&w), None).unwrap());
    }

    #[test]
    fn oracle_coker() {
        let a = PolyMatrix::from_i64s(Q, &[&[&[0, 0, 1], &[]], &[&[], &[0, 1]]]);
        assert_eq!(oracle_coker_kdim(&a, 6).stable(), Some(3));
        let b = PolyMatrix::from_i64s(Q, &[&[&[0, 1]], &[&[1]]]);
        assert_eq!(oracle_coker_kdim(&b, 6).stable(), None);
    }
}
