//! Hermite and Smith normal forms over the PID `k[x]`, and the module-theoretic
//! questions they decide: solvability, kernels, and cokernel dimensions.
//!
//! Both forms are column-oriented and deterministic. Pivots are chosen as the
//! lowest-degree nonzero candidate, ties broken by the lower index.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

pub const DEFAULT_MAX_DEGREE: usize = 512;

/// Aborts a reduction whose intermediate degrees exceed `max_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeGuard {
    pub max_degree: usize,
}

impl Default for DegreeGuard {
    fn default() -> Self {
        DegreeGuard { max_degree: DEFAULT_MAX_DEGREE }
    }
}

impl DegreeGuard {
    pub fn new(max_degree: usize) -> Self {
        DegreeGuard { max_degree }
    }

    fn check(&self, found: usize) -> Result<(), LinalgError> {
        if found > self.max_degree {
            Err(LinalgError::DegreeLimit { limit: self.max_degree, found })
        } else {
            Ok(())
        }
    }
}

/// Column Hermite form `A·U = H`.
///
/// `H` is in column echelon form: the first `rank` columns carry monic pivots
/// in strictly increasing rows, entries left of a pivot have smaller degree
/// than the pivot, and the remaining columns are zero. `u_inv` is `U⁻¹`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: PolyMatrix,
    pub u: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub pivot_rows: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }
}

pub fn hermite_normal_form(a: &PolyMatrix) -> Result<Hnf, LinalgError> {
    hermite_normal_form_guarded(a, DegreeGuard::default())
}

pub fn hermite_normal_form_guarded(a: &PolyMatrix, guard: DegreeGuard) -> Result<Hnf, LinalgError> {
    let k = a.field();
    let (rows, cols) = a.shape();
    let mut h = a.clone();
    let mut u = PolyMatrix::identity(k, cols);
    let mut u_inv = PolyMatrix::identity(k, cols);
    let mut pivot_rows = Vec::new();
    let mut pc = 0;

    // Column ops on (h, u) are mirrored by the inverse row ops on u_inv.
    let axpy = |h: &mut PolyMatrix, u: &mut PolyMatrix, u_inv: &mut PolyMatrix, dst: usize, src: usize, q: &Poly| -> Result<(), LinalgError> {
        h.col_axpy(dst, src, q);
        u.col_axpy(dst, src, q);
        u_inv.row_axpy(src, dst, &-q);
        guard.check(h.col_max_degree(dst))?;
        guard.check(u.col_max_degree(dst))?;
        guard.check(u_inv.row_max_degree(src))
    };

    for row in 0..rows {
        if pc == cols {
            break;
        }
        loop {
            let best = (pc..cols)
                .filter(|&j| !h.get(row, j).is_zero())
                .min_by_key(|&j| (h.get(row, j).degree_or_zero(), j));
            let Some(best) = best else { break };
            h.swap_cols(pc, best);
            u.swap_cols(pc, best);
            u_inv.swap_rows(pc, best);
            let pivot = h.get(row, pc).clone();
            let mut done = true;
            for j in pc + 1..cols {
                if h.get(row, j).is_zero() {
                    continue;
                }
                let (q, r) = h.get(row, j).div_rem(&pivot)?;
                axpy(&mut h, &mut u, &mut u_inv, j, pc, &q)?;
                if !r.is_zero() {
                    done = false;
                }
            }
            if done {
                let lead = pivot.lead().unwrap().clone();
                let inv = k.inv(&lead).unwrap();
                h.scale_col(pc, &inv);
                u.scale_col(pc, &inv);
                u_inv.scale_row(pc, &lead);
                let pivot = h.get(row, pc).clone();
                for j in 0..pc {
                    let (q, _) = h.get(row, j).div_rem(&pivot)?;
                    axpy(&mut h, &mut u, &mut u_inv, j, pc, &q)?;
                }
                pivot_rows.push(row);
                pc += 1;
                break;
            }
        }
    }
    Ok(Hnf { h, u, u_inv, pivot_rows })
}

/// Solves `A·X = B` over `k[x]`; `None` when no polynomial solution exists.
pub fn solve_right(a: &PolyMatrix, b: &PolyMatrix) -> Result<Option<PolyMatrix>, LinalgError> {
    solve_right_guarded(a, b, DegreeGuard::default())
}

pub fn solve_right_guarded(a: &PolyMatrix, b: &PolyMatrix, guard: DegreeGuard) -> Result<Option<PolyMatrix>, LinalgError> {
    if a.field() != b.field() {
        return Err(LinalgError::FieldMismatch(a.field(), b.field()));
    }
    if a.rows() != b.rows() {
        return Err(LinalgError::ShapeMismatch { op: "solve_right", left: a.shape(), right: b.shape() });
    }
    let hnf = hermite_normal_form_guarded(a, guard)?;
    solve_with_hnf(&hnf, b)
}

/// Solves `A·X = B` given a precomputed Hermite form of `A`.
pub fn solve_with_hnf(hnf: &Hnf, b: &PolyMatrix) -> Result<Option<PolyMatrix>, LinalgError> {
    let k = b.field();
    let rank = hnf.rank();
    let h = &hnf.h;
    let mut y = PolyMatrix::zeros(k, h.cols(), b.cols());
    for col in 0..b.cols() {
        let mut residual: Vec<Poly> = (0..b.rows()).map(|i| b.get(i, col).clone()).collect();
        for t in 0..rank {
            let p = hnf.pivot_rows[t];
            let Some(coef) = residual[p].exact_div(h.get(p, t))? else {
                return Ok(None);
            };
            if coef.is_zero() {
                continue;
            }
            for (i, r) in residual.iter_mut().enumerate().skip(p) {
                let e = h.get(i, t);
                if !e.is_zero() {
                    *r = &*r - &(e * &coef);
                }
            }
            y.set(t, col, coef);
        }
        if residual.iter().any(|r| !r.is_zero()) {
            return Ok(None);
        }
    }
    Ok(Some(hnf.u.mul(&y)?))
}

/// A basis of `{v : A·v = 0}` together with a left inverse of it.
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Columns form a basis of the kernel.
    pub basis: PolyMatrix,
    /// `left_inverse · basis = I`.
    pub left_inverse: PolyMatrix,
}

pub fn kernel_basis(a: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
    Ok(kernel_with_inverse(a)?.basis)
}

pub fn kernel_with_inverse(a: &PolyMatrix) -> Result<Kernel, LinalgError> {
    kernel_with_inverse_guarded(a, DegreeGuard::default())
}

pub fn kernel_with_inverse_guarded(a: &PolyMatrix, guard: DegreeGuard) -> Result<Kernel, LinalgError> {
    let hnf = hermite_normal_form_guarded(a, guard)?;
    let n = a.cols();
    let r = hnf.rank();
    Ok(Kernel {
        basis: hnf.u.submatrix(0..n, r..n),
        left_inverse: hnf.u_inv.submatrix(r..n, 0..n),
    })
}

/// `U·A·V = diag(d₁, …, d_r, 0, …)` with monic `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diagonal: PolyMatrix,
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    /// The nonzero invariant factors `d₁ | d₂ | …`.
    pub invariants: Vec<Poly>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

pub fn smith_normal_form(a: &PolyMatrix) -> Result<Snf, LinalgError> {
    smith_normal_form_guarded(a, DegreeGuard::default())
}

pub fn smith_normal_form_guarded(a: &PolyMatrix, guard: DegreeGuard) -> Result<Snf, LinalgError> {
    let k = a.field();
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = PolyMatrix::identity(k, m);
    let mut v = PolyMatrix::identity(k, n);
    let mut invariants = Vec::new();

    let check = |d: &PolyMatrix, u: &PolyMatrix, v: &PolyMatrix| -> Result<(), LinalgError> {
        guard.check(d.max_degree())?;
        guard.check(u.max_degree())?;
        guard.check(v.max_degree())
    };

    for t in 0..m.min(n) {
        let best = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !d.get(i, j).is_zero())
            .min_by_key(|&(i, j)| (d.get(i, j).degree_or_zero(), i, j));
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, t).div_rem(&pivot)?;
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(t, j).div_rem(&pivot)?;
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                clean &= r.is_zero();
            }
            check(&d, &u, &v)?;
            if !clean {
                // A remainder of lower degree is now in row or column t.
                let best = (t + 1..m)
                    .map(|i| (i, t))
                    .chain((t + 1..n).map(|j| (t, j)))
                    .filter(|&(i, j)| !d.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| (d.get(i, j).degree_or_zero(), i, j))
                    .unwrap();
                if best.0 != t {
                    d.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else {
                    d.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // Row and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !pivot.divides(d.get(i, j)));
            match offender {
                Some((i, _)) => {
                    let minus_one = Poly::constant(k, k.from_i64(-1));
                    d.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        let lead = d.get(t, t).lead().unwrap().clone();
        let inv = k.inv(&lead).unwrap();
        d.scale_row(t, &inv);
        u.scale_row(t, &inv);
        invariants.push(d.get(t, t).clone());
    }
    Ok(Snf { diagonal: d, u, v, invariants })
}

/// Dimension over `k` of a finitely presented `k[x]`-module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KDim {
    Finite(usize),
    Infinite,
}

impl KDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            KDim::Finite(d) => Some(d),
            KDim::Infinite => None,
        }
    }
}

impl fmt::Display for KDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KDim::Finite(d) => write!(f, "{d}"),
            KDim::Infinite => write!(f, "infinite"),
        }
    }
}

/// `dim_k coker(A: k[x]^cols → k[x]^rows)`.
pub fn coker_kdim(a: &PolyMatrix) -> Result<KDim, LinalgError> {
    coker_kdim_guarded(a, DegreeGuard::default())
}

pub fn coker_kdim_guarded(a: &PolyMatrix, guard: DegreeGuard) -> Result<KDim, LinalgError> {
    let snf = smith_normal_form_guarded(a, guard)?;
    Ok(kdim_from_invariants(a.rows(), &snf.invariants))
}

pub(crate) fn kdim_from_invariants(rows: usize, invariants: &[Poly]) -> KDim {
    if invariants.len() < rows {
        KDim::Infinite
    } else {
        KDim::Finite(invariants.iter().map(Poly::degree_or_zero).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn m(rows: &[&[&[i64]]]) -> PolyMatrix {
        PolyMatrix::from_i64s(Q, rows)
    }

    fn assert_unimodular(u: &PolyMatrix) {
        let det = u.determinant().unwrap();
        assert!(det.is_unit(), "det = {det}");
    }

    #[test]
    fn hnf_single_entry() {
        let hnf = hermite_normal_form(&m(&[&[&[0, 1]]])).unwrap();
        assert_eq!(hnf.h, m(&[&[&[0, 1]]]));
        assert!(hnf.u.is_identity());
    }

    #[test]
    fn hnf_one_elimination_step() {
        let a = m(&[&[&[0, 1], &[0, 0, 1]]]);
        let hnf = hermite_normal_form(&a).unwrap();
        assert_eq!(hnf.h, m(&[&[&[0, 1], &[]]]));
        assert_eq!(hnf.u, m(&[&[&[1], &[0, -1]], &[&[], &[1]]]));
    }

    #[test]
    fn hnf_unitriangular_reduces_to_identity() {
        let a = m(&[&[&[1], &[0, 1]], &[&[], &[1]]]);
        let hnf = hermite_normal_form(&a).unwrap();
        assert!(hnf.h.is_identity());
        assert_eq!(a.mul(&hnf.u).unwrap(), hnf.h);
        assert_unimodular(&hnf.u);
        assert!(hnf.u.mul(&hnf.u_inv).unwrap().is_identity());
    }

    #[test]
    fn solve_examples() {
        let x = m(&[&[&[0, 1]]]);
        assert_eq!(solve_right(&x, &m(&[&[&[0, 0, 1]]])).unwrap(), Some(x.clone()));
        assert_eq!(solve_right(&x, &m(&[&[&[1]]])).unwrap(), None);
        let a = m(&[&[&[1], &[]], &[&[], &[0, 1]]]);
        let b = m(&[&[&[1]], &[&[0, 0, 0, 1]]]);
        assert_eq!(solve_right(&a, &b).unwrap(), Some(m(&[&[&[1]], &[&[0, 0, 1]]])));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[&[0, 1], &[-1]]])).unwrap();
        assert_eq!(k, m(&[&[&[1]], &[&[0, 1]]]));
        assert_eq!(kernel_basis(&PolyMatrix::identity(Q, 2)).unwrap().cols(), 0);
        assert_eq!(kernel_basis(&m(&[&[&[]]])).unwrap(), m(&[&[&[1]]]));
    }

    #[test]
    fn smith_examples() {
        let snf = smith_normal_form(&m(&[&[&[0, 1], &[]], &[&[], &[0, 0, 1]]])).unwrap();
        assert_eq!(snf.invariants, vec![Poly::from_i64s(Q, &[0, 1]), Poly::from_i64s(Q, &[0, 0, 1])]);

        let snf = smith_normal_form(&m(&[&[&[0, 1], &[]], &[&[], &[1]]])).unwrap();
        assert_eq!(snf.invariants, vec![Poly::one(Q), Poly::from_i64s(Q, &[0, 1])]);

        let a = m(&[&[&[0, 0, 1], &[0, 1]], &[&[0, 1], &[1]]]);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.invariants, vec![Poly::one(Q)]);
        assert!(snf.diagonal.get(1, 1).is_zero());
        assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.diagonal);
        assert_unimodular(&snf.u);
        assert_unimodular(&snf.v);
    }

    #[test]
    fn smith_fixes_divisibility() {
        // diag(x, x+1) has invariants (1, x(x+1)).
        let a = m(&[&[&[0, 1], &[]], &[&[], &[1, 1]]]);
        let snf = smith_normal_form(&a).unwrap();
        assert_eq!(snf.invariants, vec![Poly::one(Q), Poly::from_i64s(Q, &[0, 1, 1])]);
        assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.diagonal);
    }

    #[test]
    fn coker_examples() {
        assert_eq!(coker_kdim(&m(&[&[&[0, 0, 1]]])).unwrap(), KDim::Finite(2));
        assert_eq!(coker_kdim(&PolyMatrix::identity(Q, 3)).unwrap(), KDim::Finite(0));
        assert_eq!(coker_kdim(&PolyMatrix::zeros(Q, 1, 0)).unwrap(), KDim::Infinite);
    }

    #[test]
    fn guard_trips() {
        let a = m(&[&[&[0, 0, 0, 1], &[1, 1]]]);
        let err = hermite_normal_form_guarded(&a, DegreeGuard::new(2)).unwrap_err();
        assert!(matches!(err, LinalgError::DegreeLimit { limit: 2, .. }));
    }
}
