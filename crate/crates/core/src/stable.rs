//! Decision procedures in the stable category: morphisms modulo those that
//! factor through a projective-injective object.
//!
//! Everything reduces to linear algebra over `k[x]`. `Hom(M, N)` is the kernel
//! of the intertwining system, a free module; the null-homotopic maps are the
//! image of `q ∘ −` from `Hom(M, P(N))`, where `q: P(N) → N` is the canonical
//! projective cover. A map factors through some projective-injective iff it
//! factors through `q`, since any such factorization lifts along `q`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::mf::{counit, projective_cover, MatrixFactorization, MfMorphism, ProjectiveCover};
use crate::normal_form::{
    hermite_normal_form_guarded, kdim_from_invariants, kernel_with_inverse_guarded, smith_normal_form_guarded,
    solve_right_guarded, solve_with_hnf, DegreeGuard, KDim,
};
use crate::poly::Poly;

/// Offsets of the slot blocks when `Hom(M, N)` is flattened to a column vector.
/// Slot `j` contributes `N_j × M_j` entries in row-major order.
#[derive(Clone, Debug)]
pub struct HomLayout {
    src: Vec<usize>,
    tgt: Vec<usize>,
    offsets: Vec<usize>,
    len: usize,
}

impl HomLayout {
    pub fn new(m: &MatrixFactorization, n: &MatrixFactorization) -> Self {
        let mut offsets = Vec::with_capacity(m.n());
        let mut len = 0;
        for j in 0..m.n() {
            offsets.push(len);
            len += m.rank(j) * n.rank(j);
        }
        HomLayout { src: m.ranks().to_vec(), tgt: n.ranks().to_vec(), offsets, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, slot: usize, row: usize, col: usize) -> usize {
        self.offsets[slot] + row * self.src[slot] + col
    }

    pub fn flatten(&self, f: &MfMorphism) -> PolyMatrix {
        let k = f.source().field();
        let mut v = PolyMatrix::zeros(k, self.len, 1);
        for (j, c) in f.comps().iter().enumerate() {
            for a in 0..self.tgt[j] {
                for b in 0..self.src[j] {
                    v.set(self.index(j, a, b), 0, c.get(a, b).clone());
                }
            }
        }
        v
    }

    /// Inverse of [`flatten`](Self::flatten) applied to column `col` of `v`.
    pub fn unflatten(&self, v: &PolyMatrix, col: usize) -> Vec<PolyMatrix> {
        let k = v.field();
        (0..self.src.len())
            .map(|j| PolyMatrix::from_fn(k, self.tgt[j], self.src[j], |a, b| v.get(self.index(j, a, b), col).clone()))
            .collect()
    }
}

/// The matrix whose kernel is `Hom(M, N)`: one row per entry of
/// `f_{j+1}·δ_j − δ'_j·f_j`, one column per unknown entry of `f`.
pub fn hom_system(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<(HomLayout, PolyMatrix)> {
    if m.potential() != n.potential() {
        return Err(Error::PotentialMismatch);
    }
    let k = m.field();
    let layout = HomLayout::new(m, n);
    let slots = m.n();
    let eqs: usize = (0..slots).map(|j| n.rank(j + 1) * m.rank(j)).sum();
    let mut sys = PolyMatrix::zeros(k, eqs, layout.len());
    let mut row = 0;
    for j in 0..slots {
        let j1 = (j + 1) % slots;
        let (d, d2) = (m.map(j), n.map(j));
        for a in 0..n.rank(j1) {
            for b in 0..m.rank(j) {
                for c in 0..m.rank(j1) {
                    let col = layout.index(j1, a, c);
                    let v = sys.get(row, col) + d.get(c, b);
                    sys.set(row, col, v);
                }
                for c in 0..n.rank(j) {
                    let col = layout.index(j, c, b);
                    let v = sys.get(row, col) - d2.get(a, c);
                    sys.set(row, col, v);
                }
                row += 1;
            }
        }
    }
    Ok((layout, sys))
}

/// A `k[x]`-basis of `Hom(M, N)`, flattened as columns.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub source: Arc<MatrixFactorization>,
    pub target: Arc<MatrixFactorization>,
    pub layout: HomLayout,
    pub basis: PolyMatrix,
}

impl HomBasis {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn morphism(&self, i: usize) -> MfMorphism {
        MfMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.layout.unflatten(&self.basis, i))
    }

    pub fn morphisms(&self) -> Vec<MfMorphism> {
        (0..self.rank()).map(|i| self.morphism(i)).collect()
    }
}

pub fn hom_basis(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<HomBasis> {
    hom_basis_guarded(m, n, DegreeGuard::default())
}

pub fn hom_basis_guarded(m: &MatrixFactorization, n: &MatrixFactorization, guard: DegreeGuard) -> Result<HomBasis> {
    let (layout, sys) = hom_system(m, n)?;
    let basis = kernel_with_inverse_guarded(&sys, guard)?.basis;
    Ok(HomBasis { source: Arc::new(m.clone()), target: Arc::new(n.clone()), layout, basis })
}

/// Columns `vec(q ∘ g)` for `g` running over a basis of `Hom(M, P(N))`,
/// together with that basis.
struct NullSpan {
    cover: ProjectiveCover,
    into_cover: HomBasis,
    images: PolyMatrix,
}

fn null_span(m: &MatrixFactorization, n: &MatrixFactorization, guard: DegreeGuard) -> Result<NullSpan> {
    let cover = projective_cover(n)?;
    let into_cover = hom_basis_guarded(m, &cover.cover, guard)?;
    let layout = HomLayout::new(m, n);
    let k = m.field();
    let mut images = PolyMatrix::zeros(k, layout.len(), into_cover.rank());
    for i in 0..into_cover.rank() {
        let g = into_cover.morphism(i);
        let qg = cover.q.after(&g)?;
        images.paste(0, i, &layout.flatten(&qg));
    }
    Ok(NullSpan { cover, into_cover, images })
}

/// A factorization `f = q ∘ g` through the canonical cover of the target.
#[derive(Clone, Debug)]
pub struct ProjInjWitness {
    pub g: MfMorphism,
    pub q: MfMorphism,
}

/// Returns `g: M → P(N)` with `q ∘ g = f` if `f` factors through a projective-injective.
pub fn factors_through_projinj(f: &MfMorphism) -> Result<Option<ProjInjWitness>> {
    factors_through_projinj_guarded(f, DegreeGuard::default())
}

pub fn factors_through_projinj_guarded(f: &MfMorphism, guard: DegreeGuard) -> Result<Option<ProjInjWitness>> {
    let (m, n) = (f.source(), f.target());
    let span = null_span(m, n, guard)?;
    let layout = HomLayout::new(m, n);
    let target = layout.flatten(f);
    let Some(coeffs) = solve_right_guarded(&span.images, &target, guard)? else {
        return Ok(None);
    };
    let g_flat = span.into_cover.basis.mul(&coeffs)?;
    let g = MfMorphism::new(m.clone(), span.cover.cover.clone(), span.into_cover.layout.unflatten(&g_flat, 0))?;
    let q = span.cover.q;
    // Re-multiply; a witness that does not reproduce f is a bug, not an answer.
    if q.after(&g)? != *f {
        return Err(Error::Invalid("factorization witness failed re-verification".into()));
    }
    Ok(Some(ProjInjWitness { g, q }))
}

/// `M ≅ 0` in the stable category iff `id_M` factors through a projective-injective.
pub fn is_stably_zero(m: &MatrixFactorization) -> Result<bool> {
    is_stably_zero_guarded(m, DegreeGuard::default())
}

pub fn is_stably_zero_guarded(m: &MatrixFactorization, guard: DegreeGuard) -> Result<bool> {
    Ok(factors_through_projinj_guarded(&MfMorphism::identity(m.clone()), guard)?.is_some())
}

/// A generator of one cyclic summand `k[x]/(d)` of the stable Hom module.
#[derive(Clone, Debug)]
pub struct StableGenerator {
    pub morphism: MfMorphism,
    pub annihilator: Poly,
}

/// Presentation and dimension of `Hom` in the stable category.
#[derive(Clone, Debug)]
pub struct StableHomReport {
    /// Rank of the free module `Hom(M, N)`.
    pub ambient_rank: usize,
    /// Number of generators of the null-homotopic submodule used in the presentation.
    pub null_generators: usize,
    /// Non-unit invariant factors of the quotient, `d₁ | d₂ | …`.
    pub invariant_factors: Vec<Poly>,
    pub dim: KDim,
    pub generators: Vec<StableGenerator>,
}

/// `dim_k` of `Hom(M, N)` modulo maps through projective-injectives.
pub fn stable_hom_dim(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<StableHomReport> {
    stable_hom_dim_guarded(m, n, DegreeGuard::default())
}

pub fn stable_hom_dim_guarded(m: &MatrixFactorization, n: &MatrixFactorization, guard: DegreeGuard) -> Result<StableHomReport> {
    let hom = hom_basis_guarded(m, n, guard)?;
    let span = null_span(m, n, guard)?;
    let k = m.field();
    let h = hom.rank();
    // Coordinates of the null generators in the Hom basis.
    let hnf = hermite_normal_form_guarded(&hom.basis, guard)?;
    let coords = solve_with_hnf(&hnf, &span.images)?
        .ok_or_else(|| Error::Invalid("null-homotopic map outside Hom(M, N)".into()))?;
    let snf = smith_normal_form_guarded(&coords, guard)?;
    let dim = kdim_from_invariants(h, &snf.invariants);
    if dim == KDim::Infinite {
        return Err(Error::Invalid("stable Hom is infinite-dimensional, impossible for W ≠ 0".into()));
    }
    // Summand i of coker is generated by U⁻¹·e_i.
    let u_inv = solve_right_guarded(&snf.u, &crate::matrix::PolyMatrix::identity(k, h), guard)?
        .ok_or_else(|| Error::Invalid("Smith transform is not unimodular".into()))?;
    let mut generators = Vec::new();
    let mut invariant_factors = Vec::new();
    for (i, d) in snf.invariants.iter().enumerate() {
        if d.is_unit() {
            continue;
        }
        invariant_factors.push(d.clone());
        let flat = hom.basis.mul(&u_inv.column(i))?;
        generators.push(StableGenerator {
            morphism: MfMorphism::new_unchecked(hom.source.clone(), hom.target.clone(), hom.layout.unflatten(&flat, 0)),
            annihilator: d.clone(),
        });
    }
    Ok(StableHomReport { ambient_rank: h, null_generators: span.into_cover.rank(), invariant_factors, dim, generators })
}

/// Coordinates `c` in `basis` with `Σ cᵢ·imagesᵢ ≡ target` modulo null maps,
/// returned as a flattened morphism of the basis' Hom space.
fn solve_modulo_null(
    images: &[MfMorphism],
    basis: &HomBasis,
    target: &MfMorphism,
    guard: DegreeGuard,
) -> Result<Option<PolyMatrix>> {
    let (x, y) = (target.source(), target.target());
    let layout = HomLayout::new(x, y);
    let span = null_span(x, y, guard)?;
    let mut a = PolyMatrix::zeros(x.field(), layout.len(), images.len() + span.images.cols());
    for (i, g) in images.iter().enumerate() {
        a.paste(0, i, &layout.flatten(g));
    }
    a.paste(0, images.len(), &span.images);
    let Some(z) = solve_right_guarded(&a, &layout.flatten(target), guard)? else {
        return Ok(None);
    };
    let coeffs = z.submatrix(0..images.len(), 0..1);
    Ok(Some(basis.basis.mul(&coeffs)?))
}

/// A stable inverse `g: N → M` of `f: M → N`: both `f ∘ g − id_N` and
/// `g ∘ f − id_M` factor through projective-injectives.
pub fn stable_inverse(f: &MfMorphism) -> Result<Option<MfMorphism>> {
    stable_inverse_guarded(f, DegreeGuard::default())
}

pub fn stable_inverse_guarded(f: &MfMorphism, guard: DegreeGuard) -> Result<Option<MfMorphism>> {
    let (m, n) = (f.source(), f.target());
    let back = hom_basis_guarded(n, m, guard)?;
    let candidates = back.morphisms();
    let post = candidates.iter().map(|g| f.after(g)).collect::<Result<Vec<_>>>()?;
    let Some(right) = solve_modulo_null(&post, &back, &MfMorphism::identity(n.clone()), guard)? else {
        return Ok(None);
    };
    let pre = candidates.iter().map(|g| g.after(f)).collect::<Result<Vec<_>>>()?;
    // A left inverse must exist too; it then agrees with the right one stably.
    if solve_modulo_null(&pre, &back, &MfMorphism::identity(m.clone()), guard)?.is_none() {
        return Ok(None);
    }
    let g = MfMorphism::new(n.clone(), m.clone(), back.layout.unflatten(&right, 0))?;
    let id_m = MfMorphism::identity(m.clone());
    let id_n = MfMorphism::identity(n.clone());
    for defect in [f.after(&g)?.sub(&id_n)?, g.after(f)?.sub(&id_m)?] {
        if factors_through_projinj_guarded(&defect, guard)?.is_none() {
            return Err(Error::Invalid("stable inverse failed re-verification".into()));
        }
    }
    Ok(Some(g))
}

/// `f` is a stable isomorphism, equivalently its cone is stably zero.
pub fn stably_isomorphic_via(f: &MfMorphism) -> Result<bool> {
    Ok(stable_inverse(f)?.is_some())
}

/// `s: M → P^i_{M_i}` and the counit `c: P^i_{M_i} → M` with `c ∘ s = W·id_M`.
///
/// `s_j = d^e` with `e ≡ i − j (mod n)` taken in `1..=n`, so `s_i = W·I`.
pub fn w_linearity_witness(m: &MatrixFactorization, i: usize) -> Result<(MfMorphism, MfMorphism)> {
    let n = m.n();
    let c = counit(m, i)?;
    let comps = (0..n)
        .map(|j| {
            let e = (i + n - j) % n;
            m.path(j, if e == 0 { n } else { e })
        })
        .collect();
    let s = MfMorphism::new(Arc::new(m.clone()), c.source().clone(), comps)?;
    Ok((s, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mf::{cone, trivial_p, Potential};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn mono(k: usize, exps: &[usize]) -> MatrixFactorization {
        let pot = Potential::monomial(Q, k, exps.len()).unwrap();
        let maps = exps.iter().map(|&a| PolyMatrix::scalar(&Poly::x_pow(Q, a), 1)).collect();
        MatrixFactorization::new(pot, maps).unwrap()
    }

    #[test]
    fn hom_of_rank_one_monomials_is_free_rank_one() {
        let m = mono(2, &[1, 1]);
        let hb = hom_basis(&m, &m).unwrap();
        assert_eq!(hb.rank(), 1);
        assert!(hb.morphism(0).failing_square().is_none());
    }

    #[test]
    fn identity_on_trivial_factors() {
        let pot = Potential::monomial(Q, 2, 3).unwrap();
        let p = trivial_p(&pot, 1, 2).unwrap();
        let w = factors_through_projinj(&MfMorphism::identity(p)).unwrap();
        assert!(w.is_some());
    }

    #[test]
    fn identity_on_x_x_does_not_factor() {
        assert!(factors_through_projinj(&MfMorphism::identity(mono(2, &[1, 1]))).unwrap().is_none());
        assert!(!is_stably_zero(&mono(2, &[1, 1])).unwrap());
    }

    #[test]
    fn w_times_identity_factors() {
        for m in [mono(2, &[1, 1]), mono(2, &[1, 1, 0]), mono(3, &[1, 2, 0, 0])] {
            let w = m.potential().w().clone();
            let f = MfMorphism::identity(m.clone()).scale(&w);
            assert!(factors_through_projinj(&f).unwrap().is_some());
            for i in 0..m.n() {
                let (s, c) = w_linearity_witness(&m, i).unwrap();
                assert_eq!(c.after(&s).unwrap(), f);
            }
        }
    }

    #[test]
    fn stable_end_of_x_x() {
        let r = stable_hom_dim(&mono(2, &[1, 1]), &mono(2, &[1, 1])).unwrap();
        assert_eq!(r.dim, KDim::Finite(1));
        assert_eq!(r.invariant_factors, vec![Poly::x(Q)]);
        assert_eq!(r.generators.len(), 1);
    }

    #[test]
    fn projective_source_has_no_stable_maps() {
        let m = mono(2, &[1, 1, 0]);
        let p = trivial_p(m.potential(), 0, 1).unwrap();
        assert_eq!(stable_hom_dim(&p, &m).unwrap().dim, KDim::Finite(0));
    }

    #[test]
    fn stable_iso_checks() {
        let m = mono(2, &[1, 1]);
        assert!(stably_isomorphic_via(&MfMorphism::identity(m.clone())).unwrap());
        assert!(!stably_isomorphic_via(&MfMorphism::zero(m.clone(), m)).unwrap());
    }

    #[test]
    fn stable_inverse_agrees_with_cone_test() {
        let objects = [mono(3, &[1, 2]), mono(3, &[2, 1]), mono(3, &[3, 0])];
        for m in &objects {
            for n in &objects {
                let hom = hom_basis(m, n).unwrap();
                let mut maps = hom.morphisms();
                maps.push(MfMorphism::zero(m.clone(), n.clone()));
                for f in maps {
                    let via_cone = is_stably_zero(&cone(&f).unwrap().cone).unwrap();
                    assert_eq!(stably_isomorphic_via(&f).unwrap(), via_cone, "{f}");
                }
            }
        }
        let m = mono(2, &[1, 1]);
        let s = crate::mf::shift(&m).unwrap();
        let g = &stable_hom_dim(&s, &m).unwrap().generators[0].morphism;
        let inv = stable_inverse(g).unwrap().unwrap();
        assert_eq!(inv.source().as_ref(), &m);
    }

    #[test]
    fn shift_of_x_x_is_stably_x_x() {
        let m = mono(2, &[1, 1]);
        let s = crate::mf::shift(&m).unwrap();
        let r = stable_hom_dim(&s, &m).unwrap();
        assert_eq!(r.dim, KDim::Finite(1));
        assert!(stably_isomorphic_via(&r.generators[0].morphism).unwrap());
    }

    #[test]
    fn stable_end_of_x_x_1() {
        // Matches the truncated-degree oracle.
        let m = mono(2, &[1, 1, 0]);
        assert_eq!(stable_hom_dim(&m, &m).unwrap().dim, KDim::Finite(1));
    }

    #[test]
    fn potential_mismatch() {
        assert!(matches!(stable_hom_dim(&mono(2, &[1, 1]), &mono(3, &[1, 2])), Err(Error::PotentialMismatch)));
    }
}
