//! Cokernels of graded-split monomorphisms, the shift functor, mapping cones,
//! and the admissibility test for short exact sequences.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::normal_form::{kernel_basis, kernel_with_inverse, solve_right, Kernel};

use super::{direct_sum, injective_hull, InjectiveHull, MatrixFactorization, MfMorphism};

/// `C = coker(mono)` with the quotient map and a slotwise section of it.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub cokernel: Arc<MatrixFactorization>,
    pub projection: MfMorphism,
    /// Columns of `section[j]` are the chosen complement basis of `im(mono_j)`;
    /// `projection_j · section[j] = I`.
    pub section: Vec<PolyMatrix>,
}

/// Cokernel of a slotwise split mono, given a slotwise retraction.
///
/// In each slot the complement of `im(mono_j)` is `ker(retraction_j)`, whose
/// basis comes from the Hermite form; the differentials are then the
/// ambient ones expressed in those bases.
pub fn graded_split_cokernel(mono: &MfMorphism, retraction: &[PolyMatrix]) -> Result<Cokernel> {
    let complements = retraction
        .iter()
        .map(|r| kernel_with_inverse(r).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    cokernel_with_complements(mono, retraction, &complements)
}

fn cokernel_with_complements(mono: &MfMorphism, retraction: &[PolyMatrix], complements: &[Kernel]) -> Result<Cokernel> {
    let amb = mono.target();
    let n = amb.n();
    let k = amb.field();
    if retraction.len() != n {
        return Err(Error::Malformed(format!("expected {n} retraction matrices, got {}", retraction.len())));
    }
    let mut proj = Vec::with_capacity(n);
    for j in 0..n {
        let ri = retraction[j].mul(mono.comp(j))?;
        if !ri.is_identity() {
            return Err(Error::RetractionFailed { slot: j });
        }
        let c = &complements[j];
        let e = PolyMatrix::identity(k, amb.rank(j)).sub(&mono.comp(j).mul(&retraction[j])?)?;
        proj.push(c.left_inverse.mul(&e)?);
    }
    let maps = (0..n)
        .map(|j| proj[(j + 1) % n].mul(amb.map(j))?.mul(&complements[j].basis))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let c = MatrixFactorization::from_maps(amb.potential().clone(), maps)?;
    if let Err(v) = c.verify() {
        return Err(Error::Invalid(format!("complement construction failed: {v}")));
    }
    let c = Arc::new(c);
    let projection = MfMorphism::new(amb.clone(), c.clone(), proj)?;
    let section = complements.iter().map(|c| c.basis.clone()).collect();
    Ok(Cokernel { cokernel: c, projection, section })
}

/// `M[1]` together with the hull sequence `M ↪ I(M) ↠ M[1]` it came from.
#[derive(Clone, Debug)]
pub struct ShiftData {
    pub hull: InjectiveHull,
    pub complements: Vec<Kernel>,
    pub cokernel: Cokernel,
}

pub(crate) fn shift_data(m: &MatrixFactorization) -> Result<ShiftData> {
    let hull = injective_hull(m)?;
    let complements = hull
        .retraction
        .iter()
        .map(|r| kernel_with_inverse(r).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    let cokernel = cokernel_with_complements(&hull.u, &hull.retraction, &complements)?;
    Ok(ShiftData { hull, complements, cokernel })
}

/// `M[1] = coker(M → ⊕_i P^{i+1}_{M_i})` for the canonical hull.
///
/// Only the stable isomorphism class is meaningful; the representative is
/// the one produced by the canonical hull and Hermite complements.
pub fn shift(m: &MatrixFactorization) -> Result<MatrixFactorization> {
    Ok((*shift_data(m)?.cokernel.cokernel).clone())
}

/// A distinguished triangle `M → N → C → M[1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    /// Slot `j` is `M[1]_j ⊕ N_j`.
    pub cone: Arc<MatrixFactorization>,
    pub shifted_source: Arc<MatrixFactorization>,
    pub to_cone: MfMorphism,
    pub to_shift: MfMorphism,
}

/// Pushout of `M ↪ I(M)` along `f`, i.e. the cokernel of `(u, -f): M → I(M) ⊕ N`.
pub fn cone(f: &MfMorphism) -> Result<Cone> {
    let m = f.source();
    let n_obj = f.target();
    let k = m.field();
    let n = m.n();
    let sd = shift_data(m)?;
    let hull = &sd.hull;
    let ds = direct_sum(&hull.hull, n_obj)?;

    let mut mono = Vec::with_capacity(n);
    let mut retraction = Vec::with_capacity(n);
    let mut complements = Vec::with_capacity(n);
    for j in 0..n {
        mono.push(PolyMatrix::vstack(k, m.rank(j), &[hull.u.comp(j), &f.comp(j).neg()])?);
        let zero = PolyMatrix::zeros(k, m.rank(j), n_obj.rank(j));
        retraction.push(PolyMatrix::hstack(k, m.rank(j), &[&hull.retraction[j], &zero])?);
        let id_n = PolyMatrix::identity(k, n_obj.rank(j));
        complements.push(Kernel {
            basis: PolyMatrix::block_diag(k, &[&sd.complements[j].basis, &id_n]),
            left_inverse: PolyMatrix::block_diag(k, &[&sd.complements[j].left_inverse, &id_n]),
        });
    }
    let mono = MfMorphism::new(m.clone(), ds.sum.clone(), mono)?;
    let coker = cokernel_with_complements(&mono, &retraction, &complements)?;
    let c = coker.cokernel.clone();
    let shifted = sd.cokernel.cokernel.clone();

    let to_cone = coker.projection.after(&ds.inclusions[1])?;
    let to_shift = (0..n)
        .map(|j| {
            let s = shifted.rank(j);
            let mut p = PolyMatrix::zeros(k, s, c.rank(j));
            p.paste(0, 0, &PolyMatrix::identity(k, s));
            p
        })
        .collect();
    let to_shift = MfMorphism::new(c.clone(), shifted.clone(), to_shift)?;
    Ok(Cone { cone: c, shifted_source: shifted, to_cone, to_shift })
}

/// Why a candidate short exact sequence is not admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SesFailure {
    /// `epi ∘ mono ≠ 0`.
    NotComplex { slot: usize },
    /// `mono_j` is not injective.
    NotInjective { slot: usize },
    /// `epi_j` has no section over `k[x]`.
    NoSection { slot: usize },
    /// `ker(epi_j) ⊄ im(mono_j)`.
    NotExact { slot: usize },
}

impl fmt::Display for SesFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SesFailure::NotComplex { slot } => write!(f, "epi∘mono ≠ 0 at slot {slot}"),
            SesFailure::NotInjective { slot } => write!(f, "mono not injective at slot {slot}"),
            SesFailure::NoSection { slot } => write!(f, "epi has no section at slot {slot}"),
            SesFailure::NotExact { slot } => write!(f, "not exact in the middle at slot {slot}"),
        }
    }
}

/// Graded-split admissibility of `0 → M → N → L → 0`.
///
/// The outer `Result` reports misuse (morphisms that do not compose); the
/// inner one the mathematical verdict.
pub fn ses_admissible(mono: &MfMorphism, epi: &MfMorphism) -> Result<std::result::Result<(), SesFailure>> {
    if mono.target() != epi.source() {
        return Err(Error::NotComposable);
    }
    let n = mono.source().n();
    let k = mono.source().field();
    for j in 0..n {
        let (m_j, e_j) = (mono.comp(j), epi.comp(j));
        if !e_j.mul(m_j)?.is_zero() {
            return Ok(Err(SesFailure::NotComplex { slot: j }));
        }
        if kernel_basis(m_j)?.cols() != 0 {
            return Ok(Err(SesFailure::NotInjective { slot: j }));
        }
        if solve_right(e_j, &PolyMatrix::identity(k, e_j.rows()))?.is_none() {
            return Ok(Err(SesFailure::NoSection { slot: j }));
        }
        let ker = kernel_basis(e_j)?;
        if solve_right(m_j, &ker)?.is_none() {
            return Ok(Err(SesFailure::NotExact { slot: j }));
        }
    }
    Ok(Ok(()))
}
