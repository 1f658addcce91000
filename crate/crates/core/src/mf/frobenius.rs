//! Trivial factorizations and the canonical projective covers / injective hulls
//! of the graded-split exact structure.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;

use super::{direct_sum_many, MatrixFactorization, MfMorphism, Potential};

/// `P^i_r`: rank `r` in every slot, identities everywhere except the map
/// entering slot `i` (that is `δ_{i-1}`), which is `W·I`.
pub fn trivial_p(pot: &Potential, i: usize, r: usize) -> Result<MatrixFactorization> {
    let n = pot.n();
    if i >= n {
        return Err(Error::SlotOutOfRange { index: i as i64, n });
    }
    let k = pot.field();
    let w_slot = (i + n - 1) % n;
    let maps = (0..n)
        .map(|j| {
            if j == w_slot {
                PolyMatrix::scalar(pot.w(), r)
            } else {
                PolyMatrix::identity(k, r)
            }
        })
        .collect();
    Ok(MatrixFactorization::from_parts_unchecked(pot.clone(), maps))
}

/// Counit `P^i_{M_i} → M`; slot `j` carries the composite `d^{(j-i) mod n}` out of slot `i`.
pub fn counit(m: &MatrixFactorization, i: usize) -> Result<MfMorphism> {
    let n = m.n();
    if i >= n {
        return Err(Error::SlotOutOfRange { index: i as i64, n });
    }
    let source = trivial_p(m.potential(), i, m.rank(i))?;
    let comps = (0..n).map(|j| m.path(i, (j + n - i) % n)).collect();
    Ok(MfMorphism::new_unchecked(Arc::new(source), Arc::new(m.clone()), comps))
}

/// Unit `M → P^{i+1}_{M_i}`; slot `j` carries `d^{(i-j) mod n}` into slot `i`.
///
/// The target is the trivial factorization whose `W` sits on the map leaving
/// slot `i`, which is what makes the components intertwine.
pub fn unit(m: &MatrixFactorization, i: usize) -> Result<MfMorphism> {
    let n = m.n();
    if i >= n {
        return Err(Error::SlotOutOfRange { index: i as i64, n });
    }
    let target = trivial_p(m.potential(), (i + 1) % n, m.rank(i))?;
    let comps = (0..n).map(|j| m.path(j, (i + n - j) % n)).collect();
    Ok(MfMorphism::new_unchecked(Arc::new(m.clone()), Arc::new(target), comps))
}

/// `q: ⊕_i P^i_{M_i} → M` with a slotwise (non-intertwining) section.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: Arc<MatrixFactorization>,
    pub q: MfMorphism,
    /// `q_j · section_j = I` for every slot.
    pub section: Vec<PolyMatrix>,
}

/// `u: M → ⊕_i P^{i+1}_{M_i}` with a slotwise (non-intertwining) retraction.
#[derive(Clone, Debug)]
pub struct InjectiveHull {
    pub hull: Arc<MatrixFactorization>,
    pub u: MfMorphism,
    /// `retraction_j · u_j = I` for every slot.
    pub retraction: Vec<PolyMatrix>,
}

/// Sum of the counits, summands in ascending slot order.
pub fn projective_cover(m: &MatrixFactorization) -> Result<ProjectiveCover> {
    let n = m.n();
    let k = m.field();
    let counits = (0..n).map(|i| counit(m, i)).collect::<Result<Vec<_>>>()?;
    let parts: Vec<MatrixFactorization> = counits.iter().map(|c| (**c.source()).clone()).collect();
    let cover = direct_sum_many(&parts)?.sum;
    let mut q = Vec::with_capacity(n);
    let mut section = Vec::with_capacity(n);
    for j in 0..n {
        let blocks: Vec<&PolyMatrix> = counits.iter().map(|c| c.comp(j)).collect();
        q.push(PolyMatrix::hstack(k, m.rank(j), &blocks)?);
        // Slot j of M goes identically onto the j-th summand.
        let mut s = PolyMatrix::zeros(k, cover.rank(j), m.rank(j));
        let offset: usize = (0..j).map(|i| m.rank(i)).sum();
        s.paste(offset, 0, &PolyMatrix::identity(k, m.rank(j)));
        section.push(s);
    }
    let q = MfMorphism::new_unchecked(cover.clone(), Arc::new(m.clone()), q);
    Ok(ProjectiveCover { cover, q, section })
}

/// Product of the units, summands in ascending slot order.
pub fn injective_hull(m: &MatrixFactorization) -> Result<InjectiveHull> {
    let n = m.n();
    let k = m.field();
    let units = (0..n).map(|i| unit(m, i)).collect::<Result<Vec<_>>>()?;
    let parts: Vec<MatrixFactorization> = units.iter().map(|u| (**u.target()).clone()).collect();
    let hull = direct_sum_many(&parts)?.sum;
    let mut u = Vec::with_capacity(n);
    let mut retraction = Vec::with_capacity(n);
    for j in 0..n {
        let blocks: Vec<&PolyMatrix> = units.iter().map(|c| c.comp(j)).collect();
        u.push(PolyMatrix::vstack(k, m.rank(j), &blocks)?);
        let mut r = PolyMatrix::zeros(k, m.rank(j), hull.rank(j));
        let offset: usize = (0..j).map(|i| m.rank(i)).sum();
        r.paste(0, offset, &PolyMatrix::identity(k, m.rank(j)));
        retraction.push(r);
    }
    let u = MfMorphism::new_unchecked(Arc::new(m.clone()), hull.clone(), u);
    Ok(InjectiveHull { hull, u, retraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mf::tests::mono;
    use crate::poly::Poly;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn scalar(p: Poly) -> PolyMatrix {
        PolyMatrix::scalar(&p, 1)
    }

    #[test]
    fn trivial_examples() {
        let pot = Potential::monomial(Q, 2, 3).unwrap();
        let p = trivial_p(&pot, 2, 1).unwrap();
        let one = PolyMatrix::identity(Q, 1);
        assert_eq!(p.maps(), &[one.clone(), scalar(Poly::x_pow(Q, 2)), one]);

        let pot2 = Potential::monomial(Q, 2, 2).unwrap();
        let p = trivial_p(&pot2, 1, 2).unwrap();
        assert_eq!(p.maps(), &[PolyMatrix::scalar(pot2.w(), 2), PolyMatrix::identity(Q, 2)]);

        let z = trivial_p(&pot, 0, 0).unwrap();
        assert!(z.verify().is_ok() && z.is_zero_object());
        assert!(matches!(trivial_p(&pot, 3, 1), Err(Error::SlotOutOfRange { .. })));
    }

    #[test]
    fn counit_examples() {
        let c = counit(&mono(2, &[1, 1]), 0).unwrap();
        assert_eq!(c.comps(), &[scalar(Poly::one(Q)), scalar(Poly::x(Q))]);
        // Slot 2 is δ_1·δ_0 = x·x.
        let c = counit(&mono(2, &[1, 1, 0]), 0).unwrap();
        assert_eq!(c.comps(), &[scalar(Poly::one(Q)), scalar(Poly::x(Q)), scalar(Poly::x_pow(Q, 2))]);
        assert!(c.failing_square().is_none());
    }

    #[test]
    fn counit_of_trivial_has_identity_components() {
        let pot = Potential::monomial(Q, 3, 3).unwrap();
        let p = trivial_p(&pot, 1, 2).unwrap();
        let c = counit(&p, 1).unwrap();
        assert!(c.comps().iter().all(PolyMatrix::is_identity));
    }

    #[test]
    fn unit_examples() {
        let u = unit(&mono(2, &[1, 1]), 1).unwrap();
        assert_eq!(u.comps(), &[scalar(Poly::x(Q)), scalar(Poly::one(Q))]);
        assert_eq!(**u.target(), trivial_p(u.source().potential(), 0, 1).unwrap());
        let u = unit(&mono(2, &[1, 1, 0]), 1).unwrap();
        assert!(u.failing_square().is_none());
        assert!(u.comp(1).is_identity());
        let zero = MatrixFactorization::zero(Potential::monomial(Q, 2, 3).unwrap());
        assert!(unit(&zero, 0).unwrap().is_zero());
    }

    #[test]
    fn cover_of_x_x() {
        let m = mono(2, &[1, 1]);
        let pc = projective_cover(&m).unwrap();
        assert_eq!(pc.cover.ranks(), &[2, 2]);
        let x = Poly::x(Q);
        let one = Poly::one(Q);
        assert_eq!(pc.q.comp(0), &PolyMatrix::from_rows(Q, vec![vec![one.clone(), x.clone()]]).unwrap());
        assert_eq!(pc.q.comp(1), &PolyMatrix::from_rows(Q, vec![vec![x, one]]).unwrap());
        for j in 0..2 {
            assert!(pc.q.comp(j).mul(&pc.section[j]).unwrap().is_identity());
        }
    }

    #[test]
    fn hull_of_x_x() {
        let m = mono(2, &[1, 1]);
        let ih = injective_hull(&m).unwrap();
        assert_eq!(ih.hull.ranks(), &[2, 2]);
        for j in 0..2 {
            assert!(ih.retraction[j].mul(ih.u.comp(j)).unwrap().is_identity());
        }
    }

    #[test]
    fn cover_of_zero() {
        let zero = MatrixFactorization::zero(Potential::monomial(Q, 2, 2).unwrap());
        assert!(projective_cover(&zero).unwrap().cover.is_zero_object());
        assert!(injective_hull(&zero).unwrap().hull.is_zero_object());
    }
}
