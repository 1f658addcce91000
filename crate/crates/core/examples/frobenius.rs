//! Trivial factorizations, the counit and unit, and the canonical projective
//! cover and injective hull with their slotwise splittings.

use mfn::mf::{counit, injective_hull, projective_cover, trivial_p, unit, MatrixFactorization, Potential};
use mfn::{FieldSpec, Poly, PolyMatrix};

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    let pot = Potential::monomial(q, 2, 3)?;
    for i in 0..3 {
        println!("P^{i}_1 = {}", trivial_p(&pot, i, 1)?);
    }

    let x = PolyMatrix::scalar(&Poly::x(q), 1);
    let m = MatrixFactorization::new(pot, vec![x.clone(), x, PolyMatrix::identity(q, 1)])?;
    let c = counit(&m, 0)?;
    let u = unit(&m, 1)?;
    println!("counit into slot 0 components: {:?}", c.comps().iter().map(ToString::to_string).collect::<Vec<_>>());
    println!("unit out of slot 1 lands in {}", u.target());

    let pc = projective_cover(&m)?;
    let ih = injective_hull(&m)?;
    println!("P(M) ranks {:?}, I(M) ranks {:?}", pc.cover.ranks(), ih.hull.ranks());
    for j in 0..m.n() {
        let qs = pc.q.comp(j).mul(&pc.section[j])?;
        let ru = ih.retraction[j].mul(ih.u.comp(j))?;
        println!("slot {j}: q·s = I {}, r·u = I {}", qs.is_identity(), ru.is_identity());
    }
    Ok(())
}
