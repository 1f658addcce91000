//! Shift and mapping cones, and the triangle M → N → C(f) → M[1].

use mfn::mf::{cone, shift, MatrixFactorization, MfMorphism, Potential};
use mfn::stable::{factors_through_projinj, is_stably_zero};
use mfn::{FieldSpec, Poly, PolyMatrix};

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    let pot = Potential::monomial(q, 3, 2)?;
    let m = MatrixFactorization::new(
        pot,
        vec![PolyMatrix::scalar(&Poly::x(q), 1), PolyMatrix::scalar(&Poly::x_pow(q, 2), 1)],
    )?;
    let s = shift(&m)?;
    println!("M = {m}\nM[1] = {s}");

    let id = MfMorphism::identity(m.clone());
    let c = cone(&id)?;
    println!("cone(id) = {}; stably zero: {}", c.cone, is_stably_zero(&c.cone)?);

    let x = MfMorphism::identity(m.clone()).scale(&Poly::x(q));
    let c = cone(&x)?;
    println!("cone(x·id) has ranks {:?}", c.cone.ranks());
    let composite = c.to_cone.after(&x)?;
    println!("N → C(f) after f factors through a projective-injective: {}", factors_through_projinj(&composite)?.is_some());
    let next = c.to_shift.after(&c.to_cone)?;
    println!("C(f) → M[1] after N → C(f) is zero: {}", next.is_zero());
    Ok(())
}
