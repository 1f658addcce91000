//! Testing a candidate morphism for being a stable isomorphism.

use mfn::mf::{shift, MatrixFactorization, MfMorphism, Potential};
use mfn::stable::{stable_hom_dim, stably_isomorphic_via};
use mfn::{FieldSpec, Poly, PolyMatrix};

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    let x = PolyMatrix::scalar(&Poly::x(q), 1);
    let m = MatrixFactorization::new(Potential::monomial(q, 2, 2)?, vec![x.clone(), x])?;
    let s = shift(&m)?;
    println!("M = {m}\nM[1] = {s}");

    let r = stable_hom_dim(&s, &m)?;
    println!("dim sHom(M[1], M) = {}", r.dim);
    let candidate = &r.generators[0].morphism;
    println!("generator is a stable iso: {}", stably_isomorphic_via(candidate)?);
    println!("zero map is a stable iso: {}", stably_isomorphic_via(&MfMorphism::zero(s, m))?);
    Ok(())
}
