//! Stable Hom dimensions via Smith form, cross-checked against the
//! truncated-degree oracle, plus the W-linearity witness.

use mfn::mf::{MatrixFactorization, MfMorphism, Potential};
use mfn::oracle::oracle_stable_hom_dim;
use mfn::stable::{factors_through_projinj, stable_hom_dim, w_linearity_witness};
use mfn::{FieldSpec, Poly, PolyMatrix};

fn mono(k: usize, exps: &[usize]) -> mfn::Result<MatrixFactorization> {
    let q = FieldSpec::Rationals;
    let maps = exps.iter().map(|&a| PolyMatrix::scalar(&Poly::x_pow(q, a), 1)).collect();
    MatrixFactorization::new(Potential::monomial(q, k, exps.len())?, maps)
}

fn main() -> mfn::Result<()> {
    for (k, exps) in [(2, vec![1, 1]), (2, vec![1, 1, 0]), (4, vec![1, 3]), (4, vec![2, 1, 1])] {
        let m = mono(k, &exps)?;
        let r = stable_hom_dim(&m, &m)?;
        let o = oracle_stable_hom_dim(&m, &m, None)?;
        let inv: Vec<String> = r.invariant_factors.iter().map(ToString::to_string).collect();
        println!(
            "sEnd{exps:?} for W = x^{k}: dim {} (invariant factors [{}]); oracle {:?}",
            r.dim,
            inv.join(", "),
            o.stable()
        );
    }

    let m = mono(2, &[1, 1])?;
    println!("id on (x, x) factors through a projective-injective: {}", factors_through_projinj(&MfMorphism::identity(m.clone()))?.is_some());
    let (s, c) = w_linearity_witness(&m, 1)?;
    let w_id = MfMorphism::identity(m.clone()).scale(m.potential().w());
    println!("counit ∘ s = W·id: {}", c.after(&s)? == w_id);
    Ok(())
}
