//! Seeded random factorizations and morphisms for property tests and the CLI.
//!
//! Objects are sums of rank-one monomial factorizations of `x^k`, conjugated
//! slotwise by random unimodular matrices so the entries stop being diagonal.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::enumerate_monomial;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::mf::{direct_sum_many, MatrixFactorization, MfMorphism, Potential};
use crate::poly::Poly;
use crate::stable::hom_basis;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of the random objects to draw.
#[derive(Clone, Copy, Debug)]
pub struct RandomSpec {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub max_rank: usize,
    pub max_degree: usize,
}

impl RandomSpec {
    pub fn potential(&self) -> Result<Potential> {
        Potential::monomial(self.field, self.k, self.n)
    }
}

fn small_scalar(rng: &mut impl Rng, field: FieldSpec, nonzero: bool) -> crate::field::Scalar {
    loop {
        let v = field.from_i64(rng.gen_range(-3..=3));
        if !nonzero || !v.is_zero() {
            return v;
        }
    }
}

/// A random unimodular matrix and its inverse, built from transvections
/// `I + c·x^e·E_ab` (`e ∈ {0, 1}`) and a nonzero diagonal.
fn unimodular(rng: &mut impl Rng, field: FieldSpec, r: usize) -> (PolyMatrix, PolyMatrix) {
    let mut g = PolyMatrix::identity(field, r);
    let mut g_inv = PolyMatrix::identity(field, r);
    for i in 0..r {
        let c = small_scalar(rng, field, true);
        let ci = field.inv(&c).expect("nonzero");
        g.set(i, i, Poly::constant(field, c));
        g_inv.set(i, i, Poly::constant(field, ci));
    }
    if r < 2 {
        return (g, g_inv);
    }
    for _ in 0..rng.gen_range(0..=r) {
        let a = rng.gen_range(0..r);
        let b = (a + rng.gen_range(1..r)) % r;
        let t = Poly::monomial(field, small_scalar(rng, field, true), rng.gen_range(0..=1));
        let mut e = PolyMatrix::identity(field, r);
        e.set(a, b, t.clone());
        let mut e_inv = PolyMatrix::identity(field, r);
        e_inv.set(a, b, -&t);
        g = e.mul(&g).expect("square");
        g_inv = g_inv.mul(&e_inv).expect("square");
    }
    (g, g_inv)
}

/// A random factorization of `x^k` with equal slot ranks `1..=max_rank` and
/// entries of degree `≤ max_degree`.
pub fn random_factorization(rng: &mut impl Rng, spec: &RandomSpec) -> Result<MatrixFactorization> {
    let pot = spec.potential()?;
    let pieces: Vec<_> = enumerate_monomial(spec.n, spec.k)?
        .into_iter()
        .filter(|c| c.exponents().iter().all(|&a| a <= spec.max_degree))
        .collect();
    if pieces.is_empty() {
        return Err(Error::Invalid(format!(
            "no rank-one factorization of x^{} has entries of degree <= {}",
            spec.k, spec.max_degree
        )));
    }
    let rank = rng.gen_range(1..=spec.max_rank.max(1));
    let parts = (0..rank)
        .map(|_| pieces.choose(rng).expect("nonempty").to_factorization(spec.field))
        .collect::<Result<Vec<_>>>()?;
    let base = direct_sum_many(&parts)?.sum;
    for _ in 0..32 {
        let gs: Vec<_> = (0..spec.n).map(|_| unimodular(rng, spec.field, rank)).collect();
        let maps = (0..spec.n)
            .map(|j| {
                let (g_next, _) = &gs[(j + 1) % spec.n];
                let (_, g_inv) = &gs[j];
                g_next.mul(base.map(j))?.mul(g_inv)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if maps.iter().all(|d| d.max_degree() <= spec.max_degree) {
            return MatrixFactorization::new(pot, maps);
        }
    }
    Ok((*base).clone())
}

/// A random `k`-linear combination of a `k[x]`-basis of `Hom(M, N)`.
pub fn random_morphism(rng: &mut impl Rng, m: &MatrixFactorization, n: &MatrixFactorization) -> Result<MfMorphism> {
    let basis = hom_basis(m, n)?;
    let mut f = MfMorphism::zero(m.clone(), n.clone());
    for g in basis.morphisms() {
        let c = Poly::constant(m.field(), small_scalar(rng, m.field(), false));
        f = f.add(&g.scale(&c))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_valid_and_reproducible() {
        for (field, n, k) in [(FieldSpec::Rationals, 2, 2), (FieldSpec::Prime(101), 3, 4), (FieldSpec::Rationals, 4, 3)] {
            let spec = RandomSpec { field, n, k, max_rank: 3, max_degree: 2 };
            let a = random_factorization(&mut rng(7), &spec).unwrap();
            let b = random_factorization(&mut rng(7), &spec).unwrap();
            assert_eq!(a, b);
            assert!(a.verify().is_ok());
            assert!(a.max_degree() <= 2);
            let f = random_morphism(&mut rng(1), &a, &a).unwrap();
            assert!(f.failing_square().is_none());
        }
    }

    #[test]
    fn impossible_degree_bound() {
        let spec = RandomSpec { field: FieldSpec::Rationals, n: 2, k: 5, max_rank: 1, max_degree: 2 };
        assert!(random_factorization(&mut rng(0), &spec).is_err());
    }
}
