//! Seeded random factorizations and morphisms, as used by the property tests
//! and the `--seed` flag of the command line.

use mfn::mf::{injective_hull, projective_cover};
use mfn::random::{random_factorization, random_morphism, rng, RandomSpec};
use mfn::stable::stable_hom_dim;
use mfn::FieldSpec;

fn main() -> mfn::Result<()> {
    let spec = RandomSpec { field: FieldSpec::prime(101)?, n: 3, k: 3, max_rank: 2, max_degree: 2 };
    let mut r = rng(2024);
    let m = random_factorization(&mut r, &spec)?;
    let n = random_factorization(&mut r, &spec)?;
    println!("M = {m}\nN = {n}");
    let f = random_morphism(&mut r, &m, &n)?;
    println!("random f: M → N intertwines: {}", f.failing_square().is_none());
    println!("P(M) ranks {:?}, I(M) ranks {:?}", projective_cover(&m)?.cover.ranks(), injective_hull(&m)?.hull.ranks());
    println!("dim sHom(M, N) = {}", stable_hom_dim(&m, &n)?.dim);
    Ok(())
}
