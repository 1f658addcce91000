//! Rank-one monomial factorizations of x^k, their twist orbits, and the
//! table of stable Hom dimensions between the nontrivial ones.

use mfn::census::{binomial, enumerate_monomial, hom_table, twist_orbits};

fn main() -> mfn::Result<()> {
    let objects = enumerate_monomial(3, 2)?;
    let orbits = twist_orbits(&objects);
    for o in &orbits {
        let members: Vec<_> = o.iter().map(|&i| objects[i].exponents().to_vec()).collect();
        println!("orbit {members:?}");
    }

    for (n, k) in [(2, 3), (3, 2), (3, 3)] {
        let r = hom_table(n, k)?;
        print!("{}", r.render_text());
        println!("expected nontrivial count C(k+n-1, n-1) - n = {}\n", binomial(k + n - 1, n - 1) - n);
    }
    Ok(())
}
