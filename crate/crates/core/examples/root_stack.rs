//! The model root stack: graded k[u]-modules, the four-term sequence for
//! multiplication by u, the Ext table, and factorizations of W = t as free
//! graded modules.

use mfn::mf::{trivial_p, twist, Potential};
use mfn::root::{
    check_four_term, cokernel, cone_splitting_check, ext1_cyclic, kernel, mult_by_u, phi,
};
use mfn::{FieldSpec, Poly};

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    for n in 2..=5 {
        let f = mult_by_u(q, n, 0)?;
        let (ker, _) = kernel(&f)?;
        let (coker, _) = cokernel(&f)?;
        println!(
            "n = {n}: four-term exact {:?}; ker dims {:?}, coker dims {:?}; cone splits {}",
            check_four_term(n)?.is_ok(),
            ker.dims(),
            coker.dims(),
            cone_splitting_check(n)?.holds()
        );
    }

    let n = 4;
    println!("Ext^1(k_a, k_b) for n = {n}:");
    for a in 0..n {
        let row: Vec<usize> = (0..n).map(|b| ext1_cyclic(n, a, b)).collect::<mfn::Result<_>>()?;
        println!("  a = {a}: {row:?}");
    }

    let pot = Potential::new(Poly::x(q), 3)?;
    let p = trivial_p(&pot, 2, 1)?;
    let sheaf = phi(&p)?;
    println!("phi(P^2_1) has generators in weights {:?}", sheaf.generator_weights()?);
    println!("phi(twist) = shifted phi: {}", phi(&twist(&p, 1))? == sheaf.shift_grading(1));
    println!("roundtrip exact: {}", sheaf.to_factorization()? == p);
    Ok(())
}
