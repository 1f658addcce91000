//! Building n-step factorizations of x^k, checking them, and rotating slots.

use mfn::mf::{direct_sum, twist, MatrixFactorization, Potential};
use mfn::{FieldSpec, Poly, PolyMatrix};

fn scalar(q: FieldSpec, d: usize) -> PolyMatrix {
    PolyMatrix::scalar(&Poly::x_pow(q, d), 1)
}

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    let pot = Potential::monomial(q, 2, 3)?;
    let m = MatrixFactorization::new(pot.clone(), vec![scalar(q, 1), scalar(q, 1), scalar(q, 0)])?;
    println!("M = {m}");
    for k in 0..=3 {
        println!("twist(M, {k}) = {}", twist(&m, k));
    }

    let bad = MatrixFactorization::from_maps(pot.clone(), vec![scalar(q, 1), scalar(q, 0), scalar(q, 0)])?;
    match bad.verify() {
        Ok(()) => println!("unexpectedly valid"),
        Err(v) => println!("(x, 1, 1) is not a factorization of x^2: {v}"),
    }

    let sum = direct_sum(&m, &twist(&m, 1))?;
    println!("M ⊕ twist(M) has ranks {:?} and verifies: {}", sum.sum.ranks(), sum.sum.verify().is_ok());

    let f7 = FieldSpec::prime(7)?;
    let over_f7 = MatrixFactorization::new(
        Potential::monomial(f7, 3, 2)?,
        vec![scalar(f7, 1), scalar(f7, 2)],
    )?;
    println!("over F_7: {over_f7}");
    Ok(())
}
