//! Hermite and Smith forms over k[x], kernels, and cokernel dimensions.

use mfn::{coker_kdim, hermite_normal_form, kernel_basis, smith_normal_form, solve_right, FieldSpec, PolyMatrix};

fn main() -> mfn::Result<()> {
    let q = FieldSpec::Rationals;
    // [[x^2, x], [0, x^3 - x]]
    let a = PolyMatrix::from_i64s(q, &[&[&[0, 0, 1], &[0, 1]], &[&[], &[0, -1, 0, 1]]]);
    println!("A = {a}");

    let hnf = hermite_normal_form(&a)?;
    println!("Hermite form H = {}", hnf.h);
    println!("A·U = H with U = {}", hnf.u);

    let snf = smith_normal_form(&a)?;
    let inv: Vec<String> = snf.invariants.iter().map(ToString::to_string).collect();
    println!("invariant factors: {}", inv.join(", "));
    println!("dim_k coker(A) = {}", coker_kdim(&a)?);

    let b = PolyMatrix::from_i64s(q, &[&[&[0, 0, 1]], &[&[]]]);
    match solve_right(&a, &b)? {
        Some(x) => println!("A·X = b solved by X = {x}"),
        None => println!("A·X = b has no solution over k[x]"),
    }

    let row = PolyMatrix::from_i64s(q, &[&[&[0, 1], &[1], &[0, 0, 1]]]);
    println!("kernel basis of {row}: {}", kernel_basis(&row)?);
    Ok(())
}
