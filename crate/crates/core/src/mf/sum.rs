use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;

use super::{MatrixFactorization, MfMorphism};

/// A direct sum with its structure maps, summands in the given order.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Arc<MatrixFactorization>,
    pub inclusions: Vec<MfMorphism>,
    pub projections: Vec<MfMorphism>,
}

pub fn direct_sum(m: &MatrixFactorization, n: &MatrixFactorization) -> Result<DirectSum> {
    direct_sum_many(&[m.clone(), n.clone()])
}

/// Block-diagonal sum of several factorizations over one potential.
pub fn direct_sum_many(parts: &[MatrixFactorization]) -> Result<DirectSum> {
    let first = parts.first().ok_or_else(|| Error::Invalid("empty direct sum".into()))?;
    let pot = first.potential().clone();
    if parts.iter().any(|p| p.potential() != &pot) {
        return Err(Error::PotentialMismatch);
    }
    let k = pot.field();
    let n = pot.n();
    let maps = (0..n)
        .map(|j| {
            let blocks: Vec<&PolyMatrix> = parts.iter().map(|p| p.map(j)).collect();
            PolyMatrix::block_diag(k, &blocks)
        })
        .collect();
    let sum = Arc::new(MatrixFactorization::from_parts_unchecked(pot, maps));

    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offsets = vec![0usize; n];
    for part in parts {
        let part = Arc::new(part.clone());
        let mut inc = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for j in 0..n {
            let r = part.rank(j);
            let mut i_j = PolyMatrix::zeros(k, sum.rank(j), r);
            i_j.paste(offsets[j], 0, &PolyMatrix::identity(k, r));
            proj.push(i_j.transpose());
            inc.push(i_j);
            offsets[j] += r;
        }
        inclusions.push(MfMorphism::new_unchecked(part.clone(), sum.clone(), inc));
        projections.push(MfMorphism::new_unchecked(sum.clone(), part, proj));
    }
    Ok(DirectSum { sum, inclusions, projections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mf::morphism::compose;
    use crate::mf::tests::mono;
    use crate::mf::{trivial_p, Potential};
    use crate::poly::Poly;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn sum_with_zero() {
        let m = mono(2, &[1, 1]);
        let zero = MatrixFactorization::zero(m.potential().clone());
        let ds = direct_sum(&m, &zero).unwrap();
        assert_eq!(*ds.sum, m);
    }

    #[test]
    fn trivial_sums_add_ranks() {
        let pot = Potential::monomial(Q, 2, 3).unwrap();
        let ds = direct_sum(&trivial_p(&pot, 0, 1).unwrap(), &trivial_p(&pot, 0, 2).unwrap()).unwrap();
        assert_eq!(*ds.sum, trivial_p(&pot, 0, 3).unwrap());
    }

    #[test]
    fn doubled_rank_one() {
        let m = mono(2, &[1, 1]);
        let ds = direct_sum(&m, &m).unwrap();
        let x2 = PolyMatrix::scalar(&Poly::x(Q), 2);
        assert_eq!(ds.sum.maps(), &[x2.clone(), x2]);
        for (p, i) in ds.projections.iter().zip(&ds.inclusions) {
            assert_eq!(compose(p, i).unwrap(), MfMorphism::identity(i.source().clone()));
        }
    }

    #[test]
    fn mismatched_potentials() {
        let a = mono(2, &[1, 1]);
        let b = mono(3, &[1, 2]);
        assert!(matches!(direct_sum(&a, &b), Err(Error::PotentialMismatch)));
    }
}
