use std::sync::Arc;

use super::{MatrixFactorization, MfMorphism};

/// Cyclic rotation by `k` slots: new slot `i` holds old slot `i-k`, and new
/// `δ_i` is old `δ_{i-k}`. Twisting by `n` is the identity.
pub fn twist(m: &MatrixFactorization, k: i64) -> MatrixFactorization {
    let n = m.n();
    let s = m.potential().slot(k);
    let maps = (0..n).map(|i| m.map((i + n - s) % n).clone()).collect();
    MatrixFactorization::from_parts_unchecked(m.potential().clone(), maps)
}

pub fn twist_morphism(f: &MfMorphism, k: i64) -> MfMorphism {
    let n = f.source().n();
    let s = f.source().potential().slot(k);
    let comps = (0..n).map(|i| f.comp((i + n - s) % n).clone()).collect();
    MfMorphism::new_unchecked(Arc::new(twist(f.source(), k)), Arc::new(twist(f.target(), k)), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::mf::tests::mono;
    use crate::mf::{trivial_p, Potential};

    #[test]
    fn twist_moves_trivial_right() {
        let pot = Potential::monomial(FieldSpec::Rationals, 2, 3).unwrap();
        for i in 0..3 {
            let p = trivial_p(&pot, i, 1).unwrap();
            assert_eq!(twist(&p, 1), trivial_p(&pot, (i + 1) % 3, 1).unwrap());
        }
    }

    #[test]
    fn twist_by_n_is_identity() {
        let m = mono(3, &[1, 2, 0]);
        assert_eq!(twist(&m, 3), m);
        assert_eq!(twist(&twist(&m, 1), -1), m);
    }

    #[test]
    fn rotation() {
        assert_eq!(twist(&mono(2, &[1, 1, 0]), 1), mono(2, &[0, 1, 1]));
    }
}
