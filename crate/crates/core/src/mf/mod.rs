//! n-step matrix factorizations of a potential `W ∈ k[x]` with free entries.
//!
//! Slots are indexed `0..n` internally. The map `δ_j` goes from slot `j` to
//! slot `j+1 (mod n)`, so a factorization is the cycle
//! `M_0 → M_1 → … → M_{n-1} → M_0` and every n-fold composite is `W·I`.

mod cone;
mod frobenius;
mod morphism;
mod sum;
mod twist;

use std::fmt;

pub use cone::{cone, graded_split_cokernel, ses_admissible, shift, Cone, Cokernel, SesFailure};
pub use frobenius::{counit, injective_hull, projective_cover, trivial_p, unit, InjectiveHull, ProjectiveCover};
pub use morphism::{compose, MfMorphism};
pub use sum::{direct_sum, direct_sum_many, DirectSum};
pub use twist::{twist, twist_morphism};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

/// The data `(k, W, n)` shared by every object of one category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential {
    w: Poly,
    n: usize,
}

impl Potential {
    /// `W` must be a nonconstant polynomial and `n ≥ 2`.
    pub fn new(w: Poly, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPotential(format!("need n >= 2, got {n}")));
        }
        if w.is_zero() {
            return Err(Error::InvalidPotential("W = 0".into()));
        }
        if w.is_unit() {
            return Err(Error::InvalidPotential(format!("W = {w} is a unit")));
        }
        Ok(Potential { w, n })
    }

    /// `W = x^k`.
    pub fn monomial(field: FieldSpec, k: usize, n: usize) -> Result<Self> {
        Self::new(Poly::x_pow(field, k), n)
    }

    pub fn w(&self) -> &Poly {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.w.field()
    }

    /// Reduces an arbitrary integer slot label modulo `n`.
    pub fn slot(&self, i: i64) -> usize {
        i.rem_euclid(self.n as i64) as usize
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W = {} over {}, n = {}", self.w, self.field(), self.n)
    }
}

/// First failing cyclic product found by [`verify_mf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    /// 0-based start slot.
    pub slot: usize,
}

impl Violation {
    /// 1-based index, as printed in reports.
    pub fn index(&self) -> usize {
        self.slot + 1
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyclic product starting at index {} is not W·I", self.index())
    }
}

/// Free ranks `r_0..r_{n-1}` and maps `δ_0..δ_{n-1}`, `δ_j` of shape `r_{j+1} × r_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixFactorization {
    potential: Potential,
    ranks: Vec<usize>,
    maps: Vec<PolyMatrix>,
}

impl MatrixFactorization {
    /// Validates shapes and all `n` cyclic products.
    pub fn new(potential: Potential, maps: Vec<PolyMatrix>) -> Result<Self> {
        let mf = Self::from_maps(potential, maps)?;
        if let Err(v) = mf.verify() {
            return Err(Error::NotFactorization { index: v.index() });
        }
        Ok(mf)
    }

    /// Shape checks only; the cyclic products are not verified.
    pub fn from_maps(potential: Potential, maps: Vec<PolyMatrix>) -> Result<Self> {
        let n = potential.n();
        if maps.len() != n {
            return Err(Error::Malformed(format!("expected {n} maps, got {}", maps.len())));
        }
        let field = potential.field();
        let ranks: Vec<usize> = maps.iter().map(PolyMatrix::cols).collect();
        for (j, d) in maps.iter().enumerate() {
            if d.field() != field {
                return Err(crate::error::LinalgError::FieldMismatch(field, d.field()).into());
            }
            if d.rows() != ranks[(j + 1) % n] {
                return Err(Error::Malformed(format!(
                    "map {j} has shape {:?}, but slot {} has rank {}",
                    d.shape(),
                    (j + 1) % n,
                    ranks[(j + 1) % n]
                )));
            }
        }
        Ok(MatrixFactorization { potential, ranks, maps })
    }

    pub(crate) fn from_parts_unchecked(potential: Potential, maps: Vec<PolyMatrix>) -> Self {
        let ranks = maps.iter().map(PolyMatrix::cols).collect();
        let mf = MatrixFactorization { potential, ranks, maps };
        debug_assert!(mf.verify().is_ok(), "internal constructor produced a non-factorization");
        mf
    }

    /// Zero object.
    pub fn zero(potential: Potential) -> Self {
        let k = potential.field();
        let maps = vec![PolyMatrix::zeros(k, 0, 0); potential.n()];
        MatrixFactorization { ranks: vec![0; potential.n()], potential, maps }
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn field(&self) -> FieldSpec {
        self.potential.field()
    }

    pub fn n(&self) -> usize {
        self.potential.n()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, slot: usize) -> usize {
        self.ranks[slot % self.n()]
    }

    pub fn maps(&self) -> &[PolyMatrix] {
        &self.maps
    }

    pub fn map(&self, j: usize) -> &PolyMatrix {
        &self.maps[j % self.n()]
    }

    pub fn is_zero_object(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    pub fn max_degree(&self) -> usize {
        self.maps.iter().map(PolyMatrix::max_degree).max().unwrap_or(0)
    }

    /// Composite of `steps` consecutive maps starting at slot `from`,
    /// i.e. `δ_{from+steps-1} ∘ … ∘ δ_from`. Zero steps give the identity.
    pub fn path(&self, from: usize, steps: usize) -> PolyMatrix {
        let n = self.n();
        let mut acc = PolyMatrix::identity(self.field(), self.rank(from));
        for s in 0..steps {
            acc = self.maps[(from + s) % n].mul(&acc).expect("consecutive maps compose");
        }
        acc
    }

    /// Checks every n-fold cyclic product against `W·I`.
    pub fn verify(&self) -> std::result::Result<(), Violation> {
        let n = self.n();
        for start in 0..n {
            let expected = PolyMatrix::scalar(self.potential.w(), self.rank(start));
            if self.path(start, n) != expected {
                return Err(Violation { slot: start });
            }
        }
        Ok(())
    }
}

/// Free-function form of [`MatrixFactorization::verify`].
pub fn verify_mf(m: &MatrixFactorization) -> std::result::Result<(), Violation> {
    m.verify()
}

impl fmt::Display for MatrixFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MF(n={}, ranks={:?}", self.n(), self.ranks)?;
        for d in &self.maps {
            write!(f, ", {d}")?;
        }
        write!(f, ")")
    }
}
