use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;

use super::MatrixFactorization;

/// Slotwise matrices `f_j: M_j → N_j` with `f_{j+1}·δ_j = δ'_j·f_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MfMorphism {
    source: Arc<MatrixFactorization>,
    target: Arc<MatrixFactorization>,
    comps: Vec<PolyMatrix>,
}

impl MfMorphism {
    /// Checks shapes and every intertwining square.
    pub fn new(
        source: impl Into<Arc<MatrixFactorization>>,
        target: impl Into<Arc<MatrixFactorization>>,
        comps: Vec<PolyMatrix>,
    ) -> Result<Self> {
        let f = Self::from_parts(source.into(), target.into(), comps)?;
        if let Some(slot) = f.failing_square() {
            return Err(Error::NotMorphism { slot });
        }
        Ok(f)
    }

    fn from_parts(source: Arc<MatrixFactorization>, target: Arc<MatrixFactorization>, comps: Vec<PolyMatrix>) -> Result<Self> {
        if source.potential() != target.potential() {
            return Err(Error::PotentialMismatch);
        }
        let n = source.n();
        if comps.len() != n {
            return Err(Error::Malformed(format!("expected {n} components, got {}", comps.len())));
        }
        for (j, c) in comps.iter().enumerate() {
            if c.shape() != (target.rank(j), source.rank(j)) {
                return Err(Error::Malformed(format!(
                    "component {j} has shape {:?}, expected {:?}",
                    c.shape(),
                    (target.rank(j), source.rank(j))
                )));
            }
        }
        Ok(MfMorphism { source, target, comps })
    }

    pub(crate) fn new_unchecked(source: Arc<MatrixFactorization>, target: Arc<MatrixFactorization>, comps: Vec<PolyMatrix>) -> Self {
        let f = Self::from_parts(source, target, comps).expect("internal morphism has valid shapes");
        debug_assert!(f.failing_square().is_none(), "internal constructor produced a non-morphism");
        f
    }

    /// First slot `j` whose square `f_{j+1}δ_j = δ'_jf_j` fails.
    pub fn failing_square(&self) -> Option<usize> {
        let n = self.source.n();
        (0..n).find(|&j| {
            let lhs = self.comps[(j + 1) % n].mul(self.source.map(j)).unwrap();
            let rhs = self.target.map(j).mul(&self.comps[j]).unwrap();
            lhs != rhs
        })
    }

    pub fn identity(m: impl Into<Arc<MatrixFactorization>>) -> Self {
        let m = m.into();
        let comps = m.ranks().iter().map(|&r| PolyMatrix::identity(m.field(), r)).collect();
        MfMorphism { source: m.clone(), target: m, comps }
    }

    pub fn zero(source: impl Into<Arc<MatrixFactorization>>, target: impl Into<Arc<MatrixFactorization>>) -> Self {
        let (source, target) = (source.into(), target.into());
        let comps = (0..source.n())
            .map(|j| PolyMatrix::zeros(source.field(), target.rank(j), source.rank(j)))
            .collect();
        MfMorphism { source, target, comps }
    }

    pub fn source(&self) -> &Arc<MatrixFactorization> {
        &self.source
    }

    pub fn target(&self) -> &Arc<MatrixFactorization> {
        &self.target
    }

    pub fn comps(&self) -> &[PolyMatrix] {
        &self.comps
    }

    pub fn comp(&self, j: usize) -> &PolyMatrix {
        &self.comps[j % self.comps.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(PolyMatrix::is_zero)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MfMorphism) -> Result<MfMorphism> {
        compose(self, f)
    }

    pub fn add(&self, other: &MfMorphism) -> Result<MfMorphism> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::NotComposable);
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect::<std::result::Result<_, _>>()?;
        Ok(MfMorphism { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn sub(&self, other: &MfMorphism) -> Result<MfMorphism> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MfMorphism {
        self.scale(&Poly::constant(self.source.field(), self.source.field().from_i64(-1)))
    }

    /// Multiplication by a polynomial; `k[x]` is commutative so this stays a morphism.
    pub fn scale(&self, p: &Poly) -> MfMorphism {
        MfMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|c| c.scale(p)).collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.comps.iter().map(PolyMatrix::max_degree).max().unwrap_or(0)
    }
}

/// `g ∘ f`, slotwise products; the intertwining invariant is re-checked.
pub fn compose(g: &MfMorphism, f: &MfMorphism) -> Result<MfMorphism> {
    if f.target != g.source {
        return Err(Error::NotComposable);
    }
    let comps = g.comps.iter().zip(&f.comps).map(|(b, a)| b.mul(a)).collect::<std::result::Result<Vec<_>, _>>()?;
    let h = MfMorphism { source: f.source.clone(), target: g.target.clone(), comps };
    if let Some(slot) = h.failing_square() {
        return Err(Error::NotMorphism { slot });
    }
    Ok(h)
}

impl fmt::Display for MfMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, c) in self.comps.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
