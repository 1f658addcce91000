//! Rank-one monomial factorizations of `x^k`: enumeration, twist orbits and
//! tables of stable Hom dimensions.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::PolyMatrix;
use crate::mf::{MatrixFactorization, Potential};
use crate::poly::Poly;
use crate::stable::{is_stably_zero, stable_hom_dim};

pub const DEFAULT_BUDGET: usize = 200;

/// `δ_i = [x^{a_i}]` with `Σ a_i = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MonomialFactorization {
    exponents: Vec<usize>,
}

impl MonomialFactorization {
    pub fn new(exponents: Vec<usize>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::Invalid(format!("need at least 2 exponents, got {}", exponents.len())));
        }
        if exponents.iter().sum::<usize>() == 0 {
            return Err(Error::Invalid("exponents sum to 0".into()));
        }
        Ok(MonomialFactorization { exponents })
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn k(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn potential(&self, field: FieldSpec) -> Result<Potential> {
        Potential::monomial(field, self.k(), self.n())
    }

    pub fn to_factorization(&self, field: FieldSpec) -> Result<MatrixFactorization> {
        let maps = self.exponents.iter().map(|&a| PolyMatrix::scalar(&Poly::x_pow(field, a), 1)).collect();
        MatrixFactorization::new(self.potential(field)?, maps)
    }

    /// Same convention as [`crate::mf::twist`]: new `δ_i` is old `δ_{i-1}`.
    pub fn rotate(&self, by: usize) -> Self {
        let n = self.n();
        let exponents = (0..n).map(|i| self.exponents[(i + n - by % n) % n]).collect();
        MonomialFactorization { exponents }
    }
}

/// All compositions of `k` into `n` parts, in descending lexicographic order.
pub fn enumerate_monomial(n: usize, k: usize) -> Result<Vec<MonomialFactorization>> {
    if n < 2 || k < 1 {
        return Err(Error::Invalid(format!("need n >= 2 and k >= 1, got n = {n}, k = {k}")));
    }
    fn go(left: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<MonomialFactorization>) {
        if parts == 1 {
            prefix.push(left);
            out.push(MonomialFactorization { exponents: prefix.clone() });
            prefix.pop();
            return;
        }
        for a in (0..=left).rev() {
            prefix.push(a);
            go(left - a, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(k, n, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// Trivial iff all of `W` sits on one map, i.e. the object is some `P^i_1`.
pub fn classify_trivial(m: &MonomialFactorization) -> bool {
    let k = m.k();
    m.exponents.contains(&k)
}

/// Partition of `list` (by index) into orbits under rotation, in order of first appearance.
pub fn twist_orbits(list: &[MonomialFactorization]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; list.len()];
    let mut orbits = Vec::new();
    for i in 0..list.len() {
        if seen[i] {
            continue;
        }
        let n = list[i].n();
        let members: Vec<MonomialFactorization> = (0..n).map(|s| list[i].rotate(s)).collect();
        let orbit: Vec<usize> = (i..list.len()).filter(|&j| members.contains(&list[j])).collect();
        for &j in &orbit {
            seen[j] = true;
        }
        orbits.push(orbit);
    }
    orbits
}

/// `C(a, b)`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    (0..b.min(a - b)).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub objects: usize,
    pub trivial: usize,
    pub nontrivial: usize,
    pub orbits: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub k: usize,
    pub objects: Vec<MonomialFactorization>,
    pub trivial: Vec<bool>,
    pub stably_zero: Vec<bool>,
    pub orbits: Vec<Vec<usize>>,
    /// Indices into `objects` of the rows/columns of `table`.
    pub nontrivial: Vec<usize>,
    /// `table[a][b] = dim_k` of stable Hom from `nontrivial[a]` to `nontrivial[b]`.
    pub table: Vec<Vec<usize>>,
    pub summary: CensusSummary,
}

pub fn hom_table(n: usize, k: usize) -> Result<CensusReport> {
    hom_table_with(FieldSpec::Rationals, n, k, DEFAULT_BUDGET)
}

/// Entries are computed in parallel and assembled in a fixed order.
pub fn hom_table_with(field: FieldSpec, n: usize, k: usize, budget: usize) -> Result<CensusReport> {
    let objects = enumerate_monomial(n, k)?;
    let cost = n * objects.len();
    if cost > budget {
        return Err(Error::Budget { objects: cost, limit: budget });
    }
    let mfs = objects.iter().map(|o| o.to_factorization(field)).collect::<Result<Vec<_>>>()?;
    let trivial: Vec<bool> = objects.iter().map(classify_trivial).collect();
    let stably_zero = mfs.par_iter().map(is_stably_zero).collect::<Result<Vec<_>>>()?;
    let nontrivial: Vec<usize> = (0..objects.len()).filter(|&i| !trivial[i]).collect();
    let pairs: Vec<(usize, usize)> = nontrivial.iter().flat_map(|&a| nontrivial.iter().map(move |&b| (a, b))).collect();
    let dims = pairs
        .par_iter()
        .map(|&(a, b)| {
            let r = stable_hom_dim(&mfs[a], &mfs[b])?;
            r.dim.finite().ok_or_else(|| Error::Invalid("infinite stable Hom".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let table: Vec<Vec<usize>> = dims.chunks(nontrivial.len().max(1)).map(<[usize]>::to_vec).collect();
    let orbits = twist_orbits(&objects);
    let summary = CensusSummary {
        objects: objects.len(),
        trivial: trivial.iter().filter(|&&t| t).count(),
        nontrivial: nontrivial.len(),
        orbits: orbits.len(),
    };
    Ok(CensusReport { n, k, objects, trivial, stably_zero, orbits, nontrivial, table, summary })
}

impl CensusReport {
    /// Plain-text rendering of the nontrivial table.
    pub fn render_text(&self) -> String {
        let label = |i: usize| {
            let e: Vec<String> = self.objects[i].exponents().iter().map(ToString::to_string).collect();
            format!("({})", e.join(","))
        };
        let labels: Vec<String> = self.nontrivial.iter().map(|&i| label(i)).collect();
        let w = labels.iter().map(String::len).max().unwrap_or(1);
        let mut s = String::new();
        let _ = writeln!(
            s,
            "n = {}, k = {}: {} objects, {} trivial, {} nontrivial, {} twist orbits",
            self.n, self.k, self.summary.objects, self.summary.trivial, self.summary.nontrivial, self.summary.orbits
        );
        let _ = write!(s, "{:w$}", "");
        for l in &labels {
            let _ = write!(s, " {l:>w$}");
        }
        s.push('\n');
        for (l, row) in labels.iter().zip(&self.table) {
            let _ = write!(s, "{l:>w$}");
            for d in row {
                let _ = write!(s, " {d:>w$}");
            }
            s.push('\n');
        }
        s
    }
}
