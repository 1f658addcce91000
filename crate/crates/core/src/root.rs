//! The model root stack `[A¹/μ_n]`: sheaves are `Z/n`-graded `k[u]`-modules,
//! `u` of weight one, and `t = uⁿ` is the coordinate downstairs.
//!
//! Torsion sheaves are finite-dimensional: a space per weight plus the
//! action of `u`. Free sheaves come from factorizations of `W = t` via [`phi`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::kmatrix::Matrix;
use crate::matrix::PolyMatrix;
use crate::mf::{MatrixFactorization, Potential};
use crate::normal_form::{coker_kdim, KDim};
use crate::poly::Poly;

/// `dims[w]` and `action[w]: V_w → V_{w+1}` (multiplication by `u`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    field: FieldSpec,
    dims: Vec<usize>,
    action: Vec<Matrix>,
}

impl GradedModule {
    pub fn new(field: FieldSpec, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Self> {
        let n = dims.len();
        if n < 2 {
            return Err(Error::Invalid(format!("need n >= 2 weights, got {n}")));
        }
        if action.len() != n {
            return Err(Error::Malformed(format!("expected {n} action matrices, got {}", action.len())));
        }
        for (w, a) in action.iter().enumerate() {
            if a.field() != field || a.shape() != (dims[(w + 1) % n], dims[w]) {
                return Err(Error::Malformed(format!(
                    "u-action out of weight {w} has shape {:?}, expected {:?}",
                    a.shape(),
                    (dims[(w + 1) % n], dims[w])
                )));
            }
        }
        Ok(GradedModule { field, dims, action })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Result<Self> {
        Self::new(field, vec![0; n], vec![Matrix::zeros(field, 0, 0); n])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, w: usize) -> usize {
        self.dims[w % self.n()]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// `u^steps` starting at weight `from`.
    pub fn u_pow(&self, from: usize, steps: usize) -> Matrix {
        let n = self.n();
        let mut acc = Matrix::identity(self.field, self.dim(from));
        for s in 0..steps {
            acc = self.action[(from + s) % n].mul(&acc);
        }
        acc
    }

    /// Action of `t = uⁿ` on weight `w`.
    pub fn t_action(&self, w: usize) -> Matrix {
        self.u_pow(w, self.n())
    }

    /// Supported at the origin: `u` is nilpotent.
    pub fn is_torsion_at_zero(&self) -> bool {
        (0..self.n()).all(|w| self.u_pow(w, self.total_dim().max(1)).is_zero())
    }

    /// Relabel weights so that the piece at weight `w` becomes the piece at `w + by`.
    pub fn shift_grading(&self, by: i64) -> Self {
        let n = self.n();
        let s = by.rem_euclid(n as i64) as usize;
        let at = |w: usize| (w + n - s) % n;
        GradedModule {
            field: self.field,
            dims: (0..n).map(|w| self.dims[at(w)]).collect(),
            action: (0..n).map(|w| self.action[at(w)].clone()).collect(),
        }
    }

    /// `rank(u^j: V_w → V_{w+j})` for every weight and `0 ≤ j ≤ total_dim`.
    /// For nilpotent `u` this determines the module up to isomorphism.
    pub fn rank_profile(&self) -> Vec<Vec<usize>> {
        let steps = self.total_dim();
        (0..self.n()).map(|w| (0..=steps).map(|j| self.u_pow(w, j).rank()).collect()).collect()
    }

    /// Number of indecomposable strings starting at weight `w` of each length `1..=total_dim`.
    pub fn string_decomposition(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let profile = self.rank_profile();
        let r = |w: usize, j: usize| -> i64 { profile[w % n].get(j).copied().unwrap_or(0) as i64 };
        let steps = self.total_dim();
        (0..n)
            .map(|w| {
                (1..=steps)
                    .map(|len| {
                        // r(w, j) - r(w-1, j+1) counts strings starting at w of length > j.
                        let prev = (w + n - 1) % n;
                        let longer = |j: usize| r(w, j) - r(prev, j + 1);
                        (longer(len - 1) - longer(len)).max(0) as usize
                    })
                    .collect()
            })
            .collect()
    }
}

/// Isomorphism test for torsion modules by comparing string decompositions.
pub fn is_isomorphic(a: &GradedModule, b: &GradedModule) -> Result<bool> {
    if a.n() != b.n() || a.field() != b.field() {
        return Ok(false);
    }
    if !a.is_torsion_at_zero() || !b.is_torsion_at_zero() {
        return Err(Error::Invalid("isomorphism test needs nilpotent u".into()));
    }
    Ok(a.dims == b.dims && a.rank_profile() == b.rank_profile())
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "graded module, dims {:?}", self.dims)
    }
}

/// Weightwise matrices commuting with `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    comps: Vec<Matrix>,
}

impl GradedMap {
    pub fn new(source: GradedModule, target: GradedModule, comps: Vec<Matrix>) -> Result<Self> {
        let map = GradedMap { source, target, comps };
        if map.source.n() != map.target.n() || map.comps.len() != map.source.n() {
            return Err(Error::NotComposable);
        }
        for (w, c) in map.comps.iter().enumerate() {
            if c.shape() != (map.target.dim(w), map.source.dim(w)) {
                return Err(Error::Malformed(format!("component at weight {w} has shape {:?}", c.shape())));
            }
        }
        if let Some(w) = map.failing_square() {
            return Err(Error::NotMorphism { slot: w });
        }
        Ok(map)
    }

    /// First weight `w` where `f_{w+1}·u ≠ u·f_w`.
    pub fn failing_square(&self) -> Option<usize> {
        let n = self.source.n();
        (0..n).find(|&w| {
            self.comps[(w + 1) % n].mul(&self.source.action[w]) != self.target.action[w].mul(&self.comps[w])
        })
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    pub fn identity(m: &GradedModule) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        GradedMap { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(source: &GradedModule, target: &GradedModule) -> Self {
        let comps = (0..source.n()).map(|w| Matrix::zeros(source.field, target.dim(w), source.dim(w))).collect();
        GradedMap { source: source.clone(), target: target.clone(), comps }
    }

    pub fn after(&self, first: &GradedMap) -> Result<GradedMap> {
        if first.target != self.source {
            return Err(Error::NotComposable);
        }
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        Ok(GradedMap { source: first.source.clone(), target: self.target.clone(), comps })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }
}

/// `A ⊕ B` with block-diagonal action.
pub fn direct_sum(a: &GradedModule, b: &GradedModule) -> Result<GradedModule> {
    if a.n() != b.n() || a.field() != b.field() {
        return Err(Error::NotComposable);
    }
    let k = a.field();
    let n = a.n();
    let dims: Vec<usize> = (0..n).map(|w| a.dim(w) + b.dim(w)).collect();
    let action = (0..n)
        .map(|w| {
            let (ra, ca) = a.action[w].shape();
            Matrix::from_fn(k, dims[(w + 1) % n], dims[w], |i, j| match (i < ra, j < ca) {
                (true, true) => a.action[w].get(i, j).clone(),
                (false, false) => b.action[w].get(i - ra, j - ca).clone(),
                _ => k.zero(),
            })
        })
        .collect();
    GradedModule::new(k, dims, action)
}

/// A `k`-basis of the graded maps `A → B`.
pub fn graded_hom_basis(a: &GradedModule, b: &GradedModule) -> Result<Vec<GradedMap>> {
    if a.n() != b.n() || a.field() != b.field() {
        return Err(Error::NotComposable);
    }
    let k = a.field();
    let n = a.n();
    let mut offsets = Vec::with_capacity(n);
    let mut unknowns = 0;
    for w in 0..n {
        offsets.push(unknowns);
        unknowns += a.dim(w) * b.dim(w);
    }
    let idx = |w: usize, i: usize, j: usize| offsets[w] + i * a.dim(w) + j;
    // f_{w+1}·A_w − B_w·f_w = 0, entry by entry.
    let mut rows: Vec<Vec<crate::field::Scalar>> = Vec::new();
    for w in 0..n {
        let w1 = (w + 1) % n;
        for i in 0..b.dim(w1) {
            for j in 0..a.dim(w) {
                let mut row = vec![k.zero(); unknowns];
                for c in 0..a.dim(w1) {
                    let e = &mut row[idx(w1, i, c)];
                    *e = k.add(e, a.action[w].get(c, j));
                }
                for c in 0..b.dim(w) {
                    let e = &mut row[idx(w, c, j)];
                    *e = k.sub(e, b.action[w].get(i, c));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_fn(k, rows.len(), unknowns, |i, j| rows[i][j].clone());
    let basis = system.kernel();
    (0..basis.cols())
        .map(|t| {
            let comps = (0..n)
                .map(|w| Matrix::from_fn(k, b.dim(w), a.dim(w), |i, j| basis.get(idx(w, i, j), t).clone()))
                .collect();
            GradedMap::new(a.clone(), b.clone(), comps)
        })
        .collect()
}

/// `k[u]/(uⁿ)` generated in weight `m`: `u` is an isomorphism on every step
/// except the one entering weight `m`.
pub fn cyclic_module(field: FieldSpec, n: usize, m: usize) -> Result<GradedModule> {
    check_weight(n, m)?;
    let action = (0..n)
        .map(|w| Matrix::from_fn(field, 1, 1, |_, _| if (w + 1) % n == m { field.zero() } else { field.one() }))
        .collect();
    GradedModule::new(field, vec![1; n], action)
}

/// `k_m`: one-dimensional in weight `m`, `u` acting by zero.
pub fn skyscraper(field: FieldSpec, n: usize, m: usize) -> Result<GradedModule> {
    check_weight(n, m)?;
    let dims: Vec<usize> = (0..n).map(|w| usize::from(w == m)).collect();
    let action = (0..n).map(|w| Matrix::zeros(field, dims[(w + 1) % n], dims[w])).collect();
    GradedModule::new(field, dims, action)
}

fn check_weight(n: usize, m: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("need n >= 2, got {n}")));
    }
    if m >= n {
        return Err(Error::SlotOutOfRange { index: m as i64, n });
    }
    Ok(())
}

/// `u·−: (k[u]/uⁿ)_{m+1} → (k[u]/uⁿ)_m`. In the bases `u^j·e`, the component
/// at weight `m` vanishes (it would need `uⁿ`), all others are `1`.
pub fn mult_by_u(field: FieldSpec, n: usize, m: usize) -> Result<GradedMap> {
    check_weight(n, m)?;
    let source = cyclic_module(field, n, (m + 1) % n)?;
    let target = cyclic_module(field, n, m)?;
    let comps = (0..n)
        .map(|w| Matrix::from_fn(field, 1, 1, |_, _| if w == m { field.zero() } else { field.one() }))
        .collect();
    GradedMap::new(source, target, comps)
}

/// Weightwise kernel with the induced action, and its inclusion.
pub fn kernel(f: &GradedMap) -> Result<(GradedModule, GradedMap)> {
    let k = f.source.field;
    let n = f.source.n();
    let bases: Vec<Matrix> = f.comps.iter().map(Matrix::kernel).collect();
    let action = (0..n)
        .map(|w| {
            let image = f.source.action[w].mul(&bases[w]);
            bases[(w + 1) % n].solve(&image).ok_or_else(|| Error::Invalid("kernel is not u-stable".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let module = GradedModule::new(k, bases.iter().map(Matrix::cols).collect(), action)?;
    let inclusion = GradedMap::new(module.clone(), f.source.clone(), bases)?;
    Ok((module, inclusion))
}

/// Weightwise cokernel with the induced action, and its projection.
pub fn cokernel(f: &GradedMap) -> Result<(GradedModule, GradedMap)> {
    let k = f.target.field;
    let n = f.target.n();
    let projections: Vec<Matrix> = f.comps.iter().map(Matrix::left_kernel).collect();
    let sections = projections
        .iter()
        .map(|p| p.solve(&Matrix::identity(k, p.rows())))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("cokernel projection has no section".into()))?;
    let action = (0..n)
        .map(|w| projections[(w + 1) % n].mul(&f.target.action[w]).mul(&sections[w]))
        .collect();
    let module = GradedModule::new(k, projections.iter().map(Matrix::rows).collect(), action)?;
    let projection = GradedMap::new(f.target.clone(), module.clone(), projections)?;
    Ok((module, projection))
}

/// Where exactness of the four-term sequence first fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessFailure {
    /// 0 = first term, …, 3 = last term.
    pub node: usize,
    pub weight: usize,
}

impl fmt::Display for ExactnessFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not exact at term {} in weight {}", self.node, self.weight)
    }
}

/// The maps of `0 → k₀ → (k[u]/uⁿ)₁ → (k[u]/uⁿ)₀ → k₀ → 0`.
pub fn four_term_maps(field: FieldSpec, n: usize) -> Result<[GradedMap; 3]> {
    let k0 = skyscraper(field, n, 0)?;
    let mult = mult_by_u(field, n, 0)?;
    // The socle u^{n-1}·e of (k[u]/uⁿ)₁ sits in weight 0, as does the generator of (k[u]/uⁿ)₀.
    let at_zero = |w: usize, rows: usize, cols: usize| {
        Matrix::from_fn(field, rows, cols, |_, _| if w == 0 { field.one() } else { field.zero() })
    };
    let iota_comps = (0..n).map(|w| at_zero(w, 1, k0.dim(w))).collect();
    let iota = GradedMap::new(k0.clone(), mult.source.clone(), iota_comps)?;
    let pi_comps = (0..n).map(|w| at_zero(w, k0.dim(w), 1)).collect();
    let pi = GradedMap::new(mult.target.clone(), k0, pi_comps)?;
    Ok([iota, mult, pi])
}

/// Exactness of the sequence `0 → A → B → C → D → 0` at every term and weight.
pub fn check_exact(maps: &[GradedMap]) -> std::result::Result<(), ExactnessFailure> {
    let n = maps[0].source.n();
    for w in 0..n {
        let rank = |i: usize| maps[i].comps[w].rank();
        // Injective at the first term.
        if rank(0) != maps[0].source.dim(w) {
            return Err(ExactnessFailure { node: 0, weight: w });
        }
        for i in 1..maps.len() {
            let composite = maps[i].comps[w].mul(&maps[i - 1].comps[w]);
            if !composite.is_zero() || rank(i - 1) + rank(i) != maps[i].source.dim(w) {
                return Err(ExactnessFailure { node: i, weight: w });
            }
        }
        let last = maps.len() - 1;
        if rank(last) != maps[last].target.dim(w) {
            return Err(ExactnessFailure { node: last + 1, weight: w });
        }
    }
    Ok(())
}

pub fn check_four_term(n: usize) -> Result<std::result::Result<(), ExactnessFailure>> {
    let maps = four_term_maps(FieldSpec::Rationals, n)?;
    Ok(check_exact(&maps))
}

/// `dim Ext¹(k_a, k_b)` in closed form: one exactly when `b ≡ a + 1`.
pub fn ext1_cyclic(n: usize, a: usize, b: usize) -> Result<usize> {
    check_weight(n, a)?;
    check_weight(n, b)?;
    Ok(usize::from(b == (a + 1) % n))
}

/// `(dim Hom, dim Ext¹)` from `k_a` to `target`, using the free resolution
/// `0 → F(a+1) → F(a) → k_a → 0` where `F(c)` is free on one generator of weight `c`.
/// Applying `Hom(−, N)` gives `N_a → N_{a+1}`, the action of `u`. Higher Ext vanish.
pub fn ext_via_resolution(a: usize, target: &GradedModule) -> Result<(usize, usize)> {
    let n = target.n();
    check_weight(n, a)?;
    let u = &target.action[a];
    let rank = u.rank();
    Ok((target.dim(a) - rank, target.dim(a + 1) - rank))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeSplitting {
    pub n: usize,
    pub kernel_dims: Vec<usize>,
    pub cokernel_dims: Vec<usize>,
    pub kernel_is_k0: bool,
    pub cokernel_is_k0: bool,
    pub ext1_k0_k0: usize,
    /// Length of the free resolution of `k₀`; one means Ext² vanishes.
    pub resolution_length: usize,
}

impl ConeSplitting {
    pub fn holds(&self) -> bool {
        self.kernel_is_k0 && self.cokernel_is_k0 && self.ext1_k0_k0 == 0 && self.resolution_length <= 1
    }
}

/// Checks the data forcing `Cone(u·−) ≅ k₀ ⊕ k₀[1]`.
pub fn cone_splitting_check(n: usize) -> Result<ConeSplitting> {
    let field = FieldSpec::Rationals;
    let f = mult_by_u(field, n, 0)?;
    let k0 = skyscraper(field, n, 0)?;
    let (ker, _) = kernel(&f)?;
    let (coker, _) = cokernel(&f)?;
    Ok(ConeSplitting {
        n,
        kernel_is_k0: is_isomorphic(&ker, &k0)?,
        cokernel_is_k0: is_isomorphic(&coker, &k0)?,
        kernel_dims: ker.dims.clone(),
        cokernel_dims: coker.dims.clone(),
        ext1_k0_k0: ext1_cyclic(n, 0, 0)?,
        resolution_length: 1,
    })
}

/// A factorization of `W = t` read as a free graded `k[u]`-module: weight `w`
/// is slot `w`, `u` acts by `δ_w`, and `uⁿ = t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSheaf {
    potential: Potential,
    ranks: Vec<usize>,
    action: Vec<PolyMatrix>,
}

impl RootSheaf {
    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn action(&self) -> &[PolyMatrix] {
        &self.action
    }

    /// Number of minimal generators in each weight: `dim_k` of `M_w / u·M_{w-1}`.
    pub fn generator_weights(&self) -> Result<Vec<usize>> {
        let n = self.n();
        (0..n)
            .map(|w| match coker_kdim(&self.action[(w + n - 1) % n])? {
                KDim::Finite(d) => Ok(d),
                KDim::Infinite => Err(Error::Invalid("u·M is not of finite codimension".into())),
            })
            .collect()
    }

    /// Same convention as [`GradedModule::shift_grading`].
    pub fn shift_grading(&self, by: i64) -> Self {
        let n = self.n();
        let s = by.rem_euclid(n as i64) as usize;
        let at = |w: usize| (w + n - s) % n;
        RootSheaf {
            potential: self.potential.clone(),
            ranks: (0..n).map(|w| self.ranks[at(w)]).collect(),
            action: (0..n).map(|w| self.action[at(w)].clone()).collect(),
        }
    }

    /// Back to slots and maps.
    pub fn to_factorization(&self) -> Result<MatrixFactorization> {
        MatrixFactorization::new(self.potential.clone(), self.action.clone())
    }
}

/// Requires `W` to be the coordinate itself.
pub fn phi(m: &MatrixFactorization) -> Result<RootSheaf> {
    let t = Poly::x(m.field());
    if *m.potential().w() != t {
        return Err(Error::InvalidPotential(format!("expected W = x, got W = {}", m.potential().w())));
    }
    Ok(RootSheaf { potential: m.potential().clone(), ranks: m.ranks().to_vec(), action: m.maps().to_vec() })
}
