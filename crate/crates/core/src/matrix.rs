//! Rectangular matrices over `k[x]`, i.e. maps of finite free modules.

use std::fmt;

use crate::error::LinalgError;
use crate::field::{FieldSpec, Scalar};
use crate::poly::Poly;

/// Row-major polynomial matrix. A `rows × cols` matrix is a map `k[x]^cols → k[x]^rows`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        PolyMatrix { field, rows, cols, entries: vec![Poly::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::scalar(&Poly::one(field), n)
    }

    /// `p·I_n`.
    pub fn scalar(p: &Poly, n: usize) -> Self {
        let mut m = Self::zeros(p.field(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Poly>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::ShapeMismatch { op: "from_rows", left: (r, c), right: (1, row.len()) });
            }
            for p in row {
                if p.field() != field {
                    return Err(LinalgError::FieldMismatch(field, p.field()));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { field, rows: r, cols: c, entries })
    }

    /// Builds from integer coefficient lists, one list per entry.
    pub fn from_i64s(field: FieldSpec, rows: &[&[&[i64]]]) -> Self {
        let rows = rows
            .iter()
            .map(|row| row.iter().map(|c| Poly::from_i64s(field, c)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular literal")
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { field, rows, cols, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, self.rows, 1, |i, _| self.get(i, j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            }))
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(Poly::degree_or_zero).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch { op: "mul", left: self.shape(), right: other.shape() });
        }
        let mut out = PolyMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &PolyMatrix, op: &'static str, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<PolyMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch(self.field, other.field));
        }
        if self.shape() != other.shape() {
            return Err(LinalgError::ShapeMismatch { op, left: self.shape(), right: other.shape() });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix { field: self.field, rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, LinalgError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> PolyMatrix {
        self.map(|p| -p)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        self.map(|e| e * p)
    }

    pub fn scale_scalar(&self, c: &Scalar) -> PolyMatrix {
        self.map(|e| e.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Block-diagonal sum.
    pub fn block_diag(field: FieldSpec, blocks: &[&PolyMatrix]) -> PolyMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = PolyMatrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&PolyMatrix]) -> Result<PolyMatrix, LinalgError> {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = PolyMatrix::zeros(field, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(LinalgError::ShapeMismatch { op: "hstack", left: (rows, cols), right: b.shape() });
            }
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        Ok(out)
    }

    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&PolyMatrix]) -> Result<PolyMatrix, LinalgError> {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = PolyMatrix::zeros(field, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(LinalgError::ShapeMismatch { op: "vstack", left: (rows, cols), right: b.shape() });
            }
            out.paste(r0, 0, b);
            r0 += b.rows;
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> PolyMatrix {
        let (r0, c0) = (rows.start, cols.start);
        PolyMatrix::from_fn(self.field, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(self.field, rows.len(), self.cols, |i, j| self.get(rows[i], j).clone())
    }

    // Elementary operations used by the normal-form routines.

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// `col[dst] -= q · col[src]`.
    pub(crate) fn col_axpy(&mut self, dst: usize, src: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s.is_zero() {
                continue;
            }
            let t = s * q;
            let idx = i * self.cols + dst;
            self.entries[idx] = &self.entries[idx] - &t;
        }
    }

    /// `row[dst] -= q · row[src]`.
    pub(crate) fn row_axpy(&mut self, dst: usize, src: usize, q: &Poly) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s.is_zero() {
                continue;
            }
            let t = s * q;
            let idx = dst * self.cols + j;
            self.entries[idx] = &self.entries[idx] - &t;
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.entries[idx] = self.entries[idx].scale(c);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.entries[idx] = self.entries[idx].scale(c);
        }
    }

    pub(crate) fn col_max_degree(&self, j: usize) -> usize {
        (0..self.rows).map(|i| self.get(i, j).degree_or_zero()).max().unwrap_or(0)
    }

    pub(crate) fn row_max_degree(&self, i: usize) -> usize {
        self.row(i).iter().map(Poly::degree_or_zero).max().unwrap_or(0)
    }

    /// Determinant by fraction-free cofactor expansion; intended for small matrices.
    pub fn determinant(&self) -> Result<Poly, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::ShapeMismatch { op: "determinant", left: self.shape(), right: self.shape() });
        }
        Ok(det_rec(self))
    }
}

fn det_rec(m: &PolyMatrix) -> Poly {
    let n = m.rows;
    let k = m.field;
    match n {
        0 => Poly::one(k),
        1 => m.get(0, 0).clone(),
        _ => {
            let mut acc = Poly::zero(k);
            for j in 0..n {
                let a = m.get(0, j);
                if a.is_zero() {
                    continue;
                }
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = m.submatrix(1..n, 0..n).select_cols(&cols);
                let term = a * &det_rec(&minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
