//! Exact dense linear algebra over a field: Gaussian elimination with full
//! affine solution sets, nullspaces, rank, determinants, and Vandermonde
//! interpolation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Row-major matrix of field elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>, field: FieldSpec) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            field,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn mul_matrix(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &*out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivots are chosen lexicographically-first: leftmost column, then
    /// topmost unused row with a nonzero entry.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(pivot_row, r);
            let inv = self.get(pivot_row, col).inv().expect("pivot is nonzero");
            for j in col..self.cols {
                let v = self.get(pivot_row, j) * &inv;
                self.set(pivot_row, j, v);
            }
            for i in 0..self.rows {
                if i == pivot_row || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in col..self.cols {
                    let v = self.get(i, j) - &(&factor * self.get(pivot_row, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref().len()
    }

    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut work = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let found = (col..n).find(|&r| !work.get(r, col).is_zero());
            let Some(r) = found else {
                return self.field.zero();
            };
            if r != col {
                work.swap_rows(col, r);
                det = -&det;
            }
            let pivot = work.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in col + 1..n {
                if work.get(i, col).is_zero() {
                    continue;
                }
                let factor = work.get(i, col) * &inv;
                for j in col..n {
                    let v = work.get(i, j) - &(&factor * work.get(col, j));
                    work.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
            return None;
        }
        let mut out = Matrix::zeros(n, n, self.field);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Basis of `{x : Ax = 0}`. Vectors are normalized so their first
    /// nonzero entry is 1.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let mut work = self.clone();
        let pivots = work.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &col) in pivots.iter().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &col) in pivots.iter().enumerate() {
                v[col] = -work.get(row, free);
            }
            normalize_leading(&mut v);
            basis.push(v);
        }
        basis
    }
}

fn normalize_leading(v: &mut [FieldElement]) {
    if let Some(lead) = v.iter().find(|e| !e.is_zero()).cloned() {
        let inv = lead.inv().expect("leading entry is nonzero");
        for e in v.iter_mut() {
            *e = &*e * &inv;
        }
    }
}

/// A particular point plus a basis of directions: the solution set of a
/// linear system, a stabilizer subspace, or a coset thereof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSubspace {
    pub ambient_dim: usize,
    pub point: Vec<FieldElement>,
    pub basis: Vec<Vec<FieldElement>>,
}

impl AffineSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `point + sum coeffs[i] * basis[i]`.
    pub fn element(&self, coeffs: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(coeffs.len(), self.basis.len(), "coefficient count mismatch");
        let mut out = self.point.clone();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, e) in out.iter_mut().zip(b) {
                *o = &*o + &(c * e);
            }
        }
        out
    }

    /// Whether `x - point` lies in the span of the basis.
    pub fn contains(&self, x: &[FieldElement], field: FieldSpec) -> bool {
        assert_eq!(x.len(), self.ambient_dim);
        let diff: Vec<FieldElement> = x
            .iter()
            .zip(&self.point)
            .map(|(a, b)| a - b)
            .collect();
        in_span(&self.basis, &diff, field)
    }

    /// Whether the direction spans of two subspaces coincide (mutual
    /// containment; particular points are ignored).
    pub fn same_span(&self, other: &AffineSubspace, field: FieldSpec) -> bool {
        self.basis
            .iter()
            .all(|v| in_span(&other.basis, v, field))
            && other.basis.iter().all(|v| in_span(&self.basis, v, field))
    }
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<FieldElement>], v: &[FieldElement], field: FieldSpec) -> bool {
    if v.iter().all(FieldElement::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let base = Matrix::from_rows(vectors.to_vec(), field);
    let mut extended = vectors.to_vec();
    extended.push(v.to_vec());
    let ext = Matrix::from_rows(extended, field);
    base.rank() == ext.rank()
}

/// Solves `Ax = b`, returning the full affine solution set or `None` when the
/// system is inconsistent. Free variables are set to zero in the particular
/// point; the basis spans the nullspace of `A`.
pub fn solve_affine(a: &Matrix, b: &[FieldElement]) -> Option<AffineSubspace> {
    assert_eq!(b.len(), a.rows(), "right-hand side length mismatch");
    let n = a.cols();
    let field = a.field();
    let mut aug = Matrix::zeros(a.rows(), n + 1, field);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let pivots = aug.rref();
    // A pivot in the augmented column means a row 0 = c with c != 0.
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut point = vec![field.zero(); n];
    for (row, &col) in pivots.iter().enumerate() {
        point[col] = aug.get(row, n).clone();
    }
    Some(AffineSubspace {
        ambient_dim: n,
        point,
        basis: a.nullspace(),
    })
}

/// Solves the Vandermonde system for the coefficients `c_0..c_d` of the
/// unique degree-`<= d` univariate polynomial with `p(nodes[j]) = values[j]`.
pub fn vandermonde_solve(
    nodes: &[FieldElement],
    values: &[FieldElement],
) -> Result<Vec<FieldElement>> {
    assert_eq!(nodes.len(), values.len(), "node/value count mismatch");
    assert!(!nodes.is_empty(), "empty interpolation problem");
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::DuplicateNodes);
            }
        }
    }
    let field = nodes[0].spec();
    let d = nodes.len();
    let mut m = Matrix::zeros(d, d, field);
    for (i, node) in nodes.iter().enumerate() {
        let mut p = field.one();
        for j in 0..d {
            m.set(i, j, p.clone());
            p = &p * node;
        }
    }
    let sol = solve_affine(&m, values).expect("Vandermonde matrix is invertible");
    debug_assert!(sol.basis.is_empty());
    Ok(sol.point)
}
