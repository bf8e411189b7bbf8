use super::scalar::{Field, KScalar};
use super::tol::Tolerances;
use super::vector::KVector;
use crate::error::{Error, Result};

/// Coordinate matrix of a left-linear map `K^cols -> K^rows`.
///
/// Column `j` is the image of the `j`-th standard basis vector, so a map
/// acts by `u(x) = sum_j x_j * col_j` with coefficients on the left.
/// Indices in this type are 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct KMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<KScalar>,
}

impl KMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<KScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|s| !field.contains(**s)) {
            return Err(Error::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(KMatrix { field, rows, cols, entries })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        KMatrix { field, rows, cols, entries: vec![KScalar::ZERO; rows * cols] }
    }

    /// The standard inclusion `e_k -> h_k` of `K^cols` into `K^rows`.
    pub fn inclusion(field: Field, rows: usize, cols: usize) -> Self {
        assert!(cols <= rows, "inclusion needs cols <= rows");
        let mut m = KMatrix::zeros(field, rows, cols);
        for k in 0..cols {
            m.set(k, k, KScalar::ONE);
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[KVector]) -> Result<Self> {
        let mut m = KMatrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: c.field() });
            }
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, e) in c.entries().iter().enumerate() {
                m.set(i, j, *e);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[KScalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> KScalar {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: KScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> KVector {
        KVector::from_entries_unchecked(
            self.field,
            (0..self.rows).map(|i| self.get(i, j)).collect(),
        )
    }

    pub fn columns(&self) -> Vec<KVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Image of `x` under the map.
    pub fn apply(&self, x: &KVector) -> Result<KVector> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch { expected: self.field, found: x.field() });
        }
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} applied to a {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = KVector::zeros(self.field, self.rows);
        for (j, c) in x.entries().iter().enumerate() {
            for i in 0..self.rows {
                out.entries_mut()[i] += *c * self.get(i, j);
            }
        }
        Ok(out)
    }

    /// Matrix of the composite map `self ∘ inner`.
    pub fn compose(&self, inner: &KMatrix) -> Result<KMatrix> {
        if inner.field != self.field {
            return Err(Error::FieldMismatch { expected: self.field, found: inner.field });
        }
        if inner.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, inner.rows, inner.cols
            )));
        }
        let images: Vec<KVector> = inner
            .columns()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<_>>()?;
        KMatrix::from_columns(self.field, self.rows, &images)
    }

    /// `max |<c_i, c_j> - delta_ij|` over all column pairs.
    pub fn orthonormality_residual(&self) -> f64 {
        let cols = self.columns();
        let mut worst: f64 = 0.0;
        for (i, a) in cols.iter().enumerate() {
            for (j, b) in cols.iter().enumerate().skip(i) {
                let mut g = a.inner_unchecked(b);
                if i == j {
                    g -= KScalar::ONE;
                }
                worst = worst.max(g.norm());
            }
        }
        worst
    }

    pub fn frobenius_distance(&self, other: &KMatrix) -> Result<f64> {
        if self.field != other.field || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.rows, self.cols, self.field, other.rows, other.cols, other.field
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

/// An inner-product preserving map `K^n -> K^m`: a matrix with orthonormal
/// columns. Column `k` is the image of `e_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StiefelElement {
    matrix: KMatrix,
}

impl StiefelElement {
    pub fn new(matrix: KMatrix, tol: &Tolerances) -> Result<Self> {
        let residual = matrix.orthonormality_residual();
        if residual > tol.orth {
            return Err(Error::NotOrthonormal { residual, tolerance: tol.orth });
        }
        Ok(StiefelElement { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: KMatrix) -> Self {
        StiefelElement { matrix }
    }

    pub fn inclusion(field: Field, ambient: usize, n: usize) -> Self {
        StiefelElement { matrix: KMatrix::inclusion(field, ambient, n) }
    }

    pub fn matrix(&self) -> &KMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> KMatrix {
        self.matrix
    }

    pub fn field(&self) -> Field {
        self.matrix.field
    }

    /// Dimension of the target space.
    pub fn ambient(&self) -> usize {
        self.matrix.rows
    }

    /// Dimension of the source space.
    pub fn dim(&self) -> usize {
        self.matrix.cols
    }

    pub fn column(&self, k: usize) -> KVector {
        self.matrix.column(k)
    }

    pub fn columns(&self) -> Vec<KVector> {
        self.matrix.columns()
    }

    /// `self ∘ inner`; the composite of isometries is an isometry.
    pub fn compose(&self, inner: &StiefelElement) -> Result<StiefelElement> {
        Ok(StiefelElement { matrix: self.matrix.compose(&inner.matrix)? })
    }

    /// Orthogonal projection of `x` onto the image.
    pub fn project(&self, x: &KVector) -> KVector {
        let mut p = KVector::zeros(self.field(), self.ambient());
        for c in self.columns() {
            p.add_scaled_left(x.inner_unchecked(&c), &c);
        }
        p
    }

    /// Coordinates `(<x, c_1>, ..., <x, c_n>)` of `x` in the column basis.
    pub fn coordinates(&self, x: &KVector) -> KVector {
        KVector::from_entries_unchecked(
            self.field(),
            self.columns().iter().map(|c| x.inner_unchecked(c)).collect(),
        )
    }
}
