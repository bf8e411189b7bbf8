use super::matrix::{KMatrix, StiefelElement};
use super::reduce::{combine, max_norm, reduce};
use super::scalar::Field;
use super::tol::Tolerances;
use super::vector::KVector;
use crate::error::{Error, Result};

/// Orthonormalizes the columns of `cols` with pivoted modified Gram–Schmidt.
///
/// Returns an orthonormal basis of the column span together with the
/// numerical rank. The rank threshold is `tol.rank` times the largest column
/// norm; a zero matrix gives rank 0 and an empty Stiefel element.
pub fn orthonormalize(cols: &KMatrix, tol: &Tolerances) -> Result<(StiefelElement, usize)> {
    let columns = cols.columns();
    let scale = max_norm(&columns);
    if scale == 0.0 {
        return Ok((
            StiefelElement::from_matrix_unchecked(KMatrix::zeros(cols.field(), cols.rows(), 0)),
            0,
        ));
    }
    let red = reduce(cols.field(), cols.rows(), &columns, tol.rank * scale, tol, false)?;
    let rank = red.rank();
    let m = KMatrix::from_columns(cols.field(), cols.rows(), &red.basis)?;
    Ok((StiefelElement::from_matrix_unchecked(m), rank))
}

/// Numerical rank of a column set whose natural scale is `scale`.
pub fn numerical_rank(
    field: Field,
    len: usize,
    cols: &[KVector],
    scale: f64,
    tol: &Tolerances,
) -> Result<usize> {
    if cols.is_empty() || len == 0 {
        return Ok(0);
    }
    Ok(reduce(field, len, cols, tol.rank * scale, tol, false)?.rank())
}

/// A point of the Grassmannian: the span of an orthonormal basis.
///
/// Two subspaces are the same point when their spans agree, which
/// [`Subspace::same_span`] tests through projection residuals.
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: StiefelElement,
}

impl Subspace {
    /// Span of an already orthonormal basis.
    pub fn from_basis(basis: StiefelElement) -> Self {
        Subspace { basis }
    }

    /// Span of arbitrary columns, which must be numerically independent.
    pub fn from_columns(cols: &KMatrix, tol: &Tolerances) -> Result<Self> {
        let (basis, rank) = orthonormalize(cols, tol)?;
        if rank != cols.cols() {
            return Err(Error::RankDeficient { expected: cols.cols(), found: rank });
        }
        Ok(Subspace { basis })
    }

    /// The coordinate subspace `H_k` spanned by `h_1, ..., h_k`.
    pub fn coordinate(field: Field, ambient: usize, k: usize) -> Self {
        Subspace { basis: StiefelElement::inclusion(field, ambient, k) }
    }

    /// Span of the listed standard basis vectors (1-based).
    pub fn coordinate_span(field: Field, ambient: usize, indices: &[usize]) -> Self {
        let cols: Vec<KVector> = indices.iter().map(|&i| KVector::basis(field, ambient, i)).collect();
        let m = KMatrix::from_columns(field, ambient, &cols).expect("consistent shapes");
        Subspace::from_columns(&m, &Tolerances::default()).expect("distinct basis vectors")
    }

    pub fn basis(&self) -> &StiefelElement {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ambient()
    }

    /// `|x - P x|` for the orthogonal projection `P` onto the subspace.
    pub fn projection_residual(&self, x: &KVector) -> f64 {
        let p = self.basis.project(x);
        let mut r = x.clone();
        r.sub_scaled_left(crate::klinalg::KScalar::ONE, &p);
        r.norm()
    }

    /// Largest projection residual of `other`'s basis vectors onto `self`.
    pub fn containment_residual(&self, other: &Subspace) -> f64 {
        other
            .basis
            .columns()
            .iter()
            .map(|c| self.projection_residual(c))
            .fold(0.0, f64::max)
    }

    /// Whether `other ⊆ self` within the rank tolerance.
    pub fn contains(&self, other: &Subspace, tol: &Tolerances) -> bool {
        self.field() == other.field()
            && self.ambient() == other.ambient()
            && self.containment_residual(other) <= tol.rank
    }

    pub fn same_span(&self, other: &Subspace, tol: &Tolerances) -> bool {
        self.dim() == other.dim() && self.contains(other, tol) && other.contains(self, tol)
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { expected: self.field(), found: other.field() });
        }
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }
}

/// `dim X ∩ H_k`, computed as `n - rank(rows k+1..m of the basis of X)`.
pub fn intersection_dim_with_coordinate_flag(x: &Subspace, k: usize, tol: &Tolerances) -> Result<usize> {
    let m = x.ambient();
    if k > m {
        return Err(Error::DimensionMismatch(format!("flag index {k} exceeds ambient {m}")));
    }
    let lower: Vec<KVector> = x
        .basis()
        .columns()
        .iter()
        .map(|c| KVector::from_entries_unchecked(x.field(), c.entries()[k..].to_vec()))
        .collect();
    Ok(x.dim() - numerical_rank(x.field(), m - k, &lower, 1.0, tol)?)
}

/// Orthonormal basis of `X ∩ Y`.
///
/// The basis vectors `x_j` of `X` are replaced by their residuals
/// `x_j - P_Y x_j`; left combinations annihilating every residual are exactly
/// the vectors of `X` lying in `Y`.
pub fn intersection_basis(x: &Subspace, y: &Subspace, tol: &Tolerances) -> Result<Subspace> {
    x.check_same_ambient(y)?;
    let field = x.field();
    let m = x.ambient();
    let xs = x.basis().columns();
    let residuals: Vec<KVector> = xs
        .iter()
        .map(|c| {
            let mut r = c.clone();
            r.sub_scaled_left(crate::klinalg::KScalar::ONE, &y.basis().project(c));
            r
        })
        .collect();
    let red = reduce(field, m, &residuals, tol.rank, tol, true)?;
    let vectors: Vec<KVector> = red.null.iter().map(|a| combine(field, m, &xs, a)).collect();
    let mat = KMatrix::from_columns(field, m, &vectors)?;
    Subspace::from_columns(&mat, tol)
}
