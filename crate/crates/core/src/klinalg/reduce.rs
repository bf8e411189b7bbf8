//! Pivoted modified Gram–Schmidt over a left module, with optional tracking
//! of the coefficient vectors so that null combinations can be recovered.

use super::scalar::Field;
use super::tol::Tolerances;
use super::vector::KVector;
use crate::error::{Error, Result};

/// Outcome of [`reduce`].
#[derive(Debug, Clone)]
pub(crate) struct Reduction {
    /// Orthonormal basis of the column span, in pivot order.
    pub basis: Vec<KVector>,
    /// Coefficient vectors `a` with `sum_l a_l * col_l ≈ 0`, one per
    /// rejected column. Empty unless tracking was requested.
    pub null: Vec<KVector>,
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Reduces `cols` (all of length `len`) with an absolute rank threshold.
///
/// A pivot is accepted when its norm exceeds `threshold * margin` and the
/// reduction stops when the largest remaining norm is below
/// `threshold / margin`; anything in between is a [`Error::RankAmbiguous`].
pub(crate) fn reduce(
    field: Field,
    len: usize,
    cols: &[KVector],
    threshold: f64,
    tol: &Tolerances,
    track: bool,
) -> Result<Reduction> {
    let n = cols.len();
    // (residual, coefficients) per still-unused column
    let mut work: Vec<(KVector, KVector)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let coeff = if track { KVector::basis(field, n, j + 1) } else { KVector::zeros(field, 0) };
            (c.clone(), coeff)
        })
        .collect();
    let mut basis: Vec<KVector> = Vec::new();
    let mut basis_coeffs: Vec<KVector> = Vec::new();

    while !work.is_empty() && basis.len() < len {
        let (best, _) = work
            .iter()
            .enumerate()
            .map(|(j, (w, _))| (j, w.norm_sqr()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let (mut w, mut a) = work.swap_remove(best);
        // second projection pass against the accepted basis
        for (q, b) in basis.iter().zip(&basis_coeffs) {
            let mu = w.inner_unchecked(q);
            w.sub_scaled_left(mu, q);
            if track {
                a.sub_scaled_left(mu, b);
            }
        }
        let norm = w.norm();
        if norm <= threshold / tol.margin {
            work.push((w, a));
            break;
        }
        if norm <= threshold * tol.margin {
            return Err(Error::RankAmbiguous { pivot: norm, threshold });
        }
        let q = w.scaled(1.0 / norm);
        let b = if track { a.scaled(1.0 / norm) } else { a };
        for (wj, aj) in work.iter_mut() {
            let mu = wj.inner_unchecked(&q);
            wj.sub_scaled_left(mu, &q);
            if track {
                aj.sub_scaled_left(mu, &b);
            }
        }
        basis.push(q);
        basis_coeffs.push(b);
    }

    // Columns left over once the space is exhausted must themselves be small.
    for (w, _) in &work {
        let mut r = w.clone();
        for q in &basis {
            let mu = r.inner_unchecked(q);
            r.sub_scaled_left(mu, q);
        }
        let norm = r.norm();
        if norm > threshold / tol.margin {
            return Err(Error::RankAmbiguous { pivot: norm, threshold });
        }
    }

    let null = if track { work.into_iter().map(|(_, a)| a).collect() } else { Vec::new() };
    Ok(Reduction { basis, null })
}

/// Largest column norm, used to scale the relative rank threshold.
pub(crate) fn max_norm(cols: &[KVector]) -> f64 {
    cols.iter().map(KVector::norm).fold(0.0, f64::max)
}

/// Left combination `sum_l a_l * cols_l`.
pub(crate) fn combine(field: Field, len: usize, cols: &[KVector], a: &KVector) -> KVector {
    let mut out = KVector::zeros(field, len);
    for (c, s) in cols.iter().zip(a.entries()) {
        out.add_scaled_left(*s, c);
    }
    out
}
