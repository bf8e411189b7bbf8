use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::flag::{assemble_flag, FlagPoint, GeneralStiefelPoint};
use crate::error::{Error, Result};
use crate::klinalg::{Field, KMatrix, KScalar, KVector, StiefelElement, Tolerances};
use crate::symbols::{ElementarySymbol, GeneralSymbol};

/// Redraws allowed per column before giving up.
pub const MAX_RETRIES: usize = 64;

/// A drawn column is rejected when its pivot is this small relative to its
/// norm, which keeps every sample far from the rank tolerance.
const MIN_RELATIVE_PIVOT: f64 = 1e-3;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian vector supported on `H_support`, made orthogonal to `prev`.
/// Returns the vector and its norm.
fn orthogonal_draw<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    support: usize,
    prev: &[KVector],
    rng: &mut R,
) -> (KVector, f64) {
    let mut r = KVector::random(field, m, support, rng);
    for _ in 0..2 {
        for c in prev {
            let mu = r.inner_unchecked(c);
            r.sub_scaled_left(mu, c);
        }
    }
    let norm = r.norm();
    (r, norm)
}

/// Normalizes `r` and turns its `pivot`-th coordinate into a positive real.
fn fix_phase(r: &KVector, norm: f64, pivot: usize) -> KVector {
    let r = r.scaled(1.0 / norm);
    let c = r.coord(pivot);
    let mut r = r.scaled_left(c.conj().unit().expect("nonzero pivot"));
    let p = r.coord(pivot);
    r.entries_mut()[pivot - 1] = KScalar::real(p.w);
    r
}

/// Draws column `k` (1-based) of a cell sample: unit, in `H_pivot`,
/// orthogonal to `prev`, with a positive real `pivot`-th coordinate.
fn draw_cell_column<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    pivot: usize,
    prev: &[KVector],
    rng: &mut R,
) -> Result<KVector> {
    for _ in 0..MAX_RETRIES {
        let (r, norm) = orthogonal_draw(field, m, pivot, prev, rng);
        // previous columns vanish at `pivot`, so orthogonalizing left it alone
        let c = r.coord(pivot);
        if norm > 0.0 && c.norm() >= MIN_RELATIVE_PIVOT * norm {
            return Ok(fix_phase(&r, norm, pivot));
        }
    }
    Err(Error::SamplerExhausted(MAX_RETRIES))
}

/// Random element of the open cell `V_sigma` with Gaussian draws from `rng`.
pub fn sample_v_sigma_with<R: Rng + ?Sized>(
    sigma: &ElementarySymbol,
    field: Field,
    rng: &mut R,
) -> Result<StiefelElement> {
    let m = sigma.m();
    let mut cols: Vec<KVector> = Vec::with_capacity(sigma.n());
    for k in 1..=sigma.n() {
        let col = draw_cell_column(field, m, sigma.at(k), &cols, rng)?;
        cols.push(col);
    }
    finish(field, m, &cols)
}

/// Random element of the open cell `V_sigma`, reproducible from `seed`.
pub fn sample_v_sigma(sigma: &ElementarySymbol, field: Field, seed: u64) -> Result<StiefelElement> {
    sample_v_sigma_with(sigma, field, &mut rng_for(seed))
}

/// Random element of the closure of `V_sigma` outside the cell: one column
/// `k0` with `sigma(k0) > k0` is drawn in `H_{sigma(k0)-1}`, so its pivot is 0.
pub fn sample_closure_boundary_with<R: Rng + ?Sized>(
    sigma: &ElementarySymbol,
    field: Field,
    rng: &mut R,
) -> Result<StiefelElement> {
    let movable: Vec<usize> = (1..=sigma.n()).filter(|&k| sigma.at(k) > k).collect();
    if movable.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let k0 = movable[rng.random_range(0..movable.len())];
    let m = sigma.m();
    let mut cols: Vec<KVector> = Vec::with_capacity(sigma.n());
    for k in 1..=sigma.n() {
        let col = if k == k0 {
            draw_degenerate_column(field, m, sigma.at(k) - 1, &cols, rng)?
        } else {
            draw_cell_column(field, m, sigma.at(k), &cols, rng)?
        };
        cols.push(col);
    }
    finish(field, m, &cols)
}

/// Boundary sample reproducible from `seed`.
pub fn sample_closure_boundary(sigma: &ElementarySymbol, field: Field, seed: u64) -> Result<StiefelElement> {
    sample_closure_boundary_with(sigma, field, &mut rng_for(seed))
}

/// Unit vector in `H_support` orthogonal to `prev`, with a random phase.
fn draw_degenerate_column<R: Rng + ?Sized>(
    field: Field,
    m: usize,
    support: usize,
    prev: &[KVector],
    rng: &mut R,
) -> Result<KVector> {
    for _ in 0..MAX_RETRIES {
        let (r, norm) = orthogonal_draw(field, m, support, prev, rng);
        // the draw lives in a space of dimension support - prev.len() >= 1
        let raw = (support as f64).sqrt();
        if norm >= MIN_RELATIVE_PIVOT * raw {
            return Ok(r.scaled(1.0 / norm));
        }
    }
    Err(Error::SamplerExhausted(MAX_RETRIES))
}

fn finish(field: Field, m: usize, cols: &[KVector]) -> Result<StiefelElement> {
    let mat = KMatrix::from_columns(field, m, cols)?;
    StiefelElement::new(mat, &Tolerances::default())
}

/// `psi` applied to independent samples of the factor cells `V_{sigma_k}`.
pub fn sample_flag_cell_point_with<R: Rng + ?Sized>(
    sigma: &GeneralSymbol,
    field: Field,
    rng: &mut R,
) -> Result<GeneralStiefelPoint> {
    let factors = sigma
        .parts()
        .iter()
        .map(|s| sample_v_sigma_with(s, field, rng))
        .collect::<Result<Vec<_>>>()?;
    assemble_flag(&factors, sigma.signature(), &Tolerances::default())
}

pub fn sample_flag_cell_point(sigma: &GeneralSymbol, field: Field, seed: u64) -> Result<GeneralStiefelPoint> {
    sample_flag_cell_point_with(sigma, field, &mut rng_for(seed))
}

/// A flag in the cell of `sigma`.
pub fn sample_flag_cell(sigma: &GeneralSymbol, field: Field, seed: u64) -> Result<FlagPoint> {
    sample_flag_cell_point(sigma, field, seed)?.to_flag(&Tolerances::default())
}

/// A flag in the closure of the cell of `sigma` but outside it: one factor
/// with positive dimension is replaced by a boundary sample of its cell.
pub fn sample_flag_boundary_with<R: Rng + ?Sized>(
    sigma: &GeneralSymbol,
    field: Field,
    rng: &mut R,
) -> Result<FlagPoint> {
    let movable: Vec<usize> = (0..sigma.parts().len()).filter(|&k| sigma.parts()[k].dim() > 0).collect();
    if movable.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let k0 = movable[rng.random_range(0..movable.len())];
    let factors = sigma
        .parts()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if k == k0 {
                sample_closure_boundary_with(s, field, rng)
            } else {
                sample_v_sigma_with(s, field, rng)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let tol = Tolerances::default();
    assemble_flag(&factors, sigma.signature(), &tol)?.to_flag(&tol)
}

pub fn sample_flag_boundary(sigma: &GeneralSymbol, field: Field, seed: u64) -> Result<FlagPoint> {
    sample_flag_boundary_with(sigma, field, &mut rng_for(seed))
}
