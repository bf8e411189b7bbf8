//! Scalars, vectors and matrices over `R`, `C` and `H`, and the
//! noncommutative-safe numerical linear algebra built on them.
//!
//! Every vector space is a left module. The inner product
//! `<x, y> = sum x_n conj(y_n)` is linear in its first argument, and the
//! reference complete flag `H_k` is always the coordinate flag.

mod matrix;
mod reduce;
mod scalar;
mod subspace;
mod tol;
mod vector;

pub use matrix::{KMatrix, StiefelElement};
pub use scalar::{scalar_mul, Field, KScalar};
pub use subspace::{
    intersection_basis, intersection_dim_with_coordinate_flag, numerical_rank, orthonormalize,
    Subspace,
};
pub use tol::Tolerances;
pub use vector::{inner_product, KVector};

