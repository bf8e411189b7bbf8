//! Schubert cell structure of Grassmann and flag manifolds over the reals,
//! complexes and quaternions.
//!
//! The crate is split the same way the construction is:
//!
//! * [`klinalg`] holds scalars, vectors and matrices over `R`, `C` or `H`
//!   together with the left-linear Gram–Schmidt machinery used for ranks,
//!   spans and intersections.
//! * [`symbols`] is the pure combinatorics of elementary and general Schubert
//!   symbols.
//! * [`cells`] turns symbol enumerations into cell polynomials, Betti numbers,
//!   Euler characteristics, manifold dimensions and a poset export.
//! * [`geometry`] computes symbols of concrete subspaces and flags, canonical
//!   Stiefel representatives, cell membership, the rotation `T(u, v)` and cell
//!   samplers.
//! * [`verifier`] runs seeded property suites over all of the above.
//! * [`json`] holds the JSON encodings shared with the command line tool.

pub mod cells;
pub mod error;
pub mod geometry;
pub mod json;
pub mod klinalg;
pub mod symbols;
pub mod verifier;

pub use error::{Error, Result};
pub use klinalg::{Field, KMatrix, KScalar, KVector, StiefelElement, Subspace, Tolerances};
