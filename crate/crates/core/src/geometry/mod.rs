//! Schubert symbols of concrete subspaces and flags, canonical Stiefel
//! representatives, cell membership, rotations and cell samplers.

mod flag;
mod rotation;
mod sample;
mod schubert;

pub use flag::{
    assemble_flag, flag_symbol_factored, flag_symbol_recursive, schubert_symbol_flag, FlagPoint,
    GeneralStiefelPoint,
};
pub use rotation::{align_phase, rotation_apply};
pub use sample::{
    sample_closure_boundary, sample_closure_boundary_with, sample_flag_boundary, sample_flag_boundary_with,
    sample_flag_cell, sample_flag_cell_point, sample_flag_cell_point_with, sample_v_sigma, sample_v_sigma_with,
    MAX_RETRIES,
};
pub use schubert::{
    canonical_representative, induced_flag, membership_v_sigma, schubert_function, schubert_symbol_subspace,
};
