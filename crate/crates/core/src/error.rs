use thiserror::Error;

use crate::klinalg::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid Schubert symbol: {0}")]
    InvalidSymbol(String),

    #[error("invalid flag signature: {0}")]
    InvalidSignature(String),

    #[error("not a coherent tower: {0}")]
    IncoherentTower(String),

    #[error("columns are not orthonormal (residual {residual:.3e} > {tolerance:.3e})")]
    NotOrthonormal { residual: f64, tolerance: f64 },

    #[error("rank-deficient basis: expected rank {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("rank decision too close to tolerance: pivot norm {pivot:.3e} vs threshold {threshold:.3e}")]
    RankAmbiguous { pivot: f64, threshold: f64 },

    #[error("ill-conditioned input: {0}")]
    IllConditioned(String),

    #[error("subspaces are not nested: residual {residual:.3e} at level {level}")]
    NotNested { level: usize, residual: f64 },

    #[error("rotation is undefined: {0}")]
    NotAdmissible(String),

    #[error("Betti numbers not derivable from cell counts over R")]
    BettiOverReals,

    #[error("cell has empty boundary contribution")]
    EmptyBoundary,

    #[error("sampler gave up after {0} attempts")]
    SamplerExhausted(usize),

    #[error("tolerance breakdown: flag symbol routes disagree ({recursive} vs {factored})")]
    ToleranceBreakdown { recursive: String, factored: String },

    #[error("poset has {count} symbols, exceeding the cap of {cap}")]
    CapExceeded { count: u128, cap: usize },

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("parse error: {0}")]
    Parse(String),
}
