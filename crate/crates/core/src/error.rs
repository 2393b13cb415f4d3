use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}; only n = 2 and n = 3 are implemented")]
    UnsupportedDimension(usize),
    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },
    #[error("matrix has a non-finite entry")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("decomposition failed: {0}")]
    DecompositionFailure(&'static str),
    #[error("element is not in K A+ K (repeated singular values); it has no boundary image")]
    NotRegular,
    #[error("zero chamber vector has no angle")]
    ZeroVector,
    #[error("empty lattice set: the average over zero elements is undefined")]
    EmptyLattice,
    #[error("resource limit: {what} (requested {requested}, cap {cap})")]
    ResourceLimit {
        what: &'static str,
        requested: f64,
        cap: f64,
    },
    #[error("invalid argument `{field}`: {reason}")]
    InvalidArgument {
        field: &'static str,
        reason: &'static str,
    },
}
