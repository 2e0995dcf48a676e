use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lattice generator is singular (det R = 0)")]
    SingularLattice,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension {0} is out of range")]
    UnsupportedDimension(usize),
    #[error("work budget exceeded in {what}: needs {needed} units, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("input is not a verified spectral/tiling pair")]
    NotSpectral,
    #[error("measures do not form a spectral pair")]
    NotSpectralPair,
    #[error("measures live on different groups")]
    GroupMismatch,
    #[error("function has zero norm")]
    ZeroFunction,
    #[error("group too large: {0}")]
    GroupTooLarge(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, cap: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            cap,
        }
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
