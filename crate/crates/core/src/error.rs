use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid site list")]
    InvalidSites,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix")]
    Singular,

    #[error("dense register of dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("operators do not anticommute (residual {0:.3e})")]
    NotAnticommuting(f64),

    #[error("domain violation: {0}")]
    Domain(String),

    /// A named family constraint, e.g. `|p|=1`, does not hold.
    #[error("{0} violated")]
    Constraint(String),

    #[error("{what} (residual {residual:.3e})")]
    Precondition { what: String, residual: f64 },

    #[error("M incompatible with Y(μ) (commutator residual {0:.3e})")]
    IncompatibleSpectral(f64),

    #[error("branch singularity")]
    BranchSingularity,

    #[error("solver did not converge after {iterations} iterations (best residual {best:.3e})")]
    NoConvergence { iterations: usize, best: f64 },

    #[error("eigenvalue iteration did not converge after {0} iterations")]
    EigenNoConvergence(usize),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("entry count mismatch")]
    EntryCount,

    #[error("malformed matrix file: {0}")]
    Parse(String),

    #[error("non-finite value at ({0}, {1})")]
    NonFinite(usize, usize),

    #[error("duplicate family id `{0}`")]
    DuplicateId(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
