//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CpmError {
    #[error("level mismatch: operands have N = {0} and N = {1}")]
    LevelMismatch(u32, u32),

    #[error("closure exceeded the cap of {cap} elements after {reached} were found")]
    ClosureOverflow { cap: usize, reached: usize },

    #[error("subgroup is not normal: witness g = {witness}")]
    NotNormal { witness: String },

    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),

    #[error("composition convention check failed: neither ordering satisfies the defining relation")]
    ConventionFailure,

    #[error("point is not on the degree-2N Fermat surface (residual {0:.3e})")]
    NotOnSurface(f64),

    #[error("invariant map is indeterminate at this point ({0})")]
    Indeterminate(String),

    #[error("base parameter is degenerate ({0})")]
    DegenerateBase(String),

    #[error("base parameter is smooth; operation requires a degenerate base")]
    SmoothBase,

    #[error("branch points of the cyclic cover collide (base too close to a degenerate parameter)")]
    BranchCollision,

    #[error("Im(tau) = {0} is too small for the requested precision")]
    PrecisionLoss(f64),

    #[error("line re-indexing failed: transformed form does not match any family pattern")]
    ReindexFailure,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, CpmError>;
