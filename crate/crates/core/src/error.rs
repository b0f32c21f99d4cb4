use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the algorithms in this crate.
///
/// Variants are grouped by the subsystem that produces them; the CLI maps
/// [`Error::is_resource_guard`] to a distinct exit code.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector {0:?} is outside the closed positive cone")]
    OutsideCone(Vec<i64>),

    #[error("vector {0:?} does not lie in the lattice")]
    NotInLattice(Vec<i64>),

    #[error("lattice is not a sublattice: generator {0} has no integral coordinates")]
    NotSublattice(usize),

    #[error("translation {0:?} is not type preserving (not in the coroot lattice)")]
    NotTypePreserving(Vec<i64>),

    #[error("graph is not {expected}-regular: vertex {vertex} has degree {degree}")]
    Regularity { vertex: usize, degree: usize, expected: usize },

    #[error("graph is disconnected: vertex {0} is unreachable")]
    Disconnected(usize),

    #[error("graph is not bipartite; use the bipartite double cover")]
    NotBipartite,

    #[error("triangle presentation rejected: {reason} (triple {triple:?})")]
    Presentation { reason: String, triple: Option<[usize; 3]> },

    #[error("coset enumeration exceeded the limit of {0} cosets")]
    CosetLimit(usize),

    #[error("coset table is incomplete")]
    IncompleteTable,

    #[error("chamber system violates thickness: panel {panel} of type {kind} has {size} chambers, expected {expected}")]
    Thickness { kind: usize, panel: usize, size: usize, expected: usize },

    #[error("missing type structure: {0}")]
    MissingTypes(String),

    #[error("operators {0} and {1} do not commute (max entry deviation {2})")]
    Commutation(usize, usize, String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("walk-count methods disagree at length {length}: enumeration {enumerated}, trace {trace}")]
    OracleDisagreement { length: usize, enumerated: String, trace: String },

    #[error("translation increments did not stabilize within {0} powers")]
    NotStabilized(usize),

    #[error("word represents the identity (zero translation)")]
    IdentityWord,

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("fit residual {residual:e} above tolerance after reaching the size cap")]
    FitCap { residual: f64 },

    #[error("missing place data for {0}")]
    MissingPlace(String),
}

impl Error {
    /// True for errors caused by a size or resource limit rather than invalid input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::ResourceGuard(_) | Error::CosetLimit(_) | Error::FitCap { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
