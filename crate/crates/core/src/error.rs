use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure mode of the library.
///
/// `Infeasible` and `SingularityReached` are *expected* outcomes during a
/// parameter search (the candidate is simply discarded); the remaining
/// variants indicate invalid input or a failed computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A parameter tuple lies outside the admissible set (a cut-off function
    /// cannot be constructed for it).
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    /// The comparison function `1 - Ỹ` reached zero on the time partition,
    /// so the `Λ` integral bound is not available.
    #[error("numerical singularity: {0}")]
    SingularityReached(String),
    /// The search grid never entered the admissible set.
    #[error("no feasible candidate: {0}")]
    NoFeasibleCandidate(String),
    /// The PDE time step underflowed before the quenching threshold.
    #[error("time stepping failed: {0}")]
    NonConvergence(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
}
