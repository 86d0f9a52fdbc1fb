//! Numerical criteria for homomorphisms and embeddings of semi-simple
//! algebras, conjugacy-orbit counting, and the local-global obstruction
//! for embedding a field into a central simple algebra over a global field.
//!
//! Everything works with exact integer and `Q/Z` arithmetic on the
//! numerical invariants (degrees, matrix sizes, Brauer invariants); no
//! number fields are ever constructed.

pub mod arith;
pub mod brauer;
pub mod charpoly;
pub mod embed;
pub mod hasse;
pub mod model;
pub mod orbit;
pub mod selftest;

/// Errors shared by all solvers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("local invariants do not sum to zero in Q/Z")]
    SumNotZero,
    #[error("invariant at archimedean place {place} is out of range")]
    ArchimedeanViolation { place: String },
    #[error("index {index} does not divide degree {degree}")]
    IndexExceedsDegree { index: u64, degree: u64 },
    #[error("duplicate place label {0}")]
    DuplicatePlace(String),
    #[error("no splitting data for place {place} with nontrivial local index")]
    MissingSplittingData { place: String },
    #[error("m*[D:F] = {m_dim_d} is not divisible by [Delta:F] = {dim_delta}")]
    NonIntegralEll { m_dim_d: u64, dim_delta: u64 },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u64, got: u64 },
    #[error("extension degree {k} does not divide deg(A) = {degree}")]
    DegreeNotDividing { k: u64, degree: u64 },
    #[error("factor degree {a_deg} is not a multiple of the index {d}")]
    NonIntegralN { a_deg: u64, d: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T> = std::result::Result<T, Error>;
