//! Crate-wide error type.

/// Errors produced by constructors and operations in this crate.
///
/// Every failure is loud: no operation silently repairs invalid data or
/// truncates a computation that exceeded a configured bound.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A scalar field was requested at a non-prime characteristic.
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    /// A carrier or enumeration size exceeded a configured bound.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    /// A point function failed the continuity check of its claimed domain
    /// and codomain structures.
    #[error("not continuous: {0}")]
    NotContinuous(String),

    /// A map expected to extend to a linear morphism failed linearity or
    /// the extension failed continuity.
    #[error("not linearizable: {0}")]
    NotLinearizable(String),

    /// Two independently computed constructions of the same datum disagree.
    #[error("mismatched constructions: {0}")]
    MismatchedConstructions(String),

    /// The enrichment derived from monoidal data disagrees with the direct
    /// enrichment.
    #[error("enrichment mismatch: {0}")]
    EnrichmentMismatch(String),

    /// A completion loop did not stabilize within its iteration budget.
    #[error("iteration budget exhausted after {0} rounds")]
    IterationBudgetExhausted(usize),

    /// Arguments with incompatible dimensions or carrier sizes were mixed.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A structure failed one of its defining axioms at construction time.
    #[error("axiom violation: {0}")]
    AxiomViolation(String),

    /// Malformed external input (JSON, CLI arguments, …).
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Invalid(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
