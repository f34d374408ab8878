//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enum. Variant names follow the failure they describe;
/// several are shared across modules (e.g. `UnsupportedPrime` is raised both
/// when building a finite field and when classifying a rational model).
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration budget exceeded: field order {order} above budget {budget}")]
    BudgetExceeded { order: u128, budget: u64 },

    #[error("singular curve: discriminant vanishes")]
    SingularCurve,

    #[error("singular input model: discriminant vanishes")]
    SingularInput,

    #[error("unsupported prime {0}: only odd primes p >= 5 are handled")]
    UnsupportedPrime(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("not ordinary: p divides the trace, so no unit root exists")]
    NotOrdinary,

    #[error("zero input where a nonzero value is required")]
    ZeroInput,

    #[error("degenerate quadratic field: the trivial square class is the base field itself")]
    DegenerateField,

    #[error("search exhausted: found {found} of {wanted} requested solutions")]
    ExhaustedSearch { found: usize, wanted: usize },

    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    #[error("precision loss: value indistinguishable from zero at precision {0}")]
    PrecisionLoss(u32),

    #[error("additive reduction without a potential-type resolution")]
    AdditiveUnresolved,

    #[error("insufficient profile: {0}")]
    InsufficientProfile(String),

    #[error("CM / formal-CM status unknown but required: {0}")]
    UnknownCmStatus(String),

    #[error("unresolved profile: additive reduction could not be resolved to a potential type")]
    UnresolvedProfile,

    #[error("equal primes ({0}): the cross-prime rule needs two distinct primes")]
    SamePrime(u64),

    #[error("extension descriptor insufficient: missing {0}")]
    DescriptorInsufficient(String),

    #[error("witness not found within the sampling budget: {0}")]
    WitnessNotFound(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("conflicting annotation: {0}")]
    ConflictingAnnotation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
