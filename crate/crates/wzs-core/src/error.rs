use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order {order} exceeds cap {cap}")]
    OrderCapExceeded { order: u128, cap: u64 },
    #[error("invariant factor {0} is smaller than 2")]
    InvalidFactor(u64),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("weight set is empty")]
    EmptyWeightSet,
    #[error("endomorphism is not well defined on the given group")]
    IllFormedEndomorphism,
    #[error("sequence is not a member of the monoid")]
    NotInMonoid,
    #[error("sequence is not a subsequence of the divisor")]
    NotASubsequence,
    #[error("sequence is not an atom of the monoid")]
    NotAnAtom,
    #[error("factorizations belong to different monoid handles")]
    HandleMismatch,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("weight set does not contain both id and -id")]
    WeightSetLacksPM,
    #[error("weight set is not a group of automorphisms")]
    WeightSetNotGroup,
    #[error("group shape unsupported: {0}")]
    GroupShapeUnsupported(String),
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("form is not primitive")]
    NotPrimitive,
    #[error("form has wrong sign or discriminant (need a > 0, discriminant < 0)")]
    WrongSign,
    #[error("forms have different discriminants")]
    DiscriminantMismatch,
    #[error("{0} is not a valid discriminant (need negative, 0 or 1 mod 4)")]
    BadDiscriminant(i64),
    #[error("prime {0} divides the conductor")]
    PrimeDividesConductor(i64),
    #[error("{0} has a prime factor that is inert or divides the conductor")]
    NotInNPrime(i64),
    #[error("{0} is not represented by the principal class")]
    NotInRcirc(i64),
    #[error("composition table inconsistency: {0}")]
    CompositionInconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}
