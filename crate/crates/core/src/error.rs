use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported modulus {0}: need a prime 2 <= p <= 97")]
    UnsupportedPrime(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("variable tag mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("element is not integral")]
    NotIntegral,
    #[error("invalid extension: {0}")]
    InvalidSpec(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("root {0} does not satisfy the minimal polynomial")]
    NotARoot(usize),
    #[error("roots {0} and {1} coincide")]
    DuplicateRoot(usize, usize),
    #[error("composition of roots {0} and {1} is not a root")]
    NotClosed(usize, usize),
    #[error("conjugates not found: {0}")]
    RootsNotFound(String),
    #[error("additivity violated: {0}")]
    AdditivityViolation(String),
    #[error("span condition violated: a nontrivial combination of the points vanishes")]
    SpanConditionViolated,
    #[error("character is trivial on the wild center")]
    CharacterNotWild,
    #[error("inner product with the trivial character is not integral")]
    NonIntegralInnerProduct,
    #[error("integrality failure: {0}")]
    IntegralityFailure(String),
    #[error("conductor part is not a rational integer")]
    NonIntegerConductorPart,
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("intermediate field unavailable: {0}")]
    IntermediateFieldUnavailable(String),
    #[error("zero tensor has no order")]
    ZeroTensor,
    #[error("negative dimension: {0}")]
    NegativeDimension(String),
    #[error("element does not lie in the base field")]
    NotInBaseField,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors that report a violated mathematical identity rather
    /// than bad input.
    pub fn is_mismatch(&self) -> bool {
        matches!(
            self,
            Error::IdentityViolated(_)
                | Error::IntegralityFailure(_)
                | Error::AdditivityViolation(_)
                | Error::NonIntegerConductorPart
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
