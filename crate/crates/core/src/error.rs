use thiserror::Error;

/// Errors raised by the kernel.
///
/// Every variant names the offending object so that command-line reports can
/// point at the exact element, overlap or tuple that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed scalar {0:?}")]
    MalformedScalar(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("not a commutative unital associative algebra: {0}")]
    NotAnAlgebra(String),

    #[error("not an algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("degenerate zero algebra: {0}")]
    DegenerateAlgebra(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("operation requires an algebra carrier, got a bare module")]
    NotAlgebraCarrier,

    #[error("evaluator output is not homogeneous of degree {degree}: found monomial {monomial}")]
    NotHomogeneous { degree: usize, monomial: String },

    #[error("law is not multiplicative: {0}")]
    NotMultiplicative(String),

    #[error("{factorial}! is not invertible in characteristic {characteristic}")]
    Characteristic { factorial: usize, characteristic: u64 },

    #[error("not a degree-{degree} trace: {reason}")]
    NotATrace { degree: usize, reason: String },

    #[error("law does not factor through the Cayley-Hamilton quotient: {0}")]
    FactorizationFailed(String),

    #[error("residue field presentation rejected: {0}")]
    NotAField(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("transition on overlap {0:?} is not invertible")]
    NonInvertibleTransition(Vec<usize>),

    #[error("cocycle condition fails on {0:?}")]
    CocycleCondition(Vec<usize>),

    #[error("malformed projective point: {0}")]
    MalformedProjectivePoint(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
