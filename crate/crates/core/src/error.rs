use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("both arguments are zero")]
    BothZero,
    #[error("Laurent polynomial (negative exponent) not allowed here")]
    LaurentInput,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial vanishes modulo {0}")]
    VanishesModPrime(u64),
    #[error("coefficient denominator is divisible by {0}")]
    DenominatorDivisible(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("empty interval: lower bound must be below upper bound")]
    EmptyInterval,
    #[error("modulus is not irreducible over Q: {0}")]
    ReducibleModulus(String),
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("elements belong to different number fields")]
    MixedFields,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unknown generator letter '{0}'")]
    UnknownLetter(char),
    #[error("zero argument not allowed: {0}")]
    ZeroArgument(&'static str),
    #[error("polynomial has zero constant term after normalization")]
    ZeroConstantTerm,
    #[error("polynomial is Azumaya negative; no finite bad-prime set exists")]
    AzumayaNegative,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("reducible representation (r = 0)")]
    ReducibleRepresentation,
}

pub type Result<T> = std::result::Result<T, Error>;
