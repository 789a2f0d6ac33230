use thiserror::Error;

use crate::scalar::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("unknown ring `{0}` (expected Z, Q, GF:p or ZT)")]
    Unknown(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} too large")]
    ModulusTooLarge(u64),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolutionError {
    #[error("tables are not square of a common size: {0}")]
    ShapeMismatch(String),
    #[error("sigma is not bijective: ({0},{1}) and ({2},{3}) have the same image")]
    NotBijective(usize, usize, usize, usize),
    #[error("Yang-Baxter equation fails on the triple ({0},{1},{2})")]
    YbeViolated(usize, usize, usize),
    #[error("not a rack: {axiom} fails at {witness:?}")]
    NotARack { axiom: &'static str, witness: Vec<usize> },
    #[error("unknown built-in solution `{0}`")]
    UnknownName(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("solution is not involutive: sigma^2({0},{1}) != ({0},{1})")]
    NotInvolutive(usize, usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("ring {0} is not a field")]
    NotAField(Ring),
    #[error("operation needs integer matrices, got {0}")]
    NotIntegers(Ring),
    #[error("boundaries do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring {0} is not supported here")]
    Unsupported(Ring),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("quotient not stable under the boundary: image of {witness} in degree {degree} leaves the degenerate span")]
    QuotientNotStable { degree: usize, witness: String },
    #[error("variant inadmissible: {0}")]
    VariantInadmissible(String),
    #[error("coefficient system inadmissible: {0}")]
    CoefficientInadmissible(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("cochain has degree {0}, expected {1}")]
    DegreeMismatch(usize, usize),
    #[error("cochain takes the value zero at {0:?}")]
    ZeroValue(Vec<usize>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CupError {
    #[error("cup products are defined for trivial coefficients only")]
    NonTrivialCoefficients,
    #[error("cochains live over different rings: {0} vs {1}")]
    RingMismatch(Ring, Ring),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("permutation acts on {0} letters but the tensor has degree {1}")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Solution(#[from] SolutionError),
    #[error("bad cochain key `{0}`")]
    BadKey(String),
}
