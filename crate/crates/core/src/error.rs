use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside the supported range 1..=24")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    ModulusDegree { n: u32, modulus: u64 },
    #[error("modulus {0:#x} is reducible over GF(2)")]
    ReducibleModulus(u64),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("{m} does not divide the extension degree {n}")]
    NotADivisor { m: u32, n: u32 },
    #[error("element {0:#x} is not in the requested subfield")]
    NotInSubfield(u32),
    #[error("variable counts differ: {0} vs {1}")]
    VariableMismatch(u32, u32),
    #[error("function has degree {0}, expected at most 2")]
    NotQuadratic(u32),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("quadratic form is not bent (symplectic matrix has rank {rank} < {n})")]
    NotBent { rank: u32, n: u32 },
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("invalid Gold parameter k={k} for n={n}")]
    InvalidGoldParameter { n: u32, k: u32 },
    #[error("operation requires an even number of variables, got {0}")]
    OddDegree(u32),
    #[error("fields do not match: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not a complete mapping")]
    NotCompleteMapping,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
