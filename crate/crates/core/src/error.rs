use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0:?} is reducible over the base field")]
    ReducibleModulus(Vec<u16>),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("field of order {0} exceeds the supported maximum 2^16")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("enumeration of {requested} states exceeds the cap of {cap}")]
    EnumerationTooLarge { requested: u128, cap: u128 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("rank distance needs at least two codewords")]
    CodeTooSmall,
    #[error("matrix is not of full rank")]
    NotFullRank,
    #[error("code is not of the form (x | f(x)): {0}")]
    NotRepresentable(String),
    #[error("distribution support is empty")]
    EmptySupport,
    #[error("support contains a matrix that is not of full rank")]
    NotFullRankSupport,
    #[error("point set is not a design: {0}")]
    NotADesign(String),
    #[error("extension field does not match the matrix shape: {0}")]
    BasisMismatch(String),
    #[error("points are equal")]
    EqualPoints,
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("declared property does not hold: {0}")]
    PropertyNotVerified(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
