use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("extension degree {0} is outside 2..=16")]
    InvalidDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {m}")]
    ModulusDegree { modulus: u32, m: u32 },
    #[error("modulus {0:#x} is reducible over F_2")]
    ReducibleModulus(u32),
    #[error("generator {0:#x} is not a primitive element")]
    NotPrimitive(u32),
    #[error("element {bits:#x} does not fit in GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },
    #[error("Frobenius exponent {k} must be below the extension degree {m}")]
    InvalidExponent { k: u32, m: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operands belong to different skew polynomial rings")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("X^{m} - 1 does not generate a two-sided ideal: {reason}")]
    NonCentralModulus { m: usize, reason: String },
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("delta and theta do not commute")]
    NonCommutingDerivation,
    #[error("operation requires the zero derivation")]
    DerivationNotZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("matrix is not a 0/1 permutation matrix")]
    NotPermutation,
    #[error("diagonal entries are not fixed by theta")]
    EntriesNotFixed,
    #[error("polynomial is not a right divisor of X^{0} - 1")]
    NotDivisor(usize),
    #[error("polynomial is not invertible modulo X^{0} - 1")]
    NotInvertible(usize),
    #[error("matrix order {order} exceeds the MDS check limit {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("search space of {size} candidates exceeds the limit {max}")]
    SearchSpaceTooLarge { size: u128, max: u128 },
    #[error("base polynomial does not yield a quasi-recursive MDS matrix")]
    BaseNotMds,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}
