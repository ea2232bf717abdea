use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    BadConductor { from: u32, to: u32 },
    #[error("{q} is not a unit modulo {modulus}")]
    NotAUnit { q: i64, modulus: u64 },
    #[error("modulus {0} must be odd and positive")]
    BadModulus(u64),
    #[error("invalid modular datum: {0}")]
    InvalidDatum(String),
    #[error("malformed datum: {0}")]
    Structure(String),
    #[error("modular datum is not integral")]
    NotIntegral,
    #[error("no unique index matches the Galois image of row {index} under q = {q}")]
    NoUniqueMatch { q: i64, index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("element is not a root of unity")]
    NotRootOfUnity,
    #[error("order {0} is even; only odd orders are supported")]
    EvenOrder(u64),
    #[error("exponent {0} is even")]
    EvenExponent(u64),
    #[error("neither sign relates g and t_o^2 g'")]
    SignMismatch,
    #[error("datum is not Galois (q = {q}, index {index})")]
    NotGalois { q: i64, index: usize },
    #[error("{q} * {q_inv} is not 1 modulo {modulus}")]
    BadInversePair { q: i64, q_inv: i64, modulus: u64 },
    #[error("g / (n_o t_o D) is not a root of unity")]
    ChargeNotRootOfUnity,
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("central charge is not a 24th root of unity")]
    ChargeOrderTooLarge,
    #[error("group of order {order} exceeds the bound {bound}")]
    TooLarge { order: u64, bound: u64 },
    #[error("input matrix is not invertible")]
    NonInvertibleInput,
}
