use thiserror::Error;

/// Errors raised by the arithmetic and class-field routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field GF({p}^{n}): need p prime <= 13 and 1 <= n <= 12")]
    UnsupportedField { p: u32, n: u32 },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{n})")]
    NotSubfield { p: u8, sub: u8, n: u8 },

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("zero input where a nonzero element is required")]
    ZeroInput,

    #[error("element of valuation {0} is not a prime element")]
    NotPrime(i64),

    #[error("dy/dt vanishes identically; dx/dy is undefined")]
    UndefinedDerivative,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("maps do not form a short exact sequence: {0}")]
    NotExact(String),

    #[error("quotient is not finite")]
    InfiniteQuotient,

    #[error("x lies in the image of the Artin-Schreier operator; the extension is trivial")]
    DegenerateExtension,

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arithmetic overflow in integer linear algebra")]
    Overflow,
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
