use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different fields ({0} and {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("unknown field `{0}` (expected Q or F<q>)")]
    UnknownField(String),
    #[error("rational {value} cannot be reduced modulo {q}")]
    NonReducibleModQ { value: String, q: u64 },
    #[error("series have {0} and {1} variables")]
    DimensionMismatch(usize, usize),
    #[error("order is indeterminate: series vanishes modulo m^{precision}")]
    IndeterminateOrder { precision: i64 },
    #[error("series is not a unit")]
    NotAUnit,
    #[error("cannot raise precision from {current} to {requested}")]
    PrecisionIncrease { current: i64, requested: i64 },
    #[error("lowest form is not the square of a monomial")]
    NotASquareLeadingForm,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("precision {given} too low, need more than {needed}")]
    PrecisionTooLow { given: i64, needed: i64 },
    #[error("all x values are equal; no affine fit")]
    DegenerateInput,
    #[error("no square obstruction found below degree {0}")]
    SearchBudgetExceeded(i64),
    #[error("enumeration of {needed} candidates exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("jet order {jet_order} too small: beta >= {lower_bound}")]
    NoSuchB { jet_order: u32, lower_bound: u32 },
    #[error("i = {0} is odd; use i - 1 and monotonicity")]
    BadParity(u32),
    #[error("syntax error at {line}:{col}: {message}")]
    SyntaxError { line: usize, col: usize, message: String },
    #[error("unknown variable `{name}` at {line}:{col}")]
    UnknownVariable { name: String, line: usize, col: usize },
    #[error("negative exponent at {line}:{col}")]
    NegativeExponent { line: usize, col: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
