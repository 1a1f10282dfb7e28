use thiserror::Error;

use crate::trig::Variable;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponents differ by a non-integer amount: sin^{0} cos^{1} vs sin^{2} cos^{3}")]
    IncompatibleExponents(String, String, String, String),
    #[error("cannot combine a {0:?}-type function with a {1:?}-type function")]
    VariableMismatch(Variable, Variable),
    #[error("functions are not proportional")]
    NotProportional,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("denominator vanishes at x = {0}")]
    PoleAtPoint(String),
    #[error("fractional power of a negative base at x = {0}")]
    OutsideDomain(String),
    #[error("invalid model parameters: {0}")]
    InvalidParameters(String),
    #[error("{0} leaves the physical ladder")]
    OutOfLadder(String),
    #[error("norm ratio between {0} and {1} is not rational (theta parameters differ by a non-integer)")]
    IncommensurateStates(String, String),
    #[error("operation requires {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
