use thiserror::Error;

use crate::minimality::Witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational {0:?}: expected \"p/q\" or \"n\"")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("breakpoints and values differ in length ({breakpoints} vs {values})")]
    LengthMismatch { breakpoints: usize, values: usize },
    #[error("a function needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoints must start at 0 and end at 1")]
    NotSpanning,
    #[error("breakpoints are not strictly increasing at position {0}")]
    NotIncreasing(usize),
    #[error("values at 0 and 1 differ; the function is not periodic")]
    NotPeriodic,
    #[error("f must lie strictly between 0 and 1")]
    FOutOfRange,
    #[error("derivative undefined at breakpoint {0}")]
    AtBreakpoint(String),
    #[error("function has a single slope value")]
    DegenerateFunction,
    #[error("breakpoints do not lie on the grid (1/{0})Z")]
    BreakpointsNotOnGrid(usize),
    #[error("every slack on the grid is zero")]
    AllSlacksZero,
    #[error("f is not an element of the group (1/{0})Z/Z")]
    FNotInGroup(usize),
    #[error("function is not minimal: {0}")]
    NotMinimal(Box<Witness>),
    #[error("{0} is not a multiple of {1}")]
    NotADivisor(usize, usize),
    #[error("f maps to 0 under the quotient map")]
    FInKernel,
    #[error("chosen f index {0} does not map to the source f")]
    FNotPreimage(usize),
    #[error("invalid m: {0}")]
    BadM(String),
    #[error("function takes value 0 at {0}; strict positivity away from 0 is required")]
    StrictPositivityRequired(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("group function is not subadditive at ({0}, {1})")]
    NotSubadditive(usize, usize),
    #[error("grid size exceeds machine range")]
    GridTooLarge,
    #[error("invalid group function: {0}")]
    InvalidGroupFunction(String),
    #[error("construction failed its own checks: {0:?}")]
    VerificationFailed(Vec<String>),
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
