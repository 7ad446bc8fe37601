use thiserror::Error;

/// Errors raised by the toolkit. Every variant is a caller-side input problem
/// except [`Error::Internal`], which signals a broken invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight set is empty")]
    EmptySet,
    #[error("degree overflow: product of two N-dependent values")]
    DegreeOverflow,
    #[error("N must be positive, got {0}")]
    NonPositiveN(String),
    #[error("scale factor must be nonnegative, got {0}")]
    NegativeScale(String),
    #[error("one-parameter subgroup direction must be nonzero")]
    ZeroDirection,
    #[error("empty {0}")]
    EmptySupport(&'static str),
    #[error("coordinate index {index} out of range for {len} coordinates")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degree mismatch: multiplicities sum to {sum}, expected {n}")]
    DegreeMismatch { n: u32, sum: u32 },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("root multiplicities must be positive")]
    NonPositiveMultiplicity,
    #[error("linearisation needs m > 0, got m = {0}")]
    NonPositiveM(i64),
    #[error("the root at [1:0] cannot be moved by the Borel subgroup")]
    CannotMoveInfinity,
    #[error("no generic root with index {0}")]
    NoSuchRoot(usize),
    #[error("inconsistent marked data: {0}")]
    InconsistentMarking(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("slope {0} lies outside [0, n]")]
    SlopeOutOfRange(String),
    #[error("census degree {n} outside guard range 1..={max}")]
    CensusGuard { n: u32, max: u32 },
    #[error("threshold scan exhausted at N = {0}")]
    ScanExhausted(u64),
    #[error("malformed profile: {0}")]
    MalformedProfile(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
