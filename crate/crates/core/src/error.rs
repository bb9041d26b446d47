use thiserror::Error;

/// Errors surfaced by the library. Input problems and budget refusals are
/// kept apart so the CLI can map them to distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("all-zero coefficient vector")]
    ZeroCoefficients,

    #[error("face dimension {d} out of range for n = {n}")]
    FaceDimOutOfRange { n: usize, d: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension {n} exceeds bitset capacity (max {max})")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("linear program is unbounded (input not contained in the unit box)")]
    Unbounded,

    #[error("cut enumeration would need {required} candidates, budget is {budget}")]
    NormBudgetExceeded { required: num_bigint::BigInt, budget: u64 },

    #[error("polytope misses or gains 0/1 points relative to the given set (first offending vertex index {vertex})")]
    IntegerPointMismatch { vertex: u64 },

    #[error("no feasible point within Hamming distance {radius} of the sign vertex; notch precondition violated")]
    NoFeasibleInBall { radius: usize },

    #[error("gap search exceeded cap {cap}")]
    GapCapExceeded { cap: u64 },

    #[error("p/eps = {value} is not a nonnegative integer")]
    EpsNotAdmissible { value: num_rational::BigRational },

    #[error("construction self-check failed: {0}")]
    Construction(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown suite '{0}'")]
    UnknownSuite(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
