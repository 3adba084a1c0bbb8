use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the two lines are identical")]
    IdenticalLines,
    #[error("a line through two points needs two distinct points")]
    EqualPoints,
    #[error("flat direction vectors are linearly dependent")]
    DegenerateFlat,
    #[error("linear map is singular")]
    SingularMap,
    #[error("lambda must lie in [0, 1), got {0}")]
    LambdaOutOfRange(String),
    #[error("direction {0} is a pole (0 or infinity) and has no argument")]
    PoleDirection(String),
    #[error("center of the scaling map must have modulus one")]
    CenterOffCircle,
    #[error("no lambda below one reaches the target of {target} points (max {reached})")]
    Unbalanceable { target: usize, reached: usize },
    #[error("count of Γ-points decreased from {before} to {after} as lambda grew")]
    MonotonicityViolation { before: usize, after: usize },
    #[error("no N-point class is nonempty")]
    EmptySelection,
    #[error("direction samples are {0:.4} degrees apart, need at least 5")]
    TooClose(f64),
    #[error("duplicate input: {0}")]
    DuplicateInput(String),
    #[error("zero is not allowed in the set")]
    ZeroElement,
    #[error("a pattern needs at least two distinct points")]
    TooSmallPattern,
    #[error("duplicate points in covering input")]
    DuplicatePoints,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("inner cube is not nested in the outer cube's subdivision")]
    NotNested,
    #[error("cubes {0} and {1} overlap")]
    OverlappingInput(usize, usize),
    #[error("no usable cube in the cover")]
    TooFewPoints,
    #[error("spread of {0} degrees is outside [0, 10)")]
    SpreadTooLarge(f64),
    #[error("coordinate too large for the integer grid")]
    CoordinateOverflow,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
