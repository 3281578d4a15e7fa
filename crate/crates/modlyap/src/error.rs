use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not in SL(2, N0): {0}")]
    NotInMonoid(String),
    #[error("matrix is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
    #[error("word is not strict: {0}")]
    NotStrict(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("words are equal as periodic continued fractions")]
    EqualWords,
    #[error("fractions {0} and {1} are not Farey neighbours")]
    NotNeighbors(String, String),
    #[error("invalid continued fraction: {0}")]
    InvalidCf(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("not a consecutive triple: {0}")]
    NotConsecutive(String),
    #[error("bad index range {r}..={s}")]
    BadRange { r: usize, s: usize },
    #[error("quadrature did not converge: order {order} gives {coarse}, order {fine} gives {refined}")]
    QuadratureNotConverged { order: usize, fine: usize, coarse: f64, refined: f64 },
    #[error("integration path dips to height {height} below the guard {guard}")]
    PathTooLow { height: f64, guard: f64 },
    #[error("no exponent a <= {a_max} brings Re I(TV^a)/(a+1) below the target")]
    NoSuchA { a_max: u64 },
    #[error("polynomial identity failed: {0}")]
    IdentityFailed(String),
    #[error("monotonicity violated in {name} at x = {x}, t = {t}")]
    MonotonicityViolated { name: String, x: f64, t: f64 },
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("triangle inequality violated: {0}")]
    TriangleViolated(String),
    #[error("convexity violated: {0}")]
    ConvexityViolated(String),
    #[error("no data")]
    EmptyData,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
