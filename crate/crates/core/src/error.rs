use thiserror::Error;

/// Everything that can go wrong in a computation or a CLI run.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} must exceed the degree bound {bound}")]
    PrimeTooSmall { p: u32, bound: u32 },
    #[error("form degree {degree} exceeds the session degree bound {bound}")]
    DegreeExceedsBound { degree: i64, bound: u32 },
    #[error("span columns are linearly dependent")]
    DependentSpan,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("points {0} and {1} coincide in projective space")]
    CoincidentPoints(usize, usize),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("product does not lie in the target subspace (inconsistent multiplicities)")]
    MembershipFailure,
    #[error("negative multiplicity b_{index} = {value} is outside the fat-point model")]
    NegativeMultiplicity { index: usize, value: i64 },
    #[error("Euler characteristic formula only applies when all b_i >= 0")]
    OutsideChiWindow,
    #[error("operation requires a surface (n = 2), got n = {0}")]
    RequiresSurface(usize),
    #[error("blow-up of P^{n} at {s} points is not Fano{detail}")]
    NotFano { n: usize, s: usize, detail: String },
    #[error("requires a strong del Pezzo surface (s <= 6), got s = {0}")]
    NotStrongDelPezzo(usize),
    #[error("invalid rank plan: {0}")]
    InvalidPlan(String),
    #[error("general-position test accepts at most 8 points in P^2, got {0}")]
    TooManyPoints(usize),
    #[error("instance above the dimension guard: {0}")]
    DimensionGuard(String),
    #[error("point scheme has {got} points, expected {expected}")]
    CardinalityMismatch { got: usize, expected: usize },
    #[error("presentation is not certified: {0}")]
    Uncertified(String),
    #[error("genericity failure after {} attempts (seeds {seeds:?})", seeds.len())]
    GenericityExhausted { seeds: Vec<u64> },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
