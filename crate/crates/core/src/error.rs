use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero at the evaluation point")]
    DivisionByZero,
    #[error("pole of order {order} at v = -1 survives clearing order {cleared}")]
    PoleRemains { order: u32, cleared: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("zero charge on {0:?}")]
    ZeroCharge(Vec<i64>),
    #[error("charges do not lie in a common open half-plane")]
    NotInHalfPlane,
    #[error("non-generic charge: {0}")]
    NonGenericCharge(String),

    #[error("operands live in different arenas")]
    ArenaMismatch,
    #[error("constant term is not invertible")]
    NonInvertible,
    #[error("wrong constant term for {0}")]
    WrongConstantTerm(&'static str),
    #[error("argument is not supported on a single ray")]
    MultiRay,
    #[error("lattice point {0:?} lies outside the truncation")]
    OutsideTruncation(Vec<i64>),

    #[error("degree defect at {0:?} is not of the form <gamma, g> h")]
    InconsistentDefect(Vec<i64>),
    #[error("direction {0:?} pairs trivially with the lattice; double the lattice first")]
    DegenerateDirection(Vec<i64>),

    #[error("quiver has an oriented cycle")]
    CyclicQuiver,
    #[error("quiver is not a cluster quiver: {0}")]
    NonCluster(String),

    #[error("budget exceeded: {needed} needed, {budget} allowed")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("tangential crossing on segment {segment}")]
    NonTransversal { segment: usize },
    #[error("path leaves the configuration space: {0}")]
    Collision(String),
    #[error("non-generic path: {0}")]
    NonGenericPath(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
