use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live over different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands belong to different algebras ({0} vs {1})")]
    MixedAlgebras(String, String),
    #[error("slot {slot} out of range 1..={arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("slot {0} is targeted twice")]
    SlotCollision(usize),
    #[error("result needs {requested} scalars, budget is {budget}")]
    BudgetExceeded { requested: u128, budget: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cochain degree {0} is outside the complex (degrees start at -1)")]
    DegreeOutOfRange(i64),
    #[error("cannot contract a form of degree 0")]
    DegreeUnderflow,
    #[error("carrier not closed: {0}")]
    CarrierClosure(String),
    #[error("composite of degree {degree} exceeds the truncation (max degree {max})")]
    Truncated { degree: i64, max: i64 },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("io error: {0}")]
    Io(String),
}
