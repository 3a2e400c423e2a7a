use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotAPrimePower: {0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("FieldTooLarge: q = {q} exceeds the field bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("DivisionByZero: zero has no multiplicative inverse")]
    DivisionByZero,
    #[error("InvalidTuple: {0}")]
    InvalidTuple(String),
    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),
    #[error("RankDeficient: matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("EnumerationBudgetExceeded: {what} needs {needed} but the budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: String,
        budget: u64,
    },
    #[error("RangeError: {0}")]
    Range(String),
    #[error("NotApplicable: {0}")]
    NotApplicable(String),
    #[error("NondegeneracyViolation: {0}")]
    Nondegeneracy(String),
    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl ToString, budget: u64) -> Self {
        Error::BudgetExceeded {
            what,
            needed: needed.to_string(),
            budget,
        }
    }
}
