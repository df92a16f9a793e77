use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BabaiError {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A coloring recipe does not cover the requested case.
    #[error("recipe not applicable: {0}")]
    Inapplicable(String),

    /// The requested witness cannot exist for these parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("no closed form known for {0}")]
    NoClosedForm(String),

    #[error("budget exceeded: estimated cost {cost} > ceiling {ceiling}")]
    BudgetExceeded { cost: u128, ceiling: u128 },
}

pub type Result<T, E = BabaiError> = std::result::Result<T, E>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::BabaiError::Domain(format!($($arg)*)) };
}

macro_rules! inapplicable {
    ($($arg:tt)*) => { $crate::error::BabaiError::Inapplicable(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use inapplicable;
