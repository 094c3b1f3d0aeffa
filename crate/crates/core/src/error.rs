use thiserror::Error;

/// Errors raised by the counting and asymptotic routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series has no multiplicative inverse (zero constant term)")]
    NotInvertible,
    #[error("constant term violates the precondition: {0}")]
    ConstantTermViolation(String),
    #[error("inner series of a composition must have zero constant term")]
    NotComposable,
    #[error("leading coefficient power is not rational: {0}")]
    NonRationalLeadingPower(String),
    #[error("term of excess {k} carries an odd half-pole {half_pole}")]
    HalfPoleResidue { k: usize, half_pole: i64 },
    #[error("term of excess {k} has pole order {half_pole}/2 above the bound 3k")]
    PoleOrderExceeded { k: usize, half_pole: i64 },
    #[error("cannot add t-rationals whose half-poles differ in parity ({0} vs {1})")]
    MixedParity(i64, i64),
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("expected an integer, got {0}")]
    NonIntegral(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid excess {0}, need k >= -1")]
    InvalidExcess(i64),
    #[error("saddle point needs a positive ratio k/n, got {0}")]
    NonPositiveRatio(String),
    #[error("root finder did not converge: {0}")]
    ConvergenceFailure(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("need at least 3 grid points for extrapolation, got {0}")]
    InsufficientGrid(usize),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
