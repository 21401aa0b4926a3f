use crate::puiseux::Exponent;

/// Errors raised by the series, field and equation operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("series is not a unit: constant coefficient is zero")]
    NonUnit,
    #[error("composition undefined: inner series has nonzero constant term")]
    CompositionUndefined,
    #[error("substitution needs a finite degree bound in the eliminated variable")]
    UnboundedSubstitution,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no nonzero coefficient found below exponent {bound}; cannot invert")]
    UndecidedZero { bound: Exponent },
    #[error("membership of coordinate {coordinate} is undecided through exponent {bound}")]
    IndeterminateMembership { coordinate: usize, bound: Exponent },
    #[error("point lies outside the disc |z| <= t")]
    OutsideDisc,
    #[error("step h must be nonzero")]
    ZeroStep,
    #[error("step h must have valuation at least 1")]
    StepTooLarge,
    #[error("singular equation: A(0) = B(0) = 0")]
    SingularEquation,
    #[error("recurrence pivot B(0) + n*A'(0) vanishes at n = {index}")]
    ResonantEquation { index: usize },
    #[error("initial value required: A(0) != 0 gives an initial value problem")]
    MissingInitialValue,
    #[error("initial value not allowed: A(0) = 0, B(0) != 0 determines the solution")]
    UnexpectedInitialValue,
    #[error("uniqueness requires the A(0) = 0, B(0) != 0 regime")]
    NotUniqueRegime,
    #[error("candidate {which} has nonzero residual at index {index}")]
    NonzeroResidual { which: &'static str, index: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
