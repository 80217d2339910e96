//! Errors raised by scalar, polynomial and root-finding routines.

use alloc::string::String;

use super::poly::Var;
use super::scalar::Mode;

/// Failure of a `numkit` operation.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum NumError {
    /// Operands live in different arithmetic modes.
    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch {
        /// Mode of the left operand.
        left: Mode,
        /// Mode of the right operand.
        right: Mode,
    },
    /// Operands are polynomials in different variables.
    #[error("variable mismatch: {left} vs {right}")]
    VarMismatch {
        /// Variable of the left operand.
        left: Var,
        /// Variable of the right operand.
        right: Var,
    },
    /// Root finding was asked for a polynomial with no roots to find.
    #[error("root finding needs degree >= 1, got {0}")]
    DegreeTooLow(&'static str),
    /// Division by the zero polynomial or a zero scalar.
    #[error("division by zero")]
    DivisionByZero,
    /// A value could not be represented (NaN or infinity).
    #[error("non-finite value")]
    NonFinite,
    /// Matrix balancing or eigenvalue iteration overflowed.
    #[error("numerical failure: {0}")]
    Numerical(&'static str),
    /// A literal could not be parsed as a rational number.
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}
