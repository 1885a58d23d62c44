//! Error type shared across the engine.

use alloc::string::String;
use core::fmt;

/// Errors produced by constructors and operations.
///
/// Axiom *failures* are not errors: validators report them as structured
/// reports with witnesses.  Errors signal misuse (mismatched spaces, bad
/// arities, unknown labels) or exceeded resource budgets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreError {
    /// Two values that must live over the same graded space do not.
    SpaceMismatch { context: &'static str },
    /// A label or basis index does not belong to the space.
    UnknownBasisElement { space: String, index: usize },
    /// Duplicate label in a basis.
    DuplicateLabel { label: String },
    /// Permutation and degree list disagree, or the permutation is not a
    /// bijection.
    BadPermutation,
    /// An arity pair that the operation forbids, e.g. (0,0) components.
    ForbiddenArity { l: u32, k: u32 },
    /// Expected a cochain supported at closed arity zero only.
    NotOpenOnly,
    /// Expected a homogeneous cochain.
    Inhomogeneous { context: &'static str },
    /// Wrong shifted degree for the requested structure.
    WrongDegree { expected: i64, context: &'static str },
    /// The requested truncation would allocate more cells than the budget.
    CellBudgetExceeded { needed: usize, budget: usize },
    /// A product of cohomology classes would leave the truncation window.
    WeightOverflow { needed: i64, cap: i64 },
    /// A vector that must be a cocycle in the truncated complex is not.
    NotACocycle { context: &'static str },
    /// A cochain does not project into the truncated complex.
    OutsideComplex { context: &'static str },
    /// Division by zero in exact linear algebra.
    DivisionByZero,
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::SpaceMismatch { context } => {
                write!(f, "graded space mismatch in {context}")
            }
            CoreError::UnknownBasisElement { space, index } => {
                write!(f, "basis index {index} not in space {space}")
            }
            CoreError::DuplicateLabel { label } => {
                write!(f, "duplicate basis label {label}")
            }
            CoreError::BadPermutation => write!(f, "not a permutation of the degree list"),
            CoreError::ForbiddenArity { l, k } => {
                write!(f, "forbidden arity pair (l, k) = ({l}, {k})")
            }
            CoreError::NotOpenOnly => {
                write!(f, "expected a cochain supported at closed arity 0 only")
            }
            CoreError::Inhomogeneous { context } => {
                write!(f, "expected a homogeneous cochain in {context}")
            }
            CoreError::WrongDegree { expected, context } => {
                write!(f, "expected shifted degree {expected} in {context}")
            }
            CoreError::CellBudgetExceeded { needed, budget } => {
                write!(f, "truncated complex needs {needed} cells, budget is {budget}")
            }
            CoreError::WeightOverflow { needed, cap } => {
                write!(
                    f,
                    "product needs weight window {needed} but the complex is truncated at {cap}"
                )
            }
            CoreError::NotACocycle { context } => {
                write!(f, "representative is not a cocycle in {context}")
            }
            CoreError::OutsideComplex { context } => {
                write!(f, "cochain does not lie in the truncated complex in {context}")
            }
            CoreError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl core::error::Error for CoreError {}
