use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the discretization and the time steppers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Grid extents or cell count are unusable.
    InvalidGrid(&'static str),
    /// Initial data sampled to a non-finite value, or a field was built with
    /// the wrong length or non-finite entries.
    InvalidInitialData { cell: usize, reason: &'static str },
    /// Piecewise description is malformed or leaves the declared bounds.
    InvalidCoefficient(&'static str),
    /// A scheme parameter violates its admissible range.
    InvalidParams(&'static str),
    /// The Engquist-Osher integral did not converge.
    FluxEvaluation { u: f64, v: f64 },
    /// No positive time step satisfies the requested CFL condition.
    CflInfeasible(&'static str),
    /// A tridiagonal row is not strictly diagonally dominant.
    DominanceViolation { row: usize },
    /// A zero pivot was met during elimination.
    SingularSystem { row: usize },
    /// Capillarity weights lost positivity, so the implicit operator is no
    /// longer dominant.
    CoefficientDegeneracy { interface: usize },
    /// A step produced NaN or infinity, typically a CFL violation.
    NonFiniteState { cell: usize },
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::FluxEvaluation { .. }
                | Error::CflInfeasible(_)
                | Error::DominanceViolation { .. }
                | Error::SingularSystem { .. }
                | Error::CoefficientDegeneracy { .. }
                | Error::NonFiniteState { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::InvalidInitialData { cell, reason } => {
                write!(f, "invalid initial data in cell {cell}: {reason}")
            }
            Error::InvalidCoefficient(why) => write!(f, "invalid coefficient: {why}"),
            Error::InvalidParams(why) => write!(f, "invalid scheme parameters: {why}"),
            Error::FluxEvaluation { u, v } => {
                write!(f, "numerical flux integral did not converge on [{u}, {v}]")
            }
            Error::CflInfeasible(why) => write!(f, "CFL condition infeasible: {why}"),
            Error::DominanceViolation { row } => {
                write!(
                    f,
                    "tridiagonal row {row} is not strictly diagonally dominant"
                )
            }
            Error::SingularSystem { row } => write!(f, "zero pivot at row {row}"),
            Error::CoefficientDegeneracy { interface } => {
                write!(f, "capillarity weight degenerate at interface {interface}")
            }
            Error::NonFiniteState { cell } => write!(f, "non-finite value in cell {cell}"),
        }
    }
}

impl core::error::Error for Error {}
