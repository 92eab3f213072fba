use thiserror::Error;

/// Errors produced anywhere in the lab.
///
/// Numerical failures (`NoConvergence`, `ToleranceNotReached`) are kept apart
/// from exact-arithmetic and input errors so drivers can map them to distinct
/// exit codes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series does not terminate: no numerator parameter is a nonpositive integer")]
    NonTerminating,
    #[error("denominator vanishes at term {index}")]
    DenominatorPole { index: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("invalid recurrence: {0}")]
    InvalidRecurrence(String),
    #[error("basis is not graded: element {index} has the wrong degree")]
    BasisNotGraded { index: usize },
    #[error("parameter outside family domain: {0}")]
    ParameterDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("recurrence table has a gap: expected n = {expected}, found {found}")]
    GapInIndices { expected: usize, found: usize },
    #[error("recurrence table has nonpositive b at n = {n}")]
    NonpositiveB { n: usize },
    #[error("recurrence table does not reach n = {0}")]
    OutOfTable(usize),
    #[error("formula error: {0}")]
    Formula(String),
    #[error("parameters {0:?} do not share a common parity")]
    ParityViolation([u32; 4]),
    #[error("series outside its convergence domain: {0}")]
    ConvergenceDomain(String),
    #[error("tolerance {tol:e} not reached (best estimate {value}, error {err:e})")]
    ToleranceNotReached { value: f64, err: f64, tol: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("matrix size {0} too large for this operation")]
    SizeTooLarge(usize),
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("divergent multiple zeta specification: {0}")]
    DivergentSpec(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of a numerical procedure rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence | Error::ToleranceNotReached { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
