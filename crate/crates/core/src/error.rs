//! Error vocabulary shared by every numerical routine in the crate.

use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Routines distinguish structural problems (an index or contour that cannot
/// exist) from numerical ones (an integral whose error estimate never reached
/// the requested tolerance), so callers can decide whether to retry with a
/// different method or give up.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The gamma function was evaluated exactly at a nonpositive integer.
    #[error("gamma function pole at nonpositive integer {0}")]
    PoleAtNonpositiveInteger(i64),

    /// An adaptive quadrature exhausted its budget with the error estimate
    /// still above the requested tolerance.
    #[error("quadrature did not converge: estimated error {estimate:e} above tolerance {tolerance:e} after {evaluations} evaluations")]
    NoConvergence {
        estimate: f64,
        tolerance: f64,
        evaluations: usize,
    },

    /// The requested point lies outside the domain of the routine.
    #[error("domain error: {0}")]
    DomainError(String),

    /// A gamma factor or kernel was evaluated exactly on one of its poles.
    #[error("evaluation point hits a pole of component {0}")]
    PoleHit(usize),

    /// No admissible contour exists for the requested parameters.
    #[error("no admissible contour: {0}")]
    InfeasibleContour(String),

    /// The requested formula degenerates at this index and needs a limit
    /// (coincident spectral parameters); use a contour method instead.
    #[error("formula degenerates at this index (coincident parameters differ by an integer): {0}")]
    LimitRequired(String),

    /// A Fourier-mode assembly hit its mode budget before the tail bound
    /// certified convergence.
    #[error("Fourier-mode budget {budget} exhausted before the tail decayed below tolerance")]
    TruncationBudgetExceeded { budget: usize },

    /// Input data is degenerate for the requested operation (repeated nodes,
    /// empty index, zero argument, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The argument lies outside the sector in which the expansion is valid.
    #[error("argument outside validity sector: {0}")]
    SectorViolation(String),

    /// The argument is too small for the asymptotic expansion to be
    /// meaningful at the requested order.
    #[error("argument outside the asymptotic regime: {0}")]
    OutsideAsymptoticRegime(String),

    /// An integral representation is used outside its convergence range.
    #[error("integral diverges for these parameters: {0}")]
    DivergentIntegral(String),

    /// A contour cannot separate two pole sets that have collided.
    #[error("pole collision: {0}")]
    PoleCollision(String),

    /// A factorisation that requires strictly ordered real parts was asked
    /// for an index violating that ordering.
    #[error("index ordering violated: {0}")]
    OrderingViolation(String),

    /// Parameters lie outside the convergence domain of a series or product.
    #[error("outside convergence domain: {0}")]
    OutsideConvergenceDomain(String),
}

/// Convenience alias used by every fallible routine in the crate.
pub type Result<T> = std::result::Result<T, Error>;
