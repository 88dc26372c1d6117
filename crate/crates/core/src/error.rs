//! Error type shared by every module of the crate.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of an operation.
    #[error("domain error in {func}: argument {value} {reason}")]
    Domain {
        func: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A material inequality is violated; `margin` is how far (negative).
    #[error("constraint violated: {name} (margin {margin:e})")]
    Constraint { name: &'static str, margin: f64 },

    /// Structurally invalid input (inconsistent parameter sets, bad grids, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// A numerical solve failed or did not meet its tolerance.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Adaptive quadrature exhausted its depth before reaching the tolerance.
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    QuadratureTolerance { achieved: f64, requested: f64 },

    /// Grid has too few nodes for the requested stencil or residual.
    #[error("grid too coarse: need at least {needed} nodes, got {got}")]
    GridTooCoarse { needed: usize, got: usize },

    /// Tridiagonal elimination hit a zero pivot.
    #[error("zero pivot in tridiagonal solve at row {row}")]
    ZeroPivot { row: usize },

    /// A closed-form evaluation overflowed (e.g. exponential viscosity law).
    #[error("overflow: {0}")]
    Overflow(String),
}
