use thiserror::Error;

/// Everything that can go wrong below the CLI layer. Numeric trouble inside a
/// scenario is carried in the report, not raised; these are contract violations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha = {0} is below the critical coupling -1/4")]
    AlphaBelowCritical(f64),
    #[error("x = {x} outside the evaluation domain of {family}")]
    OutOfDomain { family: &'static str, x: f64 },
    #[error("mu = {0} must be positive")]
    NonPositiveMu(f64),
    #[error("bad grid spec: {0}")]
    BadGridSpec(String),
    #[error("unsupported boundary condition: {0}")]
    UnsupportedBoundaryCondition(String),
    #[error("test bump does not vanish at the grid ends")]
    BumpTouchesBoundary,
    #[error("extension {ext} incompatible with kappa = {kappa}")]
    IncompatibleExtension { ext: String, kappa: f64 },
    #[error("parameters outside the tabulated identification range: {0}")]
    OutsideTabulatedRange(String),
    #[error("fit window too small: {0}")]
    WindowTooSmall(String),
    #[error("degenerate fit basis: exponents coincide (kappa = 0 needs the log basis)")]
    DegenerateBasis,
    #[error("fit residual {0} too large to classify (>= 0.1)")]
    UnreliableFit(f64),
    #[error("eigensolver failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("config error: {0}")]
    BadConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
