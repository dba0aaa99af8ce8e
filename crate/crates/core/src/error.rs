use thiserror::Error;

/// Failures reported by the solvers and the wall-law machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid boundary law: {0}")]
    InvalidLaw(String),
    #[error("time {t} outside tabulated range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },
    #[error("wall velocity {velocity} at t = {t} is not subluminal")]
    SuperluminalWall { t: f64, velocity: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular point at y = {0}")]
    SingularPoint(f64),
    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo}, f(hi) = {fhi}")]
    Bracket { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("numerical failure in {op}: {detail}")]
    NumericalFailure { op: &'static str, detail: String },
    #[error("incomplete spectrum: found {} of {requested} eigenvalues", found.len())]
    IncompleteSpectrum {
        requested: usize,
        found: Vec<f64>,
        /// `(lambda, |f(1)| / max|f|)` for every scanned minimum, accepted or not.
        residuals: Vec<(f64, f64)>,
    },
    #[error("closed form disagrees with shooting: max deviation {residual:e} > {tolerance:e}")]
    InconsistentFormula { residual: f64, tolerance: f64 },
    #[error("i/o error on {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("stability error at t = {t}: Courant number {courant} exceeds {limit}")]
    Stability { t: f64, courant: f64, limit: f64 },
}

impl Error {
    /// Short variant name used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidLaw(_) => "InvalidLaw",
            Error::OutOfRange { .. } => "OutOfRangeError",
            Error::SuperluminalWall { .. } => "SuperluminalWall",
            Error::Domain(_) => "DomainError",
            Error::SingularPoint(_) => "SingularPointError",
            Error::Bracket { .. } => "BracketError",
            Error::NumericalFailure { .. } => "NumericalFailure",
            Error::IncompleteSpectrum { .. } => "IncompleteSpectrum",
            Error::InconsistentFormula { .. } => "InconsistentFormula",
            Error::Io { .. } => "IoError",
            Error::Stability { .. } => "StabilityError",
        }
    }

    pub(crate) fn numerical(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NumericalFailure { op, detail: detail.into() }
    }

    pub(crate) fn domain(detail: impl Into<String>) -> Self {
        Error::Domain(detail.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
