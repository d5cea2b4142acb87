use thiserror::Error;

/// Failures reported by the library. Every variant carries enough context to
/// tell which input tripped it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not log-able (spectrum meets (-inf, 0])")]
    NotLogable,
    #[error("argument {0} lies on the branch cut (-inf, -1]")]
    CutViolation(String),
    #[error("argument {0} is within the pole band of (k*pi)^2")]
    PoleProximity(f64),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("norm derivative case is numerically ambiguous (norm discriminant {0:e})")]
    AmbiguousCase(f64),
    #[error("malformed commutator word: {0}")]
    Malformed(String),
    #[error("spectrum leaves the strip |Im z| < pi")]
    SpectralStrip,
    #[error("refinement did not converge: {0}")]
    NonConvergent(String),
    #[error("wrong stratum: {0}")]
    WrongStratum(String),
    #[error("input is not normal")]
    NonNormal,
    #[error("disk touches the cut (-inf, 0]")]
    DiskTouchesCut,
}

impl Error {
    /// Short stable identifier, used by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotLogable => "not-logable",
            Error::CutViolation(_) => "cut-violation",
            Error::PoleProximity(_) => "pole-proximity",
            Error::Domain(_) => "domain",
            Error::Degenerate(_) => "degenerate",
            Error::AmbiguousCase(_) => "ambiguous-case",
            Error::Malformed(_) => "malformed",
            Error::SpectralStrip => "spectral-strip",
            Error::NonConvergent(_) => "non-convergent",
            Error::WrongStratum(_) => "wrong-stratum",
            Error::NonNormal => "non-normal",
            Error::DiskTouchesCut => "disk-touches-cut",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
