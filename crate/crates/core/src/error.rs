use crate::precision::ParseRealError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degree {found} is below the required {required}")]
    DegreeTooSmall { required: usize, found: usize },
    #[error("coefficient c_{index} is zero")]
    ZeroCoefficient { index: usize },
    #[error("coefficient c_{index} is not positive")]
    NonPositiveCoefficient { index: usize },
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("constant term is zero; the opposite polynomial would drop degree")]
    ZeroConstantTerm,
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("no positive root exists for this construction: {0}")]
    NoPositiveRoot(String),
    #[error("beta_{index} = {beta} is below the required {required}")]
    ProfileTooSmall {
        index: usize,
        beta: f64,
        required: f64,
    },
    #[error("beta_{index} = {beta} is below 4")]
    KurtzConditionFails { index: usize, beta: f64 },
    #[error("chart intervals at index {index} are inconsistent: {detail}")]
    ChartInconsistent { index: usize, detail: String },
    #[error("no convergence after {iterations} iterations ({unconverged} roots unsettled)")]
    NoConvergence {
        iterations: usize,
        unconverged: usize,
        /// Last iterates as (re, im) pairs.
        partial: Vec<(f64, f64)>,
    },
    #[error("no sign change found while seeding l = {l}")]
    SeedNotBracketed { l: usize },
    #[error("a root lies within {tolerance:e} of the circle |z| = {radius}")]
    RootOnBoundary { radius: f64, tolerance: f64 },
    #[error(transparent)]
    Parse(#[from] ParseRealError),
    #[error("coefficient source: {0}")]
    CoefficientSource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
