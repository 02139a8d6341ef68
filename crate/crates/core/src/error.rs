use thiserror::Error;

/// Errors reported by the library.
///
/// Every variant carries enough context to be rendered as a machine-readable
/// code by [`Error::code`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),
    #[error("tolerances must be positive and finite (eps_sign={eps_sign}, eps_metric={eps_metric})")]
    InvalidTolerance { eps_sign: f64, eps_metric: f64 },
    #[error("scale must be positive and finite, got {0}")]
    NonPositiveScale(f64),
    #[error("correspondence needs two source points farther apart than eps_metric")]
    DegenerateCorrespondence,
    #[error("points {first} and {second} coincide within eps_metric")]
    DuplicatePoint { first: usize, second: usize },
    #[error("point id {id} out of range for a configuration of {len} points")]
    InvalidId { id: usize, len: usize },
    #[error("point ids must differ")]
    SameIds,
    #[error("map is not a bijection: {0}")]
    NotBijection(String),
    #[error("configurations differ in size ({left} vs {right})")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid circle pair: {0}")]
    InvalidPair(String),
    #[error("point ({x}, {y}) does not lie on the circle pair")]
    OffSet { x: f64, y: f64 },
    #[error("pairs have different radius ratios (M = {m_left} vs {m_right})")]
    RatioMismatch { m_left: f64, m_right: f64 },
    #[error("no cover with n/k <= {target} exists: M = {m}")]
    TargetBelowInvariant { target: f64, m: f64 },
    #[error("no cover found with k <= {0}")]
    CoverSearchExhausted(u64),
    #[error("incommensurate sampling: cos(2*pi*{p}/{n}) = {expected}, ratio is {ratio}")]
    Incommensurate { n: usize, p: usize, expected: f64, ratio: f64 },
    #[error("invalid sampling parameters: {0}")]
    InvalidSampling(String),
    #[error("accidental near-incidence among points {0:?}")]
    AccidentalIncidence([usize; 3]),
    #[error("isomorphism search exceeded its node limit after {0} nodes")]
    SearchInconclusive(u64),
    #[error("internal consistency check failed: {0}")]
    InvariantViolation(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    /// Stable snake_case identifier for the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "non_finite",
            Error::InvalidTolerance { .. } => "invalid_tolerance",
            Error::NonPositiveScale(_) => "non_positive_scale",
            Error::DegenerateCorrespondence => "degenerate_correspondence",
            Error::DuplicatePoint { .. } => "duplicate_point",
            Error::InvalidId { .. } => "invalid_id",
            Error::SameIds => "same_ids",
            Error::NotBijection(_) => "not_bijection",
            Error::SizeMismatch { .. } => "size_mismatch",
            Error::InvalidPair(_) => "invalid_pair",
            Error::OffSet { .. } => "off_set",
            Error::RatioMismatch { .. } => "ratio_mismatch",
            Error::TargetBelowInvariant { .. } => "target_below_invariant",
            Error::CoverSearchExhausted(_) => "cover_search_exhausted",
            Error::Incommensurate { .. } => "incommensurate",
            Error::InvalidSampling(_) => "invalid_sampling",
            Error::AccidentalIncidence(_) => "accidental_incidence",
            Error::SearchInconclusive(_) => "search_inconclusive",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::OutOfRange(_) => "out_of_range",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
