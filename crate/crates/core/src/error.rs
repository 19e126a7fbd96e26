use thiserror::Error;

/// Errors raised by the geometric and arithmetic routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("invalid torus parameter: {0}")]
    InvalidParam(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("multiplication factor must be nonzero")]
    ZeroMultiplier,

    #[error("point is not {n}-torsion (lattice distance {distance:e})")]
    NotTorsion { n: usize, distance: f64 },

    #[error("root isolation failed: {0}")]
    RootIsolation(String),

    #[error("zero count mismatch: expected {expected}, winding total {found}")]
    Truncation { expected: usize, found: i64 },

    #[error("no osculating hyperplane: smallest relative singular value {sigma:e}")]
    NoOsculatingHyperplane { sigma: f64 },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("indeterminate clustering: separation {separation:e} inside the ambiguous band [{low:e}, {high:e})")]
    Indeterminate { separation: f64, low: f64, high: f64 },

    #[error("resampling exhausted after {attempts} attempts: {reason}")]
    ResampleExhausted { attempts: usize, reason: String },

    #[error("fit failure: {0}")]
    Fit(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::NonFinite(_) => "non_finite",
            Self::InvalidParam(_) => "invalid_param",
            Self::InvalidArgument(_) => "invalid_argument",
            Self::ZeroMultiplier => "zero_multiplier",
            Self::NotTorsion { .. } => "not_torsion",
            Self::RootIsolation(_) => "root_isolation",
            Self::Truncation { .. } => "truncation",
            Self::NoOsculatingHyperplane { .. } => "no_osculating_hyperplane",
            Self::Degenerate(_) => "degenerate",
            Self::Indeterminate { .. } => "indeterminate",
            Self::ResampleExhausted { .. } => "resample_exhausted",
            Self::Fit(_) => "fit",
            Self::Config(_) => "config",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
