use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),

    #[error("enumeration exceeded the element cap of {cap} (set HHL_MAX_ELEMENTS to raise it)")]
    ElementCapExceeded { cap: usize },

    #[error("group did not close under the length cap {cap}; it is (or looks) infinite")]
    InfiniteGroup { cap: usize },

    #[error("operation needs elements up to length {needed} but the table is capped at {cap}")]
    LengthCapExceeded { needed: usize, cap: usize },

    #[error("operation requires a finite Coxeter group")]
    RequiresFinite,

    #[error("Laurent polynomial is not symmetric under v -> v^-1: {0}")]
    NotBarSymmetric(String),

    #[error("elements do not satisfy y < x in Bruhat order")]
    NotBruhatLess,

    #[error("hard Lefschetz fails for the given operator, so the requested data is undefined")]
    HardLefschetzFailed,

    #[error("degree-{0} content is invalid here: {1}")]
    BadGrading(i64, String),

    #[error("could not split a decomposable module; no separating endomorphism found")]
    SplitFailed,

    #[error("summand matches {0} candidate labels; refusing to guess")]
    LabelingAmbiguity(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
