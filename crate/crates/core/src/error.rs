use alloc::string::String;

/// Errors raised by the quantization core.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("malformed group spec `{0}`")]
    MalformedSpec(String),
    #[error("invalid group parameter: {0}")]
    InvalidParameter(String),
    #[error("group order {order} exceeds the bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("no irrep catalog for non-abelian group `{0}`; use the numeric extractor")]
    NoCatalog(String),
    #[error("invalid unitary dual: {0}")]
    InvalidDual(String),
    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("symbol field has orientation {found}, expected {expected}")]
    Orientation { expected: &'static str, found: &'static str },
    #[error("Schatten exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("operation requires an abelian group")]
    NotAbelian,
    #[error("window must have unit norm, got {0}")]
    WindowNotUnit(f64),
    #[error("window is the zero function")]
    ZeroWindow,
    #[error("numeric irrep extraction failed after {0} attempts")]
    ExtractionFailed(usize),
}

pub type Result<T> = core::result::Result<T, Error>;
