use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid presentation `{0}`: {1}")]
    InvalidPresentation(String, &'static str),

    #[error("invalid word `{0}`: only the letters a, b, c are allowed")]
    InvalidWord(String),

    #[error("word `{0}` has odd length; an orientation preserving element is required")]
    OddWord(String),

    #[error("undefined degree: the Laurent polynomial is zero")]
    UndefinedDegree,

    #[error("triple ratio undefined for this presentation ({0}): an off-diagonal pairing vanishes")]
    TripleRatioUndefined(String),

    #[error("representation relation check failed: {0}")]
    RelationFailure(String),

    #[error("division by zero in number field arithmetic")]
    DivisionByZero,

    #[error("translation length of `{word}` did not stabilize after {doublings} thickness doublings")]
    NotStabilized { word: String, doublings: u32 },

    #[error("edge weight inconsistency between the grey and white sides of edge {0}")]
    WeightInconsistency(usize),

    #[error("zero direction vector")]
    ZeroDirection,

    #[error("point ({0}, {1}) is not strictly interior")]
    NotInterior(f64, f64),

    #[error("point ({0}, {1}) is not on the boundary")]
    NotOnBoundary(f64, f64),

    #[error("invalid convex body: {0}")]
    InvalidBody(String),

    #[error("invalid bilinear form: {0}")]
    InvalidForm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
