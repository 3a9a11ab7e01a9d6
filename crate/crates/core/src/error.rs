use thiserror::Error;

#[derive(Debug, Error)]
pub enum TaffyError {
    #[error("matrix [{a} {b}; {c} {d}] has determinant {det}, expected 1")]
    NotUnimodular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i64,
    },

    #[error("map with trace {trace} is not Anosov (|trace| <= 2)")]
    NotAnosov { trace: i64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("refusing to enumerate {0} periodic points")]
    EnumerationTooLarge(u128),

    #[error("need at least {needed} strands, got {got}")]
    TooFewStrands { needed: usize, got: usize },

    #[error("need at least 3 punctures, got {0}")]
    TooFewPunctures(usize),

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i32, strands: usize },

    #[error("invalid loop coordinates: {0}")]
    InvalidLoop(String),

    #[error("polynomial has no real root above 1")]
    NoRootAboveOne,

    #[error("rods {0} and {1} coincide at t = {2}")]
    CoincidentRods(usize, usize, f64),

    #[error("projection stays degenerate after {0} axis perturbations")]
    ProjectionDegenerate(usize),

    #[error("braid did not stabilize up to {0} samples")]
    SamplingDidNotConverge(usize),

    #[error("invalid device spec: {0}")]
    InvalidSpec(String),

    #[error("unknown device `{0}`")]
    UnknownDevice(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, TaffyError>;
