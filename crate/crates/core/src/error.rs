use thiserror::Error;

/// Errors raised anywhere in the certification pipeline.
///
/// Variants are grouped loosely by the module that raises them, but every
/// operation shares one type so that certificate builders can bubble up the
/// failing clause unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // exact arithmetic / homology
    #[error("dimension mismatch: expected {expected}, found {found}")]
    InvalidDimension { expected: usize, found: usize },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(i64),
    #[error("twist exponent must be nonzero (letter `{0}`)")]
    ZeroExponent(String),

    // intersection ledger
    #[error("curve `{0}` is already registered")]
    DuplicateCurve(String),
    #[error("inconsistent ledger entry i({a}, {b}): recorded {existing}, new value {proposed}")]
    InconsistentLedger {
        a: String,
        b: String,
        existing: u64,
        proposed: u64,
    },
    #[error("unknown intersection i({0}, {1})")]
    UnknownIntersection(String, String),
    #[error("homology class of `{0}` is not known")]
    UnknownClass(String),

    // penner certification
    #[error("malformed ribbon: {0}")]
    MalformedRibbon(String),
    #[error("invalid Penner word: {0}")]
    InvalidPennerWord(String),
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("power iteration did not converge after {0} iterations")]
    IterationLimit(usize),
    #[error("product is not hyperbolic (|trace| = {0} <= 2)")]
    NotHyperbolic(f64),

    // cyclic cover
    #[error("cover degree must be at least 2, got {0}")]
    InvalidDegree(i64),
    #[error("homology rank error: {0}")]
    HomologyRankError(String),
    #[error("lift error: {0}")]
    LiftError(String),
    #[error("non-Torelli witness vanished: {0}")]
    WitnessFailure(String),
    #[error("degree {degree} is too small for spreading {spreading} (need degree > spreading)")]
    DegreeTooSmall { degree: i64, spreading: i64 },
    #[error("certificate clause `{clause}` failed: {reason}")]
    CertificateClause { clause: String, reason: String },

    // verdict engine
    #[error("inconsistent profile: {0}")]
    InconsistentProfile(String),

    // serialization / cli
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("I/O error on {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("JSON error: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
