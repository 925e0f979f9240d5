use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set size {0} exceeds the supported maximum of {max}", max = crate::family::MAX_GROUND)]
    GroundTooLarge(usize),

    #[error("element {element} is out of range for a ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },

    #[error("duplicate set {0:?} in family")]
    DuplicateSet(Vec<usize>),

    #[error("{0} undefined on empty family")]
    EmptyFamily(&'static str),

    #[error("families are over different ground sets ({0} vs {1})")]
    GroundMismatch(usize, usize),

    #[error("subfamily is not contained in the family")]
    NotSubfamily,

    #[error("guard exceeded: {what} is {actual}, limit {limit}; try a smaller instance")]
    GuardExceeded {
        what: &'static str,
        actual: String,
        limit: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("theorem inapplicable: {0}")]
    Inapplicable(String),

    #[error("lemma inapplicable: {0}")]
    LemmaInapplicable(String),

    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("family not closed under permutation")]
    NotClosed,

    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),

    #[error("claim {id} is out of scope: {reason}")]
    OutOfScope { id: String, reason: &'static str },

    #[error("malformed family JSON: {0}")]
    MalformedJson(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::GroundTooLarge(_) => "E_GROUND_TOO_LARGE",
            Error::ElementOutOfRange { .. } => "E_RANGE",
            Error::DuplicateSet(_) => "E_DUPLICATE",
            Error::EmptyFamily(_) => "E_EMPTY_FAMILY",
            Error::GroundMismatch(..) => "E_GROUND_MISMATCH",
            Error::NotSubfamily => "E_NOT_SUBFAMILY",
            Error::GuardExceeded { .. } => "E_GUARD",
            Error::InvalidParameter(_) => "E_PARAM",
            Error::Inapplicable(_) => "E_THEOREM_INAPPLICABLE",
            Error::LemmaInapplicable(_) => "E_LEMMA_INAPPLICABLE",
            Error::HypothesisFails(_) => "E_HYPOTHESIS",
            Error::NotClosed => "E_NOT_CLOSED",
            Error::UnknownClaim(_) => "E_UNKNOWN_CLAIM",
            Error::OutOfScope { .. } => "E_OUT_OF_SCOPE",
            Error::MalformedJson(_) => "E_MALFORMED_JSON",
            Error::Io(_) => "E_IO",
        }
    }

    pub(crate) fn guard(what: &'static str, actual: impl ToString, limit: impl ToString) -> Self {
        Error::GuardExceeded {
            what,
            actual: actual.to_string(),
            limit: limit.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
