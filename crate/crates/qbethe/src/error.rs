use thiserror::Error;

/// Everything that can go wrong while building modules or evaluating weight functions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("generator relation violated: {0}")]
    Relation(String),
    #[error("no singular basis vector found: {0}")]
    SingularVector(String),
    #[error("several singular basis vectors found: {0:?}")]
    Ambiguity(Vec<usize>),
    #[error("singular Gauss pivot: {0}")]
    Pivot(String),
    #[error("truncation level exceeded: {0}")]
    Truncation(String),
    #[error("incompatible inputs: {0}")]
    Mismatch(String),
    #[error("split is not admissible: {0}")]
    Admissibility(String),
    #[error("length mismatch: {0}")]
    Length(String),
    #[error("construction needs the other variant: {0}")]
    Variant(String),
    #[error("vanishing lambda: {0}")]
    ZeroLambda(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Index(_) => "IndexError",
            Error::Relation(_) => "RelationError",
            Error::SingularVector(_) => "SingularVectorError",
            Error::Ambiguity(_) => "AmbiguityError",
            Error::Pivot(_) => "PivotError",
            Error::Truncation(_) => "TruncationError",
            Error::Mismatch(_) => "MismatchError",
            Error::Admissibility(_) => "AdmissibilityError",
            Error::Length(_) => "LengthError",
            Error::Variant(_) => "VariantError",
            Error::ZeroLambda(_) => "ZeroLambdaError",
            Error::InvalidParameter(_) => "InvalidParameterError",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
