use thiserror::Error;

/// Errors raised by every module of the engine.
///
/// Each variant maps to a stable machine-readable code via [`Error::code`],
/// which the command-line front end reports alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is zero; valuation and absolute value are undefined")]
    ZeroInput,
    #[error("place `{place}` does not apply to {field} scalars")]
    PlaceFieldMismatch { place: String, field: String },
    #[error("invalid place `{0}`")]
    InvalidPlace(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} exceeds the ambient rank {rank}")]
    RankMismatch { index: usize, rank: usize },
    #[error("polynomial is empty after combining like terms")]
    EmptyPolynomial,
    #[error("a monomial defines the empty hypersurface in the torus")]
    MonomialInput,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("linear map is not surjective (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },
    #[error("the archimedean place has no valuation")]
    ArchimedeanNotSupported,
    #[error("expected {expected} terms, found {found}")]
    TermCountMismatch { expected: usize, found: usize },
    #[error("every sampled slice was constant in the solved coordinate")]
    DegenerateSlice,
    #[error("halfspace direction lies in the span of its boundary")]
    DependentDirection,
    #[error("point has a zero coordinate")]
    ZeroCoordinate,
    #[error("a quotient presentation is required: supply the image hypersurface or declare codimension > 1")]
    MissingImagePresentation,
    #[error("expected {expected} coefficients, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput => "zero_input",
            Error::PlaceFieldMismatch { .. } => "place_field_mismatch",
            Error::InvalidPlace(_) => "invalid_place",
            Error::Syntax { .. } => "syntax_error",
            Error::RankMismatch { .. } => "rank_mismatch",
            Error::EmptyPolynomial => "empty_polynomial",
            Error::MonomialInput => "monomial_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RankDeficient { .. } => "rank_deficient",
            Error::ArchimedeanNotSupported => "archimedean_not_supported",
            Error::TermCountMismatch { .. } => "term_count_mismatch",
            Error::DegenerateSlice => "degenerate_slice",
            Error::DependentDirection => "dependent_direction",
            Error::ZeroCoordinate => "zero_coordinate",
            Error::MissingImagePresentation => "missing_image_presentation",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Internal(_) => "internal",
        }
    }

    /// True for failures of the engine itself rather than of its input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
