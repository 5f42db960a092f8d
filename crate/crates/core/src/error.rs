use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch { context: String, expected: usize, found: usize },

    #[error("the zero vector has no primitive part")]
    ZeroVector,

    #[error("vector {0} is not primitive")]
    NotPrimitive(String),

    #[error("ray index {index} out of range (fan has {rays} rays)")]
    RayIndexOutOfRange { index: usize, rays: usize },

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("fan is not complete")]
    Incomplete,

    #[error("fan is not smooth: {0}")]
    NotSmooth(String),

    #[error("{0} is already a ray of the fan")]
    AlreadyRay(String),

    #[error("{0} lies in no cone of the fan")]
    NotInSupport(String),

    #[error("{0} is not a cone of the fan")]
    NotACone(String),

    #[error("lattice map is not surjective")]
    NotSurjective,

    #[error("not a primitive collection: {0}")]
    NotPrimitiveCollection(String),

    #[error("malformed fan JSON: {0}")]
    Json(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::DimensionMismatch { .. } => "dimension-mismatch",
            Self::ZeroVector => "zero-vector",
            Self::NotPrimitive(_) => "not-primitive",
            Self::RayIndexOutOfRange { .. } => "ray-index-out-of-range",
            Self::InvalidFan(_) => "invalid-fan",
            Self::Incomplete => "incomplete",
            Self::NotSmooth(_) => "not-smooth",
            Self::AlreadyRay(_) => "already-ray",
            Self::NotInSupport(_) => "not-in-support",
            Self::NotACone(_) => "not-a-cone",
            Self::NotSurjective => "not-surjective",
            Self::NotPrimitiveCollection(_) => "not-primitive-collection",
            Self::Json(_) => "malformed-json",
            Self::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
