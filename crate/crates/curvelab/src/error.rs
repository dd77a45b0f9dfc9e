use thiserror::Error;

/// Errors raised by curvelab operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a simple essential curve: {0}")]
    InvalidCurve(String),
    #[error("components of a multicurve must be disjoint and distinct")]
    NotMulticurve,
    #[error("unsupported surface {0}")]
    UnsupportedSurface(String),
    #[error("invalid subsurface descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("subsurface is the whole surface")]
    NotProper,
    #[error("weight vector is not admissible: {0}")]
    NotAdmissible(String),
    #[error("no essential component left after reduction")]
    EmptyAfterReduction,
    #[error("curves live on different triangulations")]
    MixedTriangulations,
    #[error("curves are already disjoint")]
    AlreadyDisjoint,
    #[error("curves lie in different fibers of the forgetful map")]
    DifferentFibers,
    #[error("no admissible bigon found")]
    NoAdmissibleBigon,
    #[error("candidate budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("surface mismatch: expected {expected}, found {found}")]
    SurfaceMismatch { expected: String, found: String },
    #[error("loop is not simple")]
    NotSimpleLoop,
    #[error("multicurve is not separating")]
    NotSeparating,
    #[error("subsurface is disconnected")]
    DisconnectedSubsurface,
    #[error("no curve of the pants decomposition meets the subsurface")]
    NoIntersection,
    #[error("vertices are not connected inside the snapshot")]
    Unreachable,
    #[error("vertex not present in the snapshot")]
    UnknownVertex,
    #[error("subsurface universe too small: {0}")]
    UniverseTooSmall(String),
    #[error("subsurfaces do not overlap")]
    NotOverlapping,
    #[error("only {found} samples available, {wanted} requested")]
    SampleExhausted { wanted: usize, found: usize },
    #[error("radius {radius} exceeds snapshot radius {snapshot}")]
    RadiusExceedsSnapshot { radius: usize, snapshot: usize },
    #[error("expected intersection {expected}, found {found}")]
    WrongIntersection { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
