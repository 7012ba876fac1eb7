use thiserror::Error;

/// Errors raised by curve construction and the geometric primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("curve has no components")]
    EmptyCurve,

    #[error("component {component}: {reason}")]
    InvalidComponent { component: usize, reason: String },

    #[error("non-finite coordinate in component {component}, vertex {vertex}")]
    NonFinite { component: usize, vertex: usize },

    #[error("invalid curve position (component {component}, edge {edge}, t {t})")]
    InvalidPosition {
        component: usize,
        edge: usize,
        t: f64,
    },

    #[error(
        "vertex {vertex} of open component {component} is an endpoint and has no turning angle"
    )]
    NoTurningAngle { component: usize, vertex: usize },

    #[error("zero-length segment")]
    DegenerateSegment,

    #[error("edges {0} and {1} share a vertex")]
    SharedVertex(usize, usize),

    #[error("curve has zero thickness; ropelength is undefined")]
    DegenerateCurve,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
