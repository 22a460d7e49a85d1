use thiserror::Error;

/// Errors shared by the model, scheme and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("({theta1}, {theta2}) is not a probability pair")]
    InvalidProbability { theta1: f64, theta2: f64 },

    #[error("value pair ({z1}, {z2}) has a non-finite entry")]
    NonFiniteValue { z1: f64, z2: f64 },

    #[error("zeta = {zeta} lies outside [0, 1]")]
    ZetaOutOfRange { zeta: f64 },

    #[error("the cost model declares no potential; Hamilton-Jacobi formulations need one")]
    MissingPotential,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid needs b > a and n >= 2, got a = {a}, b = {b}, n = {n}")]
    InvalidGrid { a: f64, b: f64, n: usize },

    #[error("field holds {len} values but the grid has {nodes} nodes")]
    FieldLength { len: usize, nodes: usize },

    #[error("non-finite value at node {index}")]
    NonFiniteField { index: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("invalid time march: {0}")]
    InvalidTimeMarch(String),

    #[error("CFL number {cfl:.6} exceeds 1")]
    CflViolation { cfl: f64 },

    #[error("inflow (velocity {velocity}) at an outflow boundary node x = {x}")]
    InflowAtOutflow { x: f64, velocity: f64 },

    #[error("boundary rule `{got}` is not accepted by the {solver} solver")]
    BoundaryMismatch { solver: &'static str, got: String },

    #[error("grid domain [{a}, {b}] does not match the {expected} required here")]
    DomainMismatch { a: f64, b: f64, expected: String },

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("field is not monotone near x = {x}; it cannot be inverted")]
    NonMonotone { x: f64 },

    #[error("query value {value} is outside the sampled range")]
    QueryOutOfRange { value: f64 },

    #[error("fields do not overlap on the requested interval")]
    EmptyOverlap,

    #[error("no snapshot recorded near t = {t}")]
    SnapshotNotFound { t: f64 },
}

impl Error {
    pub(crate) fn at_step(self, step: usize) -> Error {
        Error::AtStep {
            step,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
