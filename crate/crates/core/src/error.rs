use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by region validation, domain preconditions, and the
/// time-stepping loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop {loop_index}, vertex {vertex}: non-finite coordinate")]
    NonFiniteCoordinate { loop_index: usize, vertex: usize },

    #[error("loop {loop_index}: {got} vertices, need at least {min}")]
    TooFewVertices {
        loop_index: usize,
        got: usize,
        min: usize,
    },

    #[error("loop {loop_index}: consecutive vertices coincide near index {vertex}")]
    DuplicateVertex { loop_index: usize, vertex: usize },

    #[error("loop {loop_index}: degenerate, |signed area| = {area:.3e}")]
    DegenerateLoop { loop_index: usize, area: f64 },

    #[error("loop {loop_index}: self-intersection between edges {edge_a} and {edge_b}")]
    SelfIntersection {
        loop_index: usize,
        edge_a: usize,
        edge_b: usize,
    },

    #[error("loops {loop_a} and {loop_b} cross or touch")]
    CrossingLoops { loop_a: usize, loop_b: usize },

    #[error("region has non-positive total area {area:.3e}")]
    NonPositiveArea { area: f64 },

    #[error("disk radius must be positive, got {radius}")]
    NonPositiveRadius { radius: f64 },

    #[error("region mass must be positive, got {mass:.3e}")]
    ZeroMass { mass: f64 },

    #[error("comparison disk must be centered at the origin, got ({x}, {y})")]
    OffOriginDisk { x: f64, y: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid bounding box must contain all inputs padded by 2h")]
    BoundingBoxTooSmall,

    #[error("time step rejected: {reason}")]
    StepRejected { reason: String },

    #[error("conservation violated at t = {t}: {quantity} drifted by {drift:.3e} (allowed {allowed:.3e})")]
    ConservationViolated {
        t: f64,
        quantity: &'static str,
        drift: f64,
        allowed: f64,
    },

    #[error("stability bound violated at t = {t}: l1^2 = {lhs:.6e} exceeds bound = {rhs:.6e}")]
    BoundViolated { t: f64, lhs: f64, rhs: f64 },

    #[error("region file is not valid JSON: {0}")]
    RegionFormat(String),
}
