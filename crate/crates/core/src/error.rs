use thiserror::Error;

/// Errors raised by the state, evolution, connection and geodesic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state needs at least 2 components, got {0}")]
    TooFewComponents(usize),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("zero vector has no ray")]
    ZeroVector,

    #[error("states are orthogonal (|overlap| = {overlap:e}); relative phase undefined")]
    OrthogonalStates { overlap: f64 },

    #[error("state is not unit norm (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("endpoints lie on the same ray; geodesic has zero length")]
    IdenticalRays,

    #[error("parameter `{name}` out of range: {value}")]
    ParameterOutOfRange { name: &'static str, value: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("parameter grid is not strictly increasing at index {0}")]
    NonMonotonicGrid(usize),

    #[error("evolution is not cyclic: ray distance {residual:e} exceeds tolerance {tol:e}")]
    NotCyclic { residual: f64, tol: f64 },

    #[error("curve endpoints are not on the same ray (distance {distance:e})")]
    EndpointsNotOnSameRay { distance: f64 },

    #[error("triangle {triangle} has orthogonal vertices")]
    OrthogonalTriangleVertices { triangle: usize },

    #[error("invalid surface mesh: {0}")]
    InvalidMesh(String),

    #[error("patch boundary vertex {vertex} is {distance:e} from the loop")]
    BoundaryMismatch { vertex: usize, distance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable tag, printed by the CLI on failure.
    pub fn category(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::TooFewComponents(_) => "too_few_components",
            Error::NonFinite(_) => "non_finite",
            Error::ZeroVector => "zero_vector",
            Error::OrthogonalStates { .. } => "orthogonal_states",
            Error::NotNormalized { .. } => "not_normalized",
            Error::IdenticalRays => "identical_rays",
            Error::ParameterOutOfRange { .. } => "parameter_out_of_range",
            Error::TooFewSamples { .. } => "too_few_samples",
            Error::NonMonotonicGrid(_) => "non_monotonic_grid",
            Error::NotCyclic { .. } => "not_cyclic",
            Error::EndpointsNotOnSameRay { .. } => "endpoints_not_on_same_ray",
            Error::OrthogonalTriangleVertices { .. } => "orthogonal_triangle_vertices",
            Error::InvalidMesh(_) => "invalid_mesh",
            Error::BoundaryMismatch { .. } => "boundary_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
        }
    }
}
