use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rho = {rho} lies outside the domain [{min}, {max}]")]
    OutOfDomain { rho: f64, min: f64, max: f64 },

    #[error("warp value f({rho}) = {value:e} is within the pole tolerance; curvature has no closed form here")]
    PoleProximity { rho: f64, value: f64 },

    #[error("transformed warp reaches {value} which is not below the asymptote r/kappa = {limit}")]
    NotInRange { value: f64, limit: f64 },

    #[error("kappa = 0 leaves the warp unchanged, there is no asymptote")]
    NoAsymptote,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rho_max = {rho_max} is too close to the blow-up at rho = {blow_up}")]
    BlowUp { rho_max: f64, blow_up: f64 },

    #[error("A = 0 gives the flat plane; its potential is an arbitrary constant")]
    TrivialSoliton,

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the spanning vectors of H have a singular Gram matrix")]
    DegenerateSubspace,

    #[error("frame and H do not together span the tangent space")]
    NotTransverse,

    #[error("vector is not tangent to the sphere: <v, q> = {inner:e}")]
    NotTangent { inner: f64 },

    #[error("slope xi = {xi} gives a two-dimensional quotient")]
    CollapsedQuotient { xi: f64 },

    #[error("domain is unbounded; truncate rho_max before discretising")]
    UnboundedDomain,

    #[error("graph is disconnected: node {node} is unreachable")]
    Disconnected { node: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
