use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polygon is not simple: {0}")]
    NotSimple(String),
    #[error("subdomain is not contained in the domain: {0}")]
    NotContained(String),
    #[error("edge lies within tolerance of the domain boundary without coinciding with it: {0}")]
    AmbiguousEdge(String),
    #[error("unsupported vertex configuration at ({x}, {y}): {reason}")]
    UnsupportedVertex { x: f64, y: f64, reason: String },
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),
    #[error("argument outside the domain of {function}: {detail}")]
    OutOfDomain { function: &'static str, detail: String },
    #[error("quadrature did not converge after {panels} panels (error estimate {err_est:e})")]
    NoConvergence { panels: usize, err_est: f64 },
    #[error("integrand decay rate must be positive, got {0}")]
    BadDecay(f64),
    #[error("wedges overlap or are out of order: {0}")]
    OverlappingWedges(String),
    #[error("piece contributions do not reproduce the expansion: {0}")]
    CancellationFailure(String),
    #[error("complement is not a polygonal subdomain: {0}")]
    ComplementNotPolygonal(String),
    #[error("domain is not an axis-aligned rectangle")]
    NotRectangle,
    #[error("spectral truncation bound {bound:e} exceeds tolerance {tol:e} at t = {t}")]
    TruncationInsufficient { t: f64, bound: f64, tol: f64 },
    #[error("more than {0} reflections in a single step; reduce the time step")]
    ReflectionOverflow(usize),
    #[error("{0}")]
    Config(String),
}
