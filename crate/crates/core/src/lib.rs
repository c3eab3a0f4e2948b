//! Small-time heat content of a polygonal subdomain inside a polygon with an
//! insulated (Neumann) boundary.
//!
//! The heat content `H(t)` of a subdomain `D̃ ⊂ D` behaves for small `t` like
//!
//! ```text
//! H(t) = |D̃| - L(open edges) t^{1/2} / π^{1/2} + c1 t + (exponentially small)
//! ```
//!
//! where `c1` collects one corner coefficient per vertex of `D̃` (open, NON,
//! NOON and NN vertices, plus generalized wedge configurations). This crate
//! provides
//!
//! * [`geometry`]: polygon handling, boundary decomposition, vertex
//!   classification and the sector/rectangle/cusp partition,
//! * [`corners`]: every corner coefficient function, evaluated by quadrature,
//! * [`expansion`]: assembly of the three coefficients and structural checks,
//! * [`oracles`]: a spectral eigenfunction series (rectangles) and a reflecting
//!   Brownian motion Monte Carlo estimator (any polygon).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corners;
pub mod error;
pub mod expansion;
pub mod geometry;
pub mod hyperbolic;
pub mod oracles;
pub mod quadrature;

pub use error::{Error, Result};
pub use expansion::{expansion_coefficients, eval_expansion, ExpansionCoefficients};
pub use geometry::{build_domain_pair, DomainPair, Point, Polygon};
pub use quadrature::{CoefficientValue, QuadratureSpec};
