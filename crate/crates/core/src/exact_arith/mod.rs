//! Exact arithmetic substrate: rationals, the field Q[√2], integer
//! polynomials and Sturm root counting. Nothing in here touches floating
//! point except the explicitly approximate reporting helpers.

pub mod poly;
pub mod quad;
pub mod rational;
pub mod sturm;

use num_rational::BigRational;
use thiserror::Error;

pub use poly::{eval_poly, eval_poly_quad, IntPoly};
pub use quad::{quad_sign, QuadRational};
pub use sturm::{cauchy_root_bound, sturm_count, sturm_count_perturbed, SturmSequence};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(BigRational),
    #[error("interval is empty (lo >= hi)")]
    EmptyInterval,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
}
