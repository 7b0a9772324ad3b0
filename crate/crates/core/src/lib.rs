//! Exact-arithmetic tools for the perfect cuboid problem in the family
//! governed by the degree-10 polynomial `Q_pq(t)`.
//!
//! - [`exact_arith`]: rationals, Q[√2], integer polynomials, Sturm counts.
//! - [`cuboid_eqs`]: `Q_pq`, its degree-12 parent, the parametrisation and
//!   cuboid reconstruction.
//! - [`asymptotics`]: Newton polygon, root intervals for `q ≥ 59p` and their
//!   certificates.
//! - [`search`]: the exhaustive search over `q < 59p`.

pub mod asymptotics;
pub mod cuboid_eqs;
pub mod exact_arith;
pub mod search;
