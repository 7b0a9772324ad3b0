//! Large-`q` structure of the roots of `Q_pq`: Newton polygon and leading
//! terms, the five exact root-isolating intervals for `q ≥ 59p`, their
//! disjointness, exact root certificates and the integer-point analysis.

pub mod intervals;
pub mod newton;

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

use crate::exact_arith::ArithError;

pub use intervals::{
    asymptotic_intervals, boundary_sample_pairs, certify_roots, check_disjoint,
    compute_certificates, imaginary_restriction, integer_point_report, refine_root,
    separation_bounds, vieta_product, AsymptoticInterval, CertificationReport, Conclusion,
    DisjointnessReport, IntegerPointReport, Margin, RootCertificate, RootLabel,
};
pub use newton::{
    build_newton_grid, leading_coefficients, upper_hull, LeadingTerm, NewtonNode, NewtonPolygon,
};

/// Which axis of the complex plane a root (or interval) lives on. Imaginary
/// intervals are stored by their positive imaginary part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Axis {
    Real,
    Imaginary,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Real => "REAL",
            Axis::Imaginary => "IMAGINARY",
        })
    }
}

/// Smallest `q/p` ratio for which the interval estimates hold.
pub const MIN_Q_OVER_P: u64 = 59;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AsymError {
    #[error("asymptotic intervals need q >= 59p, got p={p}, q={q}")]
    PreconditionViolated { p: u64, q: u64 },
    #[error("all nodes share one power of t; no hull segment is defined")]
    DegenerateHull,
    #[error("exponent {0} is not a slope of the Newton polygon")]
    ExponentNotInPolygon(Rational64),
    #[error("cannot solve segment equation: {0}")]
    UnsupportedSegment(String),
    #[error("certification failed for p={p}, q={q}, interval {label}: {check}")]
    CertificationFailed {
        p: u64,
        q: u64,
        label: String,
        check: String,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
