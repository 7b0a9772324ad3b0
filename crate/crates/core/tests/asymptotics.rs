use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use cuboid_core::asymptotics::newton::symbolic_qpq;
use cuboid_core::asymptotics::{
    asymptotic_intervals, boundary_sample_pairs, build_newton_grid, certify_roots,
    imaginary_restriction, integer_point_report, leading_coefficients, separation_bounds,
    upper_hull, AsymError, Axis, Conclusion, NewtonNode, RootLabel,
};
use cuboid_core::cuboid_eqs::{build_qpq, PQPair};
use cuboid_core::exact_arith::IntPoly;

fn pair(p: u64, q: u64) -> PQPair {
    PQPair::new(p, q).unwrap()
}

#[test]
fn every_node_lies_on_or_below_the_hull() {
    let grid = build_newton_grid();
    let poly = upper_hull(&grid).unwrap();
    for n in &grid {
        let (m, r) = (n.m as i64, n.r as i64);
        let seg = poly
            .upper_hull
            .windows(2)
            .find(|w| w[0].0 <= m && m <= w[1].0)
            .unwrap();
        let (m1, r1) = seg[0];
        let k = Rational64::new(seg[1].1 - r1, seg[1].0 - m1);
        assert!(Rational64::from(r - r1) <= k * (m - m1), "node ({m},{r})");
    }
}

#[test]
fn node_coefficients_never_vanish_for_small_p() {
    for n in build_newton_grid() {
        for p in 1..=100 {
            assert!(
                !n.eval_coeff(p).is_zero(),
                "node ({},{}) at p={p}",
                n.m,
                n.r
            );
        }
    }
}

proptest! {
    #[test]
    fn symbolic_grid_evaluates_to_qpq(p in 1u64..60, q in 1u64..400) {
        prop_assume!(PQPair::new(p, q).is_ok());
        let direct = build_qpq(&pair(p, q));
        let mut rebuilt = vec![num_bigint::BigInt::zero(); 11];
        for n in build_newton_grid() {
            rebuilt[n.m as usize] += n.eval_coeff(p) * num_bigint::BigInt::from(q).pow(n.r);
        }
        prop_assert_eq!(IntPoly::new(rebuilt), direct);
        for (m, c) in symbolic_qpq().iter().enumerate() {
            prop_assert_eq!(c.eval(p, q), build_qpq(&pair(p, q)).coeff(m));
        }
    }

    #[test]
    fn outer_real_intervals_are_integer_free_when_q_exceeds_5p3(p in 1u64..6, extra in 1u64..2000) {
        let q = (5 * p * p * p).max(59 * p) + extra;
        prop_assume!(PQPair::new(p, q).is_ok());
        let r = integer_point_report(&pair(p, q)).unwrap();
        prop_assert!(r.outer_real_free);
        prop_assert!(r.integers[0].1.is_empty() && r.integers[1].1.is_empty());
        prop_assert_eq!(r.conclusion, Conclusion::SearchSkip);
    }
}

#[test]
fn cubic_segment_is_unsupported() {
    // one segment through (0,0), (1,1), (2,2), (3,3): equation cubic in C
    let nodes: Vec<NewtonNode> = (0..4).map(|i| NewtonNode::bare(i, i)).collect();
    let poly = upper_hull(&nodes).unwrap();
    assert_eq!(poly.upper_hull, vec![(0, 0), (3, 3)]);
    assert!(matches!(
        leading_coefficients(&poly, Rational64::from(-1)),
        Err(AsymError::UnsupportedSegment(_))
    ));
}

#[test]
fn sample_pairs_certify() {
    for pq in boundary_sample_pairs(6) {
        let r = certify_roots(&pq).unwrap_or_else(|e| panic!("{pq}: {e}"));
        assert!(r.passed());
        assert!(separation_bounds(&pq).unwrap().iter().all(|m| m.holds()));
    }
}

#[test]
fn gcd_rejected_neighbour_certifies() {
    assert!(PQPair::new(3, 177).is_err());
    assert!(PQPair::new(2, 118).is_err());
    assert!(certify_roots(&pair(3, 178)).unwrap().passed());
}

/// Positive roots of a polynomial located by sign changes of its f64
/// evaluation on a uniform grid.
fn float_roots(poly: &IntPoly, hi: f64, steps: usize) -> Vec<f64> {
    let c: Vec<f64> = poly.coeffs().iter().map(|c| c.to_f64().unwrap()).collect();
    let eval = |x: f64| c.iter().rev().fold(0.0, |acc, k| acc * x + k);
    let mut out = Vec::new();
    let mut prev_x = 0.0;
    let mut prev = eval(prev_x).signum();
    for i in 1..=steps {
        let x = hi * i as f64 / steps as f64;
        let s = eval(x).signum();
        if s != prev {
            out.push((prev_x + x) / 2.0);
        }
        prev = s;
        prev_x = x;
    }
    out
}

#[test]
fn float_root_finder_agrees_with_intervals() {
    let pq = pair(1, 59);
    let iv = asymptotic_intervals(&pq).unwrap();
    let real = float_roots(&build_qpq(&pq), 100.0, 2_000_000);
    let imag = float_roots(&imaginary_restriction(&pq), 9000.0, 2_000_000);
    assert_eq!(real.len(), 3);
    assert_eq!(imag.len(), 2);
    let inside = |x: f64, label: RootLabel| {
        let i = iv.iter().find(|i| i.label == label).unwrap();
        i.lo.to_f64() < x && x < i.hi.to_f64()
    };
    assert!(inside(real[0], RootLabel::T1));
    assert!(inside(real[1], RootLabel::T2));
    assert!(inside(real[2], RootLabel::T3));
    assert!(inside(imag[0], RootLabel::T5));
    assert!(inside(imag[1], RootLabel::T4));
    assert!(iv.iter().filter(|i| i.axis == Axis::Imaginary).count() == 2);
}
