use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

use cuboid_core::cuboid_eqs::{
    build_qpq, compute_z, cuboid_predicate, factorization_check, param_ratios, reconstruct_cuboid,
    CaseTag, EqError, PQPair, Septuple,
};
use cuboid_core::exact_arith::rational::{rat, rat_int};
use cuboid_core::exact_arith::sturm_count;

fn coprime_pair() -> impl Strategy<Value = PQPair> {
    (1u64..200, 1u64..200).prop_filter_map("coprime, distinct", |(p, q)| PQPair::new(p, q).ok())
}

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    (-300i64..300, 1i64..100)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn qpq_is_even_monic_degree_ten(pair in coprime_pair()) {
        let q = build_qpq(&pair);
        prop_assert!(q.is_even());
        prop_assert_eq!(q.degree(), Some(10));
        prop_assert_eq!(q.leading(), Some(&BigInt::one()));
        let pq = BigInt::from(pair.p()) * BigInt::from(pair.q());
        prop_assert_eq!(q.coeff(0), -pq.pow(10));
    }

    #[test]
    fn parametrisation_identities(
        upsilon in nonzero_rational(),
        z in nonzero_rational(),
        alpha in nonzero_rational(),
        beta in nonzero_rational(),
    ) {
        let r = param_ratios(&upsilon, &z, &alpha, &beta);
        let one = BigRational::one();
        prop_assert_eq!(&r.x2 * &r.x2 + &r.x3 * &r.x3, &r.d1 * &r.d1);
        prop_assert_eq!(&r.x1 * &r.x1 + &r.d1 * &r.d1, one);
    }

    #[test]
    fn ratios_match_trigonometric_form(th in 0.05f64..3.0, ph in 0.05f64..3.0) {
        // υ = tan(θ/2), z = tan(φ/2): x₁ = sin θ, d₁ = cos θ,
        // x₂ = cos θ·sin φ, x₃ = cos θ·cos φ
        let to_rat = |x: f64| BigRational::from_float(x).unwrap();
        let (u, z) = ((th / 2.0).tan(), (ph / 2.0).tan());
        let r = param_ratios(&to_rat(u), &to_rat(z), &rat(1, 1), &rat(1, 1));
        let f = |x: &BigRational| x.to_f64().unwrap();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
        prop_assert!(close(f(&r.x1), th.sin()));
        prop_assert!(close(f(&r.d1), th.cos()));
        prop_assert!(close(f(&r.x2), th.cos() * ph.sin()));
        prop_assert!(close(f(&r.x3), th.cos() * ph.cos()));
    }

    #[test]
    fn reconstruction_rejects_non_roots(pair in coprime_pair(), t in 1u64..100_000) {
        prop_assume!(!build_qpq(&pair).eval_int(&BigInt::from(t)).is_zero());
        prop_assert_eq!(
            reconstruct_cuboid(&pair, t, CaseTag::BuEqA2),
            Err(EqError::NotARoot { p: pair.p(), q: pair.q(), t })
        );
    }
}

#[test]
fn factorisation_holds_for_small_pairs() {
    for p in 1..=12 {
        for q in 1..=12 {
            if let Ok(pair) = PQPair::new(p, q) {
                assert!(factorization_check(&pair), "{pair}");
            }
        }
    }
}

#[test]
fn z_formula_example() {
    // υ = α = β = 1/2: (5/4)(3/4)(5/4) / (2·(5/4)·(15/16)) = 1/2
    let h = rat(1, 2);
    assert_eq!(compute_z(&h, &h, &h).unwrap(), rat(1, 2));
    assert_eq!(
        compute_z(&rat(1, 1), &rat(1, 1), &h),
        Err(EqError::DegenerateDenominator)
    );
}

#[test]
fn euler_brick_is_not_perfect() {
    let brick = Septuple {
        x1: 44.into(),
        x2: 117.into(),
        x3: 240.into(),
        d1: 267.into(),
        d2: 244.into(),
        d3: 125.into(),
        l: 271.into(),
    };
    assert!(!brick.is_perfect_cuboid());
}

#[test]
fn predicate_false_on_small_grid() {
    for p in 1..=4u64 {
        for q in 1..=12u64 {
            let Ok(pair) = PQPair::new(p, q) else {
                continue;
            };
            for t in 1..=400 {
                assert!(!cuboid_predicate(&pair, t), "{pair} t={t}");
            }
        }
    }
}

/// Sign changes of `Q_{1,59}` evaluated in floating point on a grid.
fn float_sign_changes(lo: f64, hi: f64, steps: usize) -> usize {
    let coeffs: Vec<f64> = build_qpq(&PQPair::new(1, 59).unwrap())
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap())
        .collect();
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
    let mut changes = 0;
    let mut prev = eval(lo).signum();
    for i in 1..=steps {
        let s = eval(lo + (hi - lo) * i as f64 / steps as f64).signum();
        if s != prev {
            changes += 1;
        }
        prev = s;
    }
    changes
}

#[test]
fn sturm_count_of_q_1_59_on_positive_axis() {
    let q = build_qpq(&PQPair::new(1, 59).unwrap());
    let n = sturm_count(&q, &rat_int(0), &rat_int(1_000_000)).unwrap();
    assert_eq!(n, 3);
    let oracle = float_sign_changes(0.0, 2.0, 200_000) + float_sign_changes(2.0, 1.0e6, 1_000_000);
    assert_eq!(oracle, 3);
}

#[test]
fn primitive_septuple_has_unit_gcd() {
    let upsilon = rat(9, 7);
    let (alpha, beta) = (rat(6, 7), rat(4, 7));
    let z = compute_z(&upsilon, &alpha, &beta).unwrap();
    let s = Septuple::from_ratios(&param_ratios(&upsilon, &z, &alpha, &beta)).primitive();
    let g = s.as_array().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    assert_eq!(g, BigInt::one());
}
