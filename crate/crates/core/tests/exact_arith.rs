use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use cuboid_core::exact_arith::rational::{rat, rat_int};
use cuboid_core::exact_arith::{
    eval_poly, eval_poly_quad, quad_sign, sturm_count, IntPoly, QuadRational,
};

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-1000i64..1000, 0..12).prop_map(|c| IntPoly::from_i64(&c))
}

fn rational_strategy() -> impl Strategy<Value = BigRational> {
    (-500i64..500, 1i64..60).prop_map(|(n, d)| rat(n, d))
}

/// Sum of `cₖ·xᵏ` with explicit powers, independent of Horner's scheme.
fn naive_eval(p: &IntPoly, x: &BigRational) -> BigRational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| BigRational::from_integer(c.clone()) * num_traits::pow(x.clone(), k))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

proptest! {
    #[test]
    fn horner_matches_naive_sum(p in poly_strategy(), x in rational_strategy()) {
        prop_assert_eq!(eval_poly(&p, &x), naive_eval(&p, &x));
    }

    #[test]
    fn sign_at_matches_value(p in poly_strategy(), x in rational_strategy()) {
        let v = eval_poly(&p, &x);
        let expected = if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 };
        prop_assert_eq!(p.sign_at(&x), expected);
    }

    #[test]
    fn quad_eval_of_rational_point(p in poly_strategy(), x in rational_strategy()) {
        let q = eval_poly_quad(&p, &QuadRational::from_rational(x.clone()));
        prop_assert_eq!(q, QuadRational::from_rational(eval_poly(&p, &x)));
    }

    #[test]
    fn quad_eval_commutes_with_conjugation(
        p in poly_strategy(),
        a in rational_strategy(),
        b in rational_strategy(),
    ) {
        let x = QuadRational::new(a, b);
        prop_assert_eq!(
            eval_poly_quad(&p, &x.conjugate()),
            eval_poly_quad(&p, &x).conjugate()
        );
    }

    #[test]
    fn sturm_is_additive(roots in prop::collection::btree_set(-30i64..30, 1..6), cut in -35i64..35) {
        // (2x − 2r − 1) for each r: simple roots at r + 1/2, never at an integer
        let mut p = IntPoly::from_i64(&[1]);
        for r in &roots {
            p = &p * &IntPoly::from_i64(&[-2 * r - 1, 2]);
        }
        let (lo, hi, mid) = (rat_int(-40), rat_int(40), rat_int(cut));
        let whole = sturm_count(&p, &lo, &hi).unwrap();
        prop_assert_eq!(whole, roots.len());
        let left = sturm_count(&p, &lo, &mid).unwrap();
        let right = sturm_count(&p, &mid, &hi).unwrap();
        prop_assert_eq!(left + right, whole);
        prop_assert_eq!(left, roots.iter().filter(|&&r| r < cut).count());
    }
}

/// Sign of `a + b√2` from a 50-digit enclosure of √2; `None` when the
/// enclosure does not decide it.
fn enclosure_sign(x: &QuadRational) -> Option<i8> {
    let scale = BigInt::from(10u32).pow(50);
    let root = (BigInt::from(2) * &scale * &scale).sqrt();
    let lower = BigRational::new(root.clone(), scale.clone());
    let upper = BigRational::new(root + BigInt::one(), scale);
    let sign = |v: BigRational| {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    let s1 = sign(&x.a + &x.b * &lower);
    let s2 = sign(&x.a + &x.b * &upper);
    if s1 == s2 && s1 != 0 {
        Some(s1)
    } else if x.b.is_zero() {
        Some(sign(x.a.clone()))
    } else {
        None
    }
}

#[test]
fn quad_sign_against_enclosure_oracle() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    let mut decided = 0;
    for i in 0..1000 {
        let x = if i % 4 == 0 {
            // near-cancelling: a/b close to −√2 via Pell-like convergents
            let (mut n, mut d) = (BigInt::one(), BigInt::one());
            for _ in 0..rng.gen_range(1..20) {
                let nn = &n + BigInt::from(2) * &d;
                d = &n + &d;
                n = nn;
            }
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            QuadRational::new(
                BigRational::from_integer(n * s),
                BigRational::from_integer(-d * s),
            )
        } else {
            QuadRational::new(
                rat(rng.gen_range(-10_000..10_000), rng.gen_range(1..500)),
                rat(rng.gen_range(-10_000..10_000), rng.gen_range(1..500)),
            )
        };
        if let Some(s) = enclosure_sign(&x) {
            decided += 1;
            assert_eq!(quad_sign(&x), s, "{x}");
        }
    }
    assert!(decided >= 990);
}

#[test]
fn sturm_counts_on_known_polynomials() {
    // x⁴ − 5x² + 4 = (x−1)(x+1)(x−2)(x+2)
    let p = IntPoly::from_i64(&[4, 0, -5, 0, 1]);
    assert_eq!(sturm_count(&p, &rat(-3, 1), &rat(3, 1)).unwrap(), 4);
    assert_eq!(sturm_count(&p, &rat(0, 1), &rat(3, 2)).unwrap(), 1);
    // x² − 2 on (1, 3/2) holds √2
    let p = IntPoly::from_i64(&[-2, 0, 1]);
    assert_eq!(sturm_count(&p, &rat(1, 1), &rat(3, 2)).unwrap(), 1);
    // x² + 1 has no real roots
    let p = IntPoly::from_i64(&[1, 0, 1]);
    assert_eq!(sturm_count(&p, &rat(-100, 1), &rat(100, 1)).unwrap(), 0);
}
