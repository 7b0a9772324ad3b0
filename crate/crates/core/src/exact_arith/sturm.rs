//! Exact real-root counting with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::IntPoly;
use super::ArithError;

/// The Sturm chain `P, P', −rem(P, P'), …`, each member reduced to its
/// primitive part. Scaling by positive constants leaves the sign
/// variations unchanged, so the counts stay exact.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    pub fn new(p: &IntPoly) -> Self {
        assert!(!p.is_zero(), "Sturm sequence of the zero polynomial");
        let mut chain = vec![p.primitive_part()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.primitive_part());
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let rem = chain[n - 2].pseudo_rem(&chain[n - 1]);
            if rem.is_zero() {
                break;
            }
            chain.push((-&rem).primitive_part());
        }
        SturmSequence { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Number of sign changes in the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for poly in &self.chain {
            let s = poly.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> Result<usize, ArithError> {
        if lo >= hi {
            return Err(ArithError::EmptyInterval);
        }
        let p = &self.chain[0];
        if p.sign_at(lo) == 0 {
            return Err(ArithError::EndpointIsRoot(lo.clone()));
        }
        if p.sign_at(hi) == 0 {
            return Err(ArithError::EndpointIsRoot(hi.clone()));
        }
        Ok(self.variations(lo) - self.variations(hi))
    }
}

/// Exact count of distinct real roots of `p` in `(lo, hi)`.
///
/// Refuses (with `EndpointIsRoot`) when an endpoint annihilates `p`; use
/// [`sturm_count_perturbed`] to opt into moving the endpoints inward.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    SturmSequence::new(p).count(lo, hi)
}

/// Like [`sturm_count`], but an endpoint that is a root is moved inward by
/// `eps` (default: interval width / 10⁹). Fails if the moved endpoint is
/// still a root or the interval collapses.
pub fn sturm_count_perturbed(
    p: &IntPoly,
    lo: &BigRational,
    hi: &BigRational,
    eps: Option<&BigRational>,
) -> Result<usize, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(ArithError::EmptyInterval);
    }
    let eps = match eps {
        Some(e) => e.abs(),
        None => (hi - lo) / BigRational::from_integer(BigInt::from(10).pow(9)),
    };
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    if p.sign_at(&lo) == 0 {
        lo += &eps;
    }
    if p.sign_at(&hi) == 0 {
        hi -= &eps;
    }
    sturm_count(p, &lo, &hi)
}

/// Cauchy bound `1 + max|cᵢ/c_n|`: every real root lies strictly inside
/// `(−B, B)`.
pub fn cauchy_root_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().expect("root bound of zero polynomial").abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    BigRational::one() + BigRational::new(max, lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rational::{rat, rat_int};

    #[test]
    fn basic_counts() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &rat_int(0), &rat_int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &rat_int(-2), &rat_int(2)).unwrap(), 2);
        let q = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_count(&q, &rat_int(-10), &rat_int(10)).unwrap(), 0);
    }

    #[test]
    fn repeated_roots_count_once() {
        // (t - 1)^2 (t + 2) = t^3 - 3t + 2
        let p = IntPoly::from_i64(&[2, -3, 0, 1]);
        assert_eq!(sturm_count(&p, &rat_int(-5), &rat_int(5)).unwrap(), 2);
    }

    #[test]
    fn endpoint_root_is_refused_unless_perturbed() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        assert!(matches!(
            sturm_count(&p, &rat_int(1), &rat_int(3)),
            Err(ArithError::EndpointIsRoot(_))
        ));
        assert_eq!(
            sturm_count_perturbed(&p, &rat_int(1), &rat_int(3), None).unwrap(),
            0
        );
        assert_eq!(
            sturm_count_perturbed(&p, &rat_int(-1), &rat_int(1), Some(&rat(1, 100))).unwrap(),
            0
        );
        assert_eq!(
            sturm_count_perturbed(&p, &rat_int(0), &rat_int(3), None).unwrap(),
            1
        );
    }

    #[test]
    fn bad_interval() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        assert!(matches!(
            sturm_count(&p, &rat_int(2), &rat_int(0)),
            Err(ArithError::EmptyInterval)
        ));
        assert!(matches!(
            sturm_count(&IntPoly::zero(), &rat_int(0), &rat_int(1)),
            Err(ArithError::ZeroPolynomial)
        ));
    }

    #[test]
    fn cauchy_bound_encloses_roots() {
        let p = IntPoly::from_i64(&[-6, 1, 1]); // roots 2, -3
        let b = cauchy_root_bound(&p);
        assert_eq!(b, rat_int(7));
        assert_eq!(sturm_count(&p, &-b.clone(), &b).unwrap(), 2);
    }
}
