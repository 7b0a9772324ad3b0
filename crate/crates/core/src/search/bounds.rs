//! Exact bounds on the integer roots `t` worth testing for a pair.

use num_integer::Roots;

use crate::cuboid_eqs::PQPair;

/// Inclusive range `lo..=hi` of candidate `t`, or `None` when empty.
///
/// - `lo = max(p², pq, q²) + 1`
/// - `hi = min(61p² − 1, U)`, where `U` is the largest integer strictly
///   below `(p² + pq + p·√(p² + 6pq + q²)) / 2`
///
/// `U` is found with an integer square root, so no rounding is involved.
pub fn t_bounds(pair: &PQPair) -> Option<(u64, u64)> {
    let (p, q) = (pair.p() as u128, pair.q() as u128);
    let lo = (p * p).max(p * q).max(q * q) + 1;
    let hi = (61 * p * p - 1).min(quadratic_bound(p, q));
    if lo > hi {
        return None;
    }
    Some((u64::try_from(lo).ok()?, u64::try_from(hi).ok()?))
}

/// Largest integer `t` with `2t < s + p·√D`, `s = p² + pq`,
/// `D = p² + 6pq + q²`.
fn quadratic_bound(p: u128, q: u128) -> u128 {
    let s = p * p + p * q;
    let n = p * p * (p * p + 6 * p * q + q * q);
    let k = n.sqrt();
    if k * k == n {
        // p√D = k exactly: 2t ≤ s + k − 1
        (s + k - 1) / 2
    } else {
        // k < p√D < k + 1: 2t ≤ s + k
        (s + k) / 2
    }
}

/// True once every `q' ≥ q` has an empty range for this `p`.
///
/// `lo ≥ q² + 1` grows with `q` while `hi ≤ 61p² − 1` does not, so the
/// first `q` with `q² + 1 > 61p² − 1` ends the useful part of the loop.
pub fn past_last_useful_q(p: u64, q: u64) -> bool {
    let (p, q) = (p as u128, q as u128);
    q * q + 1 > 61 * p * p - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bounds(p: u64, q: u64) -> Option<(u64, u64)> {
        t_bounds(&PQPair::new(p, q).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(bounds(1, 2), None);
        assert_eq!(bounds(3, 2), Some((10, 17)));
        assert_eq!(bounds(1, 8), None);
    }

    #[test]
    fn quadratic_bound_matches_float_away_from_integers() {
        for p in 1..40u128 {
            for q in 1..200u128 {
                let exact = quadratic_bound(p, q);
                let (pf, qf) = (p as f64, q as f64);
                let b = (pf * pf + pf * qf + pf * (pf * pf + 6.0 * pf * qf + qf * qf).sqrt()) / 2.0;
                if (b - b.round()).abs() > 1e-6 {
                    assert_eq!(exact, b.floor() as u128, "p={p} q={q}");
                } else {
                    assert_eq!(exact, b.round() as u128 - 1, "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn cutoff_is_monotone() {
        for p in 1..30u64 {
            let first = (1..59 * p).find(|&q| past_last_useful_q(p, q)).unwrap();
            for q in first..59 * p {
                assert!(past_last_useful_q(p, q));
                if let Ok(pair) = PQPair::new(p, q) {
                    assert_eq!(t_bounds(&pair), None);
                }
            }
        }
    }
}
