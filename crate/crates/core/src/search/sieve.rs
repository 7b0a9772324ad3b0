//! Residue filters: `t` can only be a root of `Q_pq` if `t mod m` is a root
//! of `Q_pq mod m`.

use crate::cuboid_eqs::{build_qpq, PQPair};
use crate::exact_arith::IntPoly;

/// Residues `ρ ∈ [0, m)` with `Q_pq(ρ) ≡ 0 (mod m)`, ascending.
pub fn modular_sieve(pair: &PQPair, m: u64) -> Vec<u64> {
    residues(&build_qpq(pair), m)
}

fn residues(poly: &IntPoly, m: u64) -> Vec<u64> {
    assert!(m > 1, "sieve modulus must exceed 1");
    (0..m).filter(|&r| poly.eval_mod(r, m) == 0).collect()
}

/// Lookup table for one modulus.
#[derive(Clone, Debug)]
struct ResidueFilter {
    modulus: u64,
    allowed: Vec<bool>,
}

/// The conjunction of residue filters for several moduli.
#[derive(Clone, Debug, Default)]
pub struct Sieve {
    filters: Vec<ResidueFilter>,
}

impl Sieve {
    pub fn new(poly: &IntPoly, moduli: &[u64]) -> Self {
        let filters = moduli
            .iter()
            .map(|&m| {
                let mut allowed = vec![false; m as usize];
                for r in residues(poly, m) {
                    allowed[r as usize] = true;
                }
                ResidueFilter {
                    modulus: m,
                    allowed,
                }
            })
            .collect();
        Sieve { filters }
    }

    /// False only if some modulus proves `t` is not a root.
    pub fn admits(&self, t: u64) -> bool {
        self.filters
            .iter()
            .all(|f| f.allowed[(t % f.modulus) as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn mod_two_for_1_2() {
        assert_eq!(modular_sieve(&PQPair::new(1, 2).unwrap(), 2), vec![0, 1]);
    }

    #[test]
    fn fabricated_root_passes() {
        // (t − 6)(t + 6)(t² + 1) has the integer root 6
        let poly = IntPoly::from_i64(&[-36, 0, -35, 0, 1]);
        assert_eq!(poly.eval_int(&BigInt::from(6)), BigInt::from(0));
        let sieve = Sieve::new(&poly, &[64, 81, 25, 7, 11, 13]);
        assert!(sieve.admits(6));
        assert!(!sieve.admits(5));
    }

    #[test]
    fn residue_count_bounded() {
        let pair = PQPair::new(3, 7).unwrap();
        for m in 2..50 {
            assert!(modular_sieve(&pair, m).len() as u64 <= m);
        }
    }
}
