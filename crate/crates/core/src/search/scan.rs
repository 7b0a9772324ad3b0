//! Testing the candidate `t` of a single pair.

use num_bigint::BigInt;
use num_traits::Zero;

use super::bounds::t_bounds;
use super::divisors::{constant_term_factors, divisors_in_range};
use super::sieve::Sieve;
use super::Mode;
use crate::cuboid_eqs::{
    build_qpq, reconstruct_cuboid, satisfies_inequalities, CaseTag, CuboidWitness, EqError, PQPair,
};

/// Work done on one pair.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PairCounters {
    /// Exact evaluations of `Q_pq(t)`.
    pub t_values_tested: u64,
    /// Candidates discarded by a residue filter.
    pub sieve_rejections: u64,
}

impl PairCounters {
    pub fn add(&mut self, other: &PairCounters) {
        self.t_values_tested += other.t_values_tested;
        self.sieve_rejections += other.sieve_rejections;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairOutcome {
    pub hits: Vec<CuboidWitness>,
    pub counters: PairCounters,
}

/// How candidates are produced and filtered.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions<'a> {
    pub mode: Mode,
    pub sieve_moduli: &'a [u64],
    /// Only count the candidates that would be evaluated; evaluate nothing.
    pub count_only: bool,
}

/// Tests every candidate `t` in the pair's [`t_bounds`] range.
pub fn scan_pair(pair: &PQPair, opts: &ScanOptions) -> Result<PairOutcome, EqError> {
    match t_bounds(pair) {
        Some((lo, hi)) => scan_range(pair, lo, hi, opts),
        None => Ok(PairOutcome::default()),
    }
}

/// Tests candidates `t ∈ lo..=hi`: all of them (SCAN) or only divisors of
/// `p¹⁰q¹⁰` (DIVISOR), after the residue filters. Every root satisfying the
/// cuboid inequalities is reconstructed under both case tags; hits are
/// ordered by `(t, case)`.
pub fn scan_range(
    pair: &PQPair,
    lo: u64,
    hi: u64,
    opts: &ScanOptions,
) -> Result<PairOutcome, EqError> {
    let mut out = PairOutcome::default();
    if lo > hi {
        return Ok(out);
    }
    let qpq = build_qpq(pair);
    let even = qpq.even_part().expect("Q_pq is even");
    let sieve = Sieve::new(&qpq, opts.sieve_moduli);

    let mut visit = |t: u64| -> Result<(), EqError> {
        if !sieve.admits(t) {
            out.counters.sieve_rejections += 1;
            return Ok(());
        }
        out.counters.t_values_tested += 1;
        if opts.count_only {
            return Ok(());
        }
        let t2 = BigInt::from(t) * BigInt::from(t);
        if even.eval_int(&t2).is_zero() && satisfies_inequalities(pair, t) {
            for case in CaseTag::ALL {
                out.hits.push(reconstruct_cuboid(pair, t, case)?);
            }
        }
        Ok(())
    };

    match opts.mode {
        Mode::Scan => (lo..=hi).try_for_each(&mut visit)?,
        Mode::Divisor => {
            let factors = constant_term_factors(pair.p(), pair.q());
            divisors_in_range(&factors, lo, hi)
                .into_iter()
                .try_for_each(&mut visit)?
        }
    }
    Ok(out)
}
