//! The five root-isolating intervals of `Q_pq` for `q ≥ 59p`, exact
//! certificates that each holds exactly one root, and the integer points
//! they contain.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{AsymError, Axis, MIN_Q_OVER_P};
use crate::cuboid_eqs::{build_qpq, satisfies_inequalities, PQPair};
use crate::exact_arith::rational::{ceil, floor, rat, rat_int};
use crate::exact_arith::{cauchy_root_bound, eval_poly_quad, IntPoly, QuadRational, SturmSequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootLabel {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl RootLabel {
    pub const ALL: [RootLabel; 5] = [
        RootLabel::T1,
        RootLabel::T2,
        RootLabel::T3,
        RootLabel::T4,
        RootLabel::T5,
    ];

    pub fn axis(&self) -> Axis {
        match self {
            RootLabel::T1 | RootLabel::T2 | RootLabel::T3 => Axis::Real,
            RootLabel::T4 | RootLabel::T5 => Axis::Imaginary,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An open interval `(lo, hi)` on the real axis, or `(lo·i, hi·i)` on the
/// imaginary axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticInterval {
    pub label: RootLabel,
    pub axis: Axis,
    pub lo: QuadRational,
    pub hi: QuadRational,
}

impl AsymptoticInterval {
    fn around(label: RootLabel, center: QuadRational, half_width: &BigRational) -> Self {
        let w = QuadRational::from_rational(half_width.clone());
        AsymptoticInterval {
            label,
            axis: label.axis(),
            lo: &center - &w,
            hi: &center + &w,
        }
    }

    fn real(label: RootLabel, lo: BigRational, hi: BigRational) -> Self {
        AsymptoticInterval {
            label,
            axis: label.axis(),
            lo: QuadRational::from_rational(lo),
            hi: QuadRational::from_rational(hi),
        }
    }

    pub fn center(&self) -> QuadRational {
        self.lo.midpoint(&self.hi)
    }

    pub fn contains(&self, x: &QuadRational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

fn check_precondition(pair: &PQPair) -> Result<(), AsymError> {
    if pair.q() < MIN_Q_OVER_P * pair.p() {
        return Err(AsymError::PreconditionViolated {
            p: pair.p(),
            q: pair.q(),
        });
    }
    Ok(())
}

/// The intervals `T1..T5`:
///
/// - `T1 = (p² − 5p³/q, p²)`, `T2 = (p², p² + 5p³/q)`
/// - `T3 = pq − 16p³/q ∓ 5p⁴/q²`
/// - `T4 = (√2+1)q² + (√2−2)p² ∓ 5p³/q` (imaginary)
/// - `T5 = (√2−1)q² + (√2+2)p² ∓ 5p³/q` (imaginary)
pub fn asymptotic_intervals(pair: &PQPair) -> Result<Vec<AsymptoticInterval>, AsymError> {
    check_precondition(pair)?;
    let p = rat_int(pair.p());
    let q = rat_int(pair.q());
    let p2 = &p * &p;
    let p3 = &p2 * &p;
    let q2 = &q * &q;
    let r12 = rat_int(5) * &p3 / &q;
    let r3 = rat_int(5) * &p2 * &p2 / &q2;
    let c3 = &p * &q - rat_int(16) * &p3 / &q;
    let two_p2 = rat_int(2) * &p2;
    let c4 = QuadRational::new(&q2 - &two_p2, &q2 + &p2);
    let c5 = QuadRational::new(&two_p2 - &q2, &q2 + &p2);
    Ok(vec![
        AsymptoticInterval::real(RootLabel::T1, &p2 - &r12, p2.clone()),
        AsymptoticInterval::real(RootLabel::T2, p2.clone(), &p2 + &r12),
        AsymptoticInterval::around(RootLabel::T3, QuadRational::from_rational(c3), &r3),
        AsymptoticInterval::around(RootLabel::T4, c4, &r12),
        AsymptoticInterval::around(RootLabel::T5, c5, &r12),
    ])
}

/// One exact comparison: `value > 0` (or `≥ 0` when `strict` is false).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Margin {
    pub name: String,
    pub value: QuadRational,
    pub strict: bool,
}

impl Margin {
    fn new(name: impl Into<String>, value: QuadRational, strict: bool) -> Self {
        Margin {
            name: name.into(),
            value,
            strict,
        }
    }

    pub fn holds(&self) -> bool {
        let s = self.value.sign();
        s > 0 || (!self.strict && s == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointnessReport {
    /// `lo > 0` for each interval, then `T2.lo − T1.hi ≥ 0`,
    /// `T3.lo − T2.hi > 0` and `T4.lo − T5.hi > 0`.
    pub margins: Vec<Margin>,
    pub disjoint: bool,
}

fn find(intervals: &[AsymptoticInterval], label: RootLabel) -> Option<&AsymptoticInterval> {
    intervals.iter().find(|i| i.label == label)
}

/// Checks that the intervals avoid the origin and do not overlap. A missing
/// label or an interval with `lo ≥ hi` makes the verdict false.
pub fn check_disjoint(intervals: &[AsymptoticInterval]) -> DisjointnessReport {
    let mut margins = Vec::new();
    let mut well_formed = true;
    for iv in intervals {
        margins.push(Margin::new(format!("{}.lo", iv.label), iv.lo.clone(), true));
        well_formed &= iv.lo < iv.hi;
    }
    let gaps = [
        (RootLabel::T1, RootLabel::T2, false),
        (RootLabel::T2, RootLabel::T3, true),
        (RootLabel::T5, RootLabel::T4, true),
    ];
    for (below, above, strict) in gaps {
        match (find(intervals, below), find(intervals, above)) {
            (Some(b), Some(a)) => margins.push(Margin::new(
                format!("{above}.lo - {below}.hi"),
                &a.lo - &b.hi,
                strict,
            )),
            _ => well_formed = false,
        }
    }
    let disjoint = well_formed && intervals.len() == 5 && margins.iter().all(Margin::holds);
    DisjointnessReport { margins, disjoint }
}

/// The explicit lower bounds that keep the intervals away from the origin
/// and from each other for every `q ≥ 59p`.
pub fn separation_bounds(pair: &PQPair) -> Result<Vec<Margin>, AsymError> {
    let iv = asymptotic_intervals(pair)?;
    let p2 = rat_int(pair.p()) * rat_int(pair.p());
    let times_p2 = |n: i64, d: i64| QuadRational::from_rational(rat(n, d) * &p2);
    let lo = |l: RootLabel| find(&iv, l).unwrap().lo.clone();
    let gap = &lo(RootLabel::T4) - &find(&iv, RootLabel::T5).unwrap().hi;
    Ok(vec![
        Margin::new(
            "T1.lo - 54p^2/59",
            &lo(RootLabel::T1) - &times_p2(54, 59),
            false,
        ),
        Margin::new("T3.lo - 58p^2", &lo(RootLabel::T3) - &times_p2(58, 1), true),
        Margin::new(
            "T4.lo - 8403p^2",
            &lo(RootLabel::T4) - &times_p2(8403, 1),
            true,
        ),
        Margin::new(
            "T5.lo - 1445p^2",
            &lo(RootLabel::T5) - &times_p2(1445, 1),
            true,
        ),
        Margin::new("T4.lo - T5.hi - 6957p^2", &gap - &times_p2(6957, 1), true),
    ])
}

/// Evidence that an interval isolates a root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCertificate {
    pub label: RootLabel,
    pub axis: Axis,
    /// Sign of `Q_pq` (real) or `Q̃` (imaginary) at `lo` and `hi`.
    pub lo_sign: i8,
    pub hi_sign: i8,
    /// Sturm count over the interval; real intervals only.
    pub sturm_count: Option<usize>,
    pub failure: Option<String>,
}

impl RootCertificate {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificationReport {
    pub pair: PQPair,
    pub intervals: Vec<AsymptoticInterval>,
    pub certificates: Vec<RootCertificate>,
    pub disjointness: DisjointnessReport,
    /// Cauchy bound `B` of `Q_pq`.
    pub root_bound: BigRational,
    /// Sturm counts of `Q_pq` on `(0, B)` and `(−B, B)`.
    pub positive_real_roots: usize,
    pub real_roots: usize,
    /// Sturm count of `Q̃` on `(0, B̃)`: roots `i·y` with `y > 0`.
    pub positive_imaginary_roots: usize,
}

impl CertificationReport {
    /// Every interval certified, intervals disjoint, and the global root
    /// counts are 3 positive real, 6 real and 2 positive imaginary, so each
    /// interval holds exactly one root.
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(RootCertificate::passed)
            && self.disjointness.disjoint
            && self.positive_real_roots == 3
            && self.real_roots == 6
            && self.positive_imaginary_roots == 2
    }
}

/// `Q̃(y) = Q_pq(i·y)` as a real polynomial.
pub fn imaginary_restriction(pair: &PQPair) -> IntPoly {
    build_qpq(pair)
        .imaginary_axis_restriction()
        .expect("Q_pq is even")
}

fn certify_interval(
    iv: &AsymptoticInterval,
    qpq: &IntPoly,
    sturm: &SturmSequence,
    q_tilde: &IntPoly,
) -> RootCertificate {
    let poly = match iv.axis {
        Axis::Real => qpq,
        Axis::Imaginary => q_tilde,
    };
    let lo_sign = eval_poly_quad(poly, &iv.lo).sign();
    let hi_sign = eval_poly_quad(poly, &iv.hi).sign();
    let mut failure = None;
    if lo_sign == 0 || hi_sign == 0 || lo_sign == hi_sign {
        failure = Some(format!("no sign change (signs {lo_sign}, {hi_sign})"));
    }
    let mut sturm_count = None;
    if iv.axis == Axis::Real {
        match (iv.lo.as_rational(), iv.hi.as_rational()) {
            (Some(lo), Some(hi)) => match sturm.count(lo, hi) {
                Ok(n) => {
                    sturm_count = Some(n);
                    if n != 1 && failure.is_none() {
                        failure = Some(format!("Sturm count {n}, expected 1"));
                    }
                }
                Err(e) => {
                    failure.get_or_insert_with(|| format!("Sturm count failed: {e}"));
                }
            },
            _ => {
                failure.get_or_insert_with(|| "real interval with irrational endpoint".into());
            }
        }
    }
    RootCertificate {
        label: iv.label,
        axis: iv.axis,
        lo_sign,
        hi_sign,
        sturm_count,
        failure,
    }
}

/// Builds every certificate and root count without failing on a negative
/// outcome; see [`certify_roots`] for the strict form.
pub fn compute_certificates(pair: &PQPair) -> Result<CertificationReport, AsymError> {
    let intervals = asymptotic_intervals(pair)?;
    let qpq = build_qpq(pair);
    let q_tilde = imaginary_restriction(pair);
    let sturm = SturmSequence::new(&qpq);
    let certificates = intervals
        .iter()
        .map(|iv| certify_interval(iv, &qpq, &sturm, &q_tilde))
        .collect();
    let disjointness = check_disjoint(&intervals);

    let zero = BigRational::zero();
    let root_bound = cauchy_root_bound(&qpq);
    let positive_real_roots = sturm.count(&zero, &root_bound)?;
    let real_roots = sturm.count(&-&root_bound, &root_bound)?;
    let tilde_bound = cauchy_root_bound(&q_tilde);
    let positive_imaginary_roots = SturmSequence::new(&q_tilde).count(&zero, &tilde_bound)?;

    Ok(CertificationReport {
        pair: *pair,
        intervals,
        certificates,
        disjointness,
        root_bound,
        positive_real_roots,
        real_roots,
        positive_imaginary_roots,
    })
}

/// Certifies one root per interval, failing with the first check that does
/// not hold.
pub fn certify_roots(pair: &PQPair) -> Result<CertificationReport, AsymError> {
    let report = compute_certificates(pair)?;
    let fail = |label: String, check: String| AsymError::CertificationFailed {
        p: pair.p(),
        q: pair.q(),
        label,
        check,
    };
    if let Some(c) = report.certificates.iter().find(|c| !c.passed()) {
        return Err(fail(
            c.label.to_string(),
            c.failure.clone().unwrap_or_default(),
        ));
    }
    if !report.disjointness.disjoint {
        let bad = report
            .disjointness
            .margins
            .iter()
            .find(|m| !m.holds())
            .map(|m| m.name.clone())
            .unwrap_or_else(|| "malformed interval".into());
        return Err(fail("all".into(), format!("disjointness: {bad}")));
    }
    let counts = (
        report.positive_real_roots,
        report.real_roots,
        report.positive_imaginary_roots,
    );
    if counts != (3, 6, 2) {
        return Err(fail(
            "all".into(),
            format!(
                "root counts (positive real, real, positive imaginary) = {counts:?}, expected (3, 6, 2)"
            ),
        ));
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Conclusion {
    /// No admissible integer root exists: the pair needs no search.
    SearchSkip,
    /// Something the analysis rules out was observed.
    TheoremViolation,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::SearchSkip => "SEARCH_SKIP",
            Conclusion::TheoremViolation => "THEOREM_VIOLATION",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPointReport {
    pub pair: PQPair,
    /// `q > 5p³`: then `T1` and `T2` hold no integers.
    pub outer_real_free: bool,
    /// `q² > 10p⁴`: then `T3` holds at most one integer.
    pub middle_at_most_one: bool,
    /// `q ≥ 16p³ + 5p/16`: then `T3` holds no integer and sits strictly
    /// between `pq − 1` and `pq`.
    pub middle_free: bool,
    /// Integers strictly inside `T1`, `T2`, `T3`.
    pub integers: Vec<(RootLabel, Vec<BigInt>)>,
    /// Those integers that also satisfy the cuboid inequalities.
    pub admissible: Vec<(RootLabel, BigInt)>,
    /// `pq − 1 < T3.lo` and `T3.hi < pq`; evaluated when `middle_free`.
    pub middle_bracket: Option<bool>,
    /// Every hypothesis that holds agrees with the enumeration.
    pub consistent: bool,
    pub conclusion: Conclusion,
}

fn integers_inside(iv: &AsymptoticInterval) -> Vec<BigInt> {
    let lo = iv.lo.as_rational().expect("real interval");
    let hi = iv.hi.as_rational().expect("real interval");
    let mut n = floor(lo) + BigInt::one();
    let end = ceil(hi);
    let mut out = Vec::new();
    while n < end {
        out.push(n.clone());
        n += 1;
    }
    out
}

/// Enumerates the integers in the real intervals and checks them against
/// the cuboid inequalities, alongside the closed-form hypotheses that rule
/// them out.
pub fn integer_point_report(pair: &PQPair) -> Result<IntegerPointReport, AsymError> {
    let intervals = asymptotic_intervals(pair)?;
    let (p, q) = (BigInt::from(pair.p()), BigInt::from(pair.q()));
    let p3 = &p * &p * &p;
    let outer_real_free = q > BigInt::from(5) * &p3;
    let middle_at_most_one = &q * &q > BigInt::from(10) * &p3 * &p;
    let middle_free = BigInt::from(16) * &q >= BigInt::from(256) * &p3 + BigInt::from(5) * &p;

    let mut integers = Vec::new();
    let mut admissible = Vec::new();
    for iv in intervals.iter().filter(|iv| iv.axis == Axis::Real) {
        let ints = integers_inside(iv);
        for t in &ints {
            let ok = t
                .to_u64()
                .is_some_and(|t| t > 0 && satisfies_inequalities(pair, t));
            if ok {
                admissible.push((iv.label, t.clone()));
            }
        }
        integers.push((iv.label, ints));
    }
    let count = |l: RootLabel| {
        integers
            .iter()
            .find(|(x, _)| *x == l)
            .map_or(0, |(_, v)| v.len())
    };

    let t3 = find(&intervals, RootLabel::T3).unwrap();
    let middle_bracket = middle_free.then(|| {
        let pq = QuadRational::from_rational(BigRational::from_integer(&p * &q));
        let pq_minus_one = &pq - &QuadRational::from_ints(1, 0);
        pq_minus_one < t3.lo && t3.hi < pq
    });

    let consistent = (!outer_real_free || count(RootLabel::T1) + count(RootLabel::T2) == 0)
        && (!middle_at_most_one || count(RootLabel::T3) <= 1)
        && (!middle_free || count(RootLabel::T3) == 0)
        && middle_bracket != Some(false);
    let conclusion = if admissible.is_empty() && consistent {
        Conclusion::SearchSkip
    } else {
        Conclusion::TheoremViolation
    };

    Ok(IntegerPointReport {
        pair: *pair,
        outer_real_free,
        middle_at_most_one,
        middle_free,
        integers,
        admissible,
        middle_bracket,
        consistent,
        conclusion,
    })
}

/// Bisects a certified interval until its width is at most `rel_width`
/// times its lower end, returning the final midpoint. Real intervals are
/// bisected on `Q_pq`, imaginary ones on `Q̃`.
pub fn refine_root(
    pair: &PQPair,
    iv: &AsymptoticInterval,
    rel_width: &BigRational,
) -> Result<QuadRational, AsymError> {
    let poly = match iv.axis {
        Axis::Real => build_qpq(pair),
        Axis::Imaginary => imaginary_restriction(pair),
    };
    let sign = |x: &QuadRational| eval_poly_quad(&poly, x).sign();
    let (mut lo, mut hi) = (iv.lo.clone(), iv.hi.clone());
    let lo_sign = sign(&lo);
    if lo_sign == 0 {
        return Ok(lo);
    }
    if sign(&hi) == 0 {
        return Ok(hi);
    }
    if lo_sign == sign(&hi) {
        return Err(AsymError::CertificationFailed {
            p: pair.p(),
            q: pair.q(),
            label: iv.label.to_string(),
            check: "no sign change to refine".into(),
        });
    }
    let rel = QuadRational::from_rational(rel_width.abs());
    while (&hi - &lo) > &rel * &lo.abs() {
        let mid = lo.midpoint(&hi);
        match sign(&mid) {
            0 => return Ok(mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(lo.midpoint(&hi))
}

/// Product of the five refined root magnitudes, which should equal
/// `p⁵q⁵`: the ten roots come in `±` pairs and their product is the
/// constant term `−p¹⁰q¹⁰`.
pub fn vieta_product(pair: &PQPair, rel_width: &BigRational) -> Result<f64, AsymError> {
    let mut product = QuadRational::from_ints(1, 0);
    for iv in asymptotic_intervals(pair)? {
        product = &product * &refine_root(pair, &iv, rel_width)?;
    }
    Ok(product.to_f64())
}

/// Pairs `(p, q)` with `p ≤ p_max`, `q ∈ {59p, 59p+1, 60p+1, 5p³+1,
/// 16p³+p}`, `gcd(p, q) = 1` and `q ≥ 59p`, which straddle each hypothesis
/// boundary. Candidates below `59p` (e.g. `5p³+1` for small `p`) are
/// dropped since no interval exists there.
pub fn boundary_sample_pairs(p_max: u64) -> Vec<PQPair> {
    let mut out = Vec::new();
    for p in 1..=p_max {
        let mut qs = vec![
            59 * p,
            59 * p + 1,
            60 * p + 1,
            5 * p * p * p + 1,
            16 * p * p * p + p,
        ];
        qs.sort_unstable();
        qs.dedup();
        out.extend(
            qs.into_iter()
                .filter(|&q| q >= MIN_Q_OVER_P * p)
                .filter_map(|q| PQPair::new(p, q).ok()),
        );
    }
    out
}
