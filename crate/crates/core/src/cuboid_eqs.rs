//! The cuboid equations: `Q_pq(t)`, its degree-12 parent equation in
//! `(a, b, u, t)`, the rational parametrisation of the edge/diagonal ratios
//! and reconstruction of an integer cuboid from a root `t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact_arith::IntPoly;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EqError {
    #[error("invalid pair (p={p}, q={q}): {reason}")]
    InvalidPair {
        p: u64,
        q: u64,
        reason: &'static str,
    },
    #[error("t must be a positive integer")]
    NonPositiveT,
    #[error("parametrisation degenerates: 1 - alpha^2 upsilon^2 = 0")]
    DegenerateDenominator,
    #[error("t={t} is not a root of Q_pq for p={p}, q={q}")]
    NotARoot { p: u64, q: u64, t: u64 },
    #[error("t={t} violates t > p^2, pq, q^2 or (p^2+t)(pq+t) > 2t^2 for p={p}, q={q}")]
    InequalityViolated { p: u64, q: u64, t: u64 },
    #[error(
        "reconstructed septuple for p={p}, q={q}, t={t} ({case}) fails the cuboid equations; \
         this contradicts the derivation chain and the run must stop"
    )]
    VerificationFailed {
        p: u64,
        q: u64,
        t: u64,
        case: CaseTag,
    },
}

/// A coprime pair `p ≠ q` of positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PQPair {
    p: u64,
    q: u64,
}

impl PQPair {
    pub fn new(p: u64, q: u64) -> Result<Self, EqError> {
        let invalid = |reason| Err(EqError::InvalidPair { p, q, reason });
        if p == 0 || q == 0 {
            return invalid("p and q must be positive");
        }
        if p == q {
            return invalid("p and q must differ");
        }
        if p.gcd(&q) != 1 {
            return invalid("p and q must be coprime");
        }
        Ok(PQPair { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PQPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={})", self.p, self.q)
    }
}

/// Which quadratic relation among `a, b, u` the pair resolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `b·u = a²`: `a = pq, b = p², u = q²`.
    BuEqA2,
    /// `a·u = b²`: `a = p², b = pq, u = q²`.
    AuEqB2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 2] = [CaseTag::BuEqA2, CaseTag::AuEqB2];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::BuEqA2 => "BU_EQ_A2",
            CaseTag::AuEqB2 => "AU_EQ_B2",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Parameters `(a, b, u)` of the degree-12 equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullEqParams {
    pub a: BigInt,
    pub b: BigInt,
    pub u: BigInt,
}

impl FullEqParams {
    pub fn new(a: u64, b: u64, u: u64) -> Self {
        FullEqParams {
            a: a.into(),
            b: b.into(),
            u: u.into(),
        }
    }

    pub fn from_pair(pair: &PQPair, case: CaseTag) -> Self {
        let p = BigInt::from(pair.p);
        let q = BigInt::from(pair.q);
        let pq = &p * &q;
        match case {
            CaseTag::BuEqA2 => FullEqParams {
                a: pq,
                b: &p * &p,
                u: &q * &q,
            },
            CaseTag::AuEqB2 => FullEqParams {
                a: &p * &p,
                b: pq,
                u: &q * &q,
            },
        }
    }
}

/// The even, monic, degree-10 polynomial `Q_pq(t)`.
pub fn build_qpq(pair: &PQPair) -> IntPoly {
    let p = BigInt::from(pair.p);
    let q = BigInt::from(pair.q);
    let p2 = &p * &p;
    let q2 = &q * &q;
    let p4 = &p2 * &p2;
    let q4 = &q2 * &q2;
    let p6 = &p4 * &p2;
    let q6 = &q4 * &q2;
    let p8 = &p4 * &p4;
    let q8 = &q4 * &q4;
    let p10 = &p8 * &p2;
    let q10 = &q8 * &q2;

    let c8 = (BigInt::from(2) * &q2 + &p2) * (BigInt::from(3) * &q2 - BigInt::from(2) * &p2);
    let c6 = &q8 + BigInt::from(10) * &p2 * &q6 + BigInt::from(4) * &p4 * &q4
        - BigInt::from(14) * &p6 * &q2
        + &p8;
    let c4 = -(&p2 * &q2)
        * (&q8 - BigInt::from(14) * &p2 * &q6
            + BigInt::from(4) * &p4 * &q4
            + BigInt::from(10) * &p6 * &q2
            + &p8);
    let c2 = -(&p6 * &q6)
        * (&q2 + BigInt::from(2) * &p2)
        * (BigInt::from(3) * &p2 - BigInt::from(2) * &q2);
    let c0 = -(q10 * p10);

    let z = BigInt::zero;
    IntPoly::new(vec![
        c0,
        z(),
        c2,
        z(),
        c4,
        z(),
        c6,
        z(),
        c8,
        z(),
        BigInt::one(),
    ])
}

/// The degree-12 even polynomial in `t` whose integer roots, for coprime
/// `a, b, u`, correspond to perfect cuboids.
pub fn build_full_eq(params: &FullEqParams) -> IntPoly {
    let (a, b, u) = (&params.a, &params.b, &params.u);
    let a2 = a * a;
    let b2 = b * b;
    let u2 = u * u;
    let a4 = &a2 * &a2;
    let b4 = &b2 * &b2;
    let u4 = &u2 * &u2;
    let k = |n: i64| BigInt::from(n);

    let c12 = BigInt::one();
    let c10 = k(6) * &u2 - k(2) * &a2 - k(2) * &b2;
    let c8 = &u4 + &b4 + &a4 + k(4) * &a2 * &u2 + k(4) * &b2 * &u2 - k(12) * &b2 * &a2;
    let c6 = k(6) * &a4 * &u2 + k(6) * &u2 * &b4
        - k(8) * &a2 * &b2 * &u2
        - k(2) * &u4 * &a2
        - k(2) * &u4 * &b2
        - k(2) * &a4 * &b2
        - k(2) * &b4 * &a2;
    let c4 = k(4) * &u2 * &b4 * &a2 + k(4) * &a4 * &u2 * &b2 - k(12) * &u4 * &a2 * &b2
        + &u4 * &a4
        + &u4 * &b4
        + &a4 * &b4;
    let c2 = k(6) * &a4 * &u2 * &b4 - k(2) * &u4 * &a4 * &b2 - k(2) * &u4 * &a2 * &b4;
    let c0 = &u4 * &a4 * &b4;

    let z = BigInt::zero;
    IntPoly::new(vec![
        c0,
        z(),
        c2,
        z(),
        c4,
        z(),
        c6,
        z(),
        c8,
        z(),
        c10,
        z(),
        c12,
    ])
}

/// Checks `(t − pq)(t + pq)·Q_pq(t)` against the degree-12 equation under
/// both resolutions of the pair into `(a, b, u)`.
pub fn factorization_check(pair: &PQPair) -> bool {
    factorization_check_with(pair, &build_qpq(pair))
}

/// [`factorization_check`] with a caller-supplied `Q_pq` (fault injection).
pub fn factorization_check_with(pair: &PQPair, qpq: &IntPoly) -> bool {
    let pq = BigInt::from(pair.p) * BigInt::from(pair.q);
    let linear = IntPoly::new(vec![-(&pq * &pq), BigInt::zero(), BigInt::one()]);
    let product = &linear * qpq;
    CaseTag::ALL
        .iter()
        .all(|&case| product == build_full_eq(&FullEqParams::from_pair(pair, case)))
}

/// A point `(α, β, υ, z)` of the parametrisation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPoint {
    pub alpha: BigRational,
    pub beta: BigRational,
    pub upsilon: BigRational,
    pub z: BigRational,
}

/// The six ratios `x₁/L, x₂/L, x₃/L, d₁/L, d₂/L, d₃/L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamRatios {
    pub x1: BigRational,
    pub x2: BigRational,
    pub x3: BigRational,
    pub d1: BigRational,
    pub d2: BigRational,
    pub d3: BigRational,
}

impl ParamRatios {
    pub fn as_array(&self) -> [&BigRational; 6] {
        [&self.x1, &self.x2, &self.x3, &self.d1, &self.d2, &self.d3]
    }
}

/// Edge and face-diagonal ratios to the space diagonal.
pub fn param_ratios(
    upsilon: &BigRational,
    z: &BigRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> ParamRatios {
    let one = BigRational::one();
    let two = BigRational::from_integer(BigInt::from(2));
    let v2 = upsilon * upsilon;
    let z2 = z * z;
    let one_p_v2 = &one + &v2;
    let one_m_v2 = &one - &v2;
    let one_p_z2 = &one + &z2;
    let den = &one_p_v2 * &one_p_z2;

    ParamRatios {
        x1: &two * upsilon / &one_p_v2,
        d1: &one_m_v2 / &one_p_v2,
        x2: &two * z * &one_m_v2 / &den,
        x3: &one_m_v2 * (&one - &z2) / &den,
        d2: (&den + &two * z * &one_m_v2) / &den * beta,
        d3: &two * (&v2 * &z2 + &one) / &den * alpha,
    }
}

/// `z = (1+υ²)(1−β²)(1+α²) / (2(1+β²)(1−α²υ²))`.
pub fn compute_z(
    upsilon: &BigRational,
    alpha: &BigRational,
    beta: &BigRational,
) -> Result<BigRational, EqError> {
    let one = BigRational::one();
    let a2 = alpha * alpha;
    let b2 = beta * beta;
    let v2 = upsilon * upsilon;
    let degenerate = &one - &a2 * &v2;
    if degenerate.is_zero() {
        return Err(EqError::DegenerateDenominator);
    }
    let num = (&one + &v2) * (&one - &b2) * (&one + &a2);
    let den = BigRational::from_integer(BigInt::from(2)) * (&one + &b2) * degenerate;
    Ok(num / den)
}

/// `t > p², t > pq, t > q²` and `(p² + t)(pq + t) > 2t²`.
pub fn satisfies_inequalities(pair: &PQPair, t: u64) -> bool {
    let (p, q, t) = (pair.p as u128, pair.q as u128, t as u128);
    t > p * p && t > p * q && t > q * q && (p * p + t) * (p * q + t) > 2 * t * t
}

/// True iff `(p, q, t)` yields a perfect cuboid: `t` is a root of `Q_pq`
/// and satisfies all the ordering inequalities.
pub fn cuboid_predicate(pair: &PQPair, t: u64) -> bool {
    t > 0 && satisfies_inequalities(pair, t) && build_qpq(pair).eval_int(&BigInt::from(t)).is_zero()
}

/// The integer septuple `(x₁, x₂, x₃, d₁, d₂, d₃, L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Septuple {
    #[serde(serialize_with = "ser_bigint")]
    pub x1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub x2: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub x3: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub d1: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub d2: BigInt,
    #[serde(serialize_with = "ser_bigint")]
    pub d3: BigInt,
    #[serde(rename = "L", serialize_with = "ser_bigint")]
    pub l: BigInt,
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

impl Septuple {
    /// Scales the six ratios by the least common multiple of their
    /// denominators, which becomes `L`.
    pub fn from_ratios(r: &ParamRatios) -> Self {
        let l = r
            .as_array()
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scale = |x: &BigRational| (x * BigRational::from_integer(l.clone())).to_integer();
        Septuple {
            x1: scale(&r.x1),
            x2: scale(&r.x2),
            x3: scale(&r.x3),
            d1: scale(&r.d1),
            d2: scale(&r.d2),
            d3: scale(&r.d3),
            l,
        }
    }

    pub fn as_array(&self) -> [&BigInt; 7] {
        [
            &self.x1, &self.x2, &self.x3, &self.d1, &self.d2, &self.d3, &self.l,
        ]
    }

    /// All entries positive and the four Pythagorean relations hold.
    pub fn is_perfect_cuboid(&self) -> bool {
        let sq = |x: &BigInt| x * x;
        self.as_array().iter().all(|x| x.is_positive())
            && sq(&self.x1) + sq(&self.x2) + sq(&self.x3) == sq(&self.l)
            && sq(&self.x2) + sq(&self.x3) == sq(&self.d1)
            && sq(&self.x3) + sq(&self.x1) == sq(&self.d2)
            && sq(&self.x1) + sq(&self.x2) == sq(&self.d3)
    }

    /// Divides every entry by the gcd of all seven.
    pub fn primitive(&self) -> Septuple {
        let g = self.as_array().iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        let d = |x: &BigInt| x / &g;
        Septuple {
            x1: d(&self.x1),
            x2: d(&self.x2),
            x3: d(&self.x3),
            d1: d(&self.d1),
            d2: d(&self.d2),
            d3: d(&self.d3),
            l: d(&self.l),
        }
    }
}

/// A reconstructed candidate cuboid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuboidWitness {
    pub p: u64,
    pub q: u64,
    pub t: u64,
    pub case: CaseTag,
    pub cuboid: Septuple,
    pub primitive: Septuple,
    pub verified: bool,
}

/// Builds the integer cuboid attached to a root `t` of `Q_pq`.
///
/// `α = a/t, β = b/t, υ = u/t`, `z` from [`compute_z`], ratios from
/// [`param_ratios`], scaled by the lcm of their denominators. Any failure
/// of the cuboid equations on the result is reported as
/// `VerificationFailed`, which callers must treat as fatal.
pub fn reconstruct_cuboid(pair: &PQPair, t: u64, case: CaseTag) -> Result<CuboidWitness, EqError> {
    if t == 0 {
        return Err(EqError::NonPositiveT);
    }
    let (p, q) = (pair.p, pair.q);
    if !build_qpq(pair).eval_int(&BigInt::from(t)).is_zero() {
        return Err(EqError::NotARoot { p, q, t });
    }
    if !satisfies_inequalities(pair, t) {
        return Err(EqError::InequalityViolated { p, q, t });
    }
    let params = FullEqParams::from_pair(pair, case);
    let over_t = |x: &BigInt| BigRational::new(x.clone(), BigInt::from(t));
    let alpha = over_t(&params.a);
    let beta = over_t(&params.b);
    let upsilon = over_t(&params.u);
    let z = compute_z(&upsilon, &alpha, &beta)?;
    let ratios = param_ratios(&upsilon, &z, &alpha, &beta);
    let cuboid = Septuple::from_ratios(&ratios);
    if !cuboid.is_perfect_cuboid() {
        return Err(EqError::VerificationFailed { p, q, t, case });
    }
    Ok(CuboidWitness {
        p,
        q,
        t,
        case,
        primitive: cuboid.primitive(),
        cuboid,
        verified: true,
    })
}
