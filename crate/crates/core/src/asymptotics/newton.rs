//! Newton polygon of `Q_pq(t)` viewed as a polynomial in `(t, q)` with `p`
//! kept symbolic, and the leading coefficients of the root expansions
//! `t ~ C·q^α` read off its upper boundary.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use super::{AsymError, Axis};
use crate::exact_arith::rational::exact_isqrt;
use crate::exact_arith::QuadRational;

/// Polynomial in `(p, q)` with integer coefficients, keyed by
/// `(exp_p, exp_q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn monomial(c: i64, exp_p: u32, exp_q: u32) -> Self {
        let mut b = BiPoly::default();
        b.add_term(exp_p, exp_q, BigInt::from(c));
        b
    }

    fn add_term(&mut self, exp_p: u32, exp_q: u32, c: BigInt) {
        let entry = self.terms.entry((exp_p, exp_q)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(exp_p, exp_q));
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(ep, eq), c) in &other.terms {
            out.add_term(ep, eq, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::default();
        for (&(ap, aq), ca) in &self.terms {
            for (&(bp, bq), cb) in &other.terms {
                out.add_term(ap + bp, aq + bq, ca * cb);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn eval(&self, p: u64, q: u64) -> BigInt {
        self.terms
            .iter()
            .map(|(&(ep, eq), c)| c * BigInt::from(p).pow(ep) * BigInt::from(q).pow(eq))
            .sum()
    }
}

fn sum(parts: &[BiPoly]) -> BiPoly {
    parts.iter().fold(BiPoly::default(), |acc, x| acc.add(x))
}

/// Coefficients of `Q_pq(t)` as symbolic polynomials in `(p, q)`, indexed
/// by the power of `t`.
pub fn symbolic_qpq() -> Vec<BiPoly> {
    let m = BiPoly::monomial;
    let mut out = vec![BiPoly::default(); 11];
    out[10] = m(1, 0, 0);
    out[8] = sum(&[m(2, 0, 2), m(1, 2, 0)]).mul(&sum(&[m(3, 0, 2), m(-2, 2, 0)]));
    out[6] = sum(&[
        m(1, 0, 8),
        m(10, 2, 6),
        m(4, 4, 4),
        m(-14, 6, 2),
        m(1, 8, 0),
    ]);
    out[4] = m(-1, 2, 2).mul(&sum(&[
        m(1, 0, 8),
        m(-14, 2, 6),
        m(4, 4, 4),
        m(10, 6, 2),
        m(1, 8, 0),
    ]));
    out[2] = m(-1, 6, 6)
        .mul(&sum(&[m(1, 0, 2), m(2, 2, 0)]))
        .mul(&sum(&[m(3, 2, 0), m(-2, 0, 2)]));
    out[0] = m(1, 10, 10).neg();
    out
}

/// A lattice node `(m, r)` for the monomial `A_{mr}(p)·q^r·t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonNode {
    pub m: u32,
    pub r: u32,
    /// `A_{mr}` as a polynomial in `p`; index = power of `p`.
    pub coeff: Vec<BigInt>,
}

impl NewtonNode {
    /// A node with unit coefficient, for purely geometric use.
    pub fn bare(m: u32, r: u32) -> Self {
        NewtonNode {
            m,
            r,
            coeff: vec![BigInt::one()],
        }
    }

    pub fn eval_coeff(&self, p: u64) -> BigInt {
        let p = BigInt::from(p);
        self.coeff
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &p + c)
    }

    /// `(c, e)` when the coefficient is the single monomial `c·pᵉ`.
    pub fn as_monomial(&self) -> Option<(BigInt, u32)> {
        let mut nonzero = self.coeff.iter().enumerate().filter(|(_, c)| !c.is_zero());
        let (e, c) = nonzero.next()?;
        if nonzero.next().is_some() {
            return None;
        }
        Some((c.clone(), e as u32))
    }
}

/// All nodes `(m, r, A_{mr}(p))` of `Q_pq`, sorted by `(m, r)`. A node is
/// present iff its coefficient is not the zero polynomial in `p`.
pub fn build_newton_grid() -> Vec<NewtonNode> {
    let mut nodes = Vec::new();
    for (m, coeff) in symbolic_qpq().iter().enumerate() {
        let mut by_r: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
        for ((ep, eq), c) in coeff.terms() {
            let v = by_r.entry(eq).or_default();
            if v.len() <= ep as usize {
                v.resize(ep as usize + 1, BigInt::zero());
            }
            v[ep as usize] += c;
        }
        for (r, c) in by_r {
            if c.iter().any(|x| !x.is_zero()) {
                nodes.push(NewtonNode {
                    m: m as u32,
                    r,
                    coeff: c,
                });
            }
        }
    }
    nodes.sort_by_key(|n| (n.m, n.r));
    nodes
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub nodes: Vec<NewtonNode>,
    /// Upper-boundary vertices, increasing `m`, collinear points dropped.
    pub upper_hull: Vec<(i64, i64)>,
    pub segment_slopes: Vec<Rational64>,
    /// `α = −k` over the segment slopes, deduplicated and ascending.
    pub exponents: Vec<Rational64>,
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Upper convex hull of the nodes by Andrew's monotone chain, using exact
/// integer orientation tests.
pub fn upper_hull(nodes: &[NewtonNode]) -> Result<NewtonPolygon, AsymError> {
    // only the topmost node of each column can be on the upper boundary
    let mut top: BTreeMap<i64, i64> = BTreeMap::new();
    for n in nodes {
        let e = top.entry(n.m as i64).or_insert(n.r as i64);
        *e = (*e).max(n.r as i64);
    }
    if top.len() < 2 {
        return Err(AsymError::DegenerateHull);
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for (m, r) in top {
        let pt = (m, r);
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) >= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    let segment_slopes: Vec<Rational64> = hull
        .windows(2)
        .map(|w| Rational64::new(w[1].1 - w[0].1, w[1].0 - w[0].0))
        .collect();
    let mut exponents: Vec<Rational64> = segment_slopes.iter().map(|k| -k).collect();
    exponents.sort();
    exponents.dedup();
    Ok(NewtonPolygon {
        nodes: nodes.to_vec(),
        upper_hull: hull,
        segment_slopes,
        exponents,
    })
}

impl NewtonPolygon {
    /// Nodes on the hull segment with slope `−exponent`, i.e. those that
    /// attain `max(r + α·m)`.
    pub fn segment_nodes(&self, exponent: Rational64) -> Result<Vec<&NewtonNode>, AsymError> {
        let idx = self
            .segment_slopes
            .iter()
            .position(|k| *k == -exponent)
            .ok_or(AsymError::ExponentNotInPolygon(exponent))?;
        let (m1, r1) = self.upper_hull[idx];
        let level = Rational64::from(r1) + exponent * m1;
        Ok(self
            .nodes
            .iter()
            .filter(|n| Rational64::from(n.r as i64) + exponent * (n.m as i64) == level)
            .collect())
    }
}

/// Leading term `C·q^α` of a root expansion, with
/// `C = magnitude · p^{p_power}` on the given axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub exponent: Rational64,
    pub magnitude: QuadRational,
    pub p_power: i64,
    pub axis: Axis,
    pub multiplicity: u32,
}

impl fmt::Display for LeadingTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.magnitude != QuadRational::from_ints(1, 0) {
            let m = &self.magnitude;
            if m.b.is_zero() || m.a.is_zero() {
                parts.push(m.to_string());
            } else {
                // a + b√2 printed as (√2±a) for the unit-b case
                parts.push(format!("({m})"));
            }
        }
        match self.p_power {
            0 => {}
            1 => parts.push("p".to_string()),
            k => parts.push(format!("p^{k}")),
        }
        if self.axis == Axis::Imaginary {
            parts.push("i".to_string());
        }
        if parts.is_empty() {
            parts.push("1".to_string());
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// Solves the segment equation for the exponent `α` and keeps the roots
/// with `C > 0` (real) or `C = i·y, y > 0` (imaginary).
///
/// Supported shape: every node coefficient is a monomial in `p`, and after
/// dividing out the lowest power of `C` the equation is at most quadratic
/// in `C²` (all even powers) or in `C`. That covers every segment of
/// `Q_pq`; other shapes report `UnsupportedSegment`.
pub fn leading_coefficients(
    polygon: &NewtonPolygon,
    exponent: Rational64,
) -> Result<Vec<LeadingTerm>, AsymError> {
    let nodes = polygon.segment_nodes(exponent)?;
    let unsupported = |why: &str| AsymError::UnsupportedSegment(format!("α={exponent}: {why}"));

    let m0 = nodes
        .iter()
        .map(|n| n.m)
        .min()
        .ok_or_else(|| unsupported("no nodes"))?;
    let even = nodes.iter().all(|n| (n.m - m0) % 2 == 0);
    let step = if even { 2 } else { 1 };

    // terms c·p^e·var^k with var = C^step
    let mut terms: Vec<(u32, BigInt, i64)> = Vec::new();
    for n in &nodes {
        let (c, e) = n
            .as_monomial()
            .ok_or_else(|| unsupported("coefficient is not a monomial in p"))?;
        terms.push(((n.m - m0) / step, c, e as i64));
    }
    let degree = terms.iter().map(|t| t.0).max().unwrap();
    if degree == 0 || degree > 2 {
        return Err(unsupported("segment equation degree outside 1..=2"));
    }

    // weighted homogeneity: var = p^g·v makes every term carry the same p-power
    let (_, _, e0) = terms
        .iter()
        .find(|t| t.0 == 0)
        .cloned()
        .ok_or_else(|| unsupported("missing constant term"))?;
    let mut g: Option<i64> = None;
    for (k, _, e) in &terms {
        if *k == 0 {
            continue;
        }
        let diff = e0 - e;
        if diff % (*k as i64) != 0 {
            return Err(unsupported("fractional power of p"));
        }
        let gk = diff / *k as i64;
        if g.is_some_and(|g| g != gk) {
            return Err(unsupported("segment is not weighted-homogeneous in p"));
        }
        g = Some(gk);
    }
    let g = g.unwrap();

    let mut v_coeffs = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (k, c, _) in &terms {
        v_coeffs[*k as usize] += c;
    }
    let roots = solve_low_degree(&v_coeffs[..=degree as usize])
        .ok_or_else(|| unsupported("roots are not in Q[√2] or are non-real"))?;

    let mut out = Vec::new();
    for (v, mult) in roots {
        let sign = v.sign();
        if step == 2 {
            if g % 2 != 0 {
                return Err(unsupported("odd p-power under a square root"));
            }
            let (axis, radicand) = if sign > 0 {
                (Axis::Real, v)
            } else {
                (Axis::Imaginary, -v)
            };
            let magnitude = radicand
                .sqrt()
                .ok_or_else(|| unsupported("square root leaves Q[√2]"))?;
            out.push(LeadingTerm {
                exponent,
                magnitude,
                p_power: g / 2,
                axis,
                multiplicity: mult,
            });
        } else if sign > 0 {
            out.push(LeadingTerm {
                exponent,
                magnitude: v,
                p_power: g,
                axis: Axis::Real,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

/// Real roots of `c₀ + c₁v (+ c₂v²)` in Q[√2] with multiplicities; `None`
/// if they are non-real or need a different square root.
fn solve_low_degree(c: &[BigInt]) -> Option<Vec<(QuadRational, u32)>> {
    let r = |n: &BigInt, d: &BigInt| BigRational::new(n.clone(), d.clone());
    match c.len() {
        2 => Some(vec![(QuadRational::from_rational(r(&-&c[0], &c[1])), 1)]),
        3 => {
            let (c0, c1, c2) = (&c[0], &c[1], &c[2]);
            let disc = c1 * c1 - BigInt::from(4) * c2 * c0;
            let two_c2 = BigInt::from(2) * c2;
            if disc.is_zero() {
                return Some(vec![(QuadRational::from_rational(r(&-c1, &two_c2)), 2)]);
            }
            if disc.is_negative() {
                return None;
            }
            let root = if let Some(s) = exact_isqrt(&disc) {
                QuadRational::from_rational(BigRational::from_integer(s))
            } else {
                let s = exact_isqrt(&(&disc / BigInt::from(2)))
                    .filter(|s| BigInt::from(2) * s * s == disc)?;
                QuadRational::new(BigRational::zero(), BigRational::from_integer(s))
            };
            let base = QuadRational::from_rational(r(&-c1, &BigInt::one()));
            let scale = r(&BigInt::one(), &two_c2);
            let mut roots = vec![(&base - &root).scale(&scale), (&base + &root).scale(&scale)];
            roots.sort();
            Some(roots.into_iter().map(|x| (x, 1)).collect())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node_coeff(grid: &[NewtonNode], m: u32, r: u32) -> Option<Vec<BigInt>> {
        grid.iter()
            .find(|n| n.m == m && n.r == r)
            .map(|n| n.coeff.clone())
    }

    fn mono(c: i64, e: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::from(c);
        v
    }

    #[test]
    fn grid_extreme_nodes() {
        let grid = build_newton_grid();
        assert_eq!(node_coeff(&grid, 0, 10), Some(mono(-1, 10)));
        assert_eq!(node_coeff(&grid, 2, 10), Some(mono(2, 6)));
        assert_eq!(node_coeff(&grid, 4, 10), Some(mono(-1, 2)));
        assert_eq!(node_coeff(&grid, 6, 8), Some(mono(1, 0)));
        assert_eq!(node_coeff(&grid, 8, 4), Some(mono(6, 0)));
        assert_eq!(node_coeff(&grid, 10, 0), Some(mono(1, 0)));
        assert!(grid.iter().all(|n| n.m % 2 == 0));
        assert_eq!(grid.len(), 18);
    }

    #[test]
    fn two_point_hull() {
        let poly = upper_hull(&[NewtonNode::bare(0, 0), NewtonNode::bare(1, 1)]).unwrap();
        assert_eq!(poly.segment_slopes, vec![Rational64::from(1)]);
        assert_eq!(poly.exponents, vec![Rational64::from(-1)]);
    }

    #[test]
    fn three_point_hull_keeps_peak() {
        let nodes = [
            NewtonNode::bare(0, 0),
            NewtonNode::bare(1, 5),
            NewtonNode::bare(2, 0),
        ];
        let poly = upper_hull(&nodes).unwrap();
        assert_eq!(poly.upper_hull, vec![(0, 0), (1, 5), (2, 0)]);
        assert_eq!(
            poly.segment_slopes,
            vec![Rational64::from(5), Rational64::from(-5)]
        );
    }

    #[test]
    fn single_column_is_degenerate() {
        let nodes = [NewtonNode::bare(3, 0), NewtonNode::bare(3, 4)];
        assert!(matches!(upper_hull(&nodes), Err(AsymError::DegenerateHull)));
    }

    #[test]
    fn hull_of_qpq_grid() {
        let poly = upper_hull(&build_newton_grid()).unwrap();
        assert_eq!(poly.upper_hull, vec![(0, 10), (4, 10), (6, 8), (10, 0)]);
        assert_eq!(
            poly.exponents,
            vec![
                Rational64::from(0),
                Rational64::from(1),
                Rational64::from(2)
            ]
        );
    }

    #[test]
    fn leading_terms_of_qpq() {
        let poly = upper_hull(&build_newton_grid()).unwrap();
        let t0 = leading_coefficients(&poly, Rational64::from(0)).unwrap();
        assert_eq!(t0.len(), 1);
        assert_eq!(t0[0].magnitude, QuadRational::from_ints(1, 0));
        assert_eq!(
            (t0[0].p_power, t0[0].multiplicity, t0[0].axis),
            (2, 2, Axis::Real)
        );

        let t1 = leading_coefficients(&poly, Rational64::from(1)).unwrap();
        assert_eq!(t1.len(), 1);
        assert_eq!(
            (t1[0].p_power, t1[0].multiplicity, t1[0].axis),
            (1, 1, Axis::Real)
        );

        let t2 = leading_coefficients(&poly, Rational64::from(2)).unwrap();
        let mags: Vec<_> = t2.iter().map(|t| t.magnitude.clone()).collect();
        assert_eq!(
            mags,
            vec![
                QuadRational::from_ints(1, 1),
                QuadRational::from_ints(-1, 1)
            ]
        );
        assert!(t2
            .iter()
            .all(|t| t.axis == Axis::Imaginary && t.multiplicity == 1));
        assert_eq!(t2[0].to_string(), "(1 + √2)·i");
        assert_eq!(t0[0].to_string(), "p^2");
    }

    #[test]
    fn unknown_exponent_is_rejected() {
        let poly = upper_hull(&build_newton_grid()).unwrap();
        assert!(matches!(
            leading_coefficients(&poly, Rational64::new(1, 2)),
            Err(AsymError::ExponentNotInPolygon(_))
        ));
    }

    #[test]
    fn symbolic_coefficients_match_direct_build() {
        use crate::cuboid_eqs::{build_qpq, PQPair};
        let sym = symbolic_qpq();
        for (p, q) in [(1, 2), (3, 2), (2, 7), (5, 3)] {
            let direct = build_qpq(&PQPair::new(p, q).unwrap());
            for (m, c) in sym.iter().enumerate() {
                assert_eq!(c.eval(p, q), direct.coeff(m), "t^{m} for ({p},{q})");
            }
        }
    }
}
