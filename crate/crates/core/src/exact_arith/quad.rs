//! Exact arithmetic in the real quadratic field Q[√2].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{exact_sqrt, rat_int, to_decimal, to_exact_string};

/// The number `a + b·√2` with rational `a`, `b`.
///
/// Since √2 is irrational the pair `(a, b)` is unique for each value, so
/// derived equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadRational {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRational { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadRational {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadRational::new(rat_int(a), rat_int(b))
    }

    pub fn zero() -> Self {
        QuadRational::from_ints(0, 0)
    }

    pub fn sqrt2() -> Self {
        QuadRational::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value, when the √2 part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn sign(&self) -> i8 {
        quad_sign(self)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadRational::new(&self.a * k, &self.b * k)
    }

    /// Galois conjugate `a − b√2`.
    pub fn conjugate(&self) -> Self {
        QuadRational::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² − 2b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - rat_int(2) * &self.b * &self.b
    }

    pub fn midpoint(&self, other: &QuadRational) -> Self {
        (self + other).scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
    }

    /// The non-negative square root inside Q[√2], if one exists.
    pub fn sqrt(&self) -> Option<QuadRational> {
        if self.sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(QuadRational::zero());
        }
        let two = rat_int(2);
        let mut candidates = Vec::new();
        if self.b.is_zero() {
            if let Some(r) = exact_sqrt(&self.a) {
                candidates.push(QuadRational::from_rational(r));
            }
            if let Some(r) = exact_sqrt(&(&self.a / &two)) {
                candidates.push(QuadRational::new(BigRational::zero(), r));
            }
        } else if let Some(n) = exact_sqrt(&self.norm()) {
            // (x + y√2)² = a + b√2  ⇒  x² = (a ± √(a² − 2b²)) / 2, y = b / 2x
            for x2 in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
                if let Some(x) = exact_sqrt(&x2) {
                    if !x.is_zero() {
                        let y = &self.b / (&two * &x);
                        candidates.push(QuadRational::new(x, y));
                    }
                }
            }
        }
        candidates.into_iter().find_map(|c| {
            let c = if c.sign() < 0 { -c } else { c };
            if &(&c * &c) == self {
                Some(c)
            } else {
                None
            }
        })
    }

    /// Decimal approximation with `sig` significant digits, for reporting.
    pub fn to_decimal(&self, sig: usize) -> String {
        to_decimal(&self.approx_rational(sig + 30), sig)
    }

    /// Rational approximation using √2 truncated to `digits` decimals.
    pub fn approx_rational(&self, digits: usize) -> BigRational {
        if self.b.is_zero() {
            return self.a.clone();
        }
        let scale = BigInt::from(10u32).pow(digits as u32);
        let root = (BigInt::from(2) * &scale * &scale).sqrt();
        let s2 = BigRational::new(root, scale);
        &self.a + &self.b * s2
    }

    pub fn to_f64(&self) -> f64 {
        self.approx_rational(40).to_f64().unwrap_or(f64::NAN)
    }
}

/// Exact sign of `a + b√2`, decided by comparing `a²` with `2b²`.
pub fn quad_sign(x: &QuadRational) -> i8 {
    let sa = signum(&x.a);
    let sb = signum(&x.b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: the term of larger magnitude wins
    let a2 = &x.a * &x.a;
    let b2 = rat_int(2) * &x.b * &x.b;
    match a2.cmp(&b2) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

fn signum(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QuadRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRational {
    fn cmp(&self, other: &Self) -> Ordering {
        quad_sign(&(self - other)).cmp(&0)
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", to_exact_string(&self.a));
        }
        let b = if self.b.is_one() {
            "√2".to_string()
        } else if self.b == -BigRational::one() {
            "-√2".to_string()
        } else {
            format!("({})·√2", to_exact_string(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{b}")
        } else {
            write!(f, "{} + {}", to_exact_string(&self.a), b)
        }
    }
}

impl<'a> Add<&'a QuadRational> for &'a QuadRational {
    type Output = QuadRational;
    fn add(self, rhs: &QuadRational) -> QuadRational {
        QuadRational::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a QuadRational> for &'a QuadRational {
    type Output = QuadRational;
    fn sub(self, rhs: &QuadRational) -> QuadRational {
        QuadRational::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a QuadRational> for &'a QuadRational {
    type Output = QuadRational;
    fn mul(self, rhs: &QuadRational) -> QuadRational {
        let two = rat_int(2);
        QuadRational::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Add for QuadRational {
    type Output = QuadRational;
    fn add(self, rhs: QuadRational) -> QuadRational {
        &self + &rhs
    }
}

impl Sub for QuadRational {
    type Output = QuadRational;
    fn sub(self, rhs: QuadRational) -> QuadRational {
        &self - &rhs
    }
}

impl Mul for QuadRational {
    type Output = QuadRational;
    fn mul(self, rhs: QuadRational) -> QuadRational {
        &self * &rhs
    }
}

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational::new(-self.a, -self.b)
    }
}

impl Neg for &QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational::new(-&self.a, -&self.b)
    }
}
