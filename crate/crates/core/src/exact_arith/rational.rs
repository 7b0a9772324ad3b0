//! Helpers over `num_rational::BigRational`.
//!
//! `BigRational` already keeps itself in lowest terms with a positive
//! denominator, so everything here is thin glue: construction from machine
//! integers, exact square roots, floor/ceil, and decimal rendering for
//! reports.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Exact integer square root, `None` unless `n` is a perfect square.
pub fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact non-negative square root of a rational, when it is rational.
pub fn exact_sqrt(x: &BigRational) -> Option<BigRational> {
    let n = exact_isqrt(x.numer())?;
    let d = exact_isqrt(x.denom())?;
    Some(BigRational::new(n, d))
}

pub fn floor(x: &BigRational) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &BigRational) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Renders `x` with `sig` significant decimal digits (truncated toward
/// zero), e.g. `58.7297382686...`. Only for human-facing output.
pub fn to_decimal(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let ax = x.abs();
    // Integer digits of the magnitude decide how many fractional digits fit.
    let int_part = floor(&ax);
    let int_digits = if int_part.is_zero() {
        0
    } else {
        int_part.to_string().len()
    };
    let frac_digits = if int_digits >= sig {
        0
    } else if int_digits > 0 {
        sig - int_digits
    } else {
        // leading zeros after the point do not count as significant
        let mut lead = 0usize;
        let mut probe = ax.clone();
        let ten = rat_int(10);
        while probe < BigRational::one() {
            probe = &probe * &ten;
            lead += 1;
        }
        lead - 1 + sig
    };
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = floor(&(&ax * BigRational::from_integer(scale)));
    let mut digits = scaled.to_string();
    if frac_digits > 0 {
        if digits.len() <= frac_digits {
            let pad = frac_digits + 1 - digits.len();
            digits = "0".repeat(pad) + &digits;
        }
        let split = digits.len() - frac_digits;
        digits = format!("{}.{}", &digits[..split], &digits[split..]);
    }
    if neg {
        format!("-{digits}")
    } else {
        digits
    }
}

/// Exact rendering: `n` or `n/d`.
pub fn to_exact_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
