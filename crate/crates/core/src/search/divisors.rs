//! Divisor enumeration for the constant term `p¹⁰q¹⁰`: any integer root of
//! the monic `Q_pq` divides it.

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factorisation of `(p·q)^10` for coprime `p`, `q`.
pub fn constant_term_factors(p: u64, q: u64) -> Vec<(u64, u32)> {
    let mut f: Vec<(u64, u32)> = factorize(p)
        .into_iter()
        .chain(factorize(q))
        .map(|(prime, e)| (prime, 10 * e))
        .collect();
    f.sort_unstable();
    f
}

/// All divisors of `∏ primeᵉ` in `lo..=hi`, ascending.
pub fn divisors_in_range(factors: &[(u64, u32)], lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    collect(factors, 1, lo, hi, &mut out);
    out.sort_unstable();
    out
}

fn collect(factors: &[(u64, u32)], acc: u64, lo: u64, hi: u64, out: &mut Vec<u64>) {
    let Some((&(prime, e), rest)) = factors.split_first() else {
        if acc >= lo {
            out.push(acc);
        }
        return;
    };
    let mut d = acc;
    for _ in 0..=e {
        collect(rest, d, lo, hi, out);
        match d.checked_mul(prime) {
            Some(next) if next <= hi => d = next,
            _ => break,
        }
    }
}
