//! Small-integer factorization helpers used across the pipeline.

use alloc::vec::Vec;

use crate::fp::{is_prime, mul_mod};

/// Prime factorization of `n` as `(prime, exponent)` pairs in increasing
/// order: trial division for small factors, Pollard rho for the rest.
/// `n = 0` and `n = 1` give an empty list.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d < 100_000 && d as u128 * d as u128 <= n as u128 {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        let mut rest = Vec::new();
        split_factor(n, &mut rest);
        rest.sort_unstable();
        let mut i = 0;
        while i < rest.len() {
            let p = rest[i];
            let mut e = 0;
            while i < rest.len() && rest[i] == p {
                e += 1;
                i += 1;
            }
            out.push((p, e));
        }
    }
    out
}

fn split_factor(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_factor(d, out);
    split_factor(n / d, out);
}

/// Brent-style rho. Input is composite, odd, with no factor below 10^5.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Squarefree part of `n`, preserving sign: `n = w^2 * squarefree_part(n)`.
pub fn squarefree_part(n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    let sign = n.signum();
    let mut m = 1i64;
    for (p, e) in factor_u64(n.unsigned_abs()) {
        if e % 2 == 1 {
            m *= p as i64;
        }
    }
    sign * m
}

/// Decomposes `n >= 0` as `w^2 * m` with `m` squarefree; `0 -> (0, 1)`.
pub fn sf_decompose(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 1);
    }
    let mut w = 1u64;
    let mut m = 1u64;
    for (p, e) in factor_u64(n) {
        w *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
    }
    (w, m)
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_part(n) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn factors() {
        assert_eq!(factor_u64(1), vec![]);
        assert_eq!(factor_u64(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factor_u64(97), vec![(97, 1)]);
        // large semiprime goes through rho
        assert_eq!(factor_u64(1_000_003 * 1_000_033), vec![(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(-12), -3);
        assert_eq!(squarefree_part(30), 30);
        assert_eq!(squarefree_part(16), 1);
        assert_eq!(sf_decompose(176), (4, 11));
        assert_eq!(sf_decompose(0), (0, 1));
        assert!(is_squarefree(-6));
        assert!(!is_squarefree(4));
        assert!(!is_squarefree(0));
    }
}
