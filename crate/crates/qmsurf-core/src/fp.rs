//! Exact arithmetic in F_p and F_{p^2} for odd primes p < 2^31, quadratic
//! residue machinery and multiplicative orders.
//!
//! All products go through 128-bit intermediates, so nothing here can wrap
//! silently for moduli in range.

use crate::factor::factor_u64;
use crate::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 31;

/// Deterministic Miller-Rabin. The witness set is exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse mod an odd prime, via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(pow_mod(a, p - 2, p))
}

/// Reduces a signed integer into `[0, p)`.
#[inline]
pub(crate) fn reduce_i64(a: i64, p: u64) -> u64 {
    let m = p as i128;
    (((a as i128 % m) + m) % m) as u64
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    Ok(())
}

/// Legendre symbol (a/p) in {-1, 0, 1}, computed as a^((p-1)/2) mod p.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    check_odd_prime(p)?;
    let r = pow_mod(reduce_i64(a, p), (p - 1) / 2, p);
    Ok(if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    })
}

/// Square roots of `a` mod `p`: the pair `{r, p - r}` with `r <= p - r`, or
/// `None` when `a` is a non-residue. Tonelli-Shanks, with the non-residue
/// needed by the algorithm found by scanning 2, 3, 4, ... so the output is
/// reproducible run to run.
pub fn sqrt_mod(a: i64, p: u64) -> Result<Option<(u64, u64)>> {
    check_odd_prime(p)?;
    let a = reduce_i64(a, p);
    if a == 0 {
        return Ok(Some((0, 0)));
    }
    if legendre(a as i64, p)? == -1 {
        return Ok(None);
    }
    let r = if p % 4 == 3 {
        pow_mod(a, (p + 1) / 4, p)
    } else {
        tonelli_shanks(a, p)
    };
    debug_assert_eq!(mul_mod(r, r, p), a);
    let r = r.min(p - r);
    Ok(Some((r, p - r)))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = smallest_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

fn smallest_nonresidue(p: u64) -> u64 {
    let mut n = 2;
    loop {
        if pow_mod(n, (p - 1) / 2, p) == p - 1 {
            return n;
        }
        n += 1;
    }
}

/// Smallest multiplicative order dividing `group_order`, shared by both
/// field implementations: repeatedly strip primes of the exponent while the
/// power stays 1.
fn order_from_group<F: Fn(u64) -> bool>(is_one_at: F, group_order: u64) -> Result<u64> {
    if !is_one_at(group_order) {
        return Err(Error::NotInGroup { order: group_order });
    }
    let mut o = group_order;
    for (q, _) in factor_u64(group_order) {
        while o % q == 0 && is_one_at(o / q) {
            o /= q;
        }
    }
    Ok(o)
}

/// An element of F_p, p an odd prime below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeFieldElem {
    value: u64,
    p: u64,
}

impl PrimeFieldElem {
    pub fn new(value: i64, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self { value: reduce_i64(value, p), p })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.p == rhs.p {
            Ok(())
        } else {
            Err(Error::MismatchedField)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self { value: (self.value + rhs.value) % self.p, p: self.p })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self { value: (self.value + self.p - rhs.value) % self.p, p: self.p })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self { value: mul_mod(self.value, rhs.value, self.p), p: self.p })
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Self { value: inv_mod(self.value, self.p)?, p: self.p })
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self { value: pow_mod(self.value, exp, self.p), p: self.p }
    }

    /// Smallest n >= 1 with x^n = 1; requires x != 0 and x^group_order = 1.
    pub fn mult_order(&self, group_order: u64) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        order_from_group(|e| self.pow(e).value == 1, group_order)
    }
}

/// The quadratic extension F_{p^2} = F_p(t), t^2 = n, with n the smallest
/// positive non-residue mod p. Fixing n canonically keeps fixtures stable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    p: u64,
    n: u64,
}

impl Fp2 {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self { p, n: smallest_nonresidue(p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The fixed non-residue n with t^2 = n.
    pub fn non_residue(&self) -> u64 {
        self.n
    }

    pub fn elem(&self, a: i64, b: i64) -> Fp2Elem {
        Fp2Elem { a: reduce_i64(a, self.p), b: reduce_i64(b, self.p), field: *self }
    }

    pub fn from_base(&self, x: &PrimeFieldElem) -> Result<Fp2Elem> {
        if x.modulus() != self.p {
            return Err(Error::MismatchedField);
        }
        Ok(Fp2Elem { a: x.value(), b: 0, field: *self })
    }
}

/// a + b t in F_{p^2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2Elem {
    a: u64,
    b: u64,
    field: Fp2,
}

impl Fp2Elem {
    pub fn parts(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn field(&self) -> Fp2 {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::MismatchedField)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let p = self.field.p;
        Ok(Self { a: (self.a + rhs.a) % p, b: (self.b + rhs.b) % p, field: self.field })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let p = self.field.p;
        let n = self.field.n;
        let a = (mul_mod(self.a, rhs.a, p) + mul_mod(mul_mod(self.b, rhs.b, p), n, p)) % p;
        let b = (mul_mod(self.a, rhs.b, p) + mul_mod(self.b, rhs.a, p)) % p;
        Ok(Self { a, b, field: self.field })
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.field.elem(1, 0);
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            exp >>= 1;
        }
        acc
    }

    /// Norm to F_p: a^2 - n b^2.
    pub fn norm(&self) -> u64 {
        let p = self.field.p;
        let nb2 = mul_mod(mul_mod(self.b, self.b, p), self.field.n, p);
        (mul_mod(self.a, self.a, p) + p - nb2) % p
    }

    /// The Frobenius x -> x^p, i.e. conjugation a + bt -> a - bt.
    pub fn frobenius(&self) -> Self {
        let p = self.field.p;
        Self { a: self.a, b: (p - self.b) % p, field: self.field }
    }

    pub fn inv(&self) -> Result<Self> {
        let p = self.field.p;
        let ninv = inv_mod(self.norm(), p)?;
        let conj = self.frobenius();
        Ok(Self {
            a: mul_mod(conj.a, ninv, p),
            b: mul_mod(conj.b, ninv, p),
            field: self.field,
        })
    }

    /// Whether x is a square in F_{p^2}: x^((p^2-1)/2) = 1, or x = 0.
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let p = self.field.p;
        let e = (p * p - 1) / 2;
        self.pow(e) == self.field.elem(1, 0)
    }

    pub fn mult_order(&self, group_order: u64) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let one = self.field.elem(1, 0);
        order_from_group(|e| self.pow(e) == one, group_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(97) && is_prime(2147483647));
        assert!(!is_prime(1) && !is_prime(0) && !is_prime(91) && !is_prime(3215031751));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(7, 7).unwrap(), 0);
        assert_eq!(legendre(3, 7).unwrap(), -1);
        // exhaustive cross-check against the set of squares mod 7
        let squares: std::collections::BTreeSet<u64> = (1..7).map(|x| x * x % 7).collect();
        for a in 0..7u64 {
            let expect = if a == 0 {
                0
            } else if squares.contains(&a) {
                1
            } else {
                -1
            };
            assert_eq!(legendre(a as i64, 7).unwrap(), expect);
        }
        assert!(legendre(3, 8).is_err());
        assert!(legendre(3, 2).is_err());
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_mod(2, 7).unwrap(), Some((3, 4)));
        assert_eq!(sqrt_mod(3, 11).unwrap(), Some((5, 6)));
        assert_eq!(sqrt_mod(3, 7).unwrap(), None);
        assert_eq!(sqrt_mod(0, 13).unwrap(), Some((0, 0)));
    }

    #[test]
    fn mult_order_examples() {
        let x = PrimeFieldElem::new(10, 11).unwrap();
        assert_eq!(x.mult_order(10).unwrap(), 2);
        let one = PrimeFieldElem::new(1, 11).unwrap();
        assert_eq!(one.mult_order(10).unwrap(), 1);
        let six = PrimeFieldElem::new(6, 11).unwrap();
        assert_eq!(six.mult_order(10).unwrap(), 10);
        let zero = PrimeFieldElem::new(0, 11).unwrap();
        assert!(zero.mult_order(10).is_err());
        // 2 has order 4 mod 5, and 4 does not annihilate 3 in a fake group of order 4? it does:
        // 3^4 = 81 = 1 mod 5. But order 3 is wrong for the group F_5^*.
        let three = PrimeFieldElem::new(3, 5).unwrap();
        assert!(three.mult_order(3).is_err());
    }

    #[test]
    fn fp2_squares() {
        // p = 5: t^2 = 2, t is not a square (p = 1 mod 4).
        let f = Fp2::new(5).unwrap();
        assert_eq!(f.non_residue(), 2);
        assert!(!f.elem(0, 1).is_square());
        // p = 3: t^2 = 2 = -1, and t = (1 + 2t)^2 actually is a square.
        let f3 = Fp2::new(3).unwrap();
        assert!(f3.elem(0, 1).is_square());
        assert!(f3.elem(0, 0).is_square());
        // base-field elements are always squares in F_{p^2}
        for p in [3u64, 5, 7, 11, 13] {
            let f = Fp2::new(p).unwrap();
            for a in 1..p {
                assert!(f.elem(a as i64, 0).is_square(), "p={p} a={a}");
            }
        }
    }

    #[test]
    fn fp2_order_examples() {
        // F_121: an element of full order 120 exists; norm-1 elements have order | 12
        let f = Fp2::new(11).unwrap();
        let mut found_full = false;
        for a in 0..11 {
            for b in 1..11 {
                let x = f.elem(a, b);
                if x.mult_order(120).unwrap() == 120 {
                    found_full = true;
                }
            }
        }
        assert!(found_full);
    }

    proptest! {
        #[test]
        fn legendre_matches_euler(a in -200i64..200, pi in 0usize..8) {
            let p = [3u64, 5, 7, 11, 13, 17, 19, 23][pi];
            let l = legendre(a, p).unwrap();
            let e = pow_mod(reduce_i64(a, p), (p - 1) / 2, p);
            let e = if e == 0 { 0 } else if e == 1 { 1 } else { -1 };
            prop_assert_eq!(l, e);
        }

        #[test]
        fn sqrt_roundtrip(a in 0i64..500, pi in 0usize..8) {
            let p = [3u64, 5, 7, 11, 13, 101, 193, 577][pi];
            match sqrt_mod(a, p).unwrap() {
                Some((r, s)) => {
                    prop_assert_eq!(mul_mod(r, r, p), reduce_i64(a, p));
                    prop_assert_eq!((r + s) % p, 0);
                    prop_assert!(r <= s);
                }
                None => prop_assert_eq!(legendre(a, p).unwrap(), -1),
            }
        }

        #[test]
        fn fp2_associative_and_frobenius(a1 in 0i64..13, b1 in 0i64..13,
                                         a2 in 0i64..13, b2 in 0i64..13,
                                         a3 in 0i64..13, b3 in 0i64..13) {
            let f = Fp2::new(13).unwrap();
            let (x, y, z) = (f.elem(a1, b1), f.elem(a2, b2), f.elem(a3, b3));
            let l = x.mul(&y).unwrap().mul(&z).unwrap();
            let r = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            // Frobenius is multiplicative and fixes exactly F_p
            let fx = x.mul(&y).unwrap().frobenius();
            prop_assert_eq!(fx, x.frobenius().mul(&y.frobenius()).unwrap());
            prop_assert_eq!(x.frobenius() == x, x.parts().1 == 0);
            // and agrees with powering
            prop_assert_eq!(x.frobenius(), x.pow(13));
        }

        #[test]
        fn fp2_square_iff_norm_square(a in 0i64..17, b in 0i64..17) {
            // dual route: x square in F_{p^2} iff Norm(x) is a square in F_p
            let f = Fp2::new(17).unwrap();
            let x = f.elem(a, b);
            if !x.is_zero() {
                let via_norm = legendre(x.norm() as i64, 17).unwrap() >= 0
                    && legendre(x.norm() as i64, 17).unwrap() != -1;
                prop_assert_eq!(x.is_square(), via_norm);
            }
        }

        #[test]
        fn order_divides_group(a in 1i64..30, pi in 0usize..4) {
            let p = [7u64, 11, 13, 29][pi];
            if a as u64 % p != 0 {
                let x = PrimeFieldElem::new(a, p).unwrap();
                let o = x.mult_order(p - 1).unwrap();
                prop_assert_eq!((p - 1) % o, 0);
                prop_assert_eq!(x.pow(o).value(), 1);
                for (q, _) in factor_u64(o) {
                    prop_assert!(x.pow(o / q).value() != 1);
                }
            }
        }
    }
}
