//! Rational quaternion algebras (a, b / Q) at the level of their complete
//! isomorphism invariant: local Hilbert symbols, the ramified place set and
//! the reduced discriminant, together with the embedding and structural
//! consistency predicates used by the endomorphism inference.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::factor::{factor_u64, is_squarefree, squarefree_part};
use crate::fp::legendre;
use crate::quadfield::{split_type, SplitType};
use crate::{Error, Result};

/// A place of Q. Finite places sort before infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

/// Local Hilbert symbol (a, b)_v in {+1, -1}.
///
/// At infinity: -1 iff both arguments are negative. At a finite place write
/// a = p^alpha u, b = p^beta w with u, w prime to p; for odd p
///   (a, b)_p = (-1)^(alpha beta (p-1)/2) (u/p)^beta (w/p)^alpha,
/// and at p = 2
///   (a, b)_2 = (-1)^(eps(u) eps(w) + alpha omega(w) + beta omega(u)),
/// with eps(u) = (u-1)/2 and omega(u) = (u^2-1)/8 mod 2.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> Result<i32> {
    if a == 0 || b == 0 {
        return Err(Error::DegenerateSymbol);
    }
    match place {
        Place::Infinity => Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Finite(p) => {
            if !crate::fp::is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            let (alpha, u) = strip(a, p);
            let (beta, w) = strip(b, p);
            if p == 2 {
                let e = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
                Ok(if e % 2 == 1 { -1 } else { 1 })
            } else {
                let mut s = 1i32;
                if alpha % 2 == 1 && beta % 2 == 1 && ((p - 1) / 2) % 2 == 1 {
                    s = -s;
                }
                if beta % 2 == 1 {
                    s *= legendre(u, p)?;
                }
                if alpha % 2 == 1 {
                    s *= legendre(w, p)?;
                }
                Ok(s)
            }
        }
    }
}

fn strip(mut n: i64, p: u64) -> (u64, i64) {
    let mut v = 0;
    while n.rem_euclid(p as i64) == 0 {
        n /= p as i64;
        v += 1;
    }
    (v, n)
}

fn eps2(u: i64) -> u64 {
    (u - 1).rem_euclid(4) as u64 / 2
}

fn omega2(u: i64) -> u64 {
    let m = u.rem_euclid(8);
    // (u^2 - 1)/8 mod 2: 0 for u = +-1, 1 for u = +-3 mod 8
    if m == 1 || m == 7 {
        0
    } else {
        1
    }
}

/// The places where (a, b / Q) ramifies. Always of even cardinality.
pub fn ramified_set(a: i64, b: i64) -> Result<BTreeSet<Place>> {
    if a == 0 || b == 0 {
        return Err(Error::DegenerateSymbol);
    }
    let mut out = BTreeSet::new();
    if hilbert_symbol(a, b, Place::Infinity)? == -1 {
        out.insert(Place::Infinity);
    }
    let mut candidates: BTreeSet<u64> = [2u64].into_iter().collect();
    candidates.extend(factor_u64(a.unsigned_abs()).into_iter().map(|(p, _)| p));
    candidates.extend(factor_u64(b.unsigned_abs()).into_iter().map(|(p, _)| p));
    for p in candidates {
        if hilbert_symbol(a, b, Place::Finite(p))? == -1 {
            out.insert(Place::Finite(p));
        }
    }
    debug_assert_eq!(out.len() % 2, 0, "product formula");
    Ok(out)
}

/// Reduced discriminant: the product of the finite ramified primes.
pub fn discriminant(a: i64, b: i64) -> Result<u64> {
    let mut d = 1u64;
    for place in ramified_set(a, b)? {
        if let Place::Finite(p) = place {
            d *= p;
        }
    }
    Ok(d)
}

/// Whether Q(sqrt m) embeds into the quaternion algebra of reduced
/// discriminant `disc`: no prime dividing `disc` may split in Q(sqrt m).
/// (`disc` = 1 is the matrix algebra, which contains every quadratic field.)
pub fn embeds(m: i64, disc: u64) -> Result<bool> {
    if m == 0 || m == 1 || !is_squarefree(m) {
        return Err(Error::NotSquarefree(m));
    }
    if disc == 0 || !is_squarefree(disc as i64) {
        return Err(Error::NotSquarefree(disc as i64));
    }
    for (q, _) in factor_u64(disc) {
        if split_type(q, m)? == SplitType::Split {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An order of reduced discriminant D is hereditary iff D is squarefree.
pub fn is_hereditary(disc: u64) -> bool {
    disc >= 1 && is_squarefree(disc as i64)
}

/// Structural constraint linking the discriminant, a polarization degree
/// and a real quadratic field: (-D delta, m / Q) must again have reduced
/// discriminant D.
pub fn check_structure(disc: u64, delta: u64, m: i64) -> Result<bool> {
    if disc == 0 || delta == 0 {
        return Err(Error::DegenerateSymbol);
    }
    if m == 0 || m == 1 || !is_squarefree(m) {
        return Err(Error::NotSquarefree(m));
    }
    let a = -(disc as i64).checked_mul(delta as i64).ok_or(Error::Overflow)?;
    Ok(discriminant(a, m)? == disc)
}

/// Consistency of a triple of intermediate fields Q(sqrt m1), Q(sqrt m2),
/// Q(sqrt m3) inside the algebra of discriminant `disc`: anticommuting
/// generators x^2 = m1, y^2 = m2 force (xy)^2 = -m1 m2, so m3 must be
/// -m1 m2 up to squares, every field must embed, and (m1, m2 / Q) must be
/// the algebra itself.
pub fn check_triple(m1: i64, m2: i64, m3: i64, disc: u64) -> Result<bool> {
    for m in [m1, m2, m3] {
        if m == 0 || m == 1 || !is_squarefree(m) {
            return Err(Error::NotSquarefree(m));
        }
    }
    if m1 == m2 || m1 == m3 || m2 == m3 {
        return Err(Error::NotDistinct);
    }
    let prod = (m1 as i128).checked_mul(m2 as i128).ok_or(Error::Overflow)?;
    if prod.unsigned_abs() > i64::MAX as u128 {
        return Err(Error::Overflow);
    }
    if squarefree_part(-(prod as i64)) != m3 {
        return Ok(false);
    }
    for m in [m1, m2, m3] {
        if !embeds(m, disc)? {
            return Ok(false);
        }
    }
    Ok(discriminant(m1, m2)? == disc)
}

/// Places to scan when testing the product formula: 2, infinity and the
/// primes of a and b.
pub fn relevant_places(a: i64, b: i64) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = [2u64].into_iter().collect();
    primes.extend(factor_u64(a.unsigned_abs()).into_iter().map(|(p, _)| p));
    primes.extend(factor_u64(b.unsigned_abs()).into_iter().map(|(p, _)| p));
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinity);
    out
}
