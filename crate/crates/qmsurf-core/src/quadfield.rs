//! Elements of Q and of real/imaginary quadratic fields Q(sqrt d), splitting
//! of rational primes, reduction at degree-one primes, and enumeration of
//! quadratic extensions unramified outside a given prime set.
//!
//! `d = 1` encodes the base field Q itself. Only degree-one (split) primes
//! are ever produced: residue arithmetic then stays inside F_p.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::factor::{is_squarefree, squarefree_part};
use crate::fp::{self, is_prime, legendre, sqrt_mod, PrimeFieldElem};
use crate::{Error, Result};

fn check_field_tag(d: i64) -> Result<()> {
    if d == 0 || !is_squarefree(d) {
        return Err(Error::NotSquarefree(d));
    }
    Ok(())
}

/// u + v sqrt(d) with exact rational u, v. For d = 1 the radical collapses
/// and v is folded into u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    d: i64,
    u: BigRational,
    v: BigRational,
}

impl QuadElem {
    pub fn new(d: i64, u: BigRational, v: BigRational) -> Result<Self> {
        check_field_tag(d)?;
        if d == 1 {
            Ok(Self { d, u: u + v, v: BigRational::zero() })
        } else {
            Ok(Self { d, u, v })
        }
    }

    pub fn from_integers(d: i64, u: i64, v: i64) -> Result<Self> {
        Self::new(d, BigRational::from_integer(u.into()), BigRational::from_integer(v.into()))
    }

    pub fn rational(d: i64, u: BigRational) -> Result<Self> {
        Self::new(d, u, BigRational::zero())
    }

    pub fn zero(d: i64) -> Self {
        Self { d, u: BigRational::zero(), v: BigRational::zero() }
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    fn same_field(&self, rhs: &Self) -> Result<()> {
        if self.d == rhs.d {
            Ok(())
        } else {
            Err(Error::MismatchedField)
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self { d: self.d, u: &self.u + &rhs.u, v: &self.v + &rhs.v })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        Ok(Self { d: self.d, u: &self.u - &rhs.u, v: &self.v - &rhs.v })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_field(rhs)?;
        let dd = BigRational::from_integer(self.d.into());
        Ok(Self {
            d: self.d,
            u: &self.u * &rhs.u + (&self.v * &rhs.v) * &dd,
            v: &self.u * &rhs.v + &self.v * &rhs.u,
        })
    }

    pub fn neg(&self) -> Self {
        Self { d: self.d, u: -self.u.clone(), v: -self.v.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { d: self.d, u: &self.u * c, v: &self.v * c }
    }

    /// Galois conjugate u - v sqrt(d).
    pub fn conj(&self) -> Self {
        Self { d: self.d, u: self.u.clone(), v: -self.v.clone() }
    }

    /// Norm to Q: u^2 - d v^2.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(self.d.into());
        &self.u * &self.u - (&self.v * &self.v) * dd
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.conj().scale(&n.recip()))
    }

    /// True when both u and v are integers.
    pub fn is_integral(&self) -> bool {
        self.u.denom().is_one() && self.v.denom().is_one()
    }
}

/// Splitting behaviour of a rational prime in Q(sqrt d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// Splitting of p in Q(sqrt d). For d = 1 every prime counts as split
/// (the extension is trivial and residue degree is one).
pub fn split_type(p: u64, d: i64) -> Result<SplitType> {
    check_field_tag(d)?;
    if !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if d == 1 {
        return Ok(SplitType::Split);
    }
    if p == 2 {
        let m8 = d.rem_euclid(8);
        return Ok(if m8 == 1 {
            SplitType::Split
        } else if m8 == 5 {
            SplitType::Inert
        } else {
            SplitType::Ramified
        });
    }
    if d.rem_euclid(p as i64) == 0 {
        return Ok(SplitType::Ramified);
    }
    Ok(match legendre(d, p)? {
        1 => SplitType::Split,
        _ => SplitType::Inert,
    })
}

/// A degree-one prime (p, r) of Q(sqrt d): the embedding sqrt(d) -> r mod p.
/// For d = 1 the root is 0 and every rational prime qualifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreeOnePrime {
    p: u64,
    r: u64,
    d: i64,
}

impl DegreeOnePrime {
    pub fn new(d: i64, p: u64, r: u64) -> Result<Self> {
        check_field_tag(d)?;
        if !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if d == 1 {
            if r != 0 {
                return Err(Error::NotDegreeOne { p, d });
            }
            return Ok(Self { p, r: 0, d });
        }
        if split_type(p, d)? != SplitType::Split {
            return Err(Error::NotDegreeOne { p, d });
        }
        let rr = fp::reduce_i64(r as i64, p);
        if (rr as u128 * rr as u128) % p as u128 != d.rem_euclid(p as i64) as u128 {
            return Err(Error::NotDegreeOne { p, d });
        }
        Ok(Self { p, r: rr, d })
    }

    /// Both primes above a split p, ordered by root: (p, r) with r <= p - r
    /// first. For d = 1 a single prime is returned.
    pub fn above(d: i64, p: u64) -> Result<Vec<Self>> {
        check_field_tag(d)?;
        if d == 1 {
            if !is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            return Ok(alloc::vec![Self { p, r: 0, d }]);
        }
        if split_type(p, d)? != SplitType::Split {
            return Err(Error::NotDegreeOne { p, d });
        }
        let (r, s) = sqrt_mod(d, p)?.expect("split prime has a root");
        Ok(alloc::vec![Self { p, r, d }, Self { p, r: s, d }])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// The conjugate embedding (p, p - r); identity for d = 1.
    pub fn conjugate(&self) -> Self {
        if self.d == 1 {
            *self
        } else {
            Self { p: self.p, r: self.p - self.r, d: self.d }
        }
    }
}

/// All degree-one primes (both embeddings) over rational primes p <= p_max,
/// p not excluded, sorted by p then r.
pub fn degree_one_primes(
    d: i64,
    p_max: u64,
    excluded: &BTreeSet<u64>,
) -> Result<Vec<DegreeOnePrime>> {
    check_field_tag(d)?;
    let mut out = Vec::new();
    for p in 2..=p_max {
        if !is_prime(p) || excluded.contains(&p) {
            continue;
        }
        if d == 1 {
            out.push(DegreeOnePrime { p, r: 0, d });
            continue;
        }
        if p == 2 || split_type(p, d)? != SplitType::Split {
            continue;
        }
        out.extend(DegreeOnePrime::above(d, p)?);
    }
    Ok(out)
}

/// Reduces an exact rational modulo p. Errors when the denominator is
/// divisible by p.
pub fn rational_mod_p(q: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor_u64(&pb);
    if den == 0 {
        return Err(Error::DenominatorAtP { p });
    }
    let num = q.numer().mod_floor_u64(&pb);
    Ok(fp::mul_mod(num, fp::pow_mod(den, p - 2, p), p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(p);
        let (_, digits) = r.to_u64_digits();
        *digits.first().unwrap_or(&0)
    }
}

/// Reduction of x at the degree-one prime (p, r): u + v r mod p.
pub fn reduce(x: &QuadElem, prime: &DegreeOnePrime) -> Result<PrimeFieldElem> {
    if x.d() != prime.d() {
        return Err(Error::MismatchedField);
    }
    let p = prime.p();
    let u = rational_mod_p(x.u(), p)?;
    let v = rational_mod_p(x.v(), p)?;
    PrimeFieldElem::new((u as i128 + v as i128 * prime.r() as i128).rem_euclid(p as i128) as i64, p)
}

/// A candidate quadratic extension K(sqrt delta) of the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadExtensionCandidate {
    pub delta: i64,
}

/// All squarefree delta not in {0, 1}, with prime divisors inside `s`,
/// excluding delta = d (that extension is trivial). When 2 is not in `s`,
/// only delta = 1 mod 4 is admitted so the extension stays unramified at 2.
/// Ordered by |delta|, positive sign first.
pub fn enumerate_quadratic_exts(d: i64, s: &BTreeSet<u64>) -> Result<Vec<QuadExtensionCandidate>> {
    check_field_tag(d)?;
    for &q in s {
        if !is_prime(q) {
            return Err(Error::NotOddPrime(q));
        }
    }
    let primes: Vec<u64> = s.iter().copied().collect();
    let allow_two_ramified = s.contains(&2);
    let mut deltas = BTreeSet::new();
    for mask in 0..(1u32 << primes.len()) {
        let mut base: i64 = 1;
        for (i, &q) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                base = base.checked_mul(q as i64).ok_or(Error::Overflow)?;
            }
        }
        for delta in [base, -base] {
            if delta == 1 || delta == d {
                continue;
            }
            if !allow_two_ramified && delta.rem_euclid(4) != 1 {
                continue;
            }
            deltas.insert(delta);
        }
    }
    let mut out: Vec<i64> = deltas.into_iter().collect();
    out.sort_by_key(|x| (x.unsigned_abs(), *x < 0));
    Ok(out.into_iter().map(|delta| QuadExtensionCandidate { delta }).collect())
}

/// Splitting of a degree-one prime in K(sqrt delta), for rational delta.
/// Independent of which embedding r was chosen.
pub fn splits_in_ext(prime: &DegreeOnePrime, delta: i64) -> SplitType {
    let p = prime.p();
    if p == 2 {
        let m8 = delta.rem_euclid(8);
        return if m8 == 1 {
            SplitType::Split
        } else if m8 == 5 {
            SplitType::Inert
        } else {
            SplitType::Ramified
        };
    }
    if delta.rem_euclid(p as i64) == 0 {
        return SplitType::Ramified;
    }
    match legendre(delta, p).expect("p odd prime by construction") {
        1 => SplitType::Split,
        _ => SplitType::Inert,
    }
}

/// Canonical representative of delta modulo squares of K = Q(sqrt d):
/// delta and squarefree_part(delta * d) generate the same extension, and the
/// one of smaller |.| (positive on ties) is chosen.
pub fn canonical_delta(delta: i64, d: i64) -> i64 {
    if d == 1 {
        return delta;
    }
    let partner = squarefree_part(delta.saturating_mul(d));
    let mut pair = [delta, partner];
    pair.sort_by_key(|x| (x.unsigned_abs(), *x < 0));
    pair[0]
}
