//! The characteristic quartic of Frobenius from point counts, and all of its
//! Weil-valid half-trace factorizations.
//!
//! A degree-one prime with counts N1, N2 determines
//!     x^4 - s1 x^3 + s2 x^2 - p s1 x + p^2,
//! s1 = p + 1 - N1, s2 = (s1^2 - (p^2 + 1 - N2)) / 2. The quartic splits as
//! (x^2 - a x + p)(x^2 - b x + p) with half-traces a, b = u +- v sqrt(m)
//! conjugate over Q, or - only when s1 = 0 - as
//! (x^2 - a x - p)(x^2 + a x - p) with a purely imaginary. Both shapes can
//! coexist; everything valid is returned and global selection is left to the
//! inference layer.

use alloc::string::ToString;
use alloc::vec::Vec;
use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::factor::sf_decompose;
use crate::quadfield::DegreeOnePrime;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrobeniusData {
    prime: DegreeOnePrime,
    n1: u64,
    n2: u64,
    s1: i64,
    s2: i64,
}

impl FrobeniusData {
    /// Assembles and validates the quartic from point counts at a good prime.
    pub fn charpoly_from_counts(prime: DegreeOnePrime, n1: u64, n2: u64) -> Result<Self> {
        let p = prime.p() as i128;
        let s1 = p + 1 - n1 as i128;
        let diff = s1 * s1 - (p * p + 1 - n2 as i128);
        if diff.rem_euclid(2) != 0 {
            return Err(Error::InconsistentCounts {
                p: prime.p(),
                detail: "s2 is not integral".to_string(),
            });
        }
        let s2 = diff / 2;
        Self::validated(prime, n1, n2, s1, s2)
    }

    /// Rebuilds the quartic from (s1, s2), recovering the counts.
    pub fn from_traces(prime: DegreeOnePrime, s1: i64, s2: i64) -> Result<Self> {
        let p = prime.p() as i128;
        let n1 = p + 1 - s1 as i128;
        let n2 = p * p + 1 - (s1 as i128 * s1 as i128 - 2 * s2 as i128);
        if n1 < 0 || n2 < 0 {
            return Err(Error::InconsistentCounts {
                p: prime.p(),
                detail: "negative point count".to_string(),
            });
        }
        Self::validated(prime, n1 as u64, n2 as u64, s1 as i128, s2 as i128)
    }

    fn validated(prime: DegreeOnePrime, n1: u64, n2: u64, s1: i128, s2: i128) -> Result<Self> {
        let p = prime.p() as i128;
        let fail = |detail: &str| Error::InconsistentCounts {
            p: prime.p(),
            detail: detail.to_string(),
        };
        // All four roots have |.| = sqrt(p) iff the trace polynomial
        // t^2 - s1 t + (s2 - 2p) has real roots inside [-2 sqrt p, 2 sqrt p]:
        if s1 * s1 > 16 * p {
            return Err(fail("|s1| exceeds 4 sqrt(p)"));
        }
        if s1 * s1 - 4 * (s2 - 2 * p) < 0 {
            return Err(fail("trace polynomial has complex roots"));
        }
        let q = 2 * p + s2;
        if q < 0 || q * q < 4 * s1 * s1 * p {
            return Err(fail("a quadratic factor violates the Weil bound"));
        }
        Ok(Self { prime, n1, n2, s1: s1 as i64, s2: s2 as i64 })
    }

    pub fn prime(&self) -> DegreeOnePrime {
        self.prime
    }

    pub fn p(&self) -> u64 {
        self.prime.p()
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn n2(&self) -> u64 {
        self.n2
    }

    pub fn s1(&self) -> i64 {
        self.s1
    }

    pub fn s2(&self) -> i64 {
        self.s2
    }

    /// Coefficients of the quartic, constant term first:
    /// [p^2, -p s1, s2, -s1, 1].
    pub fn quartic(&self) -> [i128; 5] {
        let p = self.p() as i128;
        [p * p, -p * self.s1 as i128, self.s2 as i128, -(self.s1 as i128), 1]
    }
}

/// A conjugate pair of half-traces u +- v sqrt(m), in normal form: v >= 0,
/// m squarefree, and m = 1 whenever the pair is rational. `eps` is the sign
/// of the constant term of the quadratic factors (x^2 - a x + eps p).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfTraces {
    u: Rational64,
    v: Rational64,
    m: i64,
    eps: i8,
}

impl HalfTraces {
    pub fn new(u: Rational64, v: Rational64, m: i64, eps: i8) -> Self {
        debug_assert!(v >= Rational64::zero());
        debug_assert!(eps == 1 || eps == -1);
        debug_assert!(!v.is_zero() || m == 1);
        Self { u, v, m, eps }
    }

    pub fn u(&self) -> Rational64 {
        self.u
    }

    pub fn v(&self) -> Rational64 {
        self.v
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    /// Rational half-traces are compatible with every quadratic field.
    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    /// Expands (x^2 - a x + eps p)(x^2 - b x + eps p) back into quartic
    /// coefficients, constant term first.
    pub fn quartic(&self, p: u64) -> [i128; 5] {
        let p = p as i128;
        let two_u = double_int(self.u);
        let two_v = double_int(self.v);
        let sum = two_u; // a + b = 2u
        let prod4 = two_u * two_u - two_v * two_v * self.m as i128; // 4ab
        debug_assert_eq!(prod4.rem_euclid(4), 0);
        let prod = prod4 / 4;
        let e = self.eps as i128;
        [p * p, -e * p * sum, prod + 2 * e * p, -sum, 1]
    }
}

fn double_int(q: Rational64) -> i128 {
    let doubled = q * Rational64::from_integer(2);
    debug_assert!(doubled.denom().is_one());
    *doubled.numer() as i128
}

impl core::fmt::Display for HalfTraces {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let sign = if self.eps == 1 { '+' } else { '-' };
        write!(f, "{}\u{b1}{}\u{221a}{}({})", self.u, self.v, self.m, sign)
    }
}

/// Every Weil-valid factorization of the quartic, plus-sign branch first.
///
/// Plus branch: a, b are the roots of t^2 - s1 t + (s2 - 2p); emitted when
/// the discriminant D = s1^2 - 4(s2 - 2p) is non-negative and both roots
/// satisfy t^2 <= 4p. Minus branch: matching the x-coefficient forces
/// s1 = 0 and a = -b with a^2 = -(s2 + 2p), emitted when
/// 0 <= s2 + 2p <= 4p, necessarily with m < 0.
pub fn half_trace_factorizations(fd: &FrobeniusData) -> Result<Vec<HalfTraces>> {
    let p = fd.p() as i128;
    let (s1, s2) = (fd.s1() as i128, fd.s2() as i128);
    let mut out = Vec::new();

    let disc = s1 * s1 - 4 * (s2 - 2 * p);
    if disc >= 0 {
        let (w, m) = sf_decompose(disc as u64);
        let m = if w == 0 { 1 } else { m as i64 };
        // both roots (s1 +- w sqrt m)/2 within [-2 sqrt p, 2 sqrt p]:
        // q >= 0 and q^2 >= 4 s1^2 disc, where q = 16p - s1^2 - disc
        let q = 16 * p - s1 * s1 - disc;
        if q >= 0 && q * q >= 4 * s1 * s1 * disc {
            out.push(HalfTraces::new(
                Rational64::new(fd.s1(), 2),
                Rational64::new(w as i64, 2),
                m,
                1,
            ));
        }
    }

    if s1 == 0 {
        let msq = s2 + 2 * p; // = v^2 |m|
        if (0..=4 * p).contains(&msq) {
            if msq == 0 {
                out.push(HalfTraces::new(Rational64::zero(), Rational64::zero(), 1, -1));
            } else {
                let (w, m0) = sf_decompose(msq as u64);
                out.push(HalfTraces::new(
                    Rational64::zero(),
                    Rational64::from_integer(w as i64),
                    -(m0 as i64),
                    -1,
                ));
            }
        }
    }

    if out.is_empty() {
        return Err(Error::NoFactorization { p: fd.p() });
    }
    Ok(out)
}

/// When the quartic is a perfect square (x^2 - a x + p)^2 with integer a,
/// returns a: requires s1 = 2a and s2 = a^2 + 2p.
pub fn is_square_type(fd: &FrobeniusData) -> Option<i64> {
    if fd.s1() % 2 != 0 {
        return None;
    }
    let a = fd.s1() / 2;
    if a as i128 * a as i128 + 2 * fd.p() as i128 == fd.s2() as i128 {
        Some(a)
    } else {
        None
    }
}
