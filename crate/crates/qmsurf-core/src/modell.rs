//! Maximality of the residual mod-ell image of a two-dimensional component,
//! decided from characteristic polynomials of Frobenius alone.
//!
//! An element is known only through (trace, determinant) in F_ell, which is
//! enough to eliminate every class of maximal subgroup of GL_2(F_ell):
//! Borel (needs an irreducible charpoly), the normalizers of the two Cartans
//! (need nonzero traces of the right shape), the exceptional projective
//! images A4, S4, A5 (need a projective order above 5), and a determinant
//! check to climb from PGL_2 to GL_2. ell <= 3 is rejected: the
//! classification degenerates there.

use alloc::vec::Vec;

use crate::fp::{is_prime, legendre, sqrt_mod, Fp2, PrimeFieldElem};
use crate::frobenius::HalfTraces;
use crate::quadfield::{split_type, SplitType};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Plus,
    Minus,
}

/// Classification of a residual element by its eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualClass {
    /// Two distinct eigenvalues in F_ell.
    Split { alpha: u64, beta: u64, alpha_order: u64, beta_order: u64, proj_order: u64 },
    /// Irreducible charpoly: conjugate eigenvalues in F_{ell^2}.
    Nonsplit { order: u64, proj_order: u64 },
    /// Vanishing discriminant: indistinguishable from a scalar.
    Scalar { value: u64 },
}

/// Trace and determinant of a Frobenius element in F_ell, with its derived
/// eigenvalue data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidualElement {
    ell: u64,
    trace: u64,
    det: u64,
    class: ResidualClass,
    source: Option<u64>,
}

impl ResidualElement {
    pub fn new(ell: u64, trace: i64, det: i64) -> Result<Self> {
        if ell < 5 || !is_prime(ell) {
            return Err(Error::SmallEll(ell));
        }
        let t = crate::fp::reduce_i64(trace, ell);
        let n = crate::fp::reduce_i64(det, ell);
        if n == 0 {
            return Err(Error::SingularResidual);
        }
        let class = classify_tn(ell, t, n)?;
        Ok(Self { ell, trace: t, det: n, class, source: None })
    }

    pub fn with_source(mut self, p: u64) -> Self {
        self.source = Some(p);
        self
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn trace(&self) -> u64 {
        self.trace
    }

    pub fn det(&self) -> u64 {
        self.det
    }

    pub fn class(&self) -> ResidualClass {
        self.class
    }

    pub fn source(&self) -> Option<u64> {
        self.source
    }

    pub fn projective_order(&self) -> u64 {
        match self.class {
            ResidualClass::Split { proj_order, .. } => proj_order,
            ResidualClass::Nonsplit { proj_order, .. } => proj_order,
            ResidualClass::Scalar { .. } => 1,
        }
    }
}

/// Splits the charpoly x^2 - t x + n over F_ell / F_{ell^2}.
pub fn classify(e: &ResidualElement) -> ResidualClass {
    e.class
}

fn classify_tn(ell: u64, t: u64, n: u64) -> Result<ResidualClass> {
    let disc = crate::fp::reduce_i64(
        (t as i128 * t as i128 - 4 * n as i128).rem_euclid(ell as i128) as i64,
        ell,
    );
    if disc == 0 {
        let half = PrimeFieldElem::new(t as i64, ell)?
            .mul(&PrimeFieldElem::new((ell as i64 + 1) / 2, ell)?)?;
        return Ok(ResidualClass::Scalar { value: half.value() });
    }
    match legendre(disc as i64, ell)? {
        1 => {
            let (r, _) = sqrt_mod(disc as i64, ell)?.expect("residue");
            let inv2 = crate::fp::pow_mod(2, ell - 2, ell);
            let alpha = crate::fp::mul_mod((t + r) % ell, inv2, ell);
            let beta = crate::fp::mul_mod((t + ell - r) % ell, inv2, ell);
            let a = PrimeFieldElem::new(alpha as i64, ell)?;
            let b = PrimeFieldElem::new(beta as i64, ell)?;
            let ratio = a.mul(&b.inv()?)?;
            Ok(ResidualClass::Split {
                alpha,
                beta,
                alpha_order: a.mult_order(ell - 1)?,
                beta_order: b.mult_order(ell - 1)?,
                proj_order: ratio.mult_order(ell - 1)?,
            })
        }
        _ => {
            // alpha = (t + c sqrt(n0)) / 2 in F_{ell^2}, disc = n0 c^2
            let field = Fp2::new(ell)?;
            let n0 = field.non_residue();
            let scaled = crate::fp::mul_mod(disc, crate::fp::pow_mod(n0, ell - 2, ell), ell);
            let (c, _) = sqrt_mod(scaled as i64, ell)?.expect("disc/n0 is a residue");
            let inv2 = crate::fp::pow_mod(2, ell - 2, ell);
            let alpha = field.elem(
                crate::fp::mul_mod(t, inv2, ell) as i64,
                crate::fp::mul_mod(c, inv2, ell) as i64,
            );
            let order = alpha.mult_order(ell * ell - 1)?;
            let ratio = alpha.mul(&alpha.frobenius().inv()?)?;
            let proj_order = ratio.mult_order(ell * ell - 1)?;
            debug_assert_eq!((ell + 1) % proj_order, 0);
            Ok(ResidualClass::Nonsplit { order, proj_order })
        }
    }
}

/// Reduces a half-trace pair modulo ell: t = u + v w, w a chosen square root
/// of m mod ell, and det = eps * p. Requires ell prime to p and, for
/// irrational pairs, ell split in Q(sqrt m).
pub fn reduce_halftrace_mod(
    ht: &HalfTraces,
    p: u64,
    ell: u64,
    root: RootChoice,
) -> Result<ResidualElement> {
    if ell < 5 || !is_prime(ell) {
        return Err(Error::SmallEll(ell));
    }
    if p % ell == 0 {
        return Err(Error::EllDividesP { ell, p });
    }
    let w = if ht.is_rational() {
        0
    } else {
        if split_type(ell, ht.m())? != SplitType::Split {
            return Err(Error::ResidueFieldInert { m: ht.m(), ell });
        }
        let (lo, hi) = sqrt_mod(ht.m(), ell)?.expect("split means residue");
        match root {
            RootChoice::Plus => lo,
            RootChoice::Minus => hi,
        }
    };
    let u = rational64_mod(ht.u(), ell)?;
    let v = rational64_mod(ht.v(), ell)?;
    let t = (u as u128 + v as u128 * w as u128).rem_euclid(ell as u128) as u64;
    let det = crate::fp::reduce_i64(ht.eps() as i64 * (p % ell) as i64, ell);
    ResidualElement::new(ell, t as i64, det as i64).map(|e| e.with_source(p))
}

fn rational64_mod(q: num_rational::Rational64, ell: u64) -> Result<u64> {
    let den = crate::fp::reduce_i64(*q.denom(), ell);
    if den == 0 {
        return Err(Error::DenominatorAtP { p: ell });
    }
    let num = crate::fp::reduce_i64(*q.numer(), ell);
    Ok(crate::fp::mul_mod(num, crate::fp::pow_mod(den, ell - 2, ell), ell))
}

/// Maximal-subgroup classes that survive elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupClass {
    Borel,
    SplitCartanNormalizer,
    NonsplitCartanNormalizer,
    Exceptional,
    DeterminantNotSurjective,
}

impl core::fmt::Display for SubgroupClass {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SubgroupClass::Borel => write!(f, "Borel"),
            SubgroupClass::SplitCartanNormalizer => write!(f, "normalizer of a split Cartan"),
            SubgroupClass::NonsplitCartanNormalizer => {
                write!(f, "normalizer of a nonsplit Cartan")
            }
            SubgroupClass::Exceptional => write!(f, "exceptional projective image (A4/S4/A5)"),
            SubgroupClass::DeterminantNotSurjective => {
                write!(f, "determinants do not generate F_ell^*")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MaximalityVerdict {
    Maximal,
    Inconclusive(Vec<SubgroupClass>),
}

#[derive(Debug, Clone)]
pub struct MaximalityReport {
    pub verdict: MaximalityVerdict,
    /// Kills the Borel class.
    pub nonsplit_witness: Option<ResidualElement>,
    /// Kills the split-Cartan normalizer.
    pub nonsplit_nonzero_trace: Option<ResidualElement>,
    /// Kills the nonsplit-Cartan normalizer.
    pub split_nonzero_trace: Option<ResidualElement>,
    /// Kills the exceptional classes.
    pub high_projective: Option<ResidualElement>,
    pub det_surjective: bool,
    /// Informational: a split element with an eigenvalue of full order.
    pub split_max_order_eigenvalue: Option<ResidualElement>,
    /// Informational: the largest order of a nonsplit eigenvalue seen.
    pub max_nonsplit_order: Option<(u64, ResidualElement)>,
}

/// Eliminates the maximal-subgroup classes of GL_2(F_ell) from the observed
/// characteristic polynomials. Conservative in both directions: `Maximal`
/// requires a witness against every class, and elements with vanishing
/// discriminant contribute nothing (they cannot be told from scalars).
pub fn dickson_eliminate(elems: &[ResidualElement], ell: u64) -> Result<MaximalityReport> {
    if ell < 5 || !is_prime(ell) {
        return Err(Error::SmallEll(ell));
    }
    if elems.is_empty() {
        return Err(Error::EmptyDataset);
    }
    for e in elems {
        if e.ell() != ell {
            return Err(Error::MismatchedField);
        }
    }
    let mut report = MaximalityReport {
        verdict: MaximalityVerdict::Maximal,
        nonsplit_witness: None,
        nonsplit_nonzero_trace: None,
        split_nonzero_trace: None,
        high_projective: None,
        det_surjective: false,
        split_max_order_eigenvalue: None,
        max_nonsplit_order: None,
    };
    let mut det_order_lcm = 1u64;
    for e in elems {
        match e.class() {
            ResidualClass::Nonsplit { order, proj_order } => {
                report.nonsplit_witness.get_or_insert(*e);
                if e.trace() != 0 {
                    report.nonsplit_nonzero_trace.get_or_insert(*e);
                }
                if proj_order > 5 {
                    report.high_projective.get_or_insert(*e);
                }
                if report.max_nonsplit_order.map(|(o, _)| order > o).unwrap_or(true) {
                    report.max_nonsplit_order = Some((order, *e));
                }
            }
            ResidualClass::Split { alpha_order, beta_order, proj_order, .. } => {
                if e.trace() != 0 {
                    report.split_nonzero_trace.get_or_insert(*e);
                }
                if proj_order > 5 {
                    report.high_projective.get_or_insert(*e);
                }
                if alpha_order == ell - 1 || beta_order == ell - 1 {
                    report.split_max_order_eigenvalue.get_or_insert(*e);
                }
            }
            ResidualClass::Scalar { .. } => {}
        }
        let o = PrimeFieldElem::new(e.det() as i64, ell)?.mult_order(ell - 1)?;
        det_order_lcm = num_integer::lcm(det_order_lcm, o);
    }
    report.det_surjective = det_order_lcm == ell - 1;

    let mut remaining = Vec::new();
    if report.nonsplit_witness.is_none() {
        remaining.push(SubgroupClass::Borel);
    }
    if report.nonsplit_nonzero_trace.is_none() {
        remaining.push(SubgroupClass::SplitCartanNormalizer);
    }
    if report.split_nonzero_trace.is_none() {
        remaining.push(SubgroupClass::NonsplitCartanNormalizer);
    }
    if report.high_projective.is_none() {
        remaining.push(SubgroupClass::Exceptional);
    }
    if !report.det_surjective {
        remaining.push(SubgroupClass::DeterminantNotSurjective);
    }
    if !remaining.is_empty() {
        report.verdict = MaximalityVerdict::Inconclusive(remaining);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn ht(u: i64, v: i64, m: i64, eps: i8) -> HalfTraces {
        HalfTraces::new(Rational64::from_integer(u), Rational64::from_integer(v), m, eps)
    }

    #[test]
    fn reduce_examples() {
        // +-2 sqrt(3) at p = 79, ell = 11, root +: sqrt(3) = 5, t = 10, n = 2
        let e = reduce_halftrace_mod(&ht(0, 2, 3, 1), 79, 11, RootChoice::Plus).unwrap();
        assert_eq!((e.trace(), e.det()), (10, 2));
        assert_eq!(e.source(), Some(79));

        let e = reduce_halftrace_mod(&ht(8, 0, 1, 1), 41, 11, RootChoice::Plus).unwrap();
        assert_eq!((e.trace(), e.det()), (8, 8));

        // 3 is inert mod 5
        assert_eq!(
            reduce_halftrace_mod(&ht(0, 2, 3, 1), 79, 5, RootChoice::Plus),
            Err(Error::ResidueFieldInert { m: 3, ell: 5 })
        );
        assert_eq!(
            reduce_halftrace_mod(&ht(0, 2, 3, 1), 11, 11, RootChoice::Plus),
            Err(Error::EllDividesP { ell: 11, p: 11 })
        );
    }

    #[test]
    fn classify_examples() {
        let e = ResidualElement::new(11, 10, 2).unwrap();
        match e.class() {
            ResidualClass::Split { alpha, beta, proj_order, alpha_order, .. } => {
                assert_eq!((alpha, beta), (6, 4));
                assert_eq!(alpha_order, 10);
                assert_eq!(proj_order, 10);
            }
            other => panic!("expected split, got {other:?}"),
        }
        let e = ResidualElement::new(11, 8, 8).unwrap();
        assert!(matches!(e.class(), ResidualClass::Nonsplit { .. }));
        if let ResidualClass::Nonsplit { order, .. } = e.class() {
            assert_eq!(order, 120);
        }
        let e = ResidualElement::new(11, 2, 1).unwrap();
        assert_eq!(e.class(), ResidualClass::Scalar { value: 1 });
        assert!(ResidualElement::new(11, 3, 0).is_err());
        assert!(ResidualElement::new(3, 1, 1).is_err());
    }

    #[test]
    fn scalar_dataset_is_inconclusive() {
        let elems: Vec<ResidualElement> =
            (1..5).map(|a| ResidualElement::new(11, 2 * a, a * a).unwrap()).collect();
        let report = dickson_eliminate(&elems, 11).unwrap();
        match report.verdict {
            MaximalityVerdict::Inconclusive(classes) => {
                assert!(classes.contains(&SubgroupClass::Borel));
                assert!(classes.contains(&SubgroupClass::Exceptional));
            }
            MaximalityVerdict::Maximal => panic!("scalars cannot certify maximality"),
        }
    }

    #[test]
    fn root_choice_is_projectively_irrelevant() {
        for (p, ht_) in [(31u64, ht(0, 2, 3, 1)), (79, ht(0, 2, 3, 1)), (71, ht(0, 8, 3, 1))] {
            let a = reduce_halftrace_mod(&ht_, p, 11, RootChoice::Plus).unwrap();
            let b = reduce_halftrace_mod(&ht_, p, 11, RootChoice::Minus).unwrap();
            assert_eq!(a.projective_order(), b.projective_order());
            assert_eq!(
                core::mem::discriminant(&a.class()),
                core::mem::discriminant(&b.class())
            );
            assert_eq!(a.det(), b.det());
        }
    }

    #[test]
    fn proj_order_divides_expected() {
        for t in 0..13i64 {
            for n in 1..13i64 {
                let e = ResidualElement::new(13, t, n).unwrap();
                match e.class() {
                    ResidualClass::Split { proj_order, .. } => assert_eq!(12 % proj_order, 0),
                    ResidualClass::Nonsplit { proj_order, .. } => assert_eq!(14 % proj_order, 0),
                    ResidualClass::Scalar { .. } => {}
                }
            }
        }
    }
}
