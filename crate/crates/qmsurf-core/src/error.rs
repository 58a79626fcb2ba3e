use alloc::string::String;
use core::fmt;

/// Errors shared by the whole pipeline.
///
/// Input violations (bad primes, non-squarefree discriminants, denominators
/// hitting the residue characteristic) are kept distinct from data
/// inconsistencies (Weil bound violations, impossible factorizations), since
/// the latter signal a counting bug or a corrupted dataset rather than a bad
/// request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `p` is not an odd prime.
    NotOddPrime(u64),
    /// Modulus out of the supported range (odd primes below 2^31).
    PrimeTooLarge(u64),
    /// Multiplicative order of zero requested.
    ZeroElement,
    /// The element does not lie in a group of the stated order.
    NotInGroup { order: u64 },
    /// Operands live over different fields or moduli.
    MismatchedField,
    /// Expected a squarefree integer.
    NotSquarefree(i64),
    /// A coefficient denominator is divisible by the residue characteristic.
    DenominatorAtP { p: u64 },
    /// `(p, r)` is not a degree-one prime of the field.
    NotDegreeOne { p: u64, d: i64 },
    /// The zero polynomial was supplied where a curve was expected.
    ZeroPolynomial,
    /// Curve polynomial degree outside {5, 6}.
    BadDegree(usize),
    /// Vanishing discriminant: the curve is singular.
    SingularCurve,
    /// Operation requires an integral model.
    NotIntegral,
    /// Reduction at `p` drops the degree of the model.
    DegreeDropsAt { p: u64 },
    /// Reduction at `p` is singular.
    SingularReductionAt { p: u64 },
    /// A cofactor of the discriminant norm resisted factorization.
    UnfactoredCofactor,
    /// Point counts at `p` violate parity or the Weil bounds.
    InconsistentCounts { p: u64, detail: String },
    /// No Weil-valid half-trace factorization exists.
    NoFactorization { p: u64 },
    /// Dataset is empty.
    EmptyDataset,
    /// Entry at `p` carries no factorization candidates.
    NoCandidates { p: u64 },
    /// The characteristic quartic at `p` is not of square type.
    NotSquareType { p: u64 },
    /// `ell` is not split in the half-trace field, so reduction is undefined.
    ResidueFieldInert { m: i64, ell: u64 },
    /// `ell` divides the residue characteristic.
    EllDividesP { ell: u64, p: u64 },
    /// Residual analysis needs ell >= 5.
    SmallEll(u64),
    /// Determinant of a residual element vanishes.
    SingularResidual,
    /// Degenerate quaternion symbol entry (zero or square where forbidden).
    DegenerateSymbol,
    /// The fields of a triple are not pairwise distinct modulo squares.
    NotDistinct,
    /// Intermediate value exceeded the supported integer range.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotOddPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::PrimeTooLarge(p) => write!(f, "prime {p} exceeds the supported range (< 2^31)"),
            Error::ZeroElement => write!(f, "multiplicative order of zero is undefined"),
            Error::NotInGroup { order } => {
                write!(f, "element is not annihilated by the group order {order}")
            }
            Error::MismatchedField => write!(f, "operands belong to different fields"),
            Error::NotSquarefree(n) => write!(f, "{n} is not squarefree"),
            Error::DenominatorAtP { p } => {
                write!(f, "coefficient denominator divisible by {p}: prime of bad reduction for this coefficient")
            }
            Error::NotDegreeOne { p, d } => {
                write!(f, "{p} does not define a degree-one prime of Q(sqrt {d})")
            }
            Error::ZeroPolynomial => write!(f, "zero polynomial"),
            Error::BadDegree(n) => write!(f, "curve polynomial must have degree 5 or 6, got {n}"),
            Error::SingularCurve => write!(f, "vanishing discriminant: curve is singular"),
            Error::NotIntegral => write!(f, "operation requires an integral model"),
            Error::DegreeDropsAt { p } => write!(f, "degree of the model drops modulo {p}"),
            Error::SingularReductionAt { p } => write!(f, "singular reduction modulo {p}"),
            Error::UnfactoredCofactor => {
                write!(f, "discriminant norm has an unfactored composite cofactor")
            }
            Error::InconsistentCounts { p, detail } => {
                write!(f, "inconsistent point counts at {p}: {detail}")
            }
            Error::NoFactorization { p } => {
                write!(f, "no Weil-valid half-trace factorization at {p}")
            }
            Error::EmptyDataset => write!(f, "empty trace dataset"),
            Error::NoCandidates { p } => write!(f, "entry at {p} has no candidates"),
            Error::NotSquareType { p } => {
                write!(f, "characteristic quartic at {p} is not a perfect square (x^2 - a x + p)^2")
            }
            Error::ResidueFieldInert { m, ell } => {
                write!(f, "{ell} is not split in Q(sqrt {m}); choose another ell")
            }
            Error::EllDividesP { ell, p } => write!(f, "ell = {ell} divides p = {p}"),
            Error::SmallEll(ell) => write!(f, "residual analysis requires ell >= 5, got {ell}"),
            Error::SingularResidual => write!(f, "residual element has zero determinant"),
            Error::DegenerateSymbol => write!(f, "degenerate quaternion symbol entry"),
            Error::NotDistinct => write!(f, "fields are not pairwise distinct modulo squares"),
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
