//! Dense univariate polynomials over Q(sqrt d), just enough for expanding
//! factored curve equations and computing resultants/discriminants exactly.

use alloc::vec::Vec;

use crate::quadfield::QuadElem;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    d: i64,
    coeffs: Vec<QuadElem>, // ascending, trimmed
}

impl QuadPoly {
    pub fn new(d: i64, mut coeffs: Vec<QuadElem>) -> Result<Self> {
        for c in &coeffs {
            if c.d() != d {
                return Err(Error::MismatchedField);
            }
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(Self { d, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[QuadElem] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&QuadElem> {
        self.coeffs.last()
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.d != rhs.d {
            return Err(Error::MismatchedField);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self { d: self.d, coeffs: Vec::new() });
        }
        let mut out = alloc::vec![QuadElem::zero(self.d); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Self::new(self.d, out)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&num_rational::BigRational::from_integer((i as i64).into())))
            .collect();
        Self::new(self.d, coeffs).expect("same field")
    }

    /// Euclidean division remainder over the field Q(sqrt d).
    fn rem(&self, rhs: &Self) -> Result<Self> {
        let mut a = self.coeffs.clone();
        let b = &rhs.coeffs;
        let lead_inv = rhs.leading().ok_or(Error::ZeroPolynomial)?.inv()?;
        while a.len() >= b.len() {
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
            if a.len() < b.len() {
                break;
            }
            let c = a.last().unwrap().mul(&lead_inv)?;
            let k = a.len() - b.len();
            for (i, bc) in b.iter().enumerate() {
                a[i + k] = a[i + k].sub(&c.mul(bc)?)?;
            }
            a.pop();
        }
        Self::new(self.d, a)
    }

    /// Resultant via the Euclidean remainder sequence with the usual
    /// leading-coefficient and sign bookkeeping.
    pub fn resultant(&self, rhs: &Self) -> Result<QuadElem> {
        if self.d != rhs.d {
            return Err(Error::MismatchedField);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(QuadElem::zero(self.d));
        }
        if self.degree() < rhs.degree() {
            let r = rhs.resultant(self)?;
            return Ok(if (self.degree() * rhs.degree()) % 2 == 1 { r.neg() } else { r });
        }
        let one = QuadElem::from_integers(self.d, 1, 0)?;
        let mut acc = one;
        let mut f = self.clone();
        let mut g = rhs.clone();
        loop {
            if g.is_zero() {
                return Ok(QuadElem::zero(self.d));
            }
            if g.degree() == 0 {
                let mut out = QuadElem::from_integers(self.d, 1, 0)?;
                for _ in 0..f.degree() {
                    out = out.mul(g.leading().unwrap())?;
                }
                return acc.mul(&out);
            }
            let r = f.rem(&g)?;
            if r.is_zero() {
                return Ok(QuadElem::zero(self.d));
            }
            let drop = f.degree() - r.degree();
            let mut mult = QuadElem::from_integers(self.d, 1, 0)?;
            for _ in 0..drop {
                mult = mult.mul(g.leading().unwrap())?;
            }
            if (f.degree() * g.degree()) % 2 == 1 {
                mult = mult.neg();
            }
            acc = acc.mul(&mult)?;
            f = g;
            g = r;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn int_poly(cs: &[i64]) -> QuadPoly {
        QuadPoly::new(1, cs.iter().map(|&c| QuadElem::from_integers(1, c, 0).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn resultant_of_sextic() {
        // res(x^6 + 1, 6 x^5) = 6^6
        let f = int_poly(&[1, 0, 0, 0, 0, 0, 1]);
        let r = f.resultant(&f.derivative()).unwrap();
        assert_eq!(*r.u(), num_rational::BigRational::from_integer(46656.into()));
    }

    #[test]
    fn resultant_detects_common_root() {
        // (x-1)(x-2) and (x-1)(x-3) share x = 1
        let f = int_poly(&[2, -3, 1]);
        let g = int_poly(&[3, -4, 1]);
        assert!(f.resultant(&g).unwrap().is_zero());
        // disjoint roots: res((x-1)(x-2), (x-3)(x-4)) = (1-3)(1-4)(2-3)(2-4) = 12
        let h = int_poly(&[12, -7, 1]);
        assert_eq!(*f.resultant(&h).unwrap().u(), num_rational::BigRational::from_integer(12.into()));
    }

    #[test]
    fn product_expansion() {
        let f = int_poly(&[5, 0, 1]); // x^2 + 5
        let g = int_poly(&[1, 2]); // 2x + 1
        let fg = f.mul(&g).unwrap();
        assert_eq!(
            fg.coeffs().iter().map(|c| c.u().to_integer()).collect::<Vec<_>>(),
            vec![5.into(), 10.into(), 1.into(), 2.into()]
        );
    }
}
