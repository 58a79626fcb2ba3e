//! The line-oriented curve file format.
//!
//! ```text
//! # comment
//! d 2
//! c 0 -125/6 -125/1
//! ...
//! c 6 -1/6 1/1
//! ```
//!
//! `d` names the base field Q(sqrt d) (d = 1 for Q); each `c k u v` line
//! gives the coefficient c_k = u + v sqrt(d) as exact fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qmsurf_core::curve::CurveModel;
use qmsurf_core::quadfield::QuadElem;
use std::path::Path;

use crate::{CliError, Result};

pub fn parse_curve(text: &str) -> Result<CurveModel> {
    let mut d: Option<i64> = None;
    let mut coeffs: [Option<QuadElem>; 7] = Default::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let err = |msg: &str| CliError::input(format!("curve file line {}: {msg}", lineno + 1));
        match parts.next() {
            Some("d") => {
                let val: i64 = parts
                    .next()
                    .ok_or_else(|| err("missing field tag"))?
                    .parse()
                    .map_err(|_| err("bad field tag"))?;
                if d.replace(val).is_some() {
                    return Err(err("duplicate d line"));
                }
            }
            Some("c") => {
                let k: usize = parts
                    .next()
                    .ok_or_else(|| err("missing coefficient index"))?
                    .parse()
                    .map_err(|_| err("bad coefficient index"))?;
                if k > 6 {
                    return Err(err("coefficient index out of range 0..6"));
                }
                let u = parse_rational(parts.next().ok_or_else(|| err("missing u"))?)
                    .ok_or_else(|| err("bad rational u"))?;
                let v = parse_rational(parts.next().ok_or_else(|| err("missing v"))?)
                    .ok_or_else(|| err("bad rational v"))?;
                let dd = d.ok_or_else(|| err("coefficient before d line"))?;
                let elem = QuadElem::new(dd, u, v).map_err(|e| err(&e.to_string()))?;
                if coeffs[k].replace(elem).is_some() {
                    return Err(err("duplicate coefficient"));
                }
            }
            Some(other) => {
                return Err(err(&format!("unknown directive '{other}'")));
            }
            None => unreachable!(),
        }
    }
    let d = d.ok_or_else(|| CliError::input("curve file: missing d line"))?;
    let coeffs = core::array::from_fn(|k| coeffs[k].clone().unwrap_or_else(|| QuadElem::zero(d)));
    CurveModel::new(d, coeffs).map_err(|e| CliError::input(format!("curve file: {e}")))
}

pub fn read_curve(path: &Path) -> Result<CurveModel> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    parse_curve(&text)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(n))
        }
    }
}

pub fn render_curve(curve: &CurveModel, header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(&format!("d {}\n", curve.d()));
    for k in 0..7 {
        let c = curve.coeff(k);
        out.push_str(&format!(
            "c {} {}/{} {}/{}\n",
            k,
            c.u().numer(),
            c.u().denom(),
            c.v().numer(),
            c.v().denom()
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let text = "# a curve\nd 2\nc 0 -125/6 -125/1\nc 1 500 0\nc 2 -825/2 -25\nc 3 200 0\nc 4 -165/2 5\nc 5 20 0\nc 6 -1/6 1\n";
        let c = parse_curve(text).unwrap();
        assert_eq!(c.d(), 2);
        assert_eq!(c.degree(), 6);
        let rendered = render_curve(&c, "a curve");
        let c2 = parse_curve(&rendered).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn error_messages_carry_line_numbers() {
        let bad = "d 2\nc 9 1 0\n";
        let err = parse_curve(bad).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let bad = "c 0 1 0\n";
        assert!(parse_curve(bad).is_err());
        let bad = "d 2\nc 0 1/0 0\n";
        assert!(parse_curve(bad).unwrap_err().to_string().contains("bad rational"));
    }
}
