//! One module per subcommand. Each command is a plain function over its
//! argument struct so tests can drive it without spawning the binary.

mod frob;
mod infer;
mod maximal;
mod quat;
mod satotate_cmd;
mod verify_lk;

pub use frob::{cmd_frob, FrobArgs, FrobOutput};
pub use infer::{cmd_infer, InferArgs, InferOutput};
pub use maximal::{cmd_maximal, parse_traces_csv, MaximalArgs, MaximalOutput};
pub use quat::{cmd_quat, QuatArgs, QuatOp};
pub use satotate_cmd::{cmd_satotate, SatoTateArgs, SatoTateOutput};
pub use verify_lk::{cmd_verify_lk, VerifyLkArgs, VerifyLkOutput};

use num_rational::Rational64;
use qmsurf_core::frobenius::HalfTraces;
use std::collections::BTreeSet;

use crate::{CliError, Result};

/// `7,17,23` -> set; empty string -> empty set.
pub fn parse_prime_list(s: &str) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.insert(
            part.parse::<u64>()
                .map_err(|_| CliError::input(format!("bad prime '{part}'")))?,
        );
    }
    Ok(out)
}

pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<i64>()
                .map_err(|_| CliError::input(format!("bad integer '{part}'")))?,
        );
    }
    Ok(out)
}

/// Renders candidates as `u±v√m(ε)` joined by `;`.
pub fn candidates_cell(candidates: &[HalfTraces]) -> String {
    candidates.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
}

/// Parses one `u±v√m(ε)` token back.
pub fn parse_candidate(s: &str) -> Result<HalfTraces> {
    let err = || CliError::input(format!("bad candidate '{s}'"));
    let (u_str, rest) = s.split_once('\u{b1}').ok_or_else(err)?;
    let (v_str, rest) = rest.split_once('\u{221a}').ok_or_else(err)?;
    let (m_str, eps_str) = rest.split_once('(').ok_or_else(err)?;
    let eps = match eps_str.trim_end_matches(')') {
        "+" => 1,
        "-" => -1,
        _ => return Err(err()),
    };
    let u = parse_rational64(u_str).ok_or_else(err)?;
    let v = parse_rational64(v_str).ok_or_else(err)?;
    let m: i64 = m_str.parse().map_err(|_| err())?;
    // normal form: v >= 0, and a vanishing radical part forces m = 1
    if v < num_traits::Zero::zero() || (num_traits::Zero::is_zero(&v) && m != 1) {
        return Err(err());
    }
    Ok(HalfTraces::new(u, v, m, eps))
}

fn parse_rational64(s: &str) -> Option<Rational64> {
    match s.split_once('/') {
        Some((n, d)) => Some(Rational64::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Rational64::from_integer(s.parse().ok()?)),
    }
}
