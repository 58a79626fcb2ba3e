use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use qmsurf_core::frobenius::HalfTraces;
use qmsurf_core::modell::{
    dickson_eliminate, reduce_halftrace_mod, MaximalityReport, MaximalityVerdict, ResidualClass,
    ResidualElement, RootChoice,
};

use crate::{CliError, Result};

use super::{parse_candidate, parse_prime_list};

#[derive(Debug, Clone)]
pub struct MaximalArgs {
    /// CSV as emitted by `frob` (full rows).
    pub traces: PathBuf,
    pub ell: u64,
    /// Field of the two-dimensional component; rows without a candidate in
    /// this field (or a rational one) are skipped.
    pub field: i64,
    pub root: RootChoice,
    /// Restricts to these rational primes (the primes split in the relevant
    /// subextension; see the infer report).
    pub primes: Option<String>,
}

#[derive(Debug, Clone)]
pub struct MaximalOutput {
    pub report: MaximalityReport,
    pub elements: Vec<ResidualElement>,
    pub text: String,
}

/// Reduces the selected half-traces modulo ell and runs the subgroup-class
/// elimination.
pub fn cmd_maximal(args: &MaximalArgs) -> Result<MaximalOutput> {
    let text = std::fs::read_to_string(&args.traces)
        .map_err(|e| CliError::input(format!("{}: {e}", args.traces.display())))?;
    let rows = parse_traces_csv(&text)?;
    let filter: Option<BTreeSet<u64>> = match &args.primes {
        Some(list) => Some(parse_prime_list(list)?),
        None => None,
    };
    let mut elements = Vec::new();
    let mut seen = BTreeSet::new();
    for (p, candidates) in &rows {
        if let Some(f) = &filter {
            if !f.contains(p) {
                continue;
            }
        }
        if !seen.insert(*p) {
            continue; // conjugate embedding row: identical candidates
        }
        let chosen = candidates
            .iter()
            .find(|c| c.m() == args.field)
            .or_else(|| candidates.iter().find(|c| c.is_rational()));
        if let Some(ht) = chosen {
            elements.push(reduce_halftrace_mod(ht, *p, args.ell, args.root)?);
        }
    }
    if elements.is_empty() {
        return Err(CliError::input(format!(
            "no rows carry a candidate in Q(sqrt {}) (or a rational one)",
            args.field
        )));
    }
    let report = dickson_eliminate(&elements, args.ell).map_err(CliError::from)?;
    let text = render(&report, &elements, args);
    Ok(MaximalOutput { report, elements, text })
}

/// Parses the frob CSV back into (p, candidates) rows.
pub fn parse_traces_csv(text: &str) -> Result<Vec<(u64, Vec<HalfTraces>)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if lineno == 0 || line.trim().is_empty() {
            continue; // header
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 7 {
            return Err(CliError::input(format!(
                "traces file line {}: expected 7 columns",
                lineno + 1
            )));
        }
        let p: u64 = cols[0]
            .parse()
            .map_err(|_| CliError::input(format!("traces file line {}: bad p", lineno + 1)))?;
        if cols[6].is_empty() {
            return Err(CliError::input(format!(
                "traces file line {}: no candidates (was the scan run with --deg1-only?)",
                lineno + 1
            )));
        }
        let candidates = cols[6]
            .split(';')
            .map(parse_candidate)
            .collect::<Result<Vec<_>>>()?;
        out.push((p, candidates));
    }
    Ok(out)
}

fn render(report: &MaximalityReport, elements: &[ResidualElement], args: &MaximalArgs) -> String {
    let ell = args.ell;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "mod-{ell} image analysis (field Q(sqrt {}), root {})",
        args.field,
        match args.root {
            RootChoice::Plus => "+",
            RootChoice::Minus => "-",
        }
    );
    let _ = writeln!(out, "elements:");
    for e in elements {
        let src = e.source().map(|p| format!("p={p}")).unwrap_or_else(|| "-".to_string());
        match e.class() {
            ResidualClass::Split { alpha, beta, alpha_order, beta_order, proj_order } => {
                let _ = writeln!(
                    out,
                    "  {src}: t={} det={} split, eigenvalues ({alpha}, {beta}) of orders ({alpha_order}, {beta_order}), projective order {proj_order}",
                    e.trace(), e.det()
                );
            }
            ResidualClass::Nonsplit { order, proj_order } => {
                let _ = writeln!(
                    out,
                    "  {src}: t={} det={} nonsplit, eigenvalue order {order} in F_{}^*, projective order {proj_order}",
                    e.trace(), e.det(), ell * ell
                );
            }
            ResidualClass::Scalar { value } => {
                let _ = writeln!(
                    out,
                    "  {src}: t={} det={} scalar-like (double eigenvalue {value})",
                    e.trace(),
                    e.det()
                );
            }
        }
    }
    match &report.verdict {
        MaximalityVerdict::Maximal => {
            let _ = writeln!(out, "verdict: maximal (the image is all of GL2(F_{ell}))");
            let witness_p = |e: &Option<ResidualElement>| {
                e.and_then(|w| w.source()).map(|p| format!("p={p}")).unwrap_or_else(|| "-".into())
            };
            let _ = writeln!(out, "  Borel excluded: nonsplit element at {}", witness_p(&report.nonsplit_witness));
            let _ = writeln!(
                out,
                "  split-Cartan normalizer excluded: nonsplit element with nonzero trace at {}",
                witness_p(&report.nonsplit_nonzero_trace)
            );
            let _ = writeln!(
                out,
                "  nonsplit-Cartan normalizer excluded: split element with nonzero trace at {}",
                witness_p(&report.split_nonzero_trace)
            );
            let _ = writeln!(
                out,
                "  exceptional images excluded: projective order above 5 at {}",
                witness_p(&report.high_projective)
            );
            let _ = writeln!(out, "  determinants generate F_{ell}^*: yes");
        }
        MaximalityVerdict::Inconclusive(classes) => {
            let _ = writeln!(out, "verdict: inconclusive; classes not eliminated:");
            for c in classes {
                let _ = writeln!(out, "  - {c}");
            }
        }
    }
    if let Some(w) = &report.split_max_order_eigenvalue {
        if let ResidualClass::Split { alpha, beta, .. } = w.class() {
            let _ = writeln!(
                out,
                "notable: split element with an eigenvalue of maximal order {} at p={} (eigenvalues {alpha}, {beta})",
                ell - 1,
                w.source().unwrap_or(0)
            );
        }
    }
    if let Some((order, w)) = &report.max_nonsplit_order {
        let _ = writeln!(
            out,
            "notable: highest nonsplit eigenvalue order {order} in F_{}^* at p={}",
            ell * ell,
            w.source().unwrap_or(0)
        );
    }
    if matches!(report.verdict, MaximalityVerdict::Maximal) {
        let _ = writeln!(
            out,
            "note: for ell >= 5 a maximal residual image lifts: the ell-adic image is all of GL2(Z_{ell}) (Serre's lemma)"
        );
        let _ = writeln!(
            out,
            "consequence: the representation is not potentially abelian; the CM-product case is excluded"
        );
    }
    out
}
