use std::fmt::Write as _;
use std::path::PathBuf;

use crate::curvefile::read_curve;
use crate::satotate::{summarize, SatoTateSummary};
use crate::scan::{scan, EmbeddingChoice, ScanConfig};
use crate::{CliError, Result};

#[derive(Debug, Clone)]
pub struct SatoTateArgs {
    pub curve: PathBuf,
    pub pmin: u64,
    pub pmax: u64,
    pub bins: usize,
    /// Skip (rather than abort on) primes whose trace parity contradicts the
    /// square-type pattern.
    pub allow_mixed: bool,
    /// Optional overlay densities, one `x,density` row per bin.
    pub reference: Option<PathBuf>,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct SatoTateOutput {
    pub summary: SatoTateSummary,
    pub csv: String,
    pub text: String,
}

/// Degree-1 fast path: a_p = s1 / 2, valid under the square quartic pattern
/// (x^2 - a x + p)^2, i.e. when all endomorphisms live over the base field.
/// See `verify-lk` for certifying that regime.
pub fn cmd_satotate(args: &SatoTateArgs) -> Result<SatoTateOutput> {
    let curve = read_curve(&args.curve)?.integral_model();
    let mut cfg = ScanConfig::new(args.pmin, args.pmax);
    cfg.embedding = EmbeddingChoice::Plus;
    cfg.deg1_only = true;
    cfg.workers = args.workers;
    let outcome = scan(&curve, &cfg)?;

    let mut samples = Vec::new();
    let mut flagged = Vec::new();
    for row in &outcome.rows {
        let p = row.prime.p();
        let s1 = p as i64 + 1 - row.n1 as i64;
        if s1 % 2 != 0 {
            flagged.push(p);
            if !args.allow_mixed {
                return Err(CliError::input(format!(
                    "p = {p} has odd trace s1 = {s1}: the square-type fast path does not apply \
                     (rerun with --allow-mixed to skip such primes)"
                )));
            }
            continue;
        }
        samples.push((p, s1 / 2));
    }
    let summary = summarize(&samples, args.bins)?;
    let reference = match &args.reference {
        Some(path) => Some(read_reference(path, args.bins)?),
        None => None,
    };
    let csv = summary.histogram_csv(reference.as_deref());

    let mut text = String::new();
    let _ = writeln!(
        text,
        "normalized trace statistics (fast path: a = s1/2, valid under the square quartic pattern)"
    );
    text.push_str(&summary.text_summary());
    if !flagged.is_empty() {
        let _ = writeln!(
            text,
            "skipped (odd trace, square pattern violated): {}",
            flagged.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        );
    }
    if !outcome.skipped.is_empty() {
        let _ = writeln!(text, "skipped {} prime embeddings (bad reduction)", outcome.skipped.len());
    }
    Ok(SatoTateOutput { summary, csv, text })
}

fn read_reference(path: &PathBuf, bins: usize) -> Result<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let density = line
            .rsplit(',')
            .next()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .ok_or_else(|| CliError::input(format!("bad reference row '{line}'")))?;
        out.push(density);
    }
    if out.len() != bins {
        return Err(CliError::input(format!(
            "reference file has {} rows, expected {bins}",
            out.len()
        )));
    }
    Ok(out)
}
