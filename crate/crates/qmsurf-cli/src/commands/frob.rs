use std::path::PathBuf;

use crate::curvefile::read_curve;
use crate::scan::{scan, EmbeddingChoice, ScanConfig};
use crate::Result;

use super::{candidates_cell, parse_prime_list};

#[derive(Debug, Clone)]
pub struct FrobArgs {
    pub curve: PathBuf,
    pub pmin: u64,
    pub pmax: u64,
    pub deg1_only: bool,
    pub embedding: EmbeddingChoice,
    pub exclude: Option<String>,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct FrobOutput {
    pub csv: String,
    pub notes: Vec<String>,
}

/// One CSV row per usable (p, embedding): counts, traces and all candidate
/// half-trace factorizations.
pub fn cmd_frob(args: &FrobArgs) -> Result<FrobOutput> {
    let curve = read_curve(&args.curve)?.integral_model();
    let mut cfg = ScanConfig::new(args.pmin, args.pmax);
    cfg.embedding = args.embedding;
    cfg.deg1_only = args.deg1_only;
    cfg.workers = args.workers;
    if let Some(list) = &args.exclude {
        cfg.excluded = parse_prime_list(list)?;
    }
    let outcome = scan(&curve, &cfg)?;

    let mut csv = String::from("p,r,N1,N2,s1,s2,candidates\n");
    for row in &outcome.rows {
        let p = row.prime.p() as i64;
        let s1 = p + 1 - row.n1 as i64;
        match (&row.frob, row.n2) {
            (Some(fd), Some(n2)) => {
                csv.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    row.prime.p(),
                    row.prime.r(),
                    row.n1,
                    n2,
                    fd.s1(),
                    fd.s2(),
                    candidates_cell(&row.candidates)
                ));
            }
            _ => {
                csv.push_str(&format!(
                    "{},{},{},,{},,\n",
                    row.prime.p(),
                    row.prime.r(),
                    row.n1,
                    s1
                ));
            }
        }
    }
    let notes = outcome
        .skipped
        .iter()
        .map(|(p, r, reason)| format!("skipped (p={p}, r={r}): {reason}"))
        .collect();
    Ok(FrobOutput { csv, notes })
}
