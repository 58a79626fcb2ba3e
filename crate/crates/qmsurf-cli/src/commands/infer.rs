use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use qmsurf_core::endo::{
    infer_endo_structure, select_factorizations, BaseEndAlgebra, EndoReport, GaloisVerdict,
    InferParams,
};
use qmsurf_core::frobenius::HalfTraces;
use qmsurf_core::quadfield::DegreeOnePrime;
use qmsurf_core::quaternion::is_hereditary;

use crate::curvefile::read_curve;
use crate::scan::{dataset_from_rows, scan, EmbeddingChoice, ScanConfig};
use crate::{CliError, Result};

use super::{parse_int_list, parse_prime_list};

#[derive(Debug, Clone)]
pub struct InferArgs {
    pub curve: PathBuf,
    pub pmin: u64,
    pub pmax: u64,
    pub disc: u64,
    /// Overrides the ramification set (defaults to the curve's bad primes).
    pub bad: Option<String>,
    /// Overrides the candidate delta list.
    pub deltas: Option<String>,
    pub min_split: usize,
    pub min_inert: usize,
    pub embedding: EmbeddingChoice,
    pub workers: usize,
}

impl InferArgs {
    pub fn new(curve: PathBuf, pmax: u64, disc: u64) -> Self {
        Self {
            curve,
            pmin: 3,
            pmax,
            disc,
            bad: None,
            deltas: None,
            min_split: 3,
            min_inert: 3,
            embedding: EmbeddingChoice::Plus,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct InferOutput {
    pub report: EndoReport,
    pub selections: Vec<(DegreeOnePrime, Option<HalfTraces>)>,
    pub ram_set: BTreeSet<u64>,
    pub text: String,
    pub csv: String,
    pub notes: Vec<String>,
}

/// Scans the curve, assembles the trace dataset and runs the global
/// endomorphism inference under the assumed quaternion discriminant.
pub fn cmd_infer(args: &InferArgs) -> Result<InferOutput> {
    let curve = read_curve(&args.curve)?.integral_model();
    let ram_set = match &args.bad {
        Some(list) => parse_prime_list(list)?,
        None => curve.bad_primes().map_err(CliError::from)?,
    };
    let mut cfg = ScanConfig::new(args.pmin, args.pmax);
    cfg.embedding = args.embedding;
    cfg.workers = args.workers;
    let outcome = scan(&curve, &cfg)?;
    if outcome.rows.is_empty() {
        return Err(CliError::input("no usable primes in range"));
    }
    let ds = dataset_from_rows(curve.d(), ram_set.clone(), &outcome.rows)?;
    let params = InferParams {
        min_split: args.min_split,
        min_inert: args.min_inert,
        deltas: match &args.deltas {
            Some(list) => Some(parse_int_list(list)?),
            None => None,
        },
    };
    let report = infer_endo_structure(&ds, args.disc, &params).map_err(CliError::from)?;
    let selections = select_factorizations(&ds, &report);
    let text = render_text(&curve.d(), &ram_set, &report, &selections, args.disc);
    let csv = render_csv(&report);
    let notes = outcome
        .skipped
        .iter()
        .map(|(p, r, reason)| format!("skipped (p={p}, r={r}): {reason}"))
        .collect();
    Ok(InferOutput { report, selections, ram_set, text, csv, notes })
}

fn field_name(d: i64) -> String {
    if d == 1 {
        "Q".to_string()
    } else {
        format!("Q(sqrt {d})")
    }
}

fn render_text(
    d: &i64,
    ram_set: &BTreeSet<u64>,
    report: &EndoReport,
    selections: &[(DegreeOnePrime, Option<HalfTraces>)],
    disc: u64,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "endomorphism structure over K = {}", field_name(*d));
    let _ = writeln!(
        out,
        "assumed quaternion discriminant: {disc} (hereditary order: {})",
        if is_hereditary(disc) { "yes" } else { "no" }
    );
    let _ = writeln!(
        out,
        "ramification set: {{{}}}",
        ram_set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    );
    let primes: BTreeSet<u64> = selections.iter().map(|(pr, _)| pr.p()).collect();
    let _ = writeln!(
        out,
        "primes used ({}): {}",
        primes.len(),
        primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    );
    match &report.end_k {
        BaseEndAlgebra::Integers => {
            let _ = writeln!(out, "End_K = Z (no quadratic field fits every prime)");
        }
        BaseEndAlgebra::Quadratic(ms) => {
            let _ = writeln!(out, "End_K x Q may contain: {ms:?}");
        }
        BaseEndAlgebra::Unresolved => {
            let _ = writeln!(out, "End_K unresolved: every prime has rational half-traces");
        }
    }
    let _ = writeln!(out, "Gal(L/K): {}", report.gal_lk);
    if !report.assignments.is_empty() {
        let _ = writeln!(out, "subextensions and intermediate algebras:");
        for a in &report.assignments {
            let _ = writeln!(
                out,
                "  K(sqrt {})  ->  Q(sqrt {})   split: {}   inert: {}{}",
                a.delta,
                a.field,
                join(&a.split_primes),
                join(&a.inert_primes),
                if a.low_confidence { "   [low evidence]" } else { "" }
            );
        }
    }
    if !report.eliminated.is_empty() {
        let _ = writeln!(out, "eliminated extensions:");
        for e in &report.eliminated {
            let reason = match e.reason {
                qmsurf_core::endo::EliminationReason::InertTrace => {
                    format!("inert prime {} has nonzero trace", e.witness)
                }
                qmsurf_core::endo::EliminationReason::NoConsistentField => {
                    format!("no single field survives past p = {}", e.witness)
                }
            };
            let _ = writeln!(out, "  K(sqrt {}): {reason}", e.delta);
        }
    }
    let minus: Vec<u64> = selections
        .iter()
        .filter_map(|(pr, sel)| sel.filter(|ht| ht.eps() == -1).map(|_| pr.p()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let _ = writeln!(
        out,
        "selected factorizations use the -p constant term at: {}",
        if minus.is_empty() { "none".to_string() } else { join(&minus) }
    );
    if !minus.is_empty() {
        let all_1mod4 = minus.iter().all(|p| p % 4 == 1);
        let _ = writeln!(out, "  observation: all such p = 1 mod 4: {}", yesno(all_1mod4));
        for q in ram_set.iter().filter(|&&q| q % 2 == 1) {
            let all_nonsquare = minus
                .iter()
                .all(|&p| qmsurf_core::fp::legendre(p as i64, *q).map(|l| l == -1).unwrap_or(false));
            let _ = writeln!(
                out,
                "  observation: all such p nonsquare mod {q}: {}",
                yesno(all_nonsquare)
            );
        }
    }
    if !report.flags.is_empty() {
        let _ = writeln!(out, "flags:");
        for f in &report.flags {
            let _ = writeln!(out, "  - {f}");
        }
    }
    let _ = writeln!(
        out,
        "note: the report asserts consistency with the assumed quaternion algebra, not a proof of it"
    );
    out
}

fn join(ps: &[u64]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_csv(report: &EndoReport) -> String {
    let mut out = String::from("delta,status,m,witness_primes\n");
    for a in &report.assignments {
        let _ = writeln!(
            out,
            "{},accepted,{},{}",
            a.delta,
            a.field,
            a.split_primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
        );
    }
    for e in &report.eliminated {
        let _ = writeln!(out, "{},eliminated,,{}", e.delta, e.witness);
    }
    out
}

impl InferOutput {
    /// Rational primes whose selected factorization has constant term -p.
    pub fn minus_sign_primes(&self) -> Vec<u64> {
        self.selections
            .iter()
            .filter_map(|(pr, sel)| sel.filter(|ht| ht.eps() == -1).map(|_| pr.p()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// The GaloisVerdict shortcut used all over the acceptance suite.
    pub fn verdict(&self) -> GaloisVerdict {
        self.report.gal_lk
    }
}
