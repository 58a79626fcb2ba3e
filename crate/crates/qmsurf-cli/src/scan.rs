//! The per-prime scan: reduce the curve at every usable degree-one prime in
//! range, count points, assemble Frobenius data and candidates. Work fans
//! out over a rayon pool; results are collected in input order, so output is
//! byte-identical for any worker count.

use qmsurf_core::curve::{count_points, reduce_curve, CurveModel};
use qmsurf_core::endo::{TraceDataset, TraceEntry};
use qmsurf_core::fp::is_prime;
use qmsurf_core::frobenius::{half_trace_factorizations, FrobeniusData, HalfTraces};
use qmsurf_core::quadfield::{split_type, DegreeOnePrime, SplitType};
use qmsurf_core::Error as CoreError;
use rayon::prelude::*;
use std::collections::BTreeSet;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingChoice {
    Plus,
    Minus,
    Both,
}

impl std::str::FromStr for EmbeddingChoice {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "+" | "plus" => Ok(EmbeddingChoice::Plus),
            "-" | "minus" => Ok(EmbeddingChoice::Minus),
            "both" => Ok(EmbeddingChoice::Both),
            other => Err(format!("bad embedding '{other}' (want +, - or both)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub pmin: u64,
    pub pmax: u64,
    pub excluded: BTreeSet<u64>,
    pub embedding: EmbeddingChoice,
    pub deg1_only: bool,
    pub workers: usize,
}

impl ScanConfig {
    pub fn new(pmin: u64, pmax: u64) -> Self {
        Self {
            pmin,
            pmax,
            excluded: BTreeSet::new(),
            embedding: EmbeddingChoice::Both,
            deg1_only: false,
            workers: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScanRow {
    pub prime: DegreeOnePrime,
    pub n1: u64,
    pub n2: Option<u64>,
    pub frob: Option<FrobeniusData>,
    pub candidates: Vec<HalfTraces>,
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub rows: Vec<ScanRow>,
    /// (p, r, reason) for primes attempted and skipped.
    pub skipped: Vec<(u64, u64, String)>,
}

/// Runs the scan on an integral model. `workers = 0` uses the rayon default.
pub fn scan(curve: &CurveModel, cfg: &ScanConfig) -> Result<ScanOutcome> {
    if cfg.pmin < 3 {
        return Err(CliError::input("pmin must be at least 3"));
    }
    if !curve.is_integral() {
        return Err(CliError::input("scan requires an integral model"));
    }
    // With a single-embedding choice, a prime whose chosen embedding
    // degenerates (leading coefficient or discriminant dying mod that one
    // prime of K) falls back to the conjugate embedding.
    let mut targets: Vec<Vec<DegreeOnePrime>> = Vec::new();
    for p in cfg.pmin..=cfg.pmax {
        if !is_prime(p) || cfg.excluded.contains(&p) || p == 2 {
            continue;
        }
        if curve.d() == 1 {
            targets.push(vec![DegreeOnePrime::new(1, p, 0).map_err(CliError::from)?]);
            continue;
        }
        if split_type(p, curve.d()).map_err(CliError::from)? != SplitType::Split {
            continue;
        }
        let pair = DegreeOnePrime::above(curve.d(), p).map_err(CliError::from)?;
        match cfg.embedding {
            EmbeddingChoice::Plus => targets.push(vec![pair[0], pair[1]]),
            EmbeddingChoice::Minus => targets.push(vec![pair[1], pair[0]]),
            EmbeddingChoice::Both => targets.extend(pair.into_iter().map(|pr| vec![pr])),
        }
    }

    let run = || -> Vec<(DegreeOnePrime, std::result::Result<ScanRow, CoreError>)> {
        targets
            .par_iter()
            .map(|chain| {
                let mut last = (chain[0], scan_one(curve, &chain[0], cfg.deg1_only));
                for prime in &chain[1..] {
                    if last.1.is_ok() || matches!(last.1, Err(CoreError::InconsistentCounts { .. })) {
                        break;
                    }
                    last = (*prime, scan_one(curve, prime, cfg.deg1_only));
                }
                last
            })
            .collect()
    };
    let results = if cfg.workers == 0 {
        run()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| CliError::input(e.to_string()))?;
        pool.install(run)
    };

    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (prime, res) in results {
        match res {
            Ok(row) => rows.push(row),
            // counting bugs must not be silently skipped
            Err(e @ CoreError::InconsistentCounts { .. }) => return Err(e.into()),
            Err(e) => skipped.push((prime.p(), prime.r(), e.to_string())),
        }
    }
    Ok(ScanOutcome { rows, skipped })
}

fn scan_one(
    curve: &CurveModel,
    prime: &DegreeOnePrime,
    deg1_only: bool,
) -> std::result::Result<ScanRow, CoreError> {
    let rc = reduce_curve(curve, prime)?;
    let n1 = count_points(&rc, 1)?;
    if deg1_only {
        return Ok(ScanRow { prime: *prime, n1, n2: None, frob: None, candidates: Vec::new() });
    }
    let n2 = count_points(&rc, 2)?;
    let frob = FrobeniusData::charpoly_from_counts(*prime, n1, n2)?;
    let candidates = half_trace_factorizations(&frob)?;
    Ok(ScanRow { prime: *prime, n1, n2: Some(n2), frob: Some(frob), candidates })
}

/// Builds a trace dataset from full scan rows.
pub fn dataset_from_rows(
    d: i64,
    ram_set: BTreeSet<u64>,
    rows: &[ScanRow],
) -> Result<TraceDataset> {
    let mut entries = Vec::new();
    for row in rows {
        let frob = row
            .frob
            .ok_or_else(|| CliError::input("dataset requires full rows (no --deg1-only)"))?;
        entries.push(TraceEntry { prime: row.prime, frob, candidates: row.candidates.clone() });
    }
    TraceDataset::new(d, ram_set, entries).map_err(CliError::from)
}
