//! Integration tests for the scan pipeline and command plumbing beyond the
//! acceptance criteria.

use std::collections::BTreeSet;
use std::path::PathBuf;

use qmsurf_cli::commands::{cmd_frob, cmd_infer, cmd_satotate, FrobArgs, InferArgs, SatoTateArgs};
use qmsurf_cli::curvefile::read_curve;
use qmsurf_cli::fixtures;
use qmsurf_cli::scan::{dataset_from_rows, scan, EmbeddingChoice, ScanConfig};
use qmsurf_core::curve::reduce_curve;
use qmsurf_core::endo::{base_end_algebra, BaseEndAlgebra};
use qmsurf_core::frobenius::is_square_type;
use qmsurf_core::quadfield::DegreeOnePrime;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn committed_fixtures_match_regeneration() {
    let c1 = std::fs::read_to_string(fixture("c1.curve")).unwrap();
    let c2 = std::fs::read_to_string(fixture("c2.curve")).unwrap();
    assert_eq!(c1, fixtures::c1_file());
    assert_eq!(c2, fixtures::c2_file());
}

#[test]
fn c1_reduction_at_7() {
    let curve = read_curve(&fixture("c1.curve")).unwrap().integral_model();
    let rc = reduce_curve(&curve, &DegreeOnePrime::new(2, 7, 3).unwrap()).unwrap();
    assert_eq!(rc.coeffs(), &[2, 3, 6, 4, 6, 6, 4]);
    let rc = reduce_curve(&curve, &DegreeOnePrime::new(2, 7, 4).unwrap()).unwrap();
    assert_eq!(rc.coeffs(), &[3, 3, 2, 4, 4, 6, 5]);
}

#[test]
fn c1_bad_primes_are_conservative() {
    let curve = read_curve(&fixture("c1.curve")).unwrap().integral_model();
    let bad = curve.bad_primes().unwrap();
    // the true bad primes divide 30; 71 enters through the leading
    // coefficient norm (one embedding of 71 kills the degree)
    assert!(bad.is_superset(&[2u64, 3, 5].into_iter().collect()));
    assert!(bad.contains(&71));
    let c2 = read_curve(&fixture("c2.curve")).unwrap().integral_model();
    let bad2 = c2.bad_primes().unwrap();
    assert!(bad2.is_superset(&[2u64, 3, 5, 7].into_iter().collect()));
}

#[test]
fn deg1_only_rows_agree_with_full_rows() {
    let full = cmd_frob(&FrobArgs {
        curve: fixture("c1.curve"),
        pmin: 3,
        pmax: 47,
        deg1_only: false,
        embedding: EmbeddingChoice::Both,
        exclude: None,
        workers: 0,
    })
    .unwrap();
    let fast = cmd_frob(&FrobArgs {
        curve: fixture("c1.curve"),
        pmin: 3,
        pmax: 47,
        deg1_only: true,
        embedding: EmbeddingChoice::Both,
        exclude: None,
        workers: 0,
    })
    .unwrap();
    let pick = |csv: &str| -> Vec<(String, String, String, String)> {
        csv.lines()
            .skip(1)
            .map(|l| {
                let c: Vec<&str> = l.split(',').collect();
                (c[0].to_string(), c[1].to_string(), c[2].to_string(), c[4].to_string())
            })
            .collect()
    };
    assert_eq!(pick(&full.csv), pick(&fast.csv), "p, r, N1, s1 must agree");
}

#[test]
fn fast_path_a_matches_square_type_root() {
    let curve = read_curve(&fixture("c2.curve")).unwrap().integral_model();
    let mut cfg = ScanConfig::new(3, 200);
    cfg.embedding = EmbeddingChoice::Plus;
    let rows = scan(&curve, &cfg).unwrap().rows;
    let mut seen_square = 0;
    for row in &rows {
        let fd = row.frob.unwrap();
        if let Some(a) = is_square_type(&fd) {
            assert_eq!(a, fd.s1() / 2);
            seen_square += 1;
        }
    }
    assert!(seen_square > 0, "C2 has totally split primes below 200");
}

#[test]
fn infer_is_conjugation_invariant() {
    let mut plus = InferArgs::new(fixture("c1.curve"), 97, 6);
    plus.embedding = EmbeddingChoice::Plus;
    let mut minus = plus.clone();
    minus.embedding = EmbeddingChoice::Minus;
    let a = cmd_infer(&plus).unwrap();
    let b = cmd_infer(&minus).unwrap();
    assert_eq!(a.csv, b.csv);
    assert_eq!(a.report.gal_lk, b.report.gal_lk);
    let fields =
        |o: &qmsurf_cli::commands::InferOutput| -> Vec<(i64, i64)> {
            o.report.assignments.iter().map(|x| (x.delta, x.field)).collect()
        };
    assert_eq!(fields(&a), fields(&b));
}

#[test]
fn more_primes_only_shrink_the_accepted_set() {
    let accepted = |pmax: u64| -> BTreeSet<i64> {
        cmd_infer(&InferArgs::new(fixture("c1.curve"), pmax, 6))
            .unwrap()
            .report
            .assignments
            .iter()
            .map(|a| a.delta)
            .collect()
    };
    let wide = accepted(97);
    for pmax in [41u64, 47, 71, 79] {
        let narrow = accepted(pmax);
        assert!(
            wide.is_subset(&narrow),
            "accepted set grew from pmax={pmax}: {narrow:?} vs {wide:?}"
        );
    }
}

#[test]
fn c1_base_end_is_integers() {
    let curve = read_curve(&fixture("c1.curve")).unwrap().integral_model();
    let mut cfg = ScanConfig::new(3, 97);
    cfg.embedding = EmbeddingChoice::Plus;
    let rows = scan(&curve, &cfg).unwrap().rows;
    let ds = dataset_from_rows(2, curve.bad_primes().unwrap(), &rows).unwrap();
    assert_eq!(base_end_algebra(&ds).unwrap(), BaseEndAlgebra::Integers);
}

#[test]
fn empty_prime_range_gives_header_only_csv() {
    let out = cmd_frob(&FrobArgs {
        curve: fixture("c1.curve"),
        pmin: 3,
        pmax: 4,
        deg1_only: false,
        embedding: EmbeddingChoice::Both,
        exclude: None,
        workers: 0,
    })
    .unwrap();
    assert_eq!(out.csv, "p,r,N1,N2,s1,s2,candidates\n");
}

#[test]
fn satotate_rejects_or_skips_odd_traces() {
    // a quintic with generic traces violates the parity assumption quickly
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quintic.curve");
    std::fs::write(&path, "d 1\nc 0 1 0\nc 1 1 0\nc 2 0 0\nc 3 0 0\nc 4 0 0\nc 5 1 0\nc 6 0 0\n")
        .unwrap();
    let strict = cmd_satotate(&SatoTateArgs {
        curve: path.clone(),
        pmin: 3,
        pmax: 60,
        bins: 4,
        allow_mixed: false,
        reference: None,
        workers: 0,
    });
    assert!(strict.is_err(), "odd traces must abort the strict fast path");
    let mixed = cmd_satotate(&SatoTateArgs {
        curve: path,
        pmin: 3,
        pmax: 60,
        bins: 4,
        allow_mixed: true,
        reference: None,
        workers: 0,
    })
    .unwrap();
    assert!(mixed.text.contains("skipped (odd trace"));
    assert_eq!(mixed.summary.histogram.iter().sum::<u64>() as usize, mixed.summary.sample_size);
}
