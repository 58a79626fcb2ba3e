//! Global inference over a trace dataset: the endomorphism algebra over the
//! base field, the candidate quadratic subextensions of the field of
//! definition L, the subextension -> intermediate-algebra map, and the
//! inert-prime verification that L = K.
//!
//! Acceptance of a candidate extension K(sqrt delta) is a universally
//! quantified condition over the dataset: every prime split in the extension
//! must admit a factorization in one fixed quadratic field (or a rational
//! one), and every inert prime must have full trace zero. Everything else is
//! an elimination with a concrete witness prime.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::frobenius::{is_square_type, FrobeniusData, HalfTraces};
use crate::quadfield::{
    canonical_delta, enumerate_quadratic_exts, splits_in_ext, DegreeOnePrime, SplitType,
};
use crate::quaternion::{check_triple, embeds};
use crate::factor::squarefree_part;
use crate::{Error, Result};

/// One good degree-one prime with its quartic and all local factorizations.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub prime: DegreeOnePrime,
    pub frob: FrobeniusData,
    pub candidates: Vec<HalfTraces>,
}

impl TraceEntry {
    pub fn from_frobenius(frob: FrobeniusData) -> Result<Self> {
        let candidates = crate::frobenius::half_trace_factorizations(&frob)?;
        Ok(Self { prime: frob.prime(), frob, candidates })
    }
}

/// Trace data over a base field Q(sqrt d) with designated ramification set.
#[derive(Debug, Clone)]
pub struct TraceDataset {
    d: i64,
    ram_set: BTreeSet<u64>,
    entries: Vec<TraceEntry>,
}

impl TraceDataset {
    /// Entries are sorted by (p, r) so downstream reports never depend on
    /// insertion order.
    pub fn new(d: i64, ram_set: BTreeSet<u64>, mut entries: Vec<TraceEntry>) -> Result<Self> {
        for e in &entries {
            if e.prime.d() != d {
                return Err(Error::MismatchedField);
            }
            if e.candidates.is_empty() {
                return Err(Error::NoCandidates { p: e.prime.p() });
            }
        }
        entries.sort_by_key(|e| (e.prime.p(), e.prime.r()));
        Ok(Self { d, ram_set, entries })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn ram_set(&self) -> &BTreeSet<u64> {
        &self.ram_set
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }
}

/// Verdict on End over the base field itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseEndAlgebra {
    /// No quadratic field is compatible with every prime: End_K = Z.
    Integers,
    /// The listed fields are compatible with every prime (unresolved).
    Quadratic(Vec<i64>),
    /// Every prime has rational half-traces; nothing is constrained.
    Unresolved,
}

/// Fields compatible with each entry: m-values of irrational candidates,
/// with rational candidates acting as wildcards. Intersecting over all
/// entries decides End_K.
pub fn base_end_algebra(ds: &TraceDataset) -> Result<BaseEndAlgebra> {
    if ds.entries.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut per_entry: Vec<(BTreeSet<i64>, bool)> = Vec::new();
    for e in &ds.entries {
        let mut ms = BTreeSet::new();
        let mut wild = false;
        for c in &e.candidates {
            if c.is_rational() {
                wild = true;
            } else {
                ms.insert(c.m());
            }
        }
        per_entry.push((ms, wild));
    }
    if per_entry.iter().all(|(_, wild)| *wild) {
        return Ok(BaseEndAlgebra::Unresolved);
    }
    let mut universe = BTreeSet::new();
    for (ms, _) in &per_entry {
        universe.extend(ms.iter().copied());
    }
    let surviving: Vec<i64> = universe
        .into_iter()
        .filter(|m| per_entry.iter().all(|(ms, wild)| *wild || ms.contains(m)))
        .collect();
    if surviving.is_empty() {
        Ok(BaseEndAlgebra::Integers)
    } else {
        Ok(BaseEndAlgebra::Quadratic(surviving))
    }
}

#[derive(Debug, Clone)]
pub struct InferParams {
    /// Accepted extensions with fewer distinct split primes are flagged.
    pub min_split: usize,
    /// Accepted extensions with fewer distinct inert primes are flagged.
    pub min_inert: usize,
    /// Overrides the enumerated candidate list when set.
    pub deltas: Option<Vec<i64>>,
}

impl Default for InferParams {
    fn default() -> Self {
        Self { min_split: 3, min_inert: 3, deltas: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisVerdict {
    Trivial,
    C2,
    C2xC2,
    Inconclusive,
}

impl fmt::Display for GaloisVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaloisVerdict::Trivial => write!(f, "trivial"),
            GaloisVerdict::C2 => write!(f, "C2"),
            GaloisVerdict::C2xC2 => write!(f, "C2xC2"),
            GaloisVerdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// An accepted subextension K(sqrt delta) carrying the field Q(sqrt m) of
/// the two-dimensional components over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Canonical delta modulo squares of K.
    pub delta: i64,
    /// Chosen intermediate field; 0 when no single field could be pinned.
    pub field: i64,
    /// All fields consistent with the split primes (chosen one included).
    pub alternatives: Vec<i64>,
    pub split_primes: Vec<u64>,
    pub inert_primes: Vec<u64>,
    pub low_confidence: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EliminationReason {
    /// An inert prime has nonzero full trace.
    InertTrace,
    /// No single field is compatible with all split primes.
    NoConsistentField,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub delta: i64,
    pub witness: u64,
    pub reason: EliminationReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportFlag {
    /// Only rational delta generate the candidate extensions; generators
    /// involving sqrt(d) are outside the search space.
    RationalDeltaOnly,
    /// The three assigned fields pass the quaternion triple check at the
    /// assumed discriminant.
    TripleConsistent { fields: [i64; 3] },
    /// Three extensions accepted but no consistent field triple exists.
    TripleFailed,
    /// Whether the three accepted deltas multiply into each other.
    DeltaProductClosed(bool),
    /// Acceptance of this delta rests on few split or inert primes.
    LowEvidence { delta: i64 },
    /// Several fields remain possible for this delta.
    FieldAmbiguity { delta: i64, fields: Vec<i64> },
    /// End over the base field is not Z; subextension analysis skipped.
    BaseNotIntegers,
}

impl fmt::Display for ReportFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReportFlag::RationalDeltaOnly => {
                write!(f, "candidate extensions are restricted to rational delta")
            }
            ReportFlag::TripleConsistent { fields } => write!(
                f,
                "fields Q(sqrt {}), Q(sqrt {}), Q(sqrt {}) pass the quaternion triple check",
                fields[0], fields[1], fields[2]
            ),
            ReportFlag::TripleFailed => {
                write!(f, "no field triple consistent with the assumed quaternion algebra")
            }
            ReportFlag::DeltaProductClosed(ok) => {
                if *ok {
                    write!(f, "accepted deltas are closed under products modulo squares")
                } else {
                    write!(f, "accepted deltas are NOT closed under products modulo squares")
                }
            }
            ReportFlag::LowEvidence { delta } => {
                write!(f, "low evidence for delta = {delta} (few split or inert primes)")
            }
            ReportFlag::FieldAmbiguity { delta, fields } => {
                write!(f, "delta = {delta} admits several fields: {fields:?}")
            }
            ReportFlag::BaseNotIntegers => {
                write!(f, "endomorphisms over the base field already exceed Z")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct EndoReport {
    pub end_k: BaseEndAlgebra,
    pub assumed_disc: u64,
    pub gal_lk: GaloisVerdict,
    pub assignments: Vec<Assignment>,
    pub eliminated: Vec<Elimination>,
    pub flags: Vec<ReportFlag>,
}

struct ClassAnalysis {
    delta: i64,
    fields: Vec<i64>,
    split_primes: Vec<u64>,
    inert_primes: Vec<u64>,
}

/// Decides the subextension structure under an assumed quaternion
/// discriminant. Candidate fields are pre-filtered by embeddability into the
/// algebra; candidate deltas are grouped modulo squares of K.
pub fn infer_endo_structure(
    ds: &TraceDataset,
    assumed_disc: u64,
    params: &InferParams,
) -> Result<EndoReport> {
    let base = base_end_algebra(ds)?;
    let mut flags = alloc::vec![ReportFlag::RationalDeltaOnly];
    // Definite quadratic evidence over K itself ends the analysis here. An
    // all-rational dataset is NOT evidence against Z: it is the L = K
    // signature, and the subextension scan below settles it.
    if let BaseEndAlgebra::Quadratic(_) = base {
        flags.push(ReportFlag::BaseNotIntegers);
        return Ok(EndoReport {
            end_k: base,
            assumed_disc,
            gal_lk: GaloisVerdict::Inconclusive,
            assignments: Vec::new(),
            eliminated: Vec::new(),
            flags,
        });
    }

    let raw_deltas: Vec<i64> = match &params.deltas {
        Some(list) => list.clone(),
        None => enumerate_quadratic_exts(ds.d, &ds.ram_set)?.iter().map(|c| c.delta).collect(),
    };
    let mut classes: BTreeMap<i64, ()> = BTreeMap::new();
    for delta in raw_deltas {
        classes.insert(canonical_delta(delta, ds.d), ());
    }
    let mut class_list: Vec<i64> = classes.into_keys().collect();
    class_list.sort_by_key(|x| (x.unsigned_abs(), *x < 0));

    let mut accepted: Vec<ClassAnalysis> = Vec::new();
    let mut eliminated: Vec<Elimination> = Vec::new();

    'class: for &delta in &class_list {
        let mut split_primes = BTreeSet::new();
        let mut inert_primes = BTreeSet::new();
        let mut running: Option<BTreeSet<i64>> = None;
        let mut all_wild = true;
        let mut universe = BTreeSet::new();
        let mut constraints: Vec<(u64, BTreeSet<i64>, bool)> = Vec::new();

        for e in &ds.entries {
            match splits_in_ext(&e.prime, delta) {
                SplitType::Ramified => continue,
                SplitType::Inert => {
                    inert_primes.insert(e.prime.p());
                    if e.frob.s1() != 0 {
                        eliminated.push(Elimination {
                            delta,
                            witness: e.prime.p(),
                            reason: EliminationReason::InertTrace,
                        });
                        continue 'class;
                    }
                }
                SplitType::Split => {
                    split_primes.insert(e.prime.p());
                    let mut ms = BTreeSet::new();
                    let mut wild = false;
                    for c in &e.candidates {
                        if c.is_rational() {
                            wild = true;
                        } else if embeds(c.m(), assumed_disc)? {
                            ms.insert(c.m());
                        }
                    }
                    universe.extend(ms.iter().copied());
                    if !wild {
                        all_wild = false;
                        let next = match &running {
                            None => ms.clone(),
                            Some(r) => r.intersection(&ms).copied().collect(),
                        };
                        if next.is_empty() {
                            eliminated.push(Elimination {
                                delta,
                                witness: e.prime.p(),
                                reason: EliminationReason::NoConsistentField,
                            });
                            continue 'class;
                        }
                        running = Some(next);
                    }
                    constraints.push((e.prime.p(), ms, wild));
                }
            }
        }

        // survivors must be admitted by every split prime (wildcards aside)
        let fields: Vec<i64> = universe
            .into_iter()
            .filter(|m| constraints.iter().all(|(_, ms, wild)| *wild || ms.contains(m)))
            .collect();
        if fields.is_empty() && !all_wild {
            // cannot happen when `running` survived, but keep the honest path
            let witness = constraints.iter().find(|(_, _, w)| !w).map(|(p, _, _)| *p).unwrap_or(0);
            eliminated.push(Elimination {
                delta,
                witness,
                reason: EliminationReason::NoConsistentField,
            });
            continue;
        }
        accepted.push(ClassAnalysis {
            delta,
            fields,
            split_primes: split_primes.into_iter().collect(),
            inert_primes: inert_primes.into_iter().collect(),
        });
    }

    // verdict and field selection
    let mut assignments: Vec<Assignment> = Vec::new();
    let gal_lk = match accepted.len() {
        3 => {
            let choice = resolve_triple(&accepted, assumed_disc)?;
            match choice {
                Some(fields3) => {
                    flags.push(ReportFlag::TripleConsistent { fields: fields3 });
                    let closed = delta_product_closed(&accepted, ds.d);
                    flags.push(ReportFlag::DeltaProductClosed(closed));
                    for (cls, field) in accepted.iter().zip(fields3.iter()) {
                        assignments.push(make_assignment(cls, *field, params));
                    }
                    GaloisVerdict::C2xC2
                }
                None => {
                    flags.push(ReportFlag::TripleFailed);
                    for cls in &accepted {
                        let field = *cls.fields.first().unwrap_or(&0);
                        assignments.push(make_assignment(cls, field, params));
                    }
                    GaloisVerdict::Inconclusive
                }
            }
        }
        1 => {
            let cls = &accepted[0];
            let field = *cls.fields.first().unwrap_or(&0);
            assignments.push(make_assignment(cls, field, params));
            GaloisVerdict::C2
        }
        0 => {
            if ds.entries.iter().all(|e| is_square_type(&e.frob).is_some()) {
                GaloisVerdict::Trivial
            } else {
                GaloisVerdict::Inconclusive
            }
        }
        _ => {
            for cls in &accepted {
                let field = *cls.fields.first().unwrap_or(&0);
                assignments.push(make_assignment(cls, field, params));
            }
            GaloisVerdict::Inconclusive
        }
    };

    for a in &assignments {
        if a.low_confidence {
            flags.push(ReportFlag::LowEvidence { delta: a.delta });
        }
        if a.alternatives.len() > 1 {
            flags.push(ReportFlag::FieldAmbiguity {
                delta: a.delta,
                fields: a.alternatives.clone(),
            });
        }
    }

    // positive fields first, then by absolute value
    assignments.sort_by_key(|a| (a.field < 0, a.field.unsigned_abs(), a.delta));
    eliminated.sort_by_key(|e| (e.delta.unsigned_abs(), e.delta < 0));

    Ok(EndoReport { end_k: base, assumed_disc, gal_lk, assignments, eliminated, flags })
}

fn make_assignment(cls: &ClassAnalysis, field: i64, params: &InferParams) -> Assignment {
    Assignment {
        delta: cls.delta,
        field,
        alternatives: cls.fields.clone(),
        split_primes: cls.split_primes.clone(),
        inert_primes: cls.inert_primes.clone(),
        low_confidence: cls.split_primes.len() < params.min_split
            || cls.inert_primes.len() < params.min_inert,
    }
}

/// Chooses one field per accepted class such that the triple passes the
/// quaternion consistency check; classes are in enumeration order.
fn resolve_triple(accepted: &[ClassAnalysis], disc: u64) -> Result<Option<[i64; 3]>> {
    debug_assert_eq!(accepted.len(), 3);
    for &m1 in &accepted[0].fields {
        for &m2 in &accepted[1].fields {
            for &m3 in &accepted[2].fields {
                if m1 == m2 || m1 == m3 || m2 == m3 {
                    continue;
                }
                if check_triple(m1, m2, m3, disc)? {
                    return Ok(Some([m1, m2, m3]));
                }
            }
        }
    }
    Ok(None)
}

fn delta_product_closed(accepted: &[ClassAnalysis], d: i64) -> bool {
    if accepted.len() != 3 {
        return false;
    }
    let (d1, d2, d3) = (accepted[0].delta, accepted[1].delta, accepted[2].delta);
    match d1.checked_mul(d2) {
        Some(prod) => canonical_delta(squarefree_part(prod), d) == canonical_delta(d3, d),
        None => false,
    }
}

/// The factorization each prime must carry under the inferred structure:
/// rational when the prime splits in every accepted extension, the assigned
/// field's factorization when it splits in exactly one, rational otherwise.
pub fn select_factorizations(
    ds: &TraceDataset,
    report: &EndoReport,
) -> Vec<(DegreeOnePrime, Option<HalfTraces>)> {
    let mut out = Vec::new();
    for e in &ds.entries {
        let selected = if report.assignments.is_empty() {
            rational_candidate(e)
        } else {
            let split_in: Vec<&Assignment> = report
                .assignments
                .iter()
                .filter(|a| splits_in_ext(&e.prime, a.delta) == SplitType::Split)
                .collect();
            if split_in.len() == report.assignments.len() {
                rational_candidate(e)
            } else if split_in.len() == 1 {
                let m = split_in[0].field;
                e.candidates
                    .iter()
                    .find(|c| c.m() == m)
                    .copied()
                    .or_else(|| rational_candidate(e))
            } else {
                rational_candidate(e)
            }
        };
        out.push((e.prime, selected));
    }
    out
}

fn rational_candidate(e: &TraceEntry) -> Option<HalfTraces> {
    e.candidates.iter().find(|c| c.is_rational()).copied()
}

/// Outcome of the inert-prime elimination for L = K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LkOutcome {
    /// Every candidate extension has an inert prime with nonzero trace.
    Confirmed { eliminated: Vec<(i64, u64)> },
    /// Some candidates survive; more primes (or a different argument) needed.
    Inconclusive { survivors: Vec<i64>, eliminated: Vec<(i64, u64)> },
}

/// Checks that no quadratic extension of the base field, unramified outside
/// the ramification set, can carry the endomorphisms: every entry must obey
/// the square-type pattern, and each candidate delta is killed by an inert
/// prime with a != 0 (nonzero trace also rules out the dihedral case).
pub fn verify_l_equals_k(ds: &TraceDataset) -> Result<LkOutcome> {
    if ds.entries.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut a_values: BTreeMap<(u64, u64), i64> = BTreeMap::new();
    for e in &ds.entries {
        match is_square_type(&e.frob) {
            Some(a) => {
                a_values.insert((e.prime.p(), e.prime.r()), a);
            }
            None => return Err(Error::NotSquareType { p: e.prime.p() }),
        }
    }
    let mut classes: BTreeSet<i64> = BTreeSet::new();
    for c in enumerate_quadratic_exts(ds.d, &ds.ram_set)? {
        classes.insert(canonical_delta(c.delta, ds.d));
    }
    let mut eliminated = Vec::new();
    let mut survivors = Vec::new();
    let mut ordered: Vec<i64> = classes.into_iter().collect();
    ordered.sort_by_key(|x| (x.unsigned_abs(), *x < 0));
    for delta in ordered {
        let witness = ds.entries.iter().find(|e| {
            splits_in_ext(&e.prime, delta) == SplitType::Inert
                && a_values[&(e.prime.p(), e.prime.r())] != 0
        });
        match witness {
            Some(e) => eliminated.push((delta, e.prime.p())),
            None => survivors.push(delta),
        }
    }
    if survivors.is_empty() {
        Ok(LkOutcome::Confirmed { eliminated })
    } else {
        Ok(LkOutcome::Inconclusive { survivors, eliminated })
    }
}
