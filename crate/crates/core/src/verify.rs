//! The verification engine: scans claims over tree domains and produces
//! deterministic reports with minimal counterexamples.
//!
//! Exhaustive scans walk the Prüfer code space once, collapse it into
//! isomorphism classes, and evaluate every claim once per class; labeled
//! counts and witnesses are carried alongside. Reports are independent of
//! the worker count: all merges are order-free and counterexamples are
//! re-sorted canonically at the end.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_key, CanonicalKey};
use crate::claims::{
    evaluate_claim_with, Claim, ClaimError, ClaimEvaluation, ClaimKind, ClassMinima, Objective,
};
use crate::degree::DegreeSequence;
use crate::enumerate::{self, EnumError, IsoMode, DEFAULT_MAX_N};
use crate::expr::Reading;
use crate::indices::{albertson, TreeStats};
use crate::prufer::{count, PruferCode};
use crate::tree::Tree;

/// Whether a domain ranges over labeled trees or isomorphism classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isomorphism {
    Labeled,
    NonIsomorphic,
}

/// A tree domain for claim verification.
#[derive(Debug, Clone)]
pub enum DomainSpec {
    /// Every tree with `n_min <= n <= n_max`.
    Exhaustive {
        n_min: usize,
        n_max: usize,
        iso: Isomorphism,
    },
    /// Every tree with the given degree multiset.
    WithDegreeSequence {
        ds: DegreeSequence,
        iso: Isomorphism,
    },
    /// Non-isomorphic trees of order `n` with maximum degree exactly `delta`.
    ClassNDelta { n: usize, delta: u32 },
    /// Random labeled trees; requires an explicit seed.
    Sampled { n: usize, samples: u64, seed: u64 },
}

impl DomainSpec {
    pub fn exhaustive(n_max: usize, iso: Isomorphism) -> DomainSpec {
        DomainSpec::Exhaustive {
            n_min: 1,
            n_max,
            iso,
        }
    }

    /// Deterministic description echoed into reports.
    pub fn describe(&self) -> String {
        match self {
            DomainSpec::Exhaustive { n_min, n_max, iso } => {
                format!("{} trees, {n_min} <= n <= {n_max}", iso_word(*iso))
            }
            DomainSpec::WithDegreeSequence { ds, iso } => {
                format!("{} trees with degree sequence ({ds})", iso_word(*iso))
            }
            DomainSpec::ClassNDelta { n, delta } => {
                format!("nonisomorphic trees with n = {n} and maximum degree exactly {delta}")
            }
            DomainSpec::Sampled { n, samples, seed } => {
                format!("random labeled trees, n = {n}, samples = {samples}, seed = {seed}")
            }
        }
    }
}

fn iso_word(iso: Isomorphism) -> &'static str {
    match iso {
        Isomorphism::Labeled => "labeled",
        Isomorphism::NonIsomorphic => "nonisomorphic",
    }
}

/// Verification outcome for one claim over one domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "HOLDS_ON_DOMAIN")]
    HoldsOnDomain,
    #[serde(rename = "FAILS")]
    Fails,
    /// The statement has no unambiguous reading; the report carries the
    /// exhaustively computed facts instead of a pass/fail call.
    #[serde(rename = "INTERPRETATION_REQUIRED")]
    InterpretationRequired,
}

/// One violating tree (or class pair), re-checkable from its edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    pub degrees: Vec<u32>,
    pub lhs: String,
    pub rhs: String,
    /// Present only for classwise comparisons: the other class.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs_degrees: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs_edges: Option<Vec<(u32, u32)>>,
}

/// One reading of a claim whose statement is ambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretation {
    pub name: String,
    pub satisfied: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
}

/// One spine multiset's exhaustive arrangement table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementRecord {
    pub spine_degrees: Vec<u32>,
    pub in_scope: bool,
    /// Every reversal class exactly once, lexicographic order, with irr.
    pub arrangements: Vec<ArrangementEntry>,
    pub argmax: Vec<Vec<u32>>,
    pub argmin: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prescribed: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub prescribed_is_extremal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementEntry {
    pub spine: Vec<u32>,
    pub irr: String,
}

/// The JSON report for one claim over one domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub statement: String,
    pub scope: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub domain: String,
    pub reading: String,
    pub scanned: u64,
    pub in_scope: u64,
    pub satisfied: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interpretations: Option<Vec<Interpretation>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arrangements: Option<Vec<ArrangementRecord>>,
    /// Wall time; excluded from byte-stability comparisons.
    pub wall_ms: u64,
}

impl VerificationReport {
    /// JSON with stable field order; `wall_ms` is a single trailing field.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Copy with `wall_ms` zeroed, for byte-stability comparisons.
    pub fn without_wall(&self) -> VerificationReport {
        let mut r = self.clone();
        r.wall_ms = 0;
        r
    }
}

#[derive(Debug)]
pub enum VerifyError {
    Enumeration(EnumError),
    Claim(ClaimError),
    /// The claim cannot be decided over this domain (for example an
    /// existence claim under sampling, where class minima are unknowable).
    UnsupportedDomain {
        id: String,
        domain: String,
    },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Enumeration(e) => write!(f, "{e}"),
            VerifyError::Claim(e) => write!(f, "{e}"),
            VerifyError::UnsupportedDomain { id, domain } => {
                write!(f, "claim '{id}' cannot be verified over {domain}")
            }
        }
    }
}

impl std::error::Error for VerifyError {}

impl From<EnumError> for VerifyError {
    fn from(e: EnumError) -> Self {
        VerifyError::Enumeration(e)
    }
}

impl From<ClaimError> for VerifyError {
    fn from(e: ClaimError) -> Self {
        VerifyError::Claim(e)
    }
}

/// Knobs for a verification run.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub reading: Reading,
    pub jobs: usize,
    pub max_counterexamples: usize,
    /// Enumeration cap handed to the generators.
    pub cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            reading: Reading::NonDecreasing,
            jobs: 1,
            max_counterexamples: 5,
            cap: DEFAULT_MAX_N,
        }
    }
}

/// One isomorphism class encountered in a domain scan.
struct ClassRecord {
    n: usize,
    rep: Tree,
    stats: TreeStats,
    /// Trees of the domain in this class (1 in non-isomorphic mode).
    size: u64,
    /// Up to `max_counterexamples` smallest Prüfer code indices.
    witnesses: Vec<u128>,
}

struct LocalClass {
    min_code: u128,
    size: u64,
    witnesses: Vec<u128>,
}

fn fold_witnesses(list: &mut Vec<u128>, code: u128, cap: usize) {
    match list.binary_search(&code) {
        Ok(_) => {}
        Err(pos) => {
            if pos < cap {
                list.insert(pos, code);
                list.truncate(cap);
            }
        }
    }
}

/// Scans one order's labeled code space (chunked across `jobs` threads)
/// and returns its classes sorted by canonical key.
fn collect_order_classes(n: usize, cfg: &VerifyConfig) -> Result<Vec<ClassRecord>, VerifyError> {
    // respect the enumeration cap through the labeled iterator
    enumerate::labeled(n, cfg.cap)?;
    if n == 1 {
        let rep = Tree::from_edges(1, &[]).unwrap();
        let stats = TreeStats::new(&rep);
        return Ok(vec![ClassRecord {
            n,
            rep,
            stats,
            size: 1,
            witnesses: vec![],
        }]);
    }
    let total = count(n);
    let jobs = cfg.jobs.max(1);
    let chunk_count = ((jobs * 4) as u128).min(total).max(1);
    let chunk_size = total.div_ceil(chunk_count);
    let chunks: Vec<(u128, u128)> = (0..chunk_count)
        .map(|i| (i * chunk_size, ((i + 1) * chunk_size).min(total)))
        .collect();
    let next = AtomicUsize::new(0);
    let partials: Mutex<Vec<HashMap<CanonicalKey, LocalClass>>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= chunks.len() {
                    break;
                }
                let (start, end) = chunks[i];
                let mut local: HashMap<CanonicalKey, LocalClass> = HashMap::new();
                for idx in start..end {
                    let t = PruferCode::from_index(n, idx).to_tree();
                    let key = canonical_key(&t);
                    let entry = local.entry(key).or_insert(LocalClass {
                        min_code: idx,
                        size: 0,
                        witnesses: Vec::new(),
                    });
                    entry.size += 1;
                    entry.min_code = entry.min_code.min(idx);
                    fold_witnesses(&mut entry.witnesses, idx, cfg.max_counterexamples);
                }
                partials.lock().unwrap().push(local);
            });
        }
    });
    let mut merged: BTreeMap<CanonicalKey, LocalClass> = BTreeMap::new();
    for local in partials.into_inner().unwrap() {
        for (key, cls) in local {
            match merged.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(cls);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let cur = o.get_mut();
                    cur.size += cls.size;
                    cur.min_code = cur.min_code.min(cls.min_code);
                    for w in cls.witnesses {
                        fold_witnesses(&mut cur.witnesses, w, cfg.max_counterexamples);
                    }
                }
            }
        }
    }
    Ok(merged
        .into_values()
        .map(|cls| {
            let rep = PruferCode::from_index(n, cls.min_code).to_tree();
            let stats = TreeStats::new(&rep);
            ClassRecord {
                n,
                rep,
                stats,
                size: cls.size,
                witnesses: cls.witnesses,
            }
        })
        .collect())
}

/// Classes from an explicit tree list; `sized` controls whether class
/// sizes count list members or are fixed at one representative.
fn collect_listed_classes(trees: &[Tree], cfg: &VerifyConfig, sized: bool) -> Vec<ClassRecord> {
    let mut merged: BTreeMap<(usize, CanonicalKey), LocalClass> = BTreeMap::new();
    for t in trees {
        let key = canonical_key(t);
        let code = PruferCode::from_tree(t).ok().map(|c| c.index());
        let entry = merged.entry((t.n(), key)).or_insert(LocalClass {
            min_code: code.unwrap_or(0),
            size: 0,
            witnesses: Vec::new(),
        });
        entry.size += 1;
        if let Some(idx) = code {
            entry.min_code = entry.min_code.min(idx);
            fold_witnesses(&mut entry.witnesses, idx, cfg.max_counterexamples);
        }
    }
    merged
        .into_iter()
        .map(|((n, _key), cls)| {
            let rep = if n == 1 {
                Tree::from_edges(1, &[]).unwrap()
            } else {
                PruferCode::from_index(n, cls.min_code).to_tree()
            };
            let stats = TreeStats::new(&rep);
            ClassRecord {
                n,
                rep,
                stats,
                size: if sized { cls.size } else { 1 },
                witnesses: cls.witnesses,
            }
        })
        .collect()
}

/// Materializes a domain into classes plus the labeled-vs-class mode.
fn collect_domain(
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<(Vec<ClassRecord>, Isomorphism), VerifyError> {
    match domain {
        DomainSpec::Exhaustive { n_min, n_max, iso } => {
            let mut classes = Vec::new();
            for n in *n_min..=*n_max {
                classes.extend(collect_order_classes(n, cfg)?);
            }
            if *iso == Isomorphism::NonIsomorphic {
                for c in &mut classes {
                    c.size = 1;
                    c.witnesses.truncate(1);
                }
            }
            Ok((classes, *iso))
        }
        DomainSpec::WithDegreeSequence { ds, iso } => {
            let mode = match iso {
                Isomorphism::Labeled => IsoMode::Labeled,
                Isomorphism::NonIsomorphic => IsoMode::NonIsomorphic,
            };
            let trees = enumerate::with_degree_sequence(ds, mode)?;
            Ok((
                collect_listed_classes(&trees, cfg, *iso == Isomorphism::Labeled),
                *iso,
            ))
        }
        DomainSpec::ClassNDelta { n, delta } => {
            let trees = enumerate::class_n_delta(*n, *delta, cfg.cap)?;
            Ok((
                collect_listed_classes(&trees, cfg, false),
                Isomorphism::NonIsomorphic,
            ))
        }
        DomainSpec::Sampled { .. } => unreachable!("sampled domains bypass class collection"),
    }
}

/// Class minima needed by existence claims over this class list. For
/// full-order exhaustive domains the scanned classes already cover every
/// (n, Delta) class; other domains enumerate the containing orders.
fn minima_for(
    classes: &[ClassRecord],
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<ClassMinima, VerifyError> {
    let mut minima = ClassMinima::new();
    match domain {
        DomainSpec::Exhaustive { .. } => {
            for c in classes {
                minima.insert_tree(c.n, c.stats.max_degree, &c.stats.sigma);
            }
        }
        _ => {
            let mut orders: Vec<usize> = classes.iter().map(|c| c.n).collect();
            orders.sort_unstable();
            orders.dedup();
            for n in orders {
                for t in enumerate::nonisomorphic(n, cfg.cap)? {
                    let stats = TreeStats::new(&t);
                    minima.insert_tree(stats.n, stats.max_degree, &stats.sigma);
                }
            }
        }
    }
    Ok(minima)
}

/// Exact decimal rendering: integers plain, proper rationals as `p/q`.
pub fn rational_str(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn counterexample_from(tree: &Tree, stats_degrees: &[u32], ev: &ClaimEvaluation) -> Counterexample {
    Counterexample {
        n: tree.n(),
        edges: tree.edges().collect(),
        degrees: stats_degrees.to_vec(),
        lhs: ev.lhs.as_ref().map(rational_str).unwrap_or_default(),
        rhs: ev.rhs.as_ref().map(rational_str).unwrap_or_default(),
        rhs_degrees: None,
        rhs_edges: None,
    }
}

/// Verifies one claim over a domain.
pub fn verify_claim(
    claim: &Claim,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    Ok(verify_claims(std::slice::from_ref(claim), domain, cfg)?
        .pop()
        .expect("one claim in, one report out"))
}

/// Verifies a batch of claims over one domain with a single shared scan.
/// Reports come back in claim order.
pub fn verify_claims(
    claims: &[Claim],
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<Vec<VerificationReport>, VerifyError> {
    let t0 = Instant::now();
    // a FAILS verdict must carry at least one counterexample
    let cfg = &VerifyConfig {
        max_counterexamples: cfg.max_counterexamples.max(1),
        ..cfg.clone()
    };
    let mut reports: Vec<Option<VerificationReport>> = claims.iter().map(|_| None).collect();

    if let DomainSpec::Sampled { n, samples, seed } = domain {
        for (slot, claim) in reports.iter_mut().zip(claims) {
            *slot = Some(verify_sampled(claim, *n, *samples, *seed, domain, cfg)?);
        }
    } else {
        let per_tree: Vec<usize> = claims
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                !matches!(
                    c.kind,
                    ClaimKind::CaterpillarExtremal(_) | ClaimKind::DegreeClassMonotone
                )
            })
            .map(|(i, _)| i)
            .collect();
        let mut classes_and_minima: Option<(Vec<ClassRecord>, Option<ClassMinima>)> = None;
        if !per_tree.is_empty()
            || claims
                .iter()
                .any(|c| matches!(c.kind, ClaimKind::DegreeClassMonotone))
        {
            let (classes, _iso) = collect_domain(domain, cfg)?;
            let need_minima = claims
                .iter()
                .any(|c| matches!(c.kind, ClaimKind::ExistsSigmaReducer));
            let minima = if need_minima {
                Some(minima_for(&classes, domain, cfg)?)
            } else {
                None
            };
            classes_and_minima = Some((classes, minima));
        }
        for (i, claim) in claims.iter().enumerate() {
            let report = match &claim.kind {
                ClaimKind::CaterpillarExtremal(objective) => {
                    arrangement_report(claim, *objective, &default_spine_multisets(), cfg)?
                }
                ClaimKind::DegreeClassMonotone => {
                    let (classes, _) = classes_and_minima.as_ref().unwrap();
                    class_monotone_report(claim, classes, domain, cfg)
                }
                _ => {
                    let (classes, minima) = classes_and_minima.as_ref().unwrap();
                    scan_report(claim, classes, minima.as_ref(), domain, cfg)?
                }
            };
            reports[i] = Some(report);
        }
    }

    let wall_ms = t0.elapsed().as_millis() as u64;
    Ok(reports
        .into_iter()
        .map(|r| {
            let mut r = r.expect("every claim produced a report");
            r.wall_ms = wall_ms;
            r
        })
        .collect())
}

fn report_skeleton(claim: &Claim, domain_desc: String, cfg: &VerifyConfig) -> VerificationReport {
    VerificationReport {
        claim_id: claim.id.clone(),
        statement: claim.statement.clone(),
        scope: claim.scope.label(),
        note: claim.note.clone(),
        domain: domain_desc,
        reading: cfg.reading.label().to_string(),
        scanned: 0,
        in_scope: 0,
        satisfied: 0,
        verdict: Verdict::HoldsOnDomain,
        counterexamples: Vec::new(),
        interpretations: None,
        arrangements: None,
        wall_ms: 0,
    }
}

/// Per-tree claim over a collected class list.
fn scan_report(
    claim: &Claim,
    classes: &[ClassRecord],
    minima: Option<&ClassMinima>,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let mut report = report_skeleton(claim, domain.describe(), cfg);
    struct Violation {
        n: usize,
        class_order: usize,
        codes: Vec<u128>,
        rep_entry: Counterexample,
    }
    let mut violations: Vec<Violation> = Vec::new();
    for (class_order, class) in classes.iter().enumerate() {
        let ev = evaluate_claim_with(claim, &class.rep, &class.stats, minima, cfg.reading)?;
        report.scanned += class.size;
        if !ev.in_scope {
            continue;
        }
        report.in_scope += class.size;
        if ev.holds == Some(true) {
            report.satisfied += class.size;
        } else {
            violations.push(Violation {
                n: class.n,
                class_order,
                codes: class.witnesses.clone(),
                rep_entry: counterexample_from(&class.rep, &class.stats.degrees, &ev),
            });
        }
    }
    // classes are already in (n, key) order within each order block and
    // orders ascend, so violation order is canonical
    violations.sort_by_key(|v| (v.n, v.class_order));
    let mut entries = Vec::new();
    'outer: for v in &violations {
        if v.codes.is_empty() {
            entries.push(v.rep_entry.clone());
            if entries.len() >= cfg.max_counterexamples {
                break 'outer;
            }
            continue;
        }
        for &code in &v.codes {
            let tree = PruferCode::from_index(v.n, code).to_tree();
            let mut entry = v.rep_entry.clone();
            entry.edges = tree.edges().collect();
            entries.push(entry);
            if entries.len() >= cfg.max_counterexamples {
                break 'outer;
            }
        }
    }
    report.verdict = if violations.is_empty() {
        Verdict::HoldsOnDomain
    } else {
        Verdict::Fails
    };
    report.counterexamples = entries;
    Ok(report)
}

/// Sampled scan: per-tree claims only, seed-deterministic.
fn verify_sampled(
    claim: &Claim,
    n: usize,
    samples: u64,
    seed: u64,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if matches!(
        claim.kind,
        ClaimKind::CaterpillarExtremal(_) | ClaimKind::DegreeClassMonotone
    ) {
        return Err(VerifyError::UnsupportedDomain {
            id: claim.id.clone(),
            domain: domain.describe(),
        });
    }
    let minima = if matches!(claim.kind, ClaimKind::ExistsSigmaReducer) {
        if n > cfg.cap {
            return Err(VerifyError::UnsupportedDomain {
                id: claim.id.clone(),
                domain: domain.describe(),
            });
        }
        Some(ClassMinima::for_order(n, cfg.cap)?)
    } else {
        None
    };
    let mut report = report_skeleton(claim, domain.describe(), cfg);
    // memoize by canonical key: claims are isomorphism-invariant
    let mut memo: HashMap<CanonicalKey, (bool, Option<bool>)> = HashMap::new();
    struct Violation {
        key: CanonicalKey,
        order: u64,
        entry: Counterexample,
    }
    let mut violations: Vec<Violation> = Vec::new();
    for (order, tree) in enumerate::random_tree_stream(n, seed)
        .take(samples as usize)
        .enumerate()
    {
        let key = canonical_key(&tree);
        report.scanned += 1;
        let cached = memo.get(&key).copied();
        let (in_scope, holds) = match cached {
            Some(v) => v,
            None => {
                let stats = TreeStats::new(&tree);
                let ev = evaluate_claim_with(claim, &tree, &stats, minima.as_ref(), cfg.reading)?;
                memo.insert(key.clone(), (ev.in_scope, ev.holds));
                if ev.in_scope && ev.holds == Some(false) && violations.len() < 4096 {
                    violations.push(Violation {
                        key: key.clone(),
                        order: order as u64,
                        entry: counterexample_from(&tree, &stats.degrees, &ev),
                    });
                }
                (ev.in_scope, ev.holds)
            }
        };
        if in_scope {
            report.in_scope += 1;
            if holds == Some(true) {
                report.satisfied += 1;
            }
        }
    }
    // in_scope minus satisfied counts repeats of violating shapes too
    violations.sort_by(|a, b| a.key.cmp(&b.key).then(a.order.cmp(&b.order)));
    report.counterexamples = violations
        .into_iter()
        .take(cfg.max_counterexamples)
        .map(|v| v.entry)
        .collect();
    report.verdict = if report.in_scope == report.satisfied {
        Verdict::HoldsOnDomain
    } else {
        Verdict::Fails
    };
    Ok(report)
}

/// The spine multiset family used by arrangement-extremal claims:
/// sizes 3 and 4, degrees in `[2, 5]`, multisets in lexicographic order.
pub fn default_spine_multisets() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for k in [3usize, 4] {
        let mut cur = Vec::with_capacity(k);
        fn go(k: usize, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for d in min..=5 {
                cur.push(d);
                go(k, d, cur, out);
                cur.pop();
            }
        }
        go(k, 2, &mut cur, &mut out);
    }
    out
}

/// Exhaustive arrangement-extremal verification over spine multisets.
pub fn verify_arrangement_extremal(
    claim: &Claim,
    multisets: &[Vec<u32>],
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let ClaimKind::CaterpillarExtremal(objective) = claim.kind else {
        return Err(VerifyError::Claim(ClaimError::NotPerTree {
            id: claim.id.clone(),
        }));
    };
    let t0 = Instant::now();
    let mut report = arrangement_report(claim, objective, multisets, cfg)?;
    report.wall_ms = t0.elapsed().as_millis() as u64;
    Ok(report)
}

fn arrangement_report(
    claim: &Claim,
    objective: Objective,
    multisets: &[Vec<u32>],
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let mut report = report_skeleton(
        claim,
        "caterpillar spine multisets, k in {3, 4}, degrees in [2, 5]".to_string(),
        cfg,
    );
    if multisets != default_spine_multisets().as_slice() {
        report.domain = format!("caterpillar spine multisets: {multisets:?}");
    }
    let mut records = Vec::with_capacity(multisets.len());
    for multiset in multisets {
        if multiset.len() < 3 {
            return Err(VerifyError::Enumeration(EnumError::InvalidSpine {
                reason: "arrangement claims need spine multisets of size >= 3".into(),
            }));
        }
        let arrangements = enumerate::caterpillar_arrangements(multiset)?;
        let entries: Vec<(Vec<u32>, BigInt)> = arrangements
            .iter()
            .map(|(perm, tree)| (perm.clone(), albertson(tree)))
            .collect();
        let best_max = entries.iter().map(|(_, irr)| irr).max().unwrap().clone();
        let best_min = entries.iter().map(|(_, irr)| irr).min().unwrap().clone();
        let argmax: Vec<Vec<u32>> = entries
            .iter()
            .filter(|(_, irr)| *irr == best_max)
            .map(|(p, _)| p.clone())
            .collect();
        let argmin: Vec<Vec<u32>> = entries
            .iter()
            .filter(|(_, irr)| *irr == best_min)
            .map(|(p, _)| p.clone())
            .collect();
        let mut sorted = multiset.clone();
        sorted.sort_unstable();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        let (in_scope, prescribed, prescribed_is_extremal) = match objective {
            // the maximizing ordering is stated ambiguously; report facts only
            Objective::Max => (true, None, None),
            // reading: spine sorted descending, which is the reversal class
            // of the ascending tuple; out of scope unless degrees distinct
            Objective::Min => {
                if distinct {
                    let hit = argmin.contains(&sorted);
                    (true, Some(sorted.clone()), Some(hit))
                } else {
                    (false, None, None)
                }
            }
        };
        report.scanned += 1;
        if in_scope {
            report.in_scope += 1;
            if prescribed_is_extremal == Some(true) {
                report.satisfied += 1;
            }
        }
        records.push(ArrangementRecord {
            spine_degrees: multiset.clone(),
            in_scope,
            arrangements: entries
                .into_iter()
                .map(|(spine, irr)| ArrangementEntry {
                    spine,
                    irr: irr.to_string(),
                })
                .collect(),
            argmax,
            argmin,
            prescribed,
            prescribed_is_extremal,
        });
    }
    report.arrangements = Some(records);
    report.verdict = Verdict::InterpretationRequired;
    Ok(report)
}

/// Classwise irr monotonicity across equal-order degree-sequence classes,
/// under both the min-over-class and max-over-class readings.
fn class_monotone_report(
    claim: &Claim,
    classes: &[ClassRecord],
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> VerificationReport {
    let mut report = report_skeleton(claim, domain.describe(), cfg);
    struct Agg {
        degrees: Vec<u32>,
        min_irr: BigInt,
        min_rep: usize,
        max_irr: BigInt,
        max_rep: usize,
    }
    // group classes by (n, degree sequence); class lists are key-sorted so
    // representative choice is deterministic
    let mut by_order: BTreeMap<usize, BTreeMap<Vec<u32>, Agg>> = BTreeMap::new();
    for (idx, class) in classes.iter().enumerate() {
        let group = by_order.entry(class.n).or_default();
        let irr = &class.stats.irr;
        group
            .entry(class.stats.degrees.clone())
            .and_modify(|agg| {
                if *irr < agg.min_irr {
                    agg.min_irr = irr.clone();
                    agg.min_rep = idx;
                }
                if *irr > agg.max_irr {
                    agg.max_irr = irr.clone();
                    agg.max_rep = idx;
                }
            })
            .or_insert_with(|| Agg {
                degrees: class.stats.degrees.clone(),
                min_irr: irr.clone(),
                min_rep: idx,
                max_irr: irr.clone(),
                max_rep: idx,
            });
    }
    let mut pair_total: u64 = 0;
    let mut results: Vec<(String, u64, Vec<Counterexample>)> = Vec::new();
    for (name, pick) in [("min_over_class", 0usize), ("max_over_class", 1usize)] {
        let mut violations: Vec<Counterexample> = Vec::new();
        let mut violating_pairs: u64 = 0;
        let mut pairs: u64 = 0;
        for group in by_order.values() {
            let aggs: Vec<&Agg> = group.values().collect();
            for a in &aggs {
                for b in &aggs {
                    if std::ptr::eq(*a, *b) {
                        continue;
                    }
                    // equal orders force equal degree sums, so the premise
                    // sum(D_a) <= sum(D_b) always holds
                    pairs += 1;
                    let (irr_a, rep_a) = match pick {
                        0 => (&a.min_irr, a.min_rep),
                        _ => (&a.max_irr, a.max_rep),
                    };
                    let (irr_b, rep_b) = match pick {
                        0 => (&b.min_irr, b.min_rep),
                        _ => (&b.max_irr, b.max_rep),
                    };
                    if irr_a > irr_b {
                        violating_pairs += 1;
                        if violations.len() < cfg.max_counterexamples {
                            let ta = &classes[rep_a];
                            let tb = &classes[rep_b];
                            violations.push(Counterexample {
                                n: ta.n,
                                edges: ta.rep.edges().collect(),
                                degrees: a.degrees.clone(),
                                lhs: irr_a.to_string(),
                                rhs: irr_b.to_string(),
                                rhs_degrees: Some(b.degrees.clone()),
                                rhs_edges: Some(tb.rep.edges().collect()),
                            });
                        }
                    }
                }
            }
        }
        pair_total = pairs;
        results.push((name.to_string(), pairs - violating_pairs, violations));
    }
    report.scanned = pair_total;
    report.in_scope = pair_total;
    report.satisfied = results.iter().map(|(_, s, _)| *s).min().unwrap_or(0);
    report.interpretations = Some(
        results
            .into_iter()
            .map(|(name, satisfied, counterexamples)| Interpretation {
                name,
                satisfied,
                verdict: if counterexamples.is_empty() {
                    Verdict::HoldsOnDomain
                } else {
                    Verdict::Fails
                },
                counterexamples,
            })
            .collect(),
    );
    report.verdict = Verdict::InterpretationRequired;
    report
}

/// The smallest violating tree under `(n, canonical key)` order for
/// exhaustive domains, or the first seed-order violation for sampled ones.
pub fn find_counterexample(
    claim: &Claim,
    domain: &DomainSpec,
    cfg: &VerifyConfig,
) -> Result<Option<(Tree, ClaimEvaluation)>, VerifyError> {
    if matches!(
        claim.kind,
        ClaimKind::CaterpillarExtremal(_) | ClaimKind::DegreeClassMonotone
    ) {
        return Err(VerifyError::Claim(ClaimError::NotPerTree {
            id: claim.id.clone(),
        }));
    }
    match domain {
        DomainSpec::Sampled { n, samples, seed } => {
            let minima = if matches!(claim.kind, ClaimKind::ExistsSigmaReducer) {
                if *n > cfg.cap {
                    return Err(VerifyError::UnsupportedDomain {
                        id: claim.id.clone(),
                        domain: domain.describe(),
                    });
                }
                Some(ClassMinima::for_order(*n, cfg.cap)?)
            } else {
                None
            };
            for tree in enumerate::random_tree_stream(*n, *seed).take(*samples as usize) {
                let stats = TreeStats::new(&tree);
                let ev = evaluate_claim_with(claim, &tree, &stats, minima.as_ref(), cfg.reading)?;
                if ev.in_scope && ev.holds == Some(false) {
                    return Ok(Some((tree, ev)));
                }
            }
            Ok(None)
        }
        // labeled and class modes share the first violating tree: every
        // labeled member of a class violates together
        DomainSpec::Exhaustive {
            n_min,
            n_max,
            iso: _,
        } => {
            for n in *n_min..=*n_max {
                let classes = collect_order_classes(n, cfg)?;
                let minima = if matches!(claim.kind, ClaimKind::ExistsSigmaReducer) {
                    let mut m = ClassMinima::new();
                    for c in &classes {
                        m.insert_tree(c.n, c.stats.max_degree, &c.stats.sigma);
                    }
                    Some(m)
                } else {
                    None
                };
                for class in &classes {
                    let ev = evaluate_claim_with(
                        claim,
                        &class.rep,
                        &class.stats,
                        minima.as_ref(),
                        cfg.reading,
                    )?;
                    if ev.in_scope && ev.holds == Some(false) {
                        return Ok(Some((class.rep.clone(), ev)));
                    }
                }
            }
            Ok(None)
        }
        _ => {
            let (classes, _) = collect_domain(domain, cfg)?;
            let minima = if matches!(claim.kind, ClaimKind::ExistsSigmaReducer) {
                Some(minima_for(&classes, domain, cfg)?)
            } else {
                None
            };
            for class in &classes {
                let ev = evaluate_claim_with(
                    claim,
                    &class.rep,
                    &class.stats,
                    minima.as_ref(),
                    cfg.reading,
                )?;
                if ev.in_scope && ev.holds == Some(false) {
                    return Ok(Some((class.rep.clone(), ev)));
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::{find, registry};

    fn cfg() -> VerifyConfig {
        VerifyConfig::default()
    }

    fn noniso(n_max: usize) -> DomainSpec {
        DomainSpec::exhaustive(n_max, Isomorphism::NonIsomorphic)
    }

    #[test]
    fn sigma_identity_scans_48_classes() {
        let claims = registry();
        let claim = find(&claims, "sigma_identity").unwrap();
        let report = verify_claim(claim, &noniso(8), &cfg()).unwrap();
        assert_eq!(report.scanned, 48);
        assert_eq!(report.in_scope, 48);
        assert_eq!(report.satisfied, 48);
        assert_eq!(report.verdict, Verdict::HoldsOnDomain);
        assert!(report.counterexamples.is_empty());
    }

    #[test]
    fn prozagn1_fails_with_p2_first() {
        let claims = registry();
        let claim = find(&claims, "prozagn1_lower").unwrap();
        let report = verify_claim(claim, &noniso(6), &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let first = &report.counterexamples[0];
        assert_eq!(first.n, 2);
        assert_eq!((first.lhs.as_str(), first.rhs.as_str()), ("0", "2"));
        // the order-3 path appears next with the spec'd values
        let second = &report.counterexamples[1];
        assert_eq!(second.n, 3);
        assert_eq!((second.lhs.as_str(), second.rhs.as_str()), ("2", "8"));
    }

    #[test]
    fn star_max_holds_on_order_seven() {
        let claims = registry();
        let claim = find(&claims, "star_max_irr").unwrap();
        let report = verify_claim(
            claim,
            &DomainSpec::Exhaustive {
                n_min: 7,
                n_max: 7,
                iso: Isomorphism::NonIsomorphic,
            },
            &cfg(),
        )
        .unwrap();
        assert_eq!(report.scanned, 11);
        assert_eq!(report.verdict, Verdict::HoldsOnDomain);
    }

    #[test]
    fn find_counterexample_examples() {
        let claims = registry();
        let cfg = cfg();
        // mainalb3: the 1-vertex tree is the smallest violation
        let claim = find(&claims, "mainalb3_formula").unwrap();
        let (tree, ev) = find_counterexample(claim, &noniso(9), &cfg)
            .unwrap()
            .expect("violations exist");
        assert_eq!(tree.n(), 1);
        assert_eq!(ev.rhs.map(|r| rational_str(&r)), Some("-4".to_string()));
        // sigma_identity: none
        let claim = find(&claims, "sigma_identity").unwrap();
        assert!(find_counterexample(claim, &noniso(9), &cfg)
            .unwrap()
            .is_none());
    }

    #[test]
    fn labeled_and_class_counts_agree() {
        let claims = registry();
        let claim = find(&claims, "sigma_identity").unwrap();
        let labeled = verify_claim(
            claim,
            &DomainSpec::exhaustive(5, Isomorphism::Labeled),
            &cfg(),
        )
        .unwrap();
        // 1 + 1 + 3 + 16 + 125
        assert_eq!(labeled.scanned, 146);
        assert_eq!(labeled.satisfied, 146);
    }

    #[test]
    fn reports_are_schedule_independent() {
        let claims = registry();
        let claim = find(&claims, "mainalb3_formula").unwrap();
        let mut one = cfg();
        one.jobs = 1;
        let mut eight = cfg();
        eight.jobs = 8;
        let domain = DomainSpec::exhaustive(7, Isomorphism::Labeled);
        let a = verify_claim(claim, &domain, &one).unwrap();
        let b = verify_claim(claim, &domain, &eight).unwrap();
        assert_eq!(
            serde_json::to_string(&a.without_wall()).unwrap(),
            serde_json::to_string(&b.without_wall()).unwrap()
        );
        assert_eq!(a.verdict, Verdict::Fails);
    }

    #[test]
    fn arrangement_tables_for_small_multiset() {
        let claims = registry();
        let hy1 = find(&claims, "hy1_caterpillar_max").unwrap();
        let report =
            verify_arrangement_extremal(hy1, &[vec![2, 3, 4], vec![3, 3, 3]], &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::InterpretationRequired);
        let records = report.arrangements.as_ref().unwrap();
        assert_eq!(records.len(), 2);
        let table = &records[0];
        assert_eq!(table.arrangements.len(), 3);
        // irr values computed by hand: 14, 14, 16
        let irrs: Vec<&str> = table.arrangements.iter().map(|a| a.irr.as_str()).collect();
        assert_eq!(irrs, vec!["14", "14", "16"]);
        assert_eq!(table.argmax, vec![vec![3, 2, 4]]);
        assert_eq!(table.argmin, vec![vec![2, 3, 4], vec![2, 4, 3]]);
        // single reversal class for the symmetric multiset
        assert_eq!(records[1].arrangements.len(), 1);
    }

    #[test]
    fn hy2_prescribed_ordering_is_tracked() {
        let claims = registry();
        let hy2 = find(&claims, "hy2_caterpillar_min").unwrap();
        let report =
            verify_arrangement_extremal(hy2, &[vec![2, 3, 4], vec![3, 3, 3]], &cfg()).unwrap();
        let records = report.arrangements.as_ref().unwrap();
        assert!(records[0].in_scope);
        assert_eq!(records[0].prescribed, Some(vec![2, 3, 4]));
        assert_eq!(records[0].prescribed_is_extremal, Some(true));
        // repeated degrees are out of scope for the minimum hypothesis
        assert!(!records[1].in_scope);
        assert_eq!(report.scanned, 2);
        assert_eq!(report.in_scope, 1);
        assert_eq!(report.satisfied, 1);
    }

    #[test]
    fn class_monotone_fails_both_ways_at_order_four() {
        let claims = registry();
        let claim = find(&claims, "pro_se1_monotone").unwrap();
        let report = verify_claim(claim, &noniso(4), &cfg()).unwrap();
        assert_eq!(report.verdict, Verdict::InterpretationRequired);
        let interps = report.interpretations.as_ref().unwrap();
        assert_eq!(interps.len(), 2);
        // order 4 has classes (1,1,1,3) irr 6 and (1,1,2,2) irr 2: the
        // ordered pair (star-class, path-class) violates either reading
        for interp in interps {
            assert_eq!(interp.verdict, Verdict::Fails);
            let c = &interp.counterexamples[0];
            assert_eq!(c.n, 4);
            assert_eq!(c.degrees, vec![1, 1, 1, 3]);
            assert_eq!(c.lhs, "6");
            assert_eq!(c.rhs, "2");
            assert_eq!(c.rhs_degrees.as_ref().unwrap(), &vec![1, 1, 2, 2]);
        }
        // 2 ordered pairs at order 4, none at smaller orders
        assert_eq!(report.scanned, 2);
    }

    #[test]
    fn sampled_domain_is_deterministic() {
        let claims = registry();
        let claim = find(&claims, "thmalbn1_lower").unwrap();
        let domain = DomainSpec::Sampled {
            n: 30,
            samples: 500,
            seed: 42,
        };
        let a = verify_claim(claim, &domain, &cfg()).unwrap();
        let b = verify_claim(claim, &domain, &cfg()).unwrap();
        assert_eq!(a.without_wall(), b.without_wall());
        assert_eq!(a.scanned, 500);
        // extremal claims cannot be decided by sampling
        let hy1 = find(&claims, "hy1_caterpillar_max").unwrap();
        assert!(matches!(
            verify_claim(hy1, &domain, &cfg()),
            Err(VerifyError::UnsupportedDomain { .. })
        ));
    }

    #[test]
    fn degree_sequence_domain_handles_the_single_vertex() {
        let claims = registry();
        let claim = find(&claims, "mainalb3_formula").unwrap();
        let domain = DomainSpec::WithDegreeSequence {
            ds: crate::degree::DegreeSequence::new(vec![0]).unwrap(),
            iso: Isomorphism::Labeled,
        };
        let report = verify_claim(claim, &domain, &cfg()).unwrap();
        assert_eq!(report.scanned, 1);
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.counterexamples.len(), 1);
        assert_eq!(report.counterexamples[0].n, 1);
        assert!(report.counterexamples[0].edges.is_empty());
    }

    #[test]
    fn failing_verdicts_always_carry_a_counterexample() {
        let claims = registry();
        let claim = find(&claims, "mainalb3_formula").unwrap();
        let mut config = cfg();
        config.max_counterexamples = 0;
        let report = verify_claim(claim, &noniso(5), &config).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.counterexamples.len(), 1, "cap is clamped to one");
    }

    #[test]
    fn report_round_trips_through_json() {
        let claims = registry();
        let claim = find(&claims, "mainalb3_formula").unwrap();
        let report = verify_claim(claim, &noniso(5), &cfg()).unwrap();
        let json = report.to_json();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn every_registry_claim_verifies_over_small_domain() {
        let claims = registry();
        let reports = verify_claims(&claims, &noniso(6), &cfg()).unwrap();
        assert_eq!(reports.len(), claims.len());
        for (claim, report) in claims.iter().zip(&reports) {
            assert_eq!(claim.id, report.claim_id);
        }
    }
}
