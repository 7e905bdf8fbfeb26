//! `treeirr`: compute degree-based tree indices, generate tree families,
//! enumerate tree domains, and verify claims with exact arithmetic.
//!
//! Exit codes: 0 success (and verdict HOLDS for verify/search), 1 a verify
//! or search found violations, 2 usage error, 3 malformed input. Data goes
//! to stdout, progress to stderr.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use treeirr::claims::{self, Claim};
use treeirr::degree::DegreeSequence;
use treeirr::enumerate::{self, IsoMode, DEFAULT_MAX_N, HARD_MAX_N};
use treeirr::expr::Reading;
use treeirr::family::FamilySpec;
use treeirr::indices::TreeStats;
use treeirr::verify::{
    find_counterexample, rational_str, verify_claims, DomainSpec, Isomorphism, Verdict,
    VerifyConfig, VerifyError,
};
use treeirr::Tree;

#[derive(Parser)]
#[command(
    name = "treeirr",
    version,
    about = "Exact degree-based tree invariants and claim verification",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the indices of one tree.
    Compute {
        /// Family spec such as star:5, path:9, starlike:3,2,2,
        /// caterpillar:4,3,5, doublestar:2,2.
        #[arg(long, conflicts_with = "input")]
        family: Option<String>,
        /// Edge-list file: first line n, then one "u v" pair per line.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Comma-separated subset of irr,irr_T,M1,M2,F,sigma.
        #[arg(long)]
        indices: Option<String>,
    },
    /// Print a family tree in edge-list format.
    Gen {
        #[arg(long)]
        family: String,
    },
    /// Stream trees of one order (or count them).
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One representative per isomorphism class instead of all
        /// labeled trees.
        #[arg(long)]
        nonisomorphic: bool,
        /// Restrict to this degree multiset, e.g. 1,1,2,2.
        #[arg(long, value_name = "D,D,...")]
        degree_seq: Option<String>,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
        /// Raise the enumeration cap from 9 to the hard ceiling 10.
        #[arg(long)]
        force: bool,
    },
    /// Verify claims over an exhaustive tree domain.
    Verify {
        /// A claim id from the registry (or the claims file).
        #[arg(long, conflicts_with = "all")]
        claim: Option<String>,
        /// Verify every claim.
        #[arg(long)]
        all: bool,
        /// Largest order scanned; the domain is 1 <= n <= nmax.
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        /// Scan isomorphism classes instead of labeled trees.
        #[arg(long)]
        nonisomorphic: bool,
        /// Directory for one JSON report per claim (summary goes to
        /// stdout); without it the reports print as a JSON array.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Degree indexing convention: nondecreasing (default, d_1 is the
        /// minimum) or nonincreasing.
        #[arg(long, default_value = "nondecreasing")]
        reading: String,
        /// Worker threads for the domain scan; reports do not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Keep at most this many counterexamples per report.
        #[arg(long, default_value_t = 5)]
        max_counterexamples: usize,
        /// Extra user-defined claims.
        #[arg(long)]
        claims_file: Option<PathBuf>,
        /// Raise the enumeration cap from 9 to the hard ceiling 10.
        #[arg(long)]
        force: bool,
    },
    /// Hunt for a counterexample among random labeled trees.
    Search {
        #[arg(long)]
        claim: String,
        /// Order of the sampled trees.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        /// Sampling is deterministic in this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "nondecreasing")]
        reading: String,
        #[arg(long)]
        claims_file: Option<PathBuf>,
    },
    /// List the built-in claims.
    Registry,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl fmt::Display) -> CliError {
        CliError {
            code: 2,
            message: message.to_string(),
        }
    }

    fn input(message: impl fmt::Display) -> CliError {
        CliError {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> CliError {
        match &e {
            VerifyError::Enumeration(_) | VerifyError::UnsupportedDomain { .. } => {
                CliError::usage(e)
            }
            VerifyError::Claim(claims::ClaimError::UnknownClaim(_))
            | VerifyError::Claim(claims::ClaimError::NotPerTree { .. }) => CliError::usage(e),
            VerifyError::Claim(_) => CliError::input(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Compute {
            family,
            input,
            indices,
        } => cmd_compute(family, input, indices),
        Command::Gen { family } => cmd_gen(&family),
        Command::Enumerate {
            n,
            nonisomorphic,
            degree_seq,
            count_only,
            force,
        } => cmd_enumerate(n, nonisomorphic, degree_seq, count_only, force),
        Command::Verify {
            claim,
            all,
            nmax,
            nonisomorphic,
            report,
            reading,
            jobs,
            max_counterexamples,
            claims_file,
            force,
        } => cmd_verify(
            claim,
            all,
            nmax,
            nonisomorphic,
            report,
            &reading,
            jobs,
            max_counterexamples,
            claims_file,
            force,
        ),
        Command::Search {
            claim,
            n,
            samples,
            seed,
            reading,
            claims_file,
        } => cmd_search(&claim, n, samples, seed, &reading, claims_file),
        Command::Registry => cmd_registry(),
    }
}

fn load_tree(family: Option<String>, input: Option<PathBuf>) -> Result<Tree, CliError> {
    match (family, input) {
        (Some(spec), None) => {
            let spec = FamilySpec::parse(&spec).map_err(CliError::input)?;
            spec.build().map_err(CliError::input)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
            Tree::parse_edge_list(&text)
                .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
        }
        _ => Err(CliError::usage(
            "exactly one of --family or --input is required",
        )),
    }
}

#[derive(Serialize)]
struct ComputeOutput {
    n: usize,
    m: usize,
    degrees: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    irr: Option<String>,
    #[serde(rename = "irr_T", skip_serializing_if = "Option::is_none")]
    irr_t: Option<String>,
    #[serde(rename = "M1", skip_serializing_if = "Option::is_none")]
    m1: Option<String>,
    #[serde(rename = "M2", skip_serializing_if = "Option::is_none")]
    m2: Option<String>,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<String>,
}

fn cmd_compute(
    family: Option<String>,
    input: Option<PathBuf>,
    subset: Option<String>,
) -> Result<u8, CliError> {
    const ALL: [&str; 6] = ["irr", "irr_T", "M1", "M2", "F", "sigma"];
    let wanted: Vec<&str> = match &subset {
        None => ALL.to_vec(),
        Some(list) => {
            let mut names = Vec::new();
            for name in list.split(',').map(str::trim) {
                match ALL.iter().find(|&&a| a == name) {
                    Some(&canonical) => names.push(canonical),
                    None => {
                        return Err(CliError::usage(format!(
                            "unknown index '{name}' (expected one of {})",
                            ALL.join(",")
                        )))
                    }
                }
            }
            names
        }
    };
    let tree = load_tree(family, input)?;
    let stats = TreeStats::new(&tree);
    let pick = |name: &str, value: String| wanted.contains(&name).then_some(value);
    let out = ComputeOutput {
        n: stats.n,
        m: stats.m,
        degrees: stats.degrees.clone(),
        irr: pick("irr", stats.irr.to_string()),
        irr_t: pick("irr_T", stats.irr_t.to_string()),
        m1: pick("M1", stats.m1.to_string()),
        m2: pick("M2", stats.m2.to_string()),
        f: pick("F", stats.forgotten.to_string()),
        sigma: pick("sigma", stats.sigma.to_string()),
    };
    println!("{}", serde_json::to_string(&out).unwrap());
    Ok(0)
}

fn cmd_gen(family: &str) -> Result<u8, CliError> {
    let spec = FamilySpec::parse(family).map_err(CliError::input)?;
    let tree = spec.build().map_err(CliError::input)?;
    print!("{}", tree.to_edge_list());
    Ok(0)
}

fn edge_line(t: &Tree) -> String {
    t.edges()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_enumerate(
    n: usize,
    nonisomorphic: bool,
    degree_seq: Option<String>,
    count_only: bool,
    force: bool,
) -> Result<u8, CliError> {
    let cap = if force { HARD_MAX_N } else { DEFAULT_MAX_N };
    let trees: Vec<Tree> = match &degree_seq {
        Some(text) => {
            let ds = DegreeSequence::parse(text).map_err(CliError::input)?;
            if ds.n() != n {
                return Err(CliError::usage(format!(
                    "--degree-seq has {} entries but --n is {n}",
                    ds.n()
                )));
            }
            if n > cap {
                return Err(CliError::usage(format!(
                    "order {n} exceeds the enumeration cap {cap} (use --force up to {HARD_MAX_N})"
                )));
            }
            let mode = if nonisomorphic {
                IsoMode::NonIsomorphic
            } else {
                IsoMode::Labeled
            };
            enumerate::with_degree_sequence(&ds, mode).map_err(CliError::input)?
        }
        None => {
            if count_only && !nonisomorphic {
                // count without materializing; the cap still applies
                enumerate::labeled(n, cap).map_err(CliError::usage)?;
                println!("{}", enumerate::labeled_count(n));
                return Ok(0);
            }
            if nonisomorphic {
                enumerate::nonisomorphic(n, cap).map_err(CliError::usage)?
            } else {
                enumerate::labeled(n, cap)
                    .map_err(CliError::usage)?
                    .collect()
            }
        }
    };
    if count_only {
        println!("{}", trees.len());
    } else {
        for t in &trees {
            println!("{}", edge_line(t));
        }
    }
    Ok(0)
}

fn resolve_claims(
    selector: Option<String>,
    all: bool,
    claims_file: Option<PathBuf>,
) -> Result<Vec<Claim>, CliError> {
    let mut pool = claims::registry();
    if let Some(path) = &claims_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        let extra = claims::parse_claims_file(&text).map_err(CliError::input)?;
        for claim in &extra {
            if pool.iter().any(|c| c.id == claim.id) {
                return Err(CliError::input(format!(
                    "claims file redefines built-in claim '{}'",
                    claim.id
                )));
            }
        }
        pool.extend(extra);
    }
    match (selector, all) {
        (None, true) => Ok(pool),
        (Some(id), false) => {
            let claim = claims::find(&pool, &id).map_err(CliError::usage)?;
            Ok(vec![claim.clone()])
        }
        _ => Err(CliError::usage("pass exactly one of --claim <id> or --all")),
    }
}

fn parse_reading(text: &str) -> Result<Reading, CliError> {
    Reading::parse(text)
        .ok_or_else(|| CliError::usage("--reading must be nondecreasing or nonincreasing"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    claim: Option<String>,
    all: bool,
    nmax: usize,
    nonisomorphic: bool,
    report_dir: Option<PathBuf>,
    reading: &str,
    jobs: usize,
    max_counterexamples: usize,
    claims_file: Option<PathBuf>,
    force: bool,
) -> Result<u8, CliError> {
    let selected = resolve_claims(claim, all, claims_file)?;
    let cfg = VerifyConfig {
        reading: parse_reading(reading)?,
        jobs: jobs.max(1),
        max_counterexamples,
        cap: if force { HARD_MAX_N } else { DEFAULT_MAX_N },
    };
    if nmax > cfg.cap {
        return Err(CliError::usage(format!(
            "--nmax {nmax} exceeds the enumeration cap {} (use --force up to {HARD_MAX_N})",
            cfg.cap
        )));
    }
    let iso = if nonisomorphic {
        Isomorphism::NonIsomorphic
    } else {
        Isomorphism::Labeled
    };
    let domain = DomainSpec::exhaustive(nmax, iso);
    eprintln!(
        "verifying {} claim(s) over {} with {} job(s)",
        selected.len(),
        domain.describe(),
        cfg.jobs
    );
    let reports = verify_claims(&selected, &domain, &cfg)?;
    let all_hold = reports.iter().all(|r| r.verdict == Verdict::HoldsOnDomain);
    match &report_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
            for report in &reports {
                let file = dir.join(format!("{}.json", report.claim_id));
                std::fs::write(&file, report.to_json())
                    .map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
            }
            println!(
                "{:<28} {:<24} {:>10} {:>10} {:>10}",
                "claim", "verdict", "scanned", "in_scope", "satisfied"
            );
            for r in &reports {
                let verdict = serde_json::to_value(r.verdict).unwrap();
                println!(
                    "{:<28} {:<24} {:>10} {:>10} {:>10}",
                    r.claim_id,
                    verdict.as_str().unwrap(),
                    r.scanned,
                    r.in_scope,
                    r.satisfied
                );
            }
        }
        None => {
            let body: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).unwrap())
                .collect();
            println!("{}", serde_json::to_string_pretty(&body).unwrap());
        }
    }
    Ok(if all_hold { 0 } else { 1 })
}

#[derive(Serialize)]
struct SearchOutput {
    found: bool,
    samples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(u32, u32)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rhs: Option<String>,
}

fn cmd_search(
    claim_id: &str,
    n: usize,
    samples: u64,
    seed: Option<u64>,
    reading: &str,
    claims_file: Option<PathBuf>,
) -> Result<u8, CliError> {
    let Some(seed) = seed else {
        return Err(CliError::usage(
            "sampled search requires an explicit --seed",
        ));
    };
    if n < 1 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let pool = resolve_claims(Some(claim_id.to_string()), false, claims_file)?;
    let claim = &pool[0];
    let cfg = VerifyConfig {
        reading: parse_reading(reading)?,
        ..VerifyConfig::default()
    };
    let domain = DomainSpec::Sampled { n, samples, seed };
    let outcome = find_counterexample(claim, &domain, &cfg)?;
    let out = match &outcome {
        Some((tree, ev)) => SearchOutput {
            found: true,
            samples,
            n: Some(tree.n()),
            edges: Some(tree.edges().collect()),
            degrees: Some(DegreeSequence::from_tree(tree).as_slice().to_vec()),
            lhs: ev.lhs.as_ref().map(rational_str),
            rhs: ev.rhs.as_ref().map(rational_str),
        },
        None => SearchOutput {
            found: false,
            samples,
            n: None,
            edges: None,
            degrees: None,
            lhs: None,
            rhs: None,
        },
    };
    println!("{}", serde_json::to_string(&out).unwrap());
    Ok(if outcome.is_some() { 1 } else { 0 })
}

#[derive(Serialize)]
struct RegistryEntry {
    id: String,
    kind: &'static str,
    scope: String,
    statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
}

fn cmd_registry() -> Result<u8, CliError> {
    let entries: Vec<RegistryEntry> = claims::registry()
        .into_iter()
        .map(|c| RegistryEntry {
            kind: c.kind_label(),
            scope: c.scope.label(),
            id: c.id,
            statement: c.statement,
            note: c.note,
        })
        .collect();
    println!("{}", serde_json::to_string_pretty(&entries).unwrap());
    Ok(0)
}
