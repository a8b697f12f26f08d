//! Argument parsing and dispatch.
//!
//! Every subcommand prints one pretty-printed JSON document on standard
//! output and, unless `--quiet`, a short summary on standard error. Exit
//! codes: 0 when everything checked holds, 1 when a hypothesis or bound
//! fails, 2 for usage and input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sumset_core::bounds::{
    check_theorem1, check_theorem2, check_theorem3, check_theorem4, BoundReport,
};
use sumset_core::ruzsa::{build_ruzsa_set, greedy_sidon, modular_sidon, tightness_report};
use sumset_core::search::{anneal_min_sumset, exhaustive_min_sumset, SearchRecord};
use sumset_core::sigma::{find_sigma, verify_sigma};
use sumset_core::sumset::{block_pair_census_with, decode_pair, enumerate_pairs, sumset, CensusMethod};
use sumset_core::{Rational, SigmaMap, SortedSet};

use crate::error::{CliError, Result};
use crate::format::{parse_point_map, read_set, set_to_strings};
use crate::json::{
    BoundReportJson, CensusOutput, CheckOutput, ConstructOutput, DecodeOutput, PairOutput,
    PairsOutput, RecordJson, SigmaOutput, SigmaVerifyOutput, SumsetOutput,
};
use crate::store::RecordStore;

#[derive(Parser, Debug)]
#[command(name = "sumset", version, about = "Exact sumset computations on finite sets of rationals")]
struct Cli {
    /// Suppress the human-readable summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SetA {
    /// Set file: JSON array of "p/q" strings.
    #[arg(long = "A", value_name = "FILE")]
    a: PathBuf,
}

#[derive(Args, Debug)]
struct SetsAB {
    #[arg(long = "A", value_name = "FILE")]
    a: PathBuf,
    #[arg(long = "B", value_name = "FILE")]
    b: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural predicates of one set.
    Check(SetA),
    /// The sumset A + B.
    Sumset(SetsAB),
    /// Pairs {a_i + b_j, a_{i+1} + b_j}, or decode one pair.
    Pairs {
        #[command(flatten)]
        sets: SetsAB,
        /// Decode the two sums instead of listing every pair.
        #[arg(long, num_args = 2, value_names = ["LOW", "HIGH"], allow_hyphen_values = true)]
        decode: Option<Vec<String>>,
    },
    /// Pairs falling inside t interval blocks of A + B.
    Census {
        #[command(flatten)]
        sets: SetsAB,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Find or verify a gap matching between A and A2.
    Sigma {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "A2", value_name = "FILE")]
        a2: PathBuf,
        /// Verify the σ in this file (JSON array of 1-based indices).
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
    },
    /// Build the Sidon-set construction and check its size sandwich.
    Construct {
        #[arg(long, value_enum)]
        sidon: Sidon,
        /// Number of greedy Sidon elements (odd).
        #[arg(long)]
        size: Option<usize>,
        /// Prime for the modular family (odd).
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Check one of the four sumset inequalities on concrete sets.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        theorem: u8,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        /// Defaults to F(A) for theorem 4.
        #[arg(long = "B", value_name = "FILE")]
        b: Option<PathBuf>,
        #[arg(long = "A2", value_name = "FILE")]
        a2: Option<PathBuf>,
        #[arg(long = "B2", value_name = "FILE")]
        b2: Option<PathBuf>,
        /// Theorem 4 only; defaults to A.
        #[arg(long = "C", value_name = "FILE")]
        c: Option<PathBuf>,
        /// Theorem 4 map: pow:P, poly:c0,c1,... or table:PATH.
        #[arg(long, default_value = "pow:2")]
        map: String,
    },
    /// Search for convex n-sets with small A + A.
    Search {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        /// Exhaustive: maximum width of the set.
        #[arg(long)]
        budget: Option<u64>,
        /// Anneal: objective evaluations, including the start.
        #[arg(long)]
        steps: Option<u64>,
        /// Anneal: RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Append the result to this JSON-lines store.
        #[arg(long, value_name = "FILE")]
        store: Option<PathBuf>,
    },
    /// Read a record store.
    Records {
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
        /// Only the best record for --n.
        #[arg(long, requires = "n")]
        best: bool,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Auto,
    RunLength,
    SubsetDecode,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sidon {
    Greedy,
    Modular,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Anneal,
}

/// What a subcommand produced: the JSON document, a summary and the status.
struct Outcome {
    json: String,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn new(value: &impl Serialize, summary: String, ok: bool) -> Self {
        let json = serde_json::to_string_pretty(value).expect("output serializes");
        Outcome { json, summary, ok }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            if writeln!(out, "{}", outcome.json).is_err() {
                return 2;
            }
            if !cli.quiet {
                let _ = writeln!(err, "{}", outcome.summary);
            }
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Check(SetA { a }) => {
            let a = read_set(&a)?;
            let out = CheckOutput::new(&a);
            let summary = format!(
                "{} elements; convex: {}; distinct gaps: {}; Sidon: {}",
                out.size,
                yes_no(out.convex),
                yes_no(out.distinct_consecutive_differences),
                yes_no(out.sidon)
            );
            Ok(Outcome::new(&out, summary, true))
        }
        Command::Sumset(SetsAB { a, b }) => {
            let (a, b) = (read_set(&a)?, read_set(&b)?);
            let c = sumset(&a, &b);
            let summary = format!("|A| = {}, |B| = {}, |A + B| = {}", a.len(), b.len(), c.len());
            let out = SumsetOutput { sumset: set_to_strings(&c), size: c.len() };
            Ok(Outcome::new(&out, summary, true))
        }
        Command::Pairs { sets, decode } => {
            let (a, b) = (read_set(&sets.a)?, read_set(&sets.b)?);
            match decode {
                Some(values) => {
                    let parse = |s: &str| {
                        s.parse::<Rational>()
                            .map_err(|e| CliError::Usage(format!("--decode {s:?}: {e}")))
                    };
                    let (c, c2) = (parse(&values[0])?, parse(&values[1])?);
                    let decoded = decode_pair(&a, &b, &c, &c2)?;
                    let summary = match decoded {
                        Some((i, j)) => format!("{{{c}, {c2}}} is the pair (i, j) = ({i}, {j})"),
                        None => format!("{{{c}, {c2}}} is not a pair"),
                    };
                    let out = DecodeOutput {
                        pair: [c.to_string(), c2.to_string()],
                        decoded: decoded.map(|(i, j)| [i, j]),
                    };
                    Ok(Outcome::new(&out, summary, true))
                }
                None => {
                    let pairs = enumerate_pairs(&a, &b)?;
                    let summary = format!(
                        "{} pairs = (k - 1) * l with k = {}, l = {}",
                        pairs.len(),
                        a.len(),
                        b.len()
                    );
                    let out = PairsOutput {
                        count: pairs.len(),
                        pairs: pairs.iter().map(PairOutput::from).collect(),
                    };
                    Ok(Outcome::new(&out, summary, true))
                }
            }
        }
        Command::Census { sets, t, method } => {
            let (a, b) = (read_set(&sets.a)?, read_set(&sets.b)?);
            let method = match method {
                Method::Auto => CensusMethod::Auto,
                Method::RunLength => CensusMethod::RunLength,
                Method::SubsetDecode => CensusMethod::SubsetDecode,
            };
            let census = block_pair_census_with(&a, &b, t, method)?;
            let ok = census.bounds_hold();
            let summary = format!(
                "t = {}: {} <= {} <= {} [{}]",
                census.t,
                census.lower_bound,
                census.within_block_pairs,
                census.upper_bound,
                if ok { "pass" } else { "FAIL" }
            );
            Ok(Outcome::new(&CensusOutput::from(&census), summary, ok))
        }
        Command::Sigma { a, a2, verify } => {
            let (a, a2) = (read_set(&a)?, read_set(&a2)?);
            match verify {
                Some(path) => {
                    let image: Vec<usize> = crate::format::read_json(&path)?;
                    let sigma = SigmaMap::new(image).map_err(|e| CliError::Input {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                    let valid = verify_sigma(&a, &a2, &sigma)?;
                    let summary = format!("sigma {}", if valid { "valid" } else { "INVALID" });
                    let out = SigmaVerifyOutput { sigma: sigma.image().to_vec(), valid };
                    Ok(Outcome::new(&out, summary, valid))
                }
                None => {
                    let sigma = find_sigma(&a, &a2)?;
                    let ok = sigma.is_some();
                    let summary = match &sigma {
                        Some(s) => format!("sigma = {:?}", s.image()),
                        None => "no valid sigma exists".to_string(),
                    };
                    let out = SigmaOutput { sigma: sigma.map(|s| s.image().to_vec()) };
                    Ok(Outcome::new(&out, summary, ok))
                }
            }
        }
        Command::Construct { sidon, size, prime } => {
            let s = match (sidon, size, prime) {
                (Sidon::Greedy, Some(n), None) => greedy_sidon(n)?,
                (Sidon::Modular, None, Some(p)) => modular_sidon(p)?,
                (Sidon::Greedy, _, _) => {
                    return Err(CliError::Usage("--sidon greedy takes --size and not --prime".into()))
                }
                (Sidon::Modular, _, _) => {
                    return Err(CliError::Usage("--sidon modular takes --prime and not --size".into()))
                }
            };
            let art = build_ruzsa_set(&s)?;
            let report = tightness_report(&art);
            let mut summary = format!("|S| = {}, k = {}, |A + [k]| = {}", s.len(), art.k, art.sumset_size);
            for c in &report.checks {
                summary.push_str(&format!("\n  {c}"));
            }
            Ok(Outcome::new(&ConstructOutput::new(&art, &report), summary, report.all_pass()))
        }
        Command::Verify { theorem, a, b, a2, b2, c, map } => {
            let report = verify(theorem, a, b, a2, b2, c, &map)?;
            let summary = bound_summary(&report);
            Ok(Outcome::new(&BoundReportJson::from(&report), summary, report.verified()))
        }
        Command::Search { mode, n, budget, steps, seed, store } => {
            let record = match mode {
                Mode::Exhaustive => {
                    if steps.is_some() || seed.is_some() {
                        return Err(CliError::Usage("--steps and --seed are for --mode anneal".into()));
                    }
                    let budget = budget
                        .ok_or_else(|| CliError::Usage("--mode exhaustive needs --budget".into()))?;
                    exhaustive_min_sumset(n, budget)?
                }
                Mode::Anneal => {
                    if budget.is_some() {
                        return Err(CliError::Usage("--budget is for --mode exhaustive".into()));
                    }
                    let (Some(steps), Some(seed)) = (steps, seed) else {
                        return Err(CliError::Usage("--mode anneal needs --steps and --seed".into()));
                    };
                    anneal_min_sumset(n, steps, seed)?
                }
            };
            let mut summary = record_summary(&record);
            if let Some(path) = store {
                // the stamped copy goes to the store only, so stdout stays reproducible
                let store = RecordStore::new(path);
                store.append(&record)?;
                summary.push_str(&format!("\nappended to {}", store.path().display()));
            }
            Ok(Outcome::new(&RecordJson::from(&record), summary, true))
        }
        Command::Records { path, best, n } => {
            let store = RecordStore::new(path);
            if best {
                let n = n.expect("clap enforces --n with --best");
                let record = store.best(n)?;
                let summary = match &record {
                    Some(r) => record_summary(r),
                    None => format!("no records for n = {n}"),
                };
                Ok(Outcome::new(&record.as_ref().map(RecordJson::from), summary, true))
            } else {
                let records: Vec<RecordJson> = store
                    .read_all()?
                    .iter()
                    .filter(|r| n.is_none_or(|n| r.n == n))
                    .map(RecordJson::from)
                    .collect();
                let summary = format!("{} records", records.len());
                Ok(Outcome::new(&records, summary, true))
            }
        }
    }
}

fn verify(
    theorem: u8,
    a: PathBuf,
    b: Option<PathBuf>,
    a2: Option<PathBuf>,
    b2: Option<PathBuf>,
    c: Option<PathBuf>,
    map: &str,
) -> Result<BoundReport> {
    let require = |p: Option<PathBuf>, flag: &str| -> Result<SortedSet> {
        let p = p.ok_or_else(|| CliError::Usage(format!("--theorem {theorem} needs --{flag}")))?;
        read_set(&p)
    };
    let refuse = |present: bool, flag: &str| -> Result<()> {
        if present {
            return Err(CliError::Usage(format!("--{flag} is not used by --theorem {theorem}")));
        }
        Ok(())
    };
    let a = read_set(&a)?;
    match theorem {
        1 | 2 => {
            refuse(a2.is_some(), "A2")?;
            refuse(b2.is_some(), "B2")?;
            refuse(c.is_some(), "C")?;
            let b = require(b, "B")?;
            if theorem == 1 {
                Ok(check_theorem1(&a, &b))
            } else {
                Ok(check_theorem2(&a, &b)?)
            }
        }
        3 => {
            refuse(c.is_some(), "C")?;
            let b = require(b, "B")?;
            let a2 = require(a2, "A2")?;
            let b2 = require(b2, "B2")?;
            Ok(check_theorem3(&a, &a2, &b, &b2)?)
        }
        _ => {
            refuse(a2.is_some(), "A2")?;
            refuse(b2.is_some(), "B2")?;
            let map = parse_point_map(map)?;
            let b = match b {
                Some(p) => read_set(&p)?,
                None => a.apply_map(&map)?,
            };
            let c = match c {
                Some(p) => read_set(&p)?,
                None => a.clone(),
            };
            Ok(check_theorem4(&a, &b, &c, &map)?)
        }
    }
}

fn bound_summary(r: &BoundReport) -> String {
    let mut s = format!(
        "T{}: k = {}, l = {}, m = {}; hypothesis {}",
        r.theorem.number(),
        r.sizes.k,
        r.sizes.l,
        r.sizes.m,
        if r.hypothesis_ok { "holds" } else { "FAILS" }
    );
    if let Some(d) = &r.delta {
        s.push_str(&format!("; delta = {d}"));
    }
    for c in &r.checks {
        s.push_str(&format!("\n  {c}"));
    }
    s
}

fn record_summary(r: &SearchRecord) -> String {
    format!(
        "n = {}: |A + A| = {} with gaps {:?}{}",
        r.n,
        r.best_size,
        r.witness_diffs,
        if r.complete { " (complete within budget)" } else { "" }
    )
}
