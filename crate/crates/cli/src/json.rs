//! JSON shapes for everything the CLI prints or stores.
//!
//! Rationals are `"p/q"` strings and anything that can outgrow 64 bits is a
//! decimal string. Field order is fixed by the struct definitions, which keeps
//! output byte-stable.

use serde::{Deserialize, Serialize};
use sumset_core::bounds::{BoundReport, Check};
use sumset_core::ruzsa::{RuzsaArtifacts, TightnessReport};
use sumset_core::search::{SearchMode, SearchRecord};
use sumset_core::sumset::{BlockCensus, PairWitness};
use sumset_core::{Rational, SortedSet};

use crate::format::set_to_strings;

fn strings<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    values.into_iter().map(Rational::to_string).collect()
}

#[derive(Serialize)]
pub struct CheckOutput {
    pub set: Vec<String>,
    pub size: usize,
    pub differences: Vec<String>,
    pub convex: bool,
    pub distinct_consecutive_differences: bool,
    /// Absent for singletons.
    pub delta: Option<String>,
    pub sidon: bool,
}

impl CheckOutput {
    pub fn new(a: &SortedSet) -> Self {
        CheckOutput {
            set: set_to_strings(a),
            size: a.len(),
            differences: a
                .consecutive_differences()
                .map(|d| strings(d.as_slice()))
                .unwrap_or_default(),
            convex: a.is_convex(),
            distinct_consecutive_differences: a.has_distinct_consecutive_differences(),
            delta: a.delta_ratio().ok().map(|d| d.to_string()),
            sidon: a.is_sidon(),
        }
    }
}

#[derive(Serialize)]
pub struct SumsetOutput {
    pub sumset: Vec<String>,
    pub size: usize,
}

#[derive(Serialize)]
pub struct PairOutput {
    pub i: usize,
    pub j: usize,
    pub pair: [String; 2],
}

impl From<&PairWitness> for PairOutput {
    fn from(w: &PairWitness) -> Self {
        PairOutput { i: w.i, j: w.j, pair: [w.low.to_string(), w.high.to_string()] }
    }
}

#[derive(Serialize)]
pub struct PairsOutput {
    pub count: usize,
    pub pairs: Vec<PairOutput>,
}

#[derive(Serialize)]
pub struct DecodeOutput {
    pub pair: [String; 2],
    /// `[i, j]`, or null when the values are not a pair.
    pub decoded: Option<[usize; 2]>,
}

#[derive(Serialize)]
pub struct CensusOutput {
    pub t: usize,
    pub block_sizes: Vec<usize>,
    pub within_block_pairs: u64,
    pub lower_bound: i64,
    pub upper_bound: u64,
}

impl From<&BlockCensus> for CensusOutput {
    fn from(c: &BlockCensus) -> Self {
        CensusOutput {
            t: c.t,
            block_sizes: c.block_sizes.clone(),
            within_block_pairs: c.within_block_pairs,
            lower_bound: c.lower_bound,
            upper_bound: c.upper_bound,
        }
    }
}

#[derive(Serialize)]
pub struct SigmaOutput {
    pub sigma: Option<Vec<usize>>,
}

#[derive(Serialize)]
pub struct SigmaVerifyOutput {
    pub sigma: Vec<usize>,
    pub valid: bool,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub name: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub op: &'static str,
    pub pass: bool,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson {
            name: c.name,
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
            op: c.op.symbol(),
            pass: c.pass,
        }
    }
}

#[derive(Serialize)]
pub struct ConstructOutput {
    #[serde(rename = "S")]
    pub s: Vec<String>,
    #[serde(rename = "S_scaled")]
    pub s_scaled: Vec<String>,
    #[serde(rename = "L")]
    pub l: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<String>,
    pub k: String,
    pub sumset_size: String,
    pub checks: Vec<CheckJson>,
}

impl ConstructOutput {
    pub fn new(art: &RuzsaArtifacts, report: &TightnessReport) -> Self {
        ConstructOutput {
            s: set_to_strings(&art.sidon),
            s_scaled: set_to_strings(&art.scaled),
            l: strings(art.listing.entries()),
            a: set_to_strings(&art.set),
            k: art.k.to_string(),
            sumset_size: art.sumset_size.to_string(),
            checks: report.checks.iter().map(CheckJson::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SizesJson {
    pub k: String,
    pub l: String,
    pub l2: Option<String>,
    pub m: String,
    pub m2: Option<String>,
}

#[derive(Serialize)]
pub struct EmpiricalJson {
    pub num: String,
    pub den: String,
}

#[derive(Serialize)]
pub struct BoundReportJson {
    pub theorem: String,
    pub hypothesis_ok: bool,
    pub sizes: SizesJson,
    pub checks: Vec<CheckJson>,
    pub empirical: Option<EmpiricalJson>,
    pub delta: Option<String>,
}

impl From<&BoundReport> for BoundReportJson {
    fn from(r: &BoundReport) -> Self {
        BoundReportJson {
            theorem: format!("T{}", r.theorem.number()),
            hypothesis_ok: r.hypothesis_ok,
            sizes: SizesJson {
                k: r.sizes.k.to_string(),
                l: r.sizes.l.to_string(),
                l2: r.sizes.l2.map(|v| v.to_string()),
                m: r.sizes.m.to_string(),
                m2: r.sizes.m2.map(|v| v.to_string()),
            },
            checks: r.checks.iter().map(CheckJson::from).collect(),
            empirical: r
                .empirical
                .as_ref()
                .map(|e| EmpiricalJson { num: e.num.to_string(), den: e.den.to_string() }),
            delta: r.delta.as_ref().map(Rational::to_string),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeJson {
    Exhaustive,
    Anneal,
}

/// One line of the record store. `seed` is a string so that the full `u64`
/// range survives tools that read JSON numbers as doubles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordJson {
    pub v: u32,
    pub n: usize,
    pub best_size: u64,
    pub witness_diffs: Vec<u64>,
    pub mode: ModeJson,
    pub width_budget: Option<u64>,
    pub gcd_normalized: bool,
    pub complete: bool,
    pub seed: Option<String>,
    pub steps: Option<u64>,
    pub timestamp: Option<u64>,
}

pub const RECORD_VERSION: u32 = 1;

impl From<&SearchRecord> for RecordJson {
    fn from(r: &SearchRecord) -> Self {
        RecordJson {
            v: RECORD_VERSION,
            n: r.n,
            best_size: r.best_size,
            witness_diffs: r.witness_diffs.clone(),
            mode: match r.mode {
                SearchMode::Exhaustive => ModeJson::Exhaustive,
                SearchMode::Anneal => ModeJson::Anneal,
            },
            width_budget: r.width_budget,
            gcd_normalized: r.gcd_normalized,
            complete: r.complete,
            seed: r.seed.map(|s| s.to_string()),
            steps: r.steps,
            timestamp: r.timestamp,
        }
    }
}

impl TryFrom<RecordJson> for SearchRecord {
    type Error = String;

    fn try_from(r: RecordJson) -> Result<Self, String> {
        if r.v != RECORD_VERSION {
            return Err(format!("unsupported schema version {}", r.v));
        }
        let seed = r
            .seed
            .map(|s| s.parse::<u64>().map_err(|_| format!("bad seed {s:?}")))
            .transpose()?;
        // guards set reconstruction, which assumes positive gaps
        if r.witness_diffs.contains(&0)
            || r.witness_diffs.iter().try_fold(0u64, |acc, &d| acc.checked_add(d)).is_none()
        {
            return Err("witness_diffs must be positive and sum within 64 bits".into());
        }
        Ok(SearchRecord {
            n: r.n,
            best_size: r.best_size,
            witness_diffs: r.witness_diffs,
            mode: match r.mode {
                ModeJson::Exhaustive => SearchMode::Exhaustive,
                ModeJson::Anneal => SearchMode::Anneal,
            },
            width_budget: r.width_budget,
            gcd_normalized: r.gcd_normalized,
            complete: r.complete,
            seed,
            steps: r.steps,
            timestamp: r.timestamp,
        })
    }
}
