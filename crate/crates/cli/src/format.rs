//! Set files and point-map specifications.
//!
//! A set file is a JSON array of strings, each `"p/q"` or `"n"`:
//!
//! ```json
//! ["0", "1/8", "3/8"]
//! ```
//!
//! Unreduced fractions are reduced on input; a zero denominator, a duplicate
//! value or an empty array is rejected.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use sumset_core::{PointMap, Rational, SortedSet};

use crate::error::{CliError, Result};

fn input_error(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Input { path: path.to_path_buf(), message: message.into() }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

/// Parses set-file contents; `origin` only labels error messages.
pub fn parse_set(text: &str, origin: &Path) -> Result<SortedSet> {
    let raw: Vec<String> = serde_json::from_str(text)
        .map_err(|source| CliError::Json { path: origin.to_path_buf(), source })?;
    set_from_strings(&raw, origin)
}

pub fn read_set(path: &Path) -> Result<SortedSet> {
    let raw: Vec<String> = read_json(path)?;
    set_from_strings(&raw, path)
}

fn set_from_strings(raw: &[String], origin: &Path) -> Result<SortedSet> {
    let values = raw
        .iter()
        .enumerate()
        .map(|(i, s)| {
            s.parse::<Rational>()
                .map_err(|e| input_error(origin, format!("entry {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    SortedSet::new(values).map_err(|e| input_error(origin, e.to_string()))
}

pub fn set_to_strings(set: &SortedSet) -> Vec<String> {
    set.iter().map(Rational::to_string).collect()
}

pub fn write_set(path: &Path, set: &SortedSet) -> Result<()> {
    let text = serde_json::to_string(&set_to_strings(set)).expect("strings serialize");
    fs::write(path, text + "\n").map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// `pow:P`, `poly:c0,c1,...` (ascending degree) or `table:PATH`, where the
/// table file is a JSON array of `["x", "F(x)"]` string pairs.
pub fn parse_point_map(spec: &str) -> Result<PointMap> {
    let usage = || {
        CliError::Usage(format!(
            "invalid --map {spec:?}: expected pow:P, poly:c0,c1,... or table:PATH"
        ))
    };
    let (kind, arg) = spec.split_once(':').ok_or_else(usage)?;
    match kind {
        "pow" => arg.parse::<u32>().map(PointMap::Power).map_err(|_| usage()),
        "poly" => arg
            .split(',')
            .map(|c| c.trim().parse::<Rational>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(PointMap::Polynomial)
            .map_err(|_| usage()),
        "table" => {
            let path = PathBuf::from(arg);
            let rows: Vec<(String, String)> = read_json(&path)?;
            let mut table = BTreeMap::new();
            for (i, (x, y)) in rows.iter().enumerate() {
                let parse = |s: &str| {
                    s.parse::<Rational>()
                        .map_err(|e| input_error(&path, format!("row {i}: {e}")))
                };
                if table.insert(parse(x)?, parse(y)?).is_some() {
                    return Err(input_error(&path, format!("row {i}: point {x} listed twice")));
                }
            }
            Ok(PointMap::Table(table))
        }
        _ => Err(usage()),
    }
}
