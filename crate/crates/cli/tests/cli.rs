use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use sumset_cli::format::{parse_set, read_set};
use sumset_cli::run;
use sumset_core::SortedSet;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn sumset(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sumset").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture { dir: tempfile::tempdir().unwrap() }
    }

    fn set(&self, name: &str, values: &[&str]) -> String {
        self.raw(name, &serde_json::to_string(values).unwrap())
    }

    fn raw(&self, name: &str, text: &str) -> String {
        let path = self.dir.path().join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }
}

#[test]
fn verify_theorem1_example() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "3"]);
    let b = f.set("b.json", &["0", "5", "11"]);
    let r = sumset(&["verify", "--theorem", "1", "--A", &a, "--B", &b]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["theorem"], "T1");
    assert_eq!(v["sizes"]["m"], "9");
    assert_eq!(v["checks"][0]["lhs"], "729");
    assert_eq!(v["checks"][0]["rhs"], "27");
    assert!(r.stderr.contains("m = 9"));
}

#[test]
fn infeasible_sigma_exits_one_with_null() {
    let f = Fixture::new();
    let x = f.set("x.json", &["0", "1", "2"]);
    let y = f.set("y.json", &["0", "3", "6"]);
    let r = sumset(&["sigma", "--A", &x, "--A2", &y]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json(), serde_json::json!({ "sigma": null }));
}

#[test]
fn sigma_find_and_verify() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "3"]);
    let a2 = f.set("a2.json", &["0", "1", "4"]);
    let r = sumset(&["sigma", "--A", &a, "--A2", &a2, "--quiet"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["sigma"], serde_json::json!([1, 2]));
    assert!(r.stderr.is_empty());

    let good = f.raw("good.json", "[1, 2]");
    let r = sumset(&["sigma", "--A", &a, "--A2", &a2, "--verify", &good]);
    assert_eq!((r.code, r.json()["valid"].as_bool()), (0, Some(true)));

    // d = (1, 1) against d' = (3, 3): every σ repeats the pair (1, 3)
    let x = f.set("x.json", &["0", "1", "2"]);
    let y = f.set("y.json", &["0", "3", "6"]);
    let r = sumset(&["sigma", "--A", &x, "--A2", &y, "--verify", &good]);
    assert_eq!((r.code, r.json()["valid"].as_bool()), (1, Some(false)));

    let bad = f.raw("bad.json", "[1, 1]");
    assert_eq!(sumset(&["sigma", "--A", &a, "--A2", &a2, "--verify", &bad]).code, 2);
}

#[test]
fn exhaustive_search_example() {
    let r = sumset(&["search", "--mode", "exhaustive", "--n", "3", "--budget", "20"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["best_size"], 6);
    assert_eq!(v["witness_diffs"], serde_json::json!([1, 2]));
    assert_eq!(v["v"], 1);
    assert_eq!(v["timestamp"], Value::Null);
}

#[test]
fn check_reports_predicates() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1/8", "3/8"]);
    let r = sumset(&["check", "--A", &a]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["differences"], serde_json::json!(["1/8", "1/4"]));
    assert_eq!(v["convex"], true);
    assert_eq!(v["delta"], "2/3");
    assert_eq!(v["sidon"], true);
}

#[test]
fn sumset_pairs_and_census() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "3"]);
    let b = f.set("b.json", &["0", "5", "11"]);

    let r = sumset(&["sumset", "--A", &a, "--B", &b]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["size"], 9);

    let r = sumset(&["pairs", "--A", &a, "--B", &b]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["count"], 6);
    assert_eq!(r.json()["pairs"][0], serde_json::json!({ "i": 1, "j": 1, "pair": ["0", "1"] }));

    let r = sumset(&["pairs", "--A", &a, "--B", &b, "--decode", "6", "8"]);
    assert_eq!(r.json()["decoded"], serde_json::json!([2, 2]));
    let r = sumset(&["pairs", "--A", &a, "--B", &b, "--decode", "0", "3"]);
    assert_eq!((r.code, r.json()["decoded"].clone()), (0, Value::Null));
    assert_eq!(sumset(&["pairs", "--A", &a, "--B", &b, "--decode", "x", "3"]).code, 2);

    for method in ["auto", "run-length", "subset-decode"] {
        let r = sumset(&["census", "--A", &a, "--B", &b, "--t", "2", "--method", method]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let keys = ["\"t\"", "block_sizes", "within_block_pairs", "lower_bound", "upper_bound"];
        let at: Vec<usize> = keys.iter().map(|k| r.stdout.find(k).unwrap()).collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]), "{}", r.stdout);
        let v = r.json();
        assert_eq!(v.as_object().unwrap().len(), 5);
        assert_eq!(v["block_sizes"], serde_json::json!([5, 4]));
        assert_eq!(v["lower_bound"], 3);
    }
}

#[test]
fn repeated_gaps_fail_the_hypothesis() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "2"]);
    let b = f.set("b.json", &["0", "5"]);
    for sub in ["pairs", "census"] {
        let mut args = vec![sub, "--A", &a, "--B", &b];
        if sub == "census" {
            args.extend(["--t", "1"]);
        }
        let r = sumset(&args);
        assert_eq!(r.code, 1, "{sub}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
}

#[test]
fn verify_other_theorems() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "3", "7"]);
    let a2 = f.set("a2.json", &["0", "2", "3", "8"]);
    let b = f.set("b.json", &["0", "5", "11"]);
    let b2 = f.set("b2.json", &["1", "2"]);

    let r = sumset(&["verify", "--theorem", "2", "--A", &a, "--B", &b]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["delta"], "3/4");

    let r = sumset(&["verify", "--theorem", "3", "--A", &a, "--A2", &a2, "--B", &b, "--B2", &b2]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["theorem"], "T3");
    assert_eq!(sumset(&["verify", "--theorem", "3", "--A", &a, "--B", &b]).code, 2);

    let r = sumset(&["verify", "--theorem", "4", "--A", &a]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["main", "special"]);

    // a linear map on an arithmetic progression repeats every gap pair
    let ap = f.set("ap.json", &["0", "1", "2", "3"]);
    let r = sumset(&["verify", "--theorem", "4", "--A", &ap, "--map", "poly:5,2"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["hypothesis_ok"], false);

    let table = f.raw("t.json", r#"[["0","0"],["1","1"],["3","9"],["7","49"]]"#);
    let spec = format!("table:{table}");
    let r = sumset(&["verify", "--theorem", "4", "--A", &a, "--map", &spec]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let short = f.raw("short.json", r#"[["0","0"]]"#);
    let spec = format!("table:{short}");
    assert_eq!(sumset(&["verify", "--theorem", "4", "--A", &a, "--map", &spec]).code, 2);

    assert_eq!(sumset(&["verify", "--theorem", "5", "--A", &a]).code, 2);
}

#[test]
fn construct_both_families() {
    let r = sumset(&["construct", "--sidon", "greedy", "--size", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["S"], serde_json::json!(["1", "2", "4", "8", "13"]));
    assert_eq!(v["k"], "10");
    assert_eq!(v["sumset_size"], "69");
    assert_eq!(v["L"].as_array().unwrap().len(), 10);

    let r = sumset(&["construct", "--sidon", "modular", "--prime", "5"]);
    assert_eq!(r.code, 0, "{}", r.stderr);

    for bad in [
        &["construct", "--sidon", "greedy", "--size", "4"][..],
        &["construct", "--sidon", "greedy", "--prime", "5"],
        &["construct", "--sidon", "modular", "--prime", "9"],
        &["construct", "--sidon", "modular"],
    ] {
        assert_eq!(sumset(bad).code, 2, "{bad:?}");
    }
}

#[test]
fn search_flag_validation() {
    for bad in [
        &["search", "--mode", "exhaustive", "--n", "3"][..],
        &["search", "--mode", "exhaustive", "--n", "4", "--budget", "5"],
        &["search", "--mode", "exhaustive", "--n", "1", "--budget", "5"],
        &["search", "--mode", "exhaustive", "--n", "3", "--budget", "9", "--seed", "1"],
        &["search", "--mode", "anneal", "--n", "3", "--steps", "10"],
        &["search", "--mode", "anneal", "--n", "3", "--steps", "0", "--seed", "1"],
        &["search", "--mode", "anneal", "--n", "3", "--steps", "10", "--seed", "1", "--budget", "4"],
    ] {
        let r = sumset(bad);
        assert_eq!(r.code, 2, "{bad:?}");
        assert!(r.stderr.starts_with("error:"), "{bad:?}: {}", r.stderr);
    }
    let r = sumset(&["search", "--mode", "anneal", "--n", "3", "--steps", "100", "--seed", "18446744073709551615"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["seed"], "18446744073709551615");
    assert_eq!(r.json()["best_size"], 6);
}

#[test]
fn store_round_trip_through_cli() {
    let f = Fixture::new();
    let store = f.path("records.jsonl");
    let store = store.to_str().unwrap();

    let r = sumset(&["records", "--path", store, "--best", "--n", "4"]);
    assert_eq!((r.code, r.json()), (0, Value::Null));

    let searched = sumset(&["search", "--mode", "exhaustive", "--n", "4", "--budget", "20", "--store", store]);
    assert_eq!(searched.code, 0);
    sumset(&["search", "--mode", "anneal", "--n", "5", "--steps", "50", "--seed", "2", "--store", store]);

    let r = sumset(&["records", "--path", store, "--best", "--n", "4"]);
    let mut best = r.json();
    assert!(best["timestamp"].is_u64());
    best["timestamp"] = Value::Null;
    assert_eq!(best, searched.json());

    let all = sumset(&["records", "--path", store]).json();
    assert_eq!(all.as_array().unwrap().len(), 2);
    let fives = sumset(&["records", "--path", store, "--n", "5"]).json();
    assert_eq!(fives.as_array().unwrap().len(), 1);

    assert_eq!(sumset(&["records", "--path", store, "--best"]).code, 2);

    fs::write(store, fs::read_to_string(store).unwrap() + "{\"v\":1}\n").unwrap();
    let r = sumset(&["records", "--path", store]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3"), "{}", r.stderr);
}

#[test]
fn input_errors_name_the_file() {
    let f = Fixture::new();
    let cases = [
        ("dup.json", r#"["1","2/2"]"#),
        ("zero.json", r#"["1/0"]"#),
        ("empty.json", "[]"),
        ("garbage.json", "{"),
        ("numbers.json", "[1,2]"),
    ];
    for (name, text) in cases {
        let path = f.raw(name, text);
        let r = sumset(&["check", "--A", &path]);
        assert_eq!(r.code, 2, "{name}");
        assert!(r.stderr.contains(name), "{name}: {}", r.stderr);
        assert!(r.stdout.is_empty());
    }
    let missing = f.path("missing.json");
    let r = sumset(&["check", "--A", missing.to_str().unwrap()]);
    assert!(r.code == 2 && r.stderr.contains("missing.json"));
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(sumset(&[]).code, 2);
    assert_eq!(sumset(&["frobnicate"]).code, 2);
    assert_eq!(sumset(&["check", "--bogus"]).code, 2);
    let r = sumset(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("search"));
    assert!(r.stderr.is_empty());
}

/// Every emitted set re-parses to the set it came from.
#[test]
fn emitted_sets_round_trip() {
    let f = Fixture::new();
    let a = f.set("a.json", &["-3/4", "0", "2/6", "5"]);
    let b = f.set("b.json", &["1/3", "7"]);
    let original = read_set(Path::new(&a)).unwrap();

    let check = sumset(&["check", "--A", &a]).json();
    let text = serde_json::to_string(&check["set"]).unwrap();
    assert_eq!(parse_set(&text, Path::new("set")).unwrap(), original);

    let c = sumset(&["sumset", "--A", &a, "--B", &b]).json();
    let text = serde_json::to_string(&c["sumset"]).unwrap();
    let expected = sumset_core::sumset::sumset(&original, &read_set(Path::new(&b)).unwrap());
    assert_eq!(parse_set(&text, Path::new("sumset")).unwrap(), expected);

    let built = sumset(&["construct", "--sidon", "greedy", "--size", "7"]).json();
    for key in ["S", "S_scaled", "A"] {
        let text = serde_json::to_string(&built[key]).unwrap();
        let parsed: SortedSet = parse_set(&text, Path::new(key)).unwrap();
        let again = serde_json::to_value(sumset_cli::format::set_to_strings(&parsed)).unwrap();
        assert_eq!(again, built[key], "{key}");
    }
}

/// The compiled binary agrees with the library entry point.
#[test]
fn binary_matches_library() {
    let f = Fixture::new();
    let a = f.set("a.json", &["0", "1", "3"]);
    let b = f.set("b.json", &["0", "5", "11"]);
    let x = f.set("x.json", &["0", "1", "2"]);
    let y = f.set("y.json", &["0", "3", "6"]);
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "--theorem", "1", "--A", &a, "--B", &b],
        vec!["sigma", "--A", &x, "--A2", &y],
        vec!["search", "--mode", "exhaustive", "--n", "3", "--budget", "20"],
        vec!["check", "--A", "/nonexistent/set.json"],
        vec!["nope"],
    ];
    for args in cases {
        let output = Command::new(env!("CARGO_BIN_EXE_sumset")).args(&args).output().unwrap();
        let lib = sumset(&args);
        assert_eq!(output.status.code(), Some(lib.code), "{args:?}");
        assert_eq!(String::from_utf8(output.stdout).unwrap(), lib.stdout, "{args:?}");
    }
}
