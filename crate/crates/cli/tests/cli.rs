use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn disc(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_disc")).args(args).current_dir(dir).output().expect("runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = disc(args, dir);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(format!("{name}.schema.json"));
    read_json(&path)
}

fn assert_valid(schema_name: &str, value: &Value) {
    let validator = jsonschema::validator_for(&schema(schema_name)).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:?}");
}

#[test]
fn version_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let version = ok(&["--version"], dir.path());
    assert!(version.contains("format schema 1"), "{version}");
    assert_eq!(code(&disc(&["--help"], dir.path())), 0);
    assert_eq!(code(&disc(&["bogus"], dir.path())), 1);
    assert_eq!(code(&disc(&["johnson", "--n", "5", "--k", "1", "--frobnicate"], dir.path())), 1);
    assert_eq!(code(&disc(&["johnson", "--n", "5"], dir.path())), 1);
    assert_eq!(code(&disc(&["--threads", "0", "johnson", "--n", "5", "--k", "1"], dir.path())), 1);
}

#[test]
fn johnson_stats_json() {
    let dir = tempfile::tempdir().unwrap();
    let stats: Value = serde_json::from_str(&ok(&["johnson", "--n", "6", "--k", "2", "--stats"], dir.path())).unwrap();
    assert_eq!(stats["vertices"], 20);
    assert_eq!(stats["degree"], 9);
    assert_eq!(stats["diameter"], 3);
    assert_eq!(stats["bfs_diameter"], 3);
    assert_valid("johnson-stats", &stats);

    ok(&["johnson", "--n", "5", "--k", "1", "--dot", "j.dot"], dir.path());
    let dot = std::fs::read_to_string(dir.path().join("j.dot")).unwrap();
    assert!(dot.contains("label=\"{1,2}\""));
    assert_eq!(dot.matches(" -- ").count(), 10 * 6 / 2);
}

#[test]
fn lattice_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let line = ok(&["lattice", "--n", "4", "--k", "1", "--seed", "1", "--out", "a.json", "--dot", "a.dot"], dir.path());
    assert_eq!(line.lines().count(), 1);
    ok(&["--threads", "1", "lattice", "--n", "4", "--k", "1", "--seed", "1", "--out", "b.json"], dir.path());
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.json")).unwrap());

    let json = read_json(&dir.path().join("a.json"));
    assert_valid("lattice", &json);
    let elements = json["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 15);
    assert_eq!(json["N"], 6);
    // Sorted by (rank, support as a binary number).
    let keys: Vec<(u64, u64)> = elements
        .iter()
        .map(|e| (e["rank"].as_u64().unwrap(), u64::from_str_radix(e["support"].as_str().unwrap(), 2).unwrap()))
        .collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    assert!(elements.iter().enumerate().all(|(i, e)| e["id"] == i));
    let dot = std::fs::read_to_string(dir.path().join("a.dot")).unwrap();
    assert_eq!(dot.matches("subgraph cluster_rank_").count(), 4);
}

#[test]
fn verify_report_contract() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--n", "3", "--k", "1", "--seed", "1", "--mode", "geometric", "--claims", "all"];
    let mut one = args.to_vec();
    one.extend(["--report", "r1.json"]);
    ok(&one, dir.path());
    let mut four = vec!["--threads", "4"];
    four.extend(args);
    four.extend(["--report", "r4.json"]);
    ok(&four, dir.path());
    let r1 = std::fs::read(dir.path().join("r1.json")).unwrap();
    assert_eq!(r1, std::fs::read(dir.path().join("r4.json")).unwrap());

    let report = read_json(&dir.path().join("r1.json"));
    assert_valid("verify-report", &report);
    let claims = report["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 6);
    assert!(claims.iter().all(|c| c["verdict"] == "pass" || c["verdict"] == "fail"));
    let cover = &claims[0];
    assert_eq!(cover["claim"], "cover");
    assert_eq!(cover["verdict"], "fail");
    assert_eq!(cover["counterexamples"][0]["supports"], serde_json::json!(["001", "111"]));
}

#[test]
fn verify_free_mode_and_seed_comparison() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["verify", "--N", "6", "--mode", "free", "--claims", "cover,distance,median", "--report", "f.json"], dir.path());
    let report = read_json(&dir.path().join("f.json"));
    assert_valid("verify-report", &report);
    assert_eq!(report["vertices"], 64);
    assert!(report["claims"].as_array().unwrap().iter().all(|c| c["verdict"] == "pass"));

    let args = ["verify", "--n", "4", "--k", "1", "--seed", "3", "--mode", "geometric", "--claims", "cover"];
    let mut with_cmp = args.to_vec();
    with_cmp.extend(["--compare-seed", "4", "--report", "c.json"]);
    ok(&with_cmp, dir.path());
    let cmp = &read_json(&dir.path().join("c.json"))["seed_comparison"];
    assert_eq!(cmp["elements"], 15);
    assert_eq!(cmp["same_labelled_lattice"], true);

    assert_eq!(code(&disc(&["verify", "--mode", "free", "--report", "x.json"], dir.path())), 1);
    assert_eq!(code(&disc(&["verify", "--N", "4", "--mode", "free", "--claims", "nope", "--report", "x.json"], dir.path())), 1);
}

#[test]
fn failures_leave_no_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    // Guard: B(9,2) has 84 circuits.
    let out = disc(&["verify", "--n", "9", "--k", "2", "--mode", "geometric", "--report", "big.json"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("84 circuits"));
    // Guard: FREE mode beyond the graph limit.
    let out = disc(&["verify", "--N", "13", "--mode", "free", "--report", "big.json"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(!dir.path().join("big.json").exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
    // I/O failure.
    let out = disc(&["lattice", "--n", "3", "--k", "1", "--seed", "1", "--out", "missing/dir/l.json"], dir.path());
    assert_eq!(code(&out), 2);
}

#[test]
fn geodesics_and_interval_commands() {
    let dir = tempfile::tempdir().unwrap();
    let geo: Value =
        serde_json::from_str(&ok(&["geodesics", "--mode", "free", "--from", "1000", "--to", "0111", "--list"], dir.path()))
            .unwrap();
    assert_valid("geodesics", &geo);
    assert_eq!(geo["count"], 24);
    assert_eq!(geo["linear_extensions"], 24);
    assert_eq!(geo["paths"].as_array().unwrap().len(), 24);

    ok(
        &["geodesics", "--n", "3", "--k", "1", "--seed", "1", "--mode", "geometric", "--from", "000", "--to", "111", "--out", "g.json"],
        dir.path(),
    );
    let geo = read_json(&dir.path().join("g.json"));
    assert_valid("geodesics", &geo);
    assert_eq!(geo["count"], 0);
    let wrong_width = disc(&["geodesics", "--n", "3", "--k", "1", "--mode", "geometric", "--from", "00", "--to", "11"], dir.path());
    assert_eq!(code(&wrong_width), 1);

    let cube: Value =
        serde_json::from_str(&ok(&["interval", "--mode", "free", "--lo", "100000", "--hi", "111100"], dir.path())).unwrap();
    assert_valid("interval", &cube);
    assert_eq!(cube["elements"], 8);
    assert_eq!(cube["passes"], true);
    let not_below = disc(&["interval", "--mode", "free", "--lo", "11", "--hi", "01"], dir.path());
    assert_eq!(code(&not_below), 1);
}

#[test]
fn sampling_commands_write_csv() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["sample", "--N", "1140", "--r", "20", "--trials", "500", "--seed", "42", "--csv", "s1.csv"], dir.path());
    ok(&["--threads", "2", "sample", "--n", "20", "--k", "2", "--r", "20", "--trials", "500", "--seed", "42", "--csv", "s2.csv"], dir.path());
    let s1 = std::fs::read_to_string(dir.path().join("s1.csv")).unwrap();
    assert_eq!(s1, std::fs::read_to_string(dir.path().join("s2.csv")).unwrap());
    let mut lines = s1.lines();
    assert_eq!(lines.next(), Some("trial,T,distance"));
    for (i, line) in lines.enumerate() {
        let cells: Vec<u64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells[0], i as u64);
        assert_eq!(cells[2], 40 - 2 * cells[1]);
    }

    ok(&["threshold", "--N", "10000", "--exponents", "0.3,0.5", "--trials", "300", "--seed", "1", "--csv", "t.csv"], dir.path());
    let t = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(t.starts_with("exponent,r,exact_intersect,empirical_intersect,stderr\n0.3,15,"));
    assert_eq!(t.lines().count(), 3);

    ok(&["tv", "--grid", "100,1000", "--alpha", "0.4", "--csv", "tv.csv"], dir.path());
    let tv = std::fs::read_to_string(dir.path().join("tv.csv")).unwrap();
    let rows: Vec<&str> = tv.lines().collect();
    assert_eq!(rows[0], "N,r,tv,ratio_tv_N2_r3");
    assert!(rows[1].starts_with("100,6,2.5121447673"));
    assert!(rows[2].starts_with("1000,15,4.7527717114"));

    assert_eq!(code(&disc(&["sample", "--N", "5", "--r", "6", "--trials", "1", "--seed", "0", "--csv", "x.csv"], dir.path())), 1);
    assert_eq!(code(&disc(&["threshold", "--N", "100", "--exponents", "1.5", "--trials", "1", "--seed", "0", "--csv", "x.csv"], dir.path())), 1);
}

#[test]
fn report_digest() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(ok(&["report"], dir.path()), "");

    ok(&["verify", "--n", "3", "--k", "1", "--mode", "free", "--claims", "cover,distance", "--report", "free.json"], dir.path());
    let single = ok(&["report", "free.json"], dir.path());
    assert!(single.starts_with("== claims ==\n"));
    assert_eq!(single.lines().count(), 4);

    ok(&["verify", "--n", "3", "--k", "1", "--seed", "1", "--mode", "geometric", "--claims", "cover,distance", "--report", "geo.json"], dir.path());
    ok(&["tv", "--grid", "100", "--alpha", "0.4", "--csv", "tv.csv"], dir.path());
    let both = ok(&["report", "geo.json", "free.json", "tv.csv"], dir.path());
    let header = both.lines().nth(1).unwrap();
    assert!(header.contains("free") && header.contains("geometric"), "{both}");
    let cover_row = both.lines().find(|l| l.contains("cover")).unwrap();
    let cells: Vec<&str> = cover_row.split_whitespace().collect();
    assert_eq!(cells, ["B(3,1)", "cover", "pass", "fail"]);
    assert!(both.contains("== tv: tv.csv =="));
    // Input order does not matter.
    assert_eq!(both, ok(&["report", "tv.csv", "free.json", "geo.json"], dir.path()));

    std::fs::write(dir.path().join("junk.csv"), "a,b\n1,2\n").unwrap();
    assert_eq!(code(&disc(&["report", "junk.csv"], dir.path())), 1);
    assert_eq!(code(&disc(&["report", "absent.json"], dir.path())), 2);
}
