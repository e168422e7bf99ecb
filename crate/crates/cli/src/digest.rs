//! `disc report`: a plain-text digest of verify reports and CSV outputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use disc_core::cubemetric::verify::Claim;
use serde_json::Value;

use crate::output::CliError;

const THRESHOLD_HEADER: [&str; 5] = ["exponent", "r", "exact_intersect", "empirical_intersect", "stderr"];
const TV_HEADER: [&str; 4] = ["N", "r", "tv", "ratio_tv_N2_r3"];
const SAMPLE_HEADER: [&str; 3] = ["trial", "T", "distance"];

/// Verdict cells keyed by (instance, claim order, claim) then column.
type ClaimTable = BTreeMap<(InstanceKey, usize, String), BTreeMap<Column, Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct InstanceKey {
    n: Option<u64>,
    k: Option<u64>,
    circuits: u64,
}

impl InstanceKey {
    fn label(&self) -> String {
        match (self.n, self.k) {
            (Some(n), Some(k)) => format!("B({n},{k})"),
            _ => format!("N={}", self.circuits),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Column {
    Free,
    GeometricHasse,
    GeometricToggle,
}

impl Column {
    fn title(self) -> &'static str {
        match self {
            Column::Free => "free",
            Column::GeometricHasse => "geometric",
            Column::GeometricToggle => "geometric/toggle",
        }
    }
}

#[derive(Default)]
struct Digest {
    claims: ClaimTable,
    seed_notes: Vec<String>,
    thresholds: Vec<(PathBuf, Vec<Vec<String>>)>,
    tvs: Vec<(PathBuf, Vec<Vec<String>>)>,
    samples: Vec<(PathBuf, SampleSummary)>,
}

struct SampleSummary {
    trials: u64,
    r: Option<u64>,
    mean_overlap: f64,
    disjoint: f64,
    identity: bool,
}

fn malformed(path: &Path, msg: impl Into<String>) -> CliError {
    CliError::Input(path.to_path_buf(), msg.into())
}

fn add_verify_report(digest: &mut Digest, path: &Path, json: &Value) -> Result<(), CliError> {
    let field_u64 = |key: &str| json.get(key).and_then(Value::as_u64);
    let circuits = field_u64("N").ok_or_else(|| malformed(path, "verify report without N"))?;
    let key = InstanceKey { n: field_u64("n"), k: field_u64("k"), circuits };
    let column = match (json.get("mode").and_then(Value::as_str), json.get("graph").and_then(Value::as_str)) {
        (Some("free"), _) => Column::Free,
        (Some("geometric"), Some("toggle")) => Column::GeometricToggle,
        (Some("geometric"), _) => Column::GeometricHasse,
        _ => return Err(malformed(path, "verify report without a known mode")),
    };
    let claims = json.get("claims").and_then(Value::as_array).ok_or_else(|| malformed(path, "no claims"))?;
    for claim in claims {
        let name = claim.get("claim").and_then(Value::as_str).ok_or_else(|| malformed(path, "claim without name"))?;
        let verdict =
            claim.get("verdict").and_then(Value::as_str).ok_or_else(|| malformed(path, "claim without verdict"))?;
        let order = Claim::ALL.iter().position(|c| c.name() == name).unwrap_or(Claim::ALL.len());
        digest
            .claims
            .entry((key.clone(), order, name.to_string()))
            .or_default()
            .entry(column)
            .or_default()
            .push(verdict.to_string());
    }
    if let Some(cmp) = json.get("seed_comparison").filter(|v| !v.is_null()) {
        digest.seed_notes.push(format!(
            "{}: seeds {} and {} give {} lattices ({} vs {} elements)",
            key.label(),
            cmp["seed"],
            cmp["other_seed"],
            if cmp["same_labelled_lattice"].as_bool() == Some(true) { "the same labelled" } else { "different" },
            cmp["elements"],
            cmp["other_elements"],
        ));
    }
    Ok(())
}

fn read_csv(path: &Path, text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| malformed(path, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<Vec<Vec<String>>, _>>()
        .map_err(|e| malformed(path, e.to_string()))?;
    Ok((header, rows))
}

fn summarize_samples(path: &Path, rows: &[Vec<String>]) -> Result<SampleSummary, CliError> {
    let parse = |s: &str| s.parse::<u64>().map_err(|_| malformed(path, format!("not a count: {s:?}")));
    let mut total_overlap = 0u64;
    let mut disjoint = 0u64;
    let mut r_values = BTreeSet::new();
    let mut odd_distance = false;
    for row in rows {
        let (t, d) = (parse(&row[1])?, parse(&row[2])?);
        total_overlap += t;
        disjoint += u64::from(t == 0);
        // d = 2r − 2T determines r when it holds.
        odd_distance |= d % 2 == 1;
        r_values.insert((d + 2 * t) / 2);
    }
    let trials = rows.len() as u64;
    let r = (r_values.len() == 1 && !odd_distance).then(|| *r_values.first().unwrap());
    let denom = trials.max(1) as f64;
    Ok(SampleSummary {
        trials,
        r,
        mean_overlap: total_overlap as f64 / denom,
        disjoint: disjoint as f64 / denom,
        identity: r.is_some() || trials == 0,
    })
}

fn add_file(digest: &mut Digest, path: &Path) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    if text.trim_start().starts_with('{') {
        let json: Value = serde_json::from_str(&text).map_err(|e| malformed(path, e.to_string()))?;
        if json.get("claims").is_none() {
            return Err(malformed(path, "JSON input is not a verify report"));
        }
        return add_verify_report(digest, path, &json);
    }
    let (header, rows) = read_csv(path, &text)?;
    if rows.iter().any(|r| r.len() != header.len()) {
        return Err(malformed(path, "ragged CSV"));
    }
    if header == THRESHOLD_HEADER {
        digest.thresholds.push((path.to_path_buf(), rows));
    } else if header == TV_HEADER {
        digest.tvs.push((path.to_path_buf(), rows));
    } else if header == SAMPLE_HEADER {
        let summary = summarize_samples(path, &rows)?;
        digest.samples.push((path.to_path_buf(), summary));
    } else {
        return Err(malformed(path, format!("unrecognized CSV header {header:?}")));
    }
    Ok(())
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].chars().count()).chain([header[c].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header);
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

fn render(digest: &Digest) -> String {
    let mut out = String::new();
    if !digest.claims.is_empty() {
        let columns: BTreeSet<Column> = digest.claims.values().flat_map(|cells| cells.keys().copied()).collect();
        let mut header = vec!["instance".to_string(), "claim".to_string()];
        header.extend(columns.iter().map(|c| c.title().to_string()));
        let rows: Vec<Vec<String>> = digest
            .claims
            .iter()
            .map(|((key, _, claim), cells)| {
                let mut row = vec![key.label(), claim.clone()];
                row.extend(columns.iter().map(|c| cells.get(c).map_or("-".to_string(), |v| v.join("/"))));
                row
            })
            .collect();
        out.push_str("== claims ==\n");
        out.push_str(&table(&header, &rows));
        for note in &digest.seed_notes {
            let _ = writeln!(out, "{note}");
        }
    }
    for (path, rows) in &digest.thresholds {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "== threshold: {} ==", path.display());
        let mut header: Vec<String> = THRESHOLD_HEADER.iter().map(|s| s.to_string()).collect();
        header.push("within_3se".to_string());
        let rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let num = |i: usize| r[i].parse::<f64>().unwrap_or(f64::NAN);
                let within = (num(3) - num(2)).abs() <= 3.0 * num(4);
                let mut row = r.clone();
                row.push(if within { "yes" } else { "no" }.to_string());
                row
            })
            .collect();
        out.push_str(&table(&header, &rows));
    }
    for (path, rows) in &digest.tvs {
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "== tv: {} ==", path.display());
        let header: Vec<String> = TV_HEADER.iter().map(|s| s.to_string()).collect();
        out.push_str(&table(&header, rows));
    }
    if !digest.samples.is_empty() {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str("== samples ==\n");
        let header: Vec<String> =
            ["file", "trials", "r", "mean_T", "P(T=0)", "d=2r-2T"].iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = digest
            .samples
            .iter()
            .map(|(path, s)| {
                vec![
                    path.display().to_string(),
                    s.trials.to_string(),
                    s.r.map_or("-".to_string(), |r| r.to_string()),
                    format!("{:.6}", s.mean_overlap),
                    format!("{:.6}", s.disjoint),
                    if s.identity { "holds" } else { "broken" }.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(&header, &rows));
    }
    out
}

pub fn report(files: &[PathBuf]) -> Result<(), CliError> {
    let mut digest = Digest::default();
    for path in files {
        add_file(&mut digest, path)?;
    }
    print!("{}", render(&digest));
    Ok(())
}
