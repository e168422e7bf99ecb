use std::path::Path;
use std::time::Instant;

use disc_core::circuits::{binomial, johnson_stats, JohnsonGraph, JOHNSON_BFS_LIMIT};
use disc_core::cubemetric::verify::{Claim, SeedComparison, Verifier};
use disc_core::cubemetric::{geodesics as count_geodesics, GraphReading, Mode};
use disc_core::exactgeom::ArrangementSpec;
use disc_core::json::to_canonical_string;
use disc_core::lattice::{build_lattice, Lattice, Support};
use disc_core::randover::{
    sample_overlaps, support_size, threshold_sweep, tv_distance, ExperimentConfig,
};
use disc_core::DiscError;
use serde_json::json;

use crate::output::{write_atomic, write_csv, CliError};
use crate::{
    GeodesicsArgs, GraphArg, InstanceArgs, IntervalArgs, JohnsonArgs, LatticeArgs, ModeArg, SampleArgs,
    ThresholdArgs, TvArgs, VerifyArgs,
};

type CliResult = Result<(), CliError>;

fn write_text(path: &Path, text: &str) -> CliResult {
    write_atomic(path, text.as_bytes())
}

fn reading(graph: GraphArg) -> GraphReading {
    match graph {
        GraphArg::Hasse => GraphReading::Hasse,
        GraphArg::Toggle => GraphReading::Toggle,
    }
}

fn require(value: Option<usize>, flag: &str, why: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{flag} is required {why}")))
}

fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("{flag}: cannot parse {s:?}"))))
        .collect()
}

/// The vertex set a command works on.
enum Instance {
    Free { width: usize, n: Option<usize>, k: Option<usize> },
    Geometric(Box<Lattice>),
}

impl Instance {
    /// `free_width` is an explicit FREE-mode circuit count; otherwise it is
    /// `C(n, k+1)`.
    fn resolve(args: &InstanceArgs, free_width: Option<usize>) -> Result<Self, CliError> {
        match args.mode {
            ModeArg::Free => {
                let width = match (free_width, args.n, args.k) {
                    (Some(w), _, _) => w,
                    (None, Some(n), Some(k)) => {
                        if n < k + 1 || n > 64 {
                            return Err(DiscError::Precondition(format!("need k+1 <= n <= 64, got n={n}, k={k}")).into());
                        }
                        usize::try_from(binomial(n as u64, k as u64 + 1))
                            .map_err(|_| CliError::Usage("circuit count overflows".into()))?
                    }
                    _ => return Err(CliError::Usage("FREE mode needs --N or both --n and --k".into())),
                };
                Ok(Instance::Free { width, n: args.n, k: args.k })
            }
            ModeArg::Geometric => {
                let n = require(args.n, "--n", "in geometric mode")?;
                let k = require(args.k, "--k", "in geometric mode")?;
                let spec = ArrangementSpec::generate(n, k, args.seed)?;
                Ok(Instance::Geometric(Box::new(build_lattice(&spec)?)))
            }
        }
    }

    fn mode(&self) -> Result<Mode<'_>, CliError> {
        Ok(match self {
            Instance::Free { width, .. } => Mode::free(*width)?,
            Instance::Geometric(lat) => Mode::Geometric(lat),
        })
    }

    fn label(&self) -> String {
        match self {
            Instance::Free { width, n: Some(n), k: Some(k) } => format!("B({n},{k}) N={width}"),
            Instance::Free { width, .. } => format!("N={width}"),
            Instance::Geometric(lat) => format!("B({},{}) seed {}", lat.spec().n(), lat.spec().k(), lat.spec().seed()),
        }
    }
}

/// Parses a bitstring support and checks its width against the mode.
fn support_arg(text: &str, flag: &str, args: &InstanceArgs) -> Result<(Support, usize), CliError> {
    let (support, width) = Support::parse_bitstring(text)?;
    if let (ModeArg::Geometric, Some(n), Some(k)) = (args.mode, args.n, args.k) {
        let expected = binomial(n as u64, k as u64 + 1);
        if width as u64 != expected {
            return Err(CliError::Usage(format!("{flag} has {width} bits, B({n},{k}) has {expected} circuits")));
        }
    }
    Ok((support, width))
}

pub fn johnson(a: &JohnsonArgs) -> CliResult {
    let graph = JohnsonGraph::new(a.n, a.k)?;
    if let Some(path) = &a.dot {
        if graph.vertex_count() > JOHNSON_BFS_LIMIT {
            return Err(DiscError::Guard(format!(
                "DOT export limited to {JOHNSON_BFS_LIMIT} vertices, J({},{}) has {}",
                a.n,
                a.k + 1,
                graph.vertex_count()
            ))
            .into());
        }
        write_text(path, &graph.to_dot())?;
    }
    let stats = johnson_stats(a.n, a.k)?;
    if a.stats {
        print!("{}", to_canonical_string(&stats));
    } else {
        println!(
            "johnson J({},{}): {} vertices, degree {}, diameter {}, cross-checks {}",
            a.n,
            a.k + 1,
            stats.vertices,
            stats.degree,
            stats.diameter,
            if stats.consistent() { "agree" } else { "DISAGREE" }
        );
    }
    Ok(())
}

pub fn lattice(a: &LatticeArgs) -> CliResult {
    let start = Instant::now();
    let spec = ArrangementSpec::generate(a.n, a.k, a.seed)?;
    let lat = build_lattice(&spec)?;
    write_text(&a.out, &to_canonical_string(&lat.to_json()))?;
    if let Some(path) = &a.dot {
        write_text(path, &lat.to_dot())?;
    }
    let summary = lat.summary();
    println!(
        "lattice B({},{}) seed {}: {} elements, {} covers, per rank {:?} -> {} ({:.2}s)",
        a.n,
        a.k,
        a.seed,
        summary.elements,
        summary.covers,
        summary.elements_per_rank,
        a.out.display(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

pub fn verify(a: &VerifyArgs) -> CliResult {
    let start = Instant::now();
    let claims = Claim::parse_list(&a.claims)?;
    if a.width.is_some() && a.instance.mode == ModeArg::Geometric {
        return Err(CliError::Usage("--N applies to FREE mode only".into()));
    }
    let instance = Instance::resolve(&a.instance, a.width)?;
    let verifier = Verifier::new(instance.mode()?, reading(a.instance.graph))?;
    let mut report = verifier.report(&claims)?;
    if let Instance::Free { n, k, .. } = &instance {
        report.n = *n;
        report.k = *k;
    }
    if let Some(other_seed) = a.compare_seed {
        let n = require(a.instance.n, "--n", "with --compare-seed")?;
        let k = require(a.instance.k, "--k", "with --compare-seed")?;
        let built;
        let own: &Lattice = match &instance {
            Instance::Geometric(lat) => lat,
            Instance::Free { .. } => {
                built = build_lattice(&ArrangementSpec::generate(n, k, a.instance.seed)?)?;
                &built
            }
        };
        let other = build_lattice(&ArrangementSpec::generate(n, k, other_seed)?)?;
        report.seed_comparison = Some(SeedComparison {
            seed: a.instance.seed,
            other_seed,
            elements: own.len(),
            other_elements: other.len(),
            same_labelled_lattice: own.same_labelled_lattice(&other),
        });
    }
    write_text(&a.report, &to_canonical_string(&report))?;
    let passed = report.claims.iter().filter(|c| c.passed()).count();
    let comparison = match &report.seed_comparison {
        Some(c) => format!(", seeds {}/{} same lattice: {}", c.seed, c.other_seed, c.same_labelled_lattice),
        None => String::new(),
    };
    println!(
        "verify {} {} ({}): {passed}/{} claims pass{comparison} -> {} ({:.2}s)",
        report.mode,
        instance.label(),
        report.graph.name(),
        report.claims.len(),
        a.report.display(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn emit_json(value: &serde_json::Value, out: Option<&Path>, summary: String) -> CliResult {
    let text = to_canonical_string(value);
    match out {
        Some(path) => {
            write_text(path, &text)?;
            println!("{summary} -> {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

pub fn geodesics(a: &GeodesicsArgs) -> CliResult {
    let (from, width) = support_arg(&a.from, "--from", &a.instance)?;
    let (to, to_width) = support_arg(&a.to, "--to", &a.instance)?;
    if width != to_width {
        return Err(CliError::Usage(format!("--from has {width} bits but --to has {to_width}")));
    }
    let instance = Instance::resolve(&a.instance, Some(width))?;
    let mode = instance.mode()?;
    let set = count_geodesics(from, to, &mode, a.list)?;
    let mut value = set.to_json(width);
    value["N"] = json!(width);
    let summary = format!(
        "geodesics {} {}: {} toggle sequences, {} linear extensions ({})",
        mode.name(),
        instance.label(),
        set.count,
        set.linear_extensions,
        if set.agrees { "agree" } else { "differ" }
    );
    emit_json(&value, a.out.as_deref(), summary)
}

pub fn interval(a: &IntervalArgs) -> CliResult {
    let (lo, width) = support_arg(&a.lo, "--lo", &a.instance)?;
    let (hi, hi_width) = support_arg(&a.hi, "--hi", &a.instance)?;
    if width != hi_width {
        return Err(CliError::Usage(format!("--lo has {width} bits but --hi has {hi_width}")));
    }
    let instance = Instance::resolve(&a.instance, Some(width))?;
    let mode = instance.mode()?;
    let mode_name = mode.name();
    let verifier = Verifier::new(mode, reading(a.instance.graph))?;
    let report = verifier.interval_cube(lo, hi)?;
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["mode"] = json!(mode_name);
    value["graph"] = json!(reading(a.instance.graph).name());
    value["passes"] = json!(report.passes());
    let summary = format!(
        "interval {mode_name} {}: dimension {}, {} of {} elements, {}",
        instance.label(),
        report.dimension,
        report.elements,
        report.expected_elements,
        if report.passes() { "convex cube" } else { "not a convex cube" }
    );
    emit_json(&value, a.out.as_deref(), summary)
}

pub fn sample(a: &SampleArgs) -> CliResult {
    let cfg = match (a.circuits, a.n, a.k) {
        (Some(n_circuits), None, None) => ExperimentConfig::new(n_circuits, a.r, a.trials, a.seed)?,
        (None, Some(n), Some(k)) => ExperimentConfig::for_arrangement(n, k, a.r, a.trials, a.seed)?,
        _ => return Err(CliError::Usage("give either --N or both --n and --k".into())),
    };
    let result = sample_overlaps(&cfg)?;
    let rows = result
        .outcomes
        .iter()
        .map(|o| vec![o.trial.to_string(), o.overlap.to_string(), o.distance.to_string()]);
    write_csv(&a.csv, &["trial", "T", "distance"], rows)?;
    println!(
        "sample N={} r={}: {} trials, P(T=0) empirical {:.6} exact {:.6}, d = 2r - 2T on every pair: {} -> {}",
        cfg.n_circuits,
        cfg.r,
        cfg.trials,
        1.0 - result.empirical_intersect(),
        result.exact_disjoint,
        result.identity_holds(),
        a.csv.display()
    );
    Ok(())
}

pub fn threshold(a: &ThresholdArgs) -> CliResult {
    let exponents: Vec<f64> = parse_list(&a.exponents, "--exponents")?;
    let rows = threshold_sweep(a.circuits, &exponents, a.trials, a.seed)?;
    let within = rows.iter().filter(|r| r.within_standard_errors(3.0)).count();
    let records = rows.iter().map(|r| {
        vec![
            r.exponent.to_string(),
            r.r.to_string(),
            r.exact_intersect.to_string(),
            r.empirical_intersect.to_string(),
            r.stderr.to_string(),
        ]
    });
    write_csv(&a.csv, &["exponent", "r", "exact_intersect", "empirical_intersect", "stderr"], records)?;
    println!(
        "threshold N={}: {} exponents, {within} empirical values within 3 standard errors -> {}",
        a.circuits,
        rows.len(),
        a.csv.display()
    );
    Ok(())
}

pub fn tv(a: &TvArgs) -> CliResult {
    let grid: Vec<u64> = parse_list(&a.grid, "--grid")?;
    let alphas: Vec<f64> = parse_list(&a.alpha, "--alpha")?;
    let mut rows = Vec::new();
    let mut max_ratio: Option<f64> = None;
    for &n in &grid {
        for &alpha in &alphas {
            let report = tv_distance(n, support_size(n, alpha))?;
            if let Some(ratio) = report.ratio_f64() {
                max_ratio = Some(max_ratio.map_or(ratio, |m: f64| m.max(ratio)));
            }
            rows.push(vec![
                n.to_string(),
                report.r.to_string(),
                report.tv.to_scientific(30),
                report.ratio.as_ref().map(|x| x.to_scientific(30)).unwrap_or_default(),
            ]);
        }
    }
    let count = rows.len();
    write_csv(&a.csv, &["N", "r", "tv", "ratio_tv_N2_r3"], rows)?;
    println!(
        "tv: {count} rows, max tv*N^2/r^3 = {} -> {}",
        max_ratio.map_or("n/a".to_string(), |m| format!("{m:.6}")),
        a.csv.display()
    );
    Ok(())
}
