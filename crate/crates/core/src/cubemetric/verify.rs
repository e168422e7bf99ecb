//! Graph-level checks of the support-metric claims.
//!
//! Each check builds the mode's cover graph, runs all-pairs BFS once and
//! reports a verdict with at most [`MAX_COUNTEREXAMPLES`] witnesses.
//! Witnesses are taken in vertex-id order, so reports do not depend on
//! the number of worker threads.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::graph::{CoverGraph, DistanceMatrix, GraphReading, UNREACHABLE};
use super::{geodesics, Mode};
use crate::error::{DiscError, Result};
use crate::exactgeom::ArrangementSpec;
use crate::lattice::{LatticeSummary, Support};

pub const MAX_COUNTEREXAMPLES: usize = 10;

/// Vertex limit for the direct triple-counting median check.
pub const MAX_MEDIAN_DIRECT: usize = 300;

/// Largest `|F(Y) \ F(X)|` for interval-cube checks.
pub const MAX_INTERVAL_DIMENSION: usize = 10;

/// Pairs further apart than this are skipped by the geodesic claim sweep.
pub const GEODESIC_SWEEP_SPAN: usize = 8;

/// Pair budget of the geodesic and interval sweeps; larger candidate sets
/// are thinned by a fixed stride.
pub const SWEEP_PAIR_CAP: usize = 500;

/// Label-table size limit (bits) for the labelling median check.
const LABEL_TABLE_BITS: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Claim {
    Cover,
    Distance,
    PartialCube,
    Median,
    Geodesic,
    Interval,
}

impl Claim {
    pub const ALL: [Claim; 6] =
        [Claim::Cover, Claim::Distance, Claim::PartialCube, Claim::Median, Claim::Geodesic, Claim::Interval];

    pub fn name(self) -> &'static str {
        match self {
            Claim::Cover => "cover",
            Claim::Distance => "distance",
            Claim::PartialCube => "partialcube",
            Claim::Median => "median",
            Claim::Geodesic => "geodesic",
            Claim::Interval => "interval",
        }
    }

    /// Comma-separated claim names; `all` selects every claim.
    pub fn parse_list(text: &str) -> Result<Vec<Claim>> {
        let mut out = Vec::new();
        for word in text.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            if word == "all" {
                out.extend(Claim::ALL);
                continue;
            }
            let claim = Claim::ALL
                .into_iter()
                .find(|c| c.name() == word)
                .ok_or_else(|| DiscError::Parse(format!("unknown claim {word:?}")))?;
            out.push(claim);
        }
        out.sort_unstable();
        out.dedup();
        if out.is_empty() {
            return Err(DiscError::Parse("no claims selected".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub supports: Vec<String>,
    pub equation: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub verdict: Verdict,
    pub checked: u64,
    pub counterexamples: Vec<Counterexample>,
    pub details: BTreeMap<String, Value>,
}

impl ClaimReport {
    fn new(claim: Claim, checked: u64, failures: u64, counterexamples: Vec<Counterexample>) -> Self {
        let mut details = BTreeMap::new();
        details.insert("failures".to_string(), json!(failures));
        Self {
            claim: claim.name().to_string(),
            verdict: if failures == 0 { Verdict::Pass } else { Verdict::Fail },
            checked,
            counterexamples,
            details,
        }
    }

    fn detail(mut self, key: &str, value: Value) -> Self {
        self.details.insert(key.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedComparison {
    pub seed: u64,
    pub other_seed: u64,
    pub elements: usize,
    pub other_elements: usize,
    pub same_labelled_lattice: bool,
}

/// Everything a `verify` run writes. Contains no timings, so identical
/// inputs give byte-identical JSON.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub tool: String,
    pub schema_version: u32,
    pub mode: String,
    pub graph: GraphReading,
    /// Arrangement parameters, when the run is tied to some `B(n, k)`.
    pub n: Option<usize>,
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub circuit_count: usize,
    pub vertices: usize,
    pub edges: usize,
    pub spec: Option<ArrangementSpec>,
    pub lattice: Option<LatticeSummary>,
    pub claims: Vec<ClaimReport>,
    pub seed_comparison: Option<SeedComparison>,
}

impl VerificationReport {
    pub fn claim(&self, name: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim == name)
    }
}

/// Outcome of the interval-cube checks on one interval `[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCubeReport {
    pub lower: String,
    pub upper: String,
    pub dimension: usize,
    pub elements: usize,
    pub expected_elements: usize,
    /// How many of the `2^d` supports `F(x) ∪ T` are admissible.
    pub admissible_candidates: usize,
    pub count_matches: bool,
    pub bijection: bool,
    pub hypercube: bool,
    pub convex: bool,
}

impl IntervalCubeReport {
    pub fn passes(&self) -> bool {
        self.count_matches && self.bijection && self.hypercube && self.convex
    }
}

/// Isometric `{0,1}`-labelling found from Djoković–Winkler classes.
struct Labelling {
    classes: usize,
    labels: Vec<Vec<u64>>,
}

pub struct Verifier<'a> {
    mode: Mode<'a>,
    reading: GraphReading,
    graph: CoverGraph,
    dist: DistanceMatrix,
}

impl<'a> Verifier<'a> {
    pub fn new(mode: Mode<'a>, reading: GraphReading) -> Result<Self> {
        let graph = CoverGraph::build(&mode, reading)?;
        let dist = graph.distances();
        Ok(Self { mode, reading, graph, dist })
    }

    pub fn graph(&self) -> &CoverGraph {
        &self.graph
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist
    }

    fn bits(&self, id: usize) -> String {
        self.graph.vertex(id).to_bitstring(self.graph.width())
    }

    fn witness(&self, ids: &[usize], equation: String) -> Counterexample {
        Counterexample { supports: ids.iter().map(|&i| self.bits(i)).collect(), equation }
    }

    pub fn run(&self, claims: &[Claim]) -> Result<Vec<ClaimReport>> {
        claims
            .iter()
            .map(|claim| match claim {
                Claim::Cover => Ok(self.cover()),
                Claim::Distance => Ok(self.distance()),
                Claim::PartialCube => Ok(self.partial_cube()),
                Claim::Median => self.median_graph(),
                Claim::Geodesic => self.geodesic(),
                Claim::Interval => self.interval(),
            })
            .collect()
    }

    pub fn report(&self, claims: &[Claim]) -> Result<VerificationReport> {
        let lattice = self.mode.lattice();
        Ok(VerificationReport {
            tool: "disc".to_string(),
            schema_version: crate::FORMAT_SCHEMA_VERSION,
            mode: self.mode.name().to_string(),
            graph: self.reading,
            n: lattice.map(|l| l.spec().n()),
            k: lattice.map(|l| l.spec().k()),
            circuit_count: self.graph.width(),
            vertices: self.graph.len(),
            edges: self.graph.edges().len(),
            spec: lattice.map(|l| l.spec().clone()),
            lattice: lattice.map(|l| l.summary()),
            claims: self.run(claims)?,
            seed_comparison: None,
        })
    }

    /// Every cover edge changes the support by exactly one circuit.
    pub fn cover(&self) -> ClaimReport {
        let mut failures = 0;
        let mut witnesses = Vec::new();
        for &(a, b) in self.graph.edges() {
            let diff = (self.graph.vertex(a) ^ self.graph.vertex(b)).len();
            if diff != 1 {
                failures += 1;
                if witnesses.len() < MAX_COUNTEREXAMPLES {
                    witnesses.push(self.witness(&[a, b], format!("|F(X) △ F(Y)| = {diff}, expected 1")));
                }
            }
        }
        ClaimReport::new(Claim::Cover, self.graph.edges().len() as u64, failures, witnesses)
    }

    /// BFS distance equals Hamming distance of supports for every pair.
    pub fn distance(&self) -> ClaimReport {
        let v = self.graph.len();
        let per_source: Vec<(u64, Vec<Counterexample>)> = (0..v)
            .into_par_iter()
            .map(|a| {
                let mut failures = 0;
                let mut witnesses = Vec::new();
                let row = self.dist.row(a);
                for b in a + 1..v {
                    let hamming = (self.graph.vertex(a) ^ self.graph.vertex(b)).len();
                    if row[b] as usize != hamming {
                        failures += 1;
                        if witnesses.len() < MAX_COUNTEREXAMPLES {
                            let d = if row[b] == UNREACHABLE { "∞".to_string() } else { row[b].to_string() };
                            witnesses.push(
                                self.witness(&[a, b], format!("d(X,Y) = {d} but |F(X) △ F(Y)| = {hamming}")),
                            );
                        }
                    }
                }
                (failures, witnesses)
            })
            .collect();
        let (failures, witnesses) = merge(per_source);
        ClaimReport::new(Claim::Distance, pairs(v), failures, witnesses)
    }

    fn labelling(&self) -> std::result::Result<Labelling, Counterexample> {
        let v = self.graph.len();
        for a in 0..v {
            if let Some(b) = self.dist.row(a).iter().position(|&d| d == UNREACHABLE) {
                return Err(self.witness(&[a, b], "d(X,Y) = ∞: graph is disconnected".to_string()));
            }
        }
        let edges = self.graph.edges();
        let d = |a: usize, b: usize| u32::from(self.dist.get(a, b));
        let mut classes = UnionFind::new(edges.len());
        for (i, &(x, y)) in edges.iter().enumerate() {
            for (j, &(u, w)) in edges.iter().enumerate().skip(i + 1) {
                if classes.find(i) == classes.find(j) {
                    continue;
                }
                if d(x, u) + d(y, w) != d(x, w) + d(y, u) {
                    classes.union(i, j);
                }
            }
        }
        let mut representative: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..edges.len() {
            representative.entry(classes.find(i)).or_insert(i);
        }
        let mut reps: Vec<usize> = representative.into_values().collect();
        reps.sort_unstable();
        let words = reps.len().div_ceil(64).max(1);
        let labels: Vec<Vec<u64>> = (0..v)
            .map(|w| {
                let mut label = vec![0u64; words];
                for (c, &e) in reps.iter().enumerate() {
                    let (a, b) = edges[e];
                    if d(w, b) < d(w, a) {
                        label[c / 64] |= 1 << (c % 64);
                    }
                }
                label
            })
            .collect();
        Ok(Labelling { classes: reps.len(), labels })
    }

    /// The cover graph is a partial cube: an isometric hypercube labelling
    /// exists. Tested by labelling vertices with Djoković–Winkler classes
    /// and comparing Hamming and graph distance on every pair.
    pub fn partial_cube(&self) -> ClaimReport {
        let v = self.graph.len();
        let labelling = match self.labelling() {
            Ok(l) => l,
            Err(witness) => return ClaimReport::new(Claim::PartialCube, 0, 1, vec![witness]),
        };
        let per_source: Vec<(u64, Vec<Counterexample>)> = (0..v)
            .into_par_iter()
            .map(|a| {
                let mut failures = 0;
                let mut witnesses = Vec::new();
                for b in a + 1..v {
                    let hamming = label_distance(&labelling.labels[a], &labelling.labels[b]);
                    let d = self.dist.get(a, b) as usize;
                    if hamming != d {
                        failures += 1;
                        if witnesses.len() < MAX_COUNTEREXAMPLES {
                            witnesses.push(self.witness(
                                &[a, b],
                                format!("d(X,Y) = {d} but the Θ-class labelling gives {hamming}"),
                            ));
                        }
                    }
                }
                (failures, witnesses)
            })
            .collect();
        let (failures, witnesses) = merge(per_source);
        ClaimReport::new(Claim::PartialCube, pairs(v), failures, witnesses)
            .detail("theta_classes", json!(labelling.classes))
    }

    /// Every vertex triple has exactly one median.
    pub fn median_graph(&self) -> Result<ClaimReport> {
        let v = self.graph.len();
        if v <= MAX_MEDIAN_DIRECT {
            return Ok(self.median_direct());
        }
        // In a partial cube the medians of a triple are the vertices whose
        // label is the coordinatewise majority: at most one, and one exactly
        // when that label occurs.
        match self.labelling() {
            Ok(l) if self.labelling_is_isometric(&l) => self.median_by_labels(&l),
            _ => Err(DiscError::guard(format!(
                "median check on {v} vertices needs a partial cube (direct limit {MAX_MEDIAN_DIRECT})"
            ))),
        }
    }

    fn labelling_is_isometric(&self, l: &Labelling) -> bool {
        let v = self.graph.len();
        (0..v).into_par_iter().all(|a| {
            (a + 1..v).all(|b| label_distance(&l.labels[a], &l.labels[b]) == self.dist.get(a, b) as usize)
        })
    }

    fn median_direct(&self) -> ClaimReport {
        let v = self.graph.len();
        let words = v.div_ceil(64).max(1);
        // between[a*v + b]: vertices on some a-b geodesic.
        let between: Vec<Vec<u64>> = (0..v * v)
            .into_par_iter()
            .map(|ab| {
                let (a, b) = (ab / v, ab % v);
                let mut set = vec![0u64; words];
                let dab = self.dist.get(a, b);
                if dab != UNREACHABLE {
                    for m in 0..v {
                        let (dam, dmb) = (self.dist.get(a, m), self.dist.get(m, b));
                        if dam != UNREACHABLE && dmb != UNREACHABLE && u32::from(dam) + u32::from(dmb) == u32::from(dab)
                        {
                            set[m / 64] |= 1 << (m % 64);
                        }
                    }
                }
                set
            })
            .collect();
        let per_a: Vec<(u64, Vec<Counterexample>)> = (0..v)
            .into_par_iter()
            .map(|a| {
                let mut failures = 0;
                let mut witnesses = Vec::new();
                for b in a + 1..v {
                    for c in b + 1..v {
                        let (ab, bc, ac) = (&between[a * v + b], &between[b * v + c], &between[a * v + c]);
                        let count: u32 = (0..words).map(|w| (ab[w] & bc[w] & ac[w]).count_ones()).sum();
                        if count != 1 {
                            failures += 1;
                            if witnesses.len() < MAX_COUNTEREXAMPLES {
                                witnesses.push(self.witness(
                                    &[a, b, c],
                                    format!("{count} vertices lie on all three pairwise geodesics, expected 1"),
                                ));
                            }
                        }
                    }
                }
                (failures, witnesses)
            })
            .collect();
        let (failures, witnesses) = merge(per_a);
        ClaimReport::new(Claim::Median, triples(v), failures, witnesses).detail("method", json!("direct"))
    }

    fn median_by_labels(&self, l: &Labelling) -> Result<ClaimReport> {
        let v = self.graph.len();
        if l.classes > LABEL_TABLE_BITS {
            return Err(DiscError::guard(format!(
                "median check on {v} vertices with {} Θ-classes exceeds the label table",
                l.classes
            )));
        }
        let labels: Vec<u64> = l.labels.iter().map(|x| x[0]).collect();
        let mut table = vec![u32::MAX; 1 << l.classes];
        for (id, &label) in labels.iter().enumerate() {
            table[label as usize] = id as u32;
        }
        let per_a: Vec<(u64, Vec<Counterexample>)> = (0..v)
            .into_par_iter()
            .map(|a| {
                let mut failures = 0;
                let mut witnesses = Vec::new();
                for b in a + 1..v {
                    let ab = labels[a] & labels[b];
                    let a_or_b = labels[a] | labels[b];
                    for c in b + 1..v {
                        let m = ab | (a_or_b & labels[c]);
                        if table[m as usize] == u32::MAX {
                            failures += 1;
                            if witnesses.len() < MAX_COUNTEREXAMPLES {
                                witnesses.push(self.witness(
                                    &[a, b, c],
                                    "0 vertices lie on all three pairwise geodesics, expected 1".to_string(),
                                ));
                            }
                        }
                    }
                }
                (failures, witnesses)
            })
            .collect();
        let (failures, witnesses) = merge(per_a);
        Ok(ClaimReport::new(Claim::Median, triples(v), failures, witnesses).detail("method", json!("labelling")))
    }

    /// Toggle-sequence count equals the linear-extension count of the
    /// dependency poset, on pairs at distance at most
    /// [`GEODESIC_SWEEP_SPAN`].
    pub fn geodesic(&self) -> Result<ClaimReport> {
        let v = self.graph.len();
        let eligible: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .filter(|&(a, b)| (self.graph.vertex(a) ^ self.graph.vertex(b)).len() <= GEODESIC_SWEEP_SPAN)
            .collect();
        let chosen = thin(&eligible);
        let outcomes: Vec<Result<(usize, usize, u64, u64)>> = chosen
            .par_iter()
            .map(|&(a, b)| {
                let set = geodesics(self.graph.vertex(a), self.graph.vertex(b), &self.mode, false)?;
                Ok((a, b, set.count, set.linear_extensions))
            })
            .collect();
        let mut failures = 0;
        let mut witnesses = Vec::new();
        let mut without_path = 0u64;
        for outcome in outcomes {
            let (a, b, count, ext) = outcome?;
            if count == 0 {
                without_path += 1;
            }
            if count != ext {
                failures += 1;
                if witnesses.len() < MAX_COUNTEREXAMPLES {
                    witnesses.push(self.witness(
                        &[a, b],
                        format!("{count} admissible geodesics but {ext} linear extensions of (S, ⪯)"),
                    ));
                }
            }
        }
        Ok(ClaimReport::new(Claim::Geodesic, chosen.len() as u64, failures, witnesses)
            .detail("eligible_pairs", json!(eligible.len()))
            .detail("max_span", json!(GEODESIC_SWEEP_SPAN))
            .detail("pairs_without_admissible_geodesic", json!(without_path)))
    }

    /// Interval-cube and convexity checks on comparable pairs.
    pub fn interval(&self) -> Result<ClaimReport> {
        let v = self.graph.len();
        let eligible: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (0..v).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                let (x, y) = (self.graph.vertex(a), self.graph.vertex(b));
                x.is_subset(y) && y.minus(x).len() <= MAX_INTERVAL_DIMENSION
            })
            .collect();
        let chosen = thin(&eligible);
        let outcomes: Vec<Result<(usize, usize, IntervalCubeReport)>> = chosen
            .par_iter()
            .map(|&(a, b)| Ok((a, b, self.interval_cube(self.graph.vertex(a), self.graph.vertex(b))?)))
            .collect();
        let mut failures = 0;
        let mut witnesses = Vec::new();
        for outcome in outcomes {
            let (a, b, r) = outcome?;
            if !r.passes() {
                failures += 1;
                if witnesses.len() < MAX_COUNTEREXAMPLES {
                    let mut broken = Vec::new();
                    if !r.count_matches {
                        broken.push(format!("|[X,Y]| = {} ≠ 2^{} = {}", r.elements, r.dimension, r.expected_elements));
                    }
                    if !r.bijection {
                        broken.push(format!(
                            "{} of {} supports F(X) ∪ T admissible",
                            r.admissible_candidates, r.expected_elements
                        ));
                    }
                    if !r.hypercube {
                        broken.push(format!("cover subgraph is not Q_{}", r.dimension));
                    }
                    if !r.convex {
                        broken.push("a geodesic leaves [X,Y]".to_string());
                    }
                    witnesses.push(self.witness(&[a, b], broken.join("; ")));
                }
            }
        }
        Ok(ClaimReport::new(Claim::Interval, chosen.len() as u64, failures, witnesses)
            .detail("eligible_pairs", json!(eligible.len()))
            .detail("max_dimension", json!(MAX_INTERVAL_DIMENSION)))
    }

    pub fn interval_cube(&self, x: Support, y: Support) -> Result<IntervalCubeReport> {
        let width = self.graph.width();
        if self.graph.id_of(x).is_none() || self.graph.id_of(y).is_none() {
            return Err(DiscError::pre("interval endpoints must be admissible supports"));
        }
        if !x.is_subset(y) {
            return Err(DiscError::pre(format!(
                "{} is not below {}",
                x.to_bitstring(width),
                y.to_bitstring(width)
            )));
        }
        let extra: Vec<usize> = y.minus(x).iter().collect();
        let dimension = extra.len();
        if dimension > MAX_INTERVAL_DIMENSION {
            return Err(DiscError::guard(format!(
                "|F(Y) \\ F(X)| = {dimension} exceeds {MAX_INTERVAL_DIMENSION}"
            )));
        }
        let expected = 1usize << dimension;
        let members: Vec<usize> = (0..self.graph.len())
            .filter(|&i| {
                let z = self.graph.vertex(i);
                x.is_subset(z) && z.is_subset(y)
            })
            .collect();
        let admissible_candidates = (0..expected)
            .filter(|&t| {
                let z = (0..dimension).filter(|&i| t >> i & 1 == 1).fold(x, |acc, i| acc.with(extra[i]));
                self.mode.admits(z)
            })
            .count();
        let count_matches = members.len() == expected;
        let bijection = admissible_candidates == expected && count_matches;

        let inside: HashMap<usize, ()> = members.iter().map(|&m| (m, ())).collect();
        let hypercube = count_matches
            && members.iter().all(|&m| {
                let nbrs: Vec<usize> =
                    self.graph.neighbors(m).iter().copied().filter(|n| inside.contains_key(n)).collect();
                nbrs.len() == dimension
                    && nbrs.iter().all(|&n| (self.graph.vertex(m) ^ self.graph.vertex(n)).len() == 1)
            });

        let convex = members.iter().all(|&z| self.geodesics_stay_inside(z, &inside));

        Ok(IntervalCubeReport {
            lower: x.to_bitstring(width),
            upper: y.to_bitstring(width),
            dimension,
            elements: members.len(),
            expected_elements: expected,
            admissible_candidates,
            count_matches,
            bijection,
            hypercube,
            convex,
        })
    }

    /// No vertex outside the set lies on a geodesic from `source` to a
    /// vertex of the set. Walks the BFS layers of `source` from the far
    /// end, marking vertices with a set member below them in the layering.
    fn geodesics_stay_inside(&self, source: usize, inside: &HashMap<usize, ()>) -> bool {
        let row = self.dist.row(source);
        let mut order: Vec<usize> = (0..self.graph.len()).filter(|&w| row[w] != UNREACHABLE).collect();
        order.sort_by_key(|&w| std::cmp::Reverse(row[w]));
        let mut leads_inside = vec![false; self.graph.len()];
        for &w in &order {
            let below = self.graph.neighbors(w).iter().any(|&c| row[c] == row[w] + 1 && leads_inside[c]);
            leads_inside[w] = inside.contains_key(&w) || below;
            if leads_inside[w] && !inside.contains_key(&w) {
                return false;
            }
        }
        true
    }
}

/// Cover-lemma and distance checks for one mode.
pub fn verify_distance_theorem(mode: Mode<'_>, reading: GraphReading) -> Result<(ClaimReport, ClaimReport)> {
    let verifier = Verifier::new(mode, reading)?;
    Ok((verifier.cover(), verifier.distance()))
}

pub fn verify_median_graph(mode: Mode<'_>, reading: GraphReading) -> Result<ClaimReport> {
    Verifier::new(mode, reading)?.median_graph()
}

pub fn verify_interval_cube(mode: Mode<'_>, reading: GraphReading, x: Support, y: Support) -> Result<IntervalCubeReport> {
    Verifier::new(mode, reading)?.interval_cube(x, y)
}

fn label_distance(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
}

fn pairs(v: usize) -> u64 {
    (v as u64) * (v as u64).saturating_sub(1) / 2
}

fn triples(v: usize) -> u64 {
    let v = v as u64;
    if v < 3 {
        0
    } else {
        v * (v - 1) * (v - 2) / 6
    }
}

fn merge(parts: Vec<(u64, Vec<Counterexample>)>) -> (u64, Vec<Counterexample>) {
    let failures = parts.iter().map(|(f, _)| f).sum();
    let witnesses = parts.into_iter().flat_map(|(_, w)| w).take(MAX_COUNTEREXAMPLES).collect();
    (failures, witnesses)
}

/// Every `stride`-th item, keeping at most [`SWEEP_PAIR_CAP`].
fn thin<T: Copy>(items: &[T]) -> Vec<T> {
    let stride = items.len().div_ceil(SWEEP_PAIR_CAP).max(1);
    items.iter().step_by(stride).copied().collect()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
