use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{prob_disjoint, OverlapLaw, MAX_LAW_SUPPORT};
use crate::circuits::binomial;
use crate::error::{DiscError, Result};

/// Exact `P(d = 2r)` at or above this counts as concentrated.
pub const CONCENTRATION_LEVEL: f64 = 0.99;

/// Generator for one trial: trial `i` of a run seeded with `s` uses the
/// stream seeded with `s ⊕ i`, so results do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial)
}

/// Uniform `r`-subset of `0..n`, sorted. Partial Fisher–Yates over a
/// sparse permutation: `O(r)` time and memory for any `n`.
pub fn sample_subset<R: Rng + ?Sized>(n: u64, r: u64, rng: &mut R) -> Vec<u64> {
    assert!(r <= n, "subset size exceeds ground set");
    let mut moved: HashMap<u64, u64> = HashMap::with_capacity(r as usize);
    let mut chosen = Vec::with_capacity(r as usize);
    for i in 0..r {
        let j = rng.random_range(i..n);
        let at_j = *moved.get(&j).unwrap_or(&j);
        let at_i = *moved.get(&i).unwrap_or(&i);
        moved.insert(j, at_i);
        chosen.push(at_j);
    }
    chosen.sort_unstable();
    chosen
}

/// `|a △ b|` for sorted, duplicate-free slices, by merging.
fn symmetric_difference_len(a: &[u64], b: &[u64]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0u64);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                count += 1;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                count += 1;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    count + (a.len() - i + b.len() - j) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    #[serde(rename = "N")]
    pub n_circuits: u64,
    pub r: u64,
    pub trials: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn new(n_circuits: u64, r: u64, trials: u64, seed: u64) -> Result<Self> {
        if r > n_circuits {
            return Err(DiscError::pre(format!("support size r={r} exceeds N={n_circuits}")));
        }
        if trials == 0 {
            return Err(DiscError::pre("need at least one trial"));
        }
        Ok(Self { n_circuits, r, trials, seed })
    }

    /// `N = C(n, k+1)`, the circuit count of `B(n, k)`.
    pub fn for_arrangement(n: u64, k: u64, r: u64, trials: u64, seed: u64) -> Result<Self> {
        if n < k + 1 || n > 64 {
            return Err(DiscError::pre(format!("need k+1 ≤ n ≤ 64, got n={n}, k={k}")));
        }
        Self::new(binomial(n, k + 1), r, trials, seed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    /// `|F ∩ G|`.
    pub overlap: u64,
    /// `|F △ G|`, counted independently of the overlap.
    pub distance: u64,
}

impl TrialOutcome {
    pub fn satisfies_identity(&self, r: u64) -> bool {
        self.distance == 2 * r - 2 * self.overlap
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub outcomes: Vec<TrialOutcome>,
    /// `counts[t]` = number of trials with overlap `t`.
    pub counts: Vec<u64>,
    /// Exact `P(T = t)`, when `r` is small enough to tabulate.
    pub exact_pmf: Option<Vec<f64>>,
    pub exact_disjoint: f64,
}

impl ExperimentResult {
    pub fn empirical_pmf(&self) -> Vec<f64> {
        let trials = self.config.trials as f64;
        self.counts.iter().map(|&c| c as f64 / trials).collect()
    }

    pub fn empirical_intersect(&self) -> f64 {
        1.0 - self.counts[0] as f64 / self.config.trials as f64
    }

    pub fn mean_distance(&self) -> f64 {
        self.outcomes.iter().map(|o| o.distance as f64).sum::<f64>() / self.config.trials as f64
    }

    pub fn identity_holds(&self) -> bool {
        self.outcomes.iter().all(|o| o.satisfies_identity(self.config.r))
    }
}

fn draw_pair(cfg: &ExperimentConfig, trial: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rng = trial_rng(cfg.seed, trial);
    let f = sample_subset(cfg.n_circuits, cfg.r, &mut rng);
    let g = sample_subset(cfg.n_circuits, cfg.r, &mut rng);
    (f, g)
}

pub fn sample_overlaps(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    let outcomes: Vec<TrialOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let (f, g) = draw_pair(cfg, trial);
            let members: HashSet<u64> = f.iter().copied().collect();
            let overlap = g.iter().filter(|x| members.contains(x)).count() as u64;
            TrialOutcome { trial, overlap, distance: symmetric_difference_len(&f, &g) }
        })
        .collect();
    let mut counts = vec![0u64; cfg.r as usize + 1];
    for o in &outcomes {
        counts[o.overlap as usize] += 1;
    }
    let exact_pmf = if cfg.r <= MAX_LAW_SUPPORT {
        let law = OverlapLaw::new(cfg.n_circuits, cfg.r)?;
        Some(law.probabilities().iter().map(|p| num_traits::ToPrimitive::to_f64(p).unwrap_or(0.0)).collect())
    } else {
        None
    };
    let exact_disjoint = prob_disjoint(cfg.n_circuits, cfg.r)?.to_f64();
    Ok(ExperimentResult { config: *cfg, outcomes, counts, exact_pmf, exact_disjoint })
}

/// Number of trials in which the two sampled supports meet.
fn count_intersecting(cfg: &ExperimentConfig) -> u64 {
    (0..cfg.trials)
        .into_par_iter()
        .filter(|&trial| {
            let (f, g) = draw_pair(cfg, trial);
            symmetric_difference_len(&f, &g) < 2 * cfg.r
        })
        .count() as u64
}

/// `⌊N^e⌋`, robust to `N^e` landing a hair below an integer.
pub fn support_size(n_circuits: u64, exponent: f64) -> u64 {
    let value = (n_circuits as f64).powf(exponent);
    (value * (1.0 + 1e-12)).floor() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub exponent: f64,
    pub r: u64,
    pub exact_intersect: f64,
    pub empirical_intersect: f64,
    /// Binomial standard error of the empirical estimate, from the exact
    /// probability.
    pub stderr: f64,
}

impl ThresholdRow {
    pub fn within_standard_errors(&self, multiple: f64) -> bool {
        (self.empirical_intersect - self.exact_intersect).abs() <= multiple * self.stderr
    }
}

pub fn threshold_sweep(n_circuits: u64, exponents: &[f64], trials: u64, seed: u64) -> Result<Vec<ThresholdRow>> {
    exponents
        .iter()
        .map(|&exponent| {
            if !(exponent > 0.0 && exponent < 1.0) {
                return Err(DiscError::pre(format!("exponent {exponent} outside (0, 1)")));
            }
            let r = support_size(n_circuits, exponent);
            let cfg = ExperimentConfig::new(n_circuits, r, trials, seed)?;
            let disjoint = prob_disjoint(n_circuits, r)?;
            let (p, q) = (disjoint.intersect_f64(), disjoint.to_f64());
            let empirical_intersect = count_intersecting(&cfg) as f64 / trials as f64;
            Ok(ThresholdRow {
                exponent,
                r,
                exact_intersect: p,
                empirical_intersect,
                stderr: (p * q / trials as f64).sqrt(),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    #[serde(rename = "N")]
    pub n_circuits: u64,
    pub r: u64,
    pub trials: u64,
    /// Exact `P(d = 2r) = P(F ∩ G = ∅)`.
    pub exact_far: f64,
    pub empirical_far: f64,
    pub gap: f64,
    pub stderr: f64,
    pub within_three_stderr: bool,
    /// Exact value at or above [`CONCENTRATION_LEVEL`].
    pub concentrated: bool,
    /// `d = 2r − 2T` held on every sampled pair.
    pub identity_holds: bool,
}

pub fn concentration_check(n_circuits: u64, r: u64, trials: u64, seed: u64) -> Result<ConcentrationReport> {
    let result = sample_overlaps(&ExperimentConfig::new(n_circuits, r, trials, seed)?)?;
    let exact_far = result.exact_disjoint;
    let far = result.outcomes.iter().filter(|o| o.distance == 2 * r).count();
    let empirical_far = far as f64 / trials as f64;
    let stderr = (exact_far * (1.0 - exact_far) / trials as f64).sqrt();
    let gap = (empirical_far - exact_far).abs();
    Ok(ConcentrationReport {
        n_circuits,
        r,
        trials,
        exact_far,
        empirical_far,
        gap,
        stderr,
        within_three_stderr: gap <= 3.0 * stderr,
        concentrated: exact_far >= CONCENTRATION_LEVEL,
        identity_holds: result.identity_holds(),
    })
}
