//! Overlap of two independent uniform `r`-subsets of an `N`-set.
//!
//! `T = |F ∩ G|` is hypergeometric with parameters `(N, r, r)`. This module
//! gives its law exactly, measures the total-variation gap to
//! `Poisson(r²/N)`, and checks the threshold and concentration statements
//! by exact evaluation and seeded Monte Carlo.
//!
//! Sampling follows the uniform-subset model literally: sampled supports are
//! arbitrary `r`-subsets of the circuits, not closed supports of a lattice.

mod decimal;
mod sampling;

pub use decimal::FixedDecimal;
pub use sampling::{
    concentration_check, sample_overlaps, sample_subset, support_size, threshold_sweep, trial_rng,
    ConcentrationReport, ExperimentConfig, ExperimentResult, ThresholdRow, TrialOutcome, CONCENTRATION_LEVEL,
};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{DiscError, Result};
use crate::exactgeom::{format_rational, Rational};

/// Largest `r` for which the full exact law is tabulated.
pub const MAX_LAW_SUPPORT: u64 = 5000;

/// Largest `r` for exact disjointness probabilities.
pub const MAX_DISJOINT_SUPPORT: u64 = 50_000;

/// Decimal places of reported total-variation values.
pub const TV_DIGITS: u32 = 60;

/// Largest Poisson mean `tv_distance` accepts.
pub const MAX_TV_LAMBDA: f64 = 10_000.0;

/// `C(n, k)` as a big integer.
pub fn big_binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Product of the integers in `lo..hi`.
fn range_product(lo: u64, hi: u64) -> BigInt {
    match hi.saturating_sub(lo) {
        0 => BigInt::one(),
        1 => BigInt::from(lo),
        len => {
            let mid = lo + len / 2;
            range_product(lo, mid) * range_product(mid, hi)
        }
    }
}

/// Exact law of `T` over a common denominator `C(N, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapLaw {
    n_circuits: u64,
    r: u64,
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl OverlapLaw {
    pub fn new(n_circuits: u64, r: u64) -> Result<Self> {
        if r > n_circuits {
            return Err(DiscError::pre(format!("support size r={r} exceeds N={n_circuits}")));
        }
        if r > MAX_LAW_SUPPORT {
            return Err(DiscError::guard(format!("exact law limited to r ≤ {MAX_LAW_SUPPORT}, got {r}")));
        }
        let rest = n_circuits - r;
        // C(N-r, j) for j = 0..=r, built upward; zero once j > N-r.
        let mut outside = Vec::with_capacity(r as usize + 1);
        let mut c = BigInt::one();
        for j in 0..=r {
            if j > 0 {
                c = c * (BigInt::from(rest) + 1 - j) / j;
            }
            outside.push(c.clone());
        }
        let mut inside = BigInt::one();
        let mut numerators = Vec::with_capacity(r as usize + 1);
        for t in 0..=r {
            if t > 0 {
                inside = inside * BigInt::from(r - t + 1) / BigInt::from(t);
            }
            numerators.push(&inside * &outside[(r - t) as usize]);
        }
        Ok(Self { n_circuits, r, numerators, denominator: big_binomial(n_circuits, r) })
    }

    pub fn n_circuits(&self) -> u64 {
        self.n_circuits
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    /// `C(r,t)·C(N−r, r−t)` for `t = 0..=r`.
    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    /// `C(N, r)`.
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn pmf(&self, t: u64) -> Rational {
        match self.numerators.get(t as usize) {
            Some(num) => Rational::new(num.clone(), self.denominator.clone()),
            None => Rational::zero(),
        }
    }

    pub fn probabilities(&self) -> Vec<Rational> {
        (0..=self.r).map(|t| self.pmf(t)).collect()
    }

    /// Exact sum of all probabilities.
    pub fn total(&self) -> Rational {
        let sum: BigInt = self.numerators.iter().sum();
        Rational::new(sum, self.denominator.clone())
    }

    pub fn mean(&self) -> Rational {
        if self.n_circuits == 0 {
            return Rational::zero();
        }
        Rational::new(BigInt::from(self.r * self.r), BigInt::from(self.n_circuits))
    }
}

/// `P(T = t)` for `T ~ Hypergeometric(N, r, r)`.
pub fn hypergeom_pmf(n_circuits: u64, r: u64, t: u64) -> Result<Rational> {
    if t > r || r > n_circuits {
        return Err(DiscError::pre(format!("need t ≤ r ≤ N, got t={t}, r={r}, N={n_circuits}")));
    }
    let num = big_binomial(r, t) * big_binomial(n_circuits - r, r - t);
    Ok(Rational::new(num, big_binomial(n_circuits, r)))
}

/// Poisson reference law with mean `λ = r²/N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonRef {
    lambda: Rational,
}

impl PoissonRef {
    pub fn new(n_circuits: u64, r: u64) -> Result<Self> {
        if n_circuits == 0 {
            return Err(DiscError::pre("N must be positive"));
        }
        Ok(Self { lambda: Rational::new(BigInt::from(r) * BigInt::from(r), BigInt::from(n_circuits)) })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// `e^{-λ} λ^t / t!` for `t < count`, each to `digits` places.
    pub fn pmf_terms(&self, count: u64, digits: u32) -> Vec<FixedDecimal> {
        let mut terms = Vec::with_capacity(count as usize);
        let mut p = FixedDecimal::exp_neg(&self.lambda, digits);
        for t in 0..count {
            if t > 0 {
                p = p.mul_ratio(self.lambda.numer(), &(self.lambda.denom() * BigInt::from(t)));
            }
            terms.push(p.clone());
        }
        terms
    }
}

/// `P(F ∩ G = ∅)` with the first-order log expansion alongside.
#[derive(Clone, Debug, PartialEq)]
pub struct DisjointProbability {
    pub exact: Rational,
    /// `log P`, or `-∞` when `P = 0`.
    pub log_value: f64,
    /// `−r²/N`.
    pub log_approx: f64,
    /// `|log P + r²/N|`.
    pub log_error: f64,
}

impl DisjointProbability {
    pub fn to_f64(&self) -> f64 {
        self.exact.to_f64().unwrap_or(0.0)
    }

    /// `1 − P` as the nearest `f64`.
    pub fn intersect_f64(&self) -> f64 {
        (Rational::one() - &self.exact).to_f64().unwrap_or(1.0)
    }
}

pub fn prob_disjoint(n_circuits: u64, r: u64) -> Result<DisjointProbability> {
    if r > MAX_DISJOINT_SUPPORT {
        return Err(DiscError::guard(format!("exact disjointness limited to r ≤ {MAX_DISJOINT_SUPPORT}, got {r}")));
    }
    let log_approx = if n_circuits == 0 { 0.0 } else { -((r * r) as f64) / n_circuits as f64 };
    if 2 * r > n_circuits {
        return Ok(DisjointProbability {
            exact: Rational::zero(),
            log_value: f64::NEG_INFINITY,
            log_approx,
            log_error: f64::INFINITY,
        });
    }
    // C(N−r, r)/C(N, r) = Π_{i<r} (N−r−i)/(N−i).
    let exact = Rational::new(
        range_product(n_circuits - 2 * r + 1, n_circuits - r + 1),
        range_product(n_circuits - r + 1, n_circuits + 1),
    );
    let log_value: f64 = (0..r).map(|i| (-(r as f64) / (n_circuits - i) as f64).ln_1p()).sum();
    Ok(DisjointProbability { exact, log_value, log_approx, log_error: (log_value - log_approx).abs() })
}

/// Total-variation distance between `Hypergeometric(N, r, r)` and
/// `Poisson(r²/N)`, over all of ℕ.
#[derive(Clone, Debug, PartialEq)]
pub struct TvReport {
    pub n_circuits: u64,
    pub r: u64,
    pub lambda: Rational,
    pub tv: FixedDecimal,
    /// `tv · N² / r³`; absent for `r = 0`.
    pub ratio: Option<FixedDecimal>,
}

#[derive(Serialize)]
struct TvJson {
    #[serde(rename = "N")]
    n_circuits: u64,
    r: u64,
    lambda: String,
    tv: String,
    ratio_tv_n2_r3: Option<String>,
}

impl TvReport {
    pub fn tv_f64(&self) -> f64 {
        self.tv.to_f64()
    }

    pub fn ratio_f64(&self) -> Option<f64> {
        self.ratio.as_ref().map(FixedDecimal::to_f64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TvJson {
            n_circuits: self.n_circuits,
            r: self.r,
            lambda: format_rational(&self.lambda),
            tv: self.tv.to_scientific(30),
            ratio_tv_n2_r3: self.ratio.as_ref().map(|x| x.to_scientific(30)),
        })
        .expect("serializable")
    }
}

pub fn tv_distance(n_circuits: u64, r: u64) -> Result<TvReport> {
    let law = OverlapLaw::new(n_circuits, r)?;
    let poisson = PoissonRef::new(n_circuits, r)?;
    let lambda_f64 = (r as f64) * (r as f64) / n_circuits as f64;
    if lambda_f64 > MAX_TV_LAMBDA {
        return Err(DiscError::guard(format!("Poisson mean {lambda_f64} exceeds {MAX_TV_LAMBDA}")));
    }
    // Headroom for e^{-λ}'s leading zeros and for rounding in r+1 steps.
    let work = TV_DIGITS + 20 + (lambda_f64 * std::f64::consts::LOG10_E).ceil() as u32 + (r + 2).ilog10() + 1;
    let terms = poisson.pmf_terms(r + 1, work);
    let mut gap = FixedDecimal::zero(work);
    let mut poisson_mass = FixedDecimal::zero(work);
    for (num, p) in law.numerators().iter().zip(&terms) {
        let h = FixedDecimal::from_ratio(num, law.denominator(), work);
        gap = gap.add(&h.sub(p).abs());
        poisson_mass = poisson_mass.add(p);
    }
    let tail = FixedDecimal::one(work).sub(&poisson_mass);
    let twice = gap.add(&tail);
    let tv = twice.mul_ratio(&BigInt::one(), &BigInt::from(2));
    let ratio = (r > 0).then(|| {
        let n2 = BigInt::from(n_circuits) * BigInt::from(n_circuits);
        let r3 = BigInt::from(r).pow(3);
        tv.mul_ratio(&n2, &r3).rescale(TV_DIGITS)
    });
    Ok(TvReport { n_circuits, r, lambda: poisson.lambda, tv: tv.rescale(TV_DIGITS), ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{int, rational};
    use proptest::prelude::*;

    /// Ordered pairs of `r`-subsets of `[n]` with empty intersection, by
    /// enumeration.
    fn disjoint_pairs_oracle(n: u32, r: u32) -> (u64, u64) {
        let subsets: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() == r).collect();
        let total = (subsets.len() * subsets.len()) as u64;
        let disjoint = subsets.iter().flat_map(|a| subsets.iter().map(move |b| a & b)).filter(|&x| x == 0).count();
        (disjoint as u64, total)
    }

    #[test]
    fn small_pmf_values() {
        assert_eq!(hypergeom_pmf(7, 0, 0).unwrap(), int(1));
        assert_eq!(hypergeom_pmf(10, 2, 0).unwrap(), rational(28, 45));
        assert_eq!(hypergeom_pmf(10, 2, 1).unwrap(), rational(16, 45));
        assert_eq!(hypergeom_pmf(10, 2, 2).unwrap(), rational(1, 45));
        assert!(hypergeom_pmf(10, 2, 3).is_err());
        assert!(hypergeom_pmf(3, 4, 0).is_err());
    }

    #[test]
    fn disjointness_oracle() {
        let (disjoint, total) = disjoint_pairs_oracle(10, 2);
        assert_eq!(total, 2025);
        assert_eq!(disjoint, 45 * 28);
        assert_eq!(Rational::new(disjoint.into(), total.into()), rational(28, 45));
        assert_eq!(prob_disjoint(10, 2).unwrap().exact, rational(28, 45));
        for n in 1..=9 {
            for r in 0..=n {
                let (d, t) = disjoint_pairs_oracle(n, r);
                let want = Rational::new(d.into(), t.into());
                assert_eq!(prob_disjoint(n.into(), r.into()).unwrap().exact, want, "N={n} r={r}");
                assert_eq!(OverlapLaw::new(n.into(), r.into()).unwrap().pmf(0), want);
            }
        }
    }

    #[test]
    fn disjoint_edge_cases() {
        assert_eq!(prob_disjoint(5, 0).unwrap().exact, int(1));
        assert_eq!(prob_disjoint(5, 3).unwrap().exact, int(0));
        assert_eq!(prob_disjoint(6, 3).unwrap().exact, rational(1, 20));
        let d = prob_disjoint(10_000, 100).unwrap();
        assert!((d.log_value - d.to_f64().ln()).abs() < 1e-12);
        // The log expansion's error is of order r³/N².
        assert!(d.log_error < 0.1);
        assert!((d.intersect_f64() - (1.0 - (-1.0f64).exp())).abs() < 0.01);
    }

    #[test]
    fn tv_edge_cases() {
        let zero = tv_distance(10, 0).unwrap();
        assert!(zero.tv.is_zero());
        assert!(zero.ratio.is_none());
        for n in [1u64, 2, 10, 1000] {
            // Bernoulli(1/N) against Poisson(1/N), in closed form.
            let report = tv_distance(n, 1).unwrap();
            let lambda = 1.0 / n as f64;
            let p = (-lambda).exp();
            let want = 0.5
                * (((1.0 - lambda) - p).abs() + (lambda - lambda * p).abs() + (1.0 - p - lambda * p));
            assert!(report.tv.is_positive());
            assert!((report.tv_f64() - want).abs() < 1e-12 * want.max(1e-300), "N={n}");
        }
    }

    #[test]
    fn tv_decreases_along_the_grid() {
        let tvs: Vec<f64> = [100u64, 1000, 10_000]
            .iter()
            .map(|&n| tv_distance(n, (n as f64).powf(0.4).floor() as u64).unwrap().tv_f64())
            .collect();
        assert!(tvs[0] > tvs[1] && tvs[1] > tvs[2], "{tvs:?}");
    }

    #[test]
    fn tv_agrees_with_a_float_oracle() {
        // Log-space f64 evaluation of both laws.
        let oracle = |n: u64, r: u64| -> f64 {
            let lnc = |a: u64, b: u64| -> f64 {
                (0..b).map(|i| ((a - i) as f64).ln() - ((i + 1) as f64).ln()).sum::<f64>()
            };
            let lambda = (r * r) as f64 / n as f64;
            let mut gap = 0.0;
            let mut mass = 0.0;
            let mut ln_fact = 0.0;
            for t in 0..=r {
                if t > 0 {
                    ln_fact += (t as f64).ln();
                }
                let h = if r - t > n - r { 0.0 } else { (lnc(r, t) + lnc(n - r, r - t) - lnc(n, r)).exp() };
                let p = (-lambda + t as f64 * lambda.ln() - ln_fact).exp();
                gap += (h - p).abs();
                mass += p;
            }
            0.5 * (gap + 1.0 - mass)
        };
        for (n, r) in [(100, 6), (1000, 15), (50, 7), (20, 10), (10_000, 39)] {
            let exact = tv_distance(n, r).unwrap().tv_f64();
            assert!((exact - oracle(n, r)).abs() < 1e-9, "N={n} r={r}: {exact} vs {}", oracle(n, r));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn law_is_normalized(n in 1u64..400, frac in 0.0f64..=1.0) {
            let r = (n as f64 * frac).floor() as u64;
            let law = OverlapLaw::new(n, r).unwrap();
            prop_assert_eq!(law.total(), int(1));
            prop_assert_eq!(law.pmf(0), prob_disjoint(n, r).unwrap().exact);
            let sum: Rational = law.probabilities().iter().sum();
            prop_assert_eq!(sum, int(1));
            let mean: Rational = law.probabilities().iter().enumerate()
                .map(|(t, p)| p * BigInt::from(t)).sum();
            prop_assert_eq!(mean, law.mean());
        }

        #[test]
        fn pmf_matches_table(n in 1u64..200, r_frac in 0.0f64..=1.0, t_frac in 0.0f64..=1.0) {
            let r = (n as f64 * r_frac).floor() as u64;
            let t = (r as f64 * t_frac).floor() as u64;
            prop_assert_eq!(hypergeom_pmf(n, r, t).unwrap(), OverlapLaw::new(n, r).unwrap().pmf(t));
        }

        #[test]
        fn tv_is_a_probability(n in 1u64..300, frac in 0.0f64..=1.0) {
            let r = (n as f64 * frac).floor() as u64;
            let tv = tv_distance(n, r).unwrap().tv;
            prop_assert!(tv >= FixedDecimal::zero(TV_DIGITS));
            prop_assert!(tv <= FixedDecimal::one(TV_DIGITS));
        }
    }
}
