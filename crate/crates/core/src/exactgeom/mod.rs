//! Exact linear algebra and the discriminantal hyperplanes.
//!
//! A base arrangement is `n` hyperplanes in `R^k` given by their normals
//! `a_1, ..., a_n` (rows of an `n x k` matrix). Translating hyperplane `i`
//! by `alpha_i` gives a point `alpha` of translate space `R^n`; the
//! hyperplane `D_I` of `B(n, k)` collects the `alpha` for which the `k+1`
//! translates indexed by `I` pass through a common point.

mod matrix;
mod rational;

pub use matrix::{
    bareiss_eliminate, determinant, dot, in_span, integer_determinant, integer_rank, integer_row,
    kernel_basis, rank, rref, RationalMatrix,
};
pub use rational::{format_rational, int, parse_rational, primitive_integer_vector, rational, Rational};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuits::{subsets_of_size, Circuit};
use crate::error::{DiscError, Result};

/// Random base-normal entries are integers in `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 10_000;

/// Maximum number of rejected row samples before generation gives up.
pub const MAX_RESAMPLE_ROUNDS: usize = 1000;

/// Input data from which the whole of `B(n, k)` is derived.
///
/// Construction certifies general position: every `k x k` minor of the
/// normal matrix is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub struct ArrangementSpec {
    n: usize,
    k: usize,
    seed: u64,
    normals: RationalMatrix,
}

impl ArrangementSpec {
    /// Random certified-generic normals, deterministic in `(n, k, seed)`.
    pub fn generate(n: usize, k: usize, seed: u64) -> Result<Self> {
        let normals = generate_generic_normals(n, k, seed)?;
        Ok(Self { n, k, seed, normals })
    }

    /// Wraps user-supplied normals after checking shape and genericity.
    pub fn from_normals(normals: RationalMatrix, seed: u64) -> Result<Self> {
        let n = normals.rows();
        let k = normals.cols();
        check_shape(n, k)?;
        certify_generic(&normals)?;
        Ok(Self { n, k, seed, normals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn normals(&self) -> &RationalMatrix {
        &self.normals
    }

    /// Number of circuits, `C(n, k+1)`.
    pub fn circuit_count(&self) -> u64 {
        crate::circuits::binomial(self.n as u64, self.k as u64 + 1)
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if k < 1 || n < k + 1 {
        return Err(DiscError::pre(format!("need n >= k+1 >= 2, got n={n}, k={k}")));
    }
    if n > 64 {
        return Err(DiscError::guard(format!("n={n} exceeds the 64-element circuit bitmask")));
    }
    Ok(())
}

/// Checks that every `k x k` minor of an `n x k` matrix is nonzero.
pub fn certify_generic(normals: &RationalMatrix) -> Result<()> {
    let k = normals.cols();
    let rows = normals.integer_rows();
    for subset in subsets_of_size(normals.rows(), k) {
        let minor: Vec<Vec<BigInt>> = bits(subset).map(|i| rows[i].clone()).collect();
        if integer_determinant(&minor).is_zero() {
            let labels: Vec<String> = bits(subset).map(|i| (i + 1).to_string()).collect();
            return Err(DiscError::NotGeneric(format!(
                "minor on rows {{{}}} vanishes",
                labels.join(",")
            )));
        }
    }
    Ok(())
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// An `n x k` integer matrix with every `k x k` minor nonzero.
///
/// Rows are drawn one at a time; a candidate row is rejected while it
/// completes a vanishing minor with earlier rows.
pub fn generate_generic_normals(n: usize, k: usize, seed: u64) -> Result<RationalMatrix> {
    check_shape(n, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut rejected = 0;
    while rows.len() < n {
        let candidate: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(rng.random_range(-ENTRY_BOUND..=ENTRY_BOUND)))
            .collect();
        if completes_generic(&rows, &candidate, k) {
            rows.push(candidate);
        } else {
            rejected += 1;
            if rejected >= MAX_RESAMPLE_ROUNDS {
                return Err(DiscError::GenerationFailed { rounds: rejected });
            }
        }
    }
    let entries = rows.into_iter().flatten().map(Rational::from_integer).collect();
    RationalMatrix::new(n, k, entries)
}

fn completes_generic(rows: &[Vec<BigInt>], candidate: &[BigInt], k: usize) -> bool {
    if rows.len() + 1 < k {
        return true;
    }
    subsets_of_size(rows.len(), k - 1).all(|others| {
        let mut minor: Vec<Vec<BigInt>> = bits(others).map(|i| rows[i].clone()).collect();
        minor.push(candidate.to_vec());
        !integer_determinant(&minor).is_zero()
    })
}

/// Normal vector of `D_I` in translate space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantalNormal {
    pub circuit: Circuit,
    pub vector: Vec<Rational>,
}

/// Normal of `D_I` as the cofactor expansion of `det[A_I | alpha_I]` along
/// the translate column.
///
/// With `I = {i_1 < ... < i_{k+1}}` (1-based position `j`), coordinate
/// `i_j` is `(-1)^(j+k+1) det(A_I without row j)`; all other coordinates
/// are zero.
pub fn discriminantal_normal(spec: &ArrangementSpec, circuit: Circuit) -> Result<DiscriminantalNormal> {
    let k = spec.k;
    if circuit.len() != k + 1 {
        return Err(DiscError::pre(format!("circuit {} does not have k+1={} elements", circuit, k + 1)));
    }
    if circuit.max_element().is_some_and(|e| e >= spec.n) {
        return Err(DiscError::pre(format!("circuit {} is not a subset of [{}]", circuit, spec.n)));
    }
    let members: Vec<usize> = circuit.elements().collect();
    let mut vector = vec![Rational::zero(); spec.n];
    for (j, &row) in members.iter().enumerate() {
        let others: Vec<usize> = members.iter().copied().filter(|&r| r != row).collect();
        let minor = determinant(&spec.normals.select_rows(&others))?;
        if minor.is_zero() {
            return Err(DiscError::NotGeneric(format!("cofactor for circuit {circuit} vanishes")));
        }
        // 1-based sign exponent j + k + 1 with j counted from 1.
        vector[row] = if (j + k + 2).is_multiple_of(2) { minor } else { -minor };
    }
    Ok(DiscriminantalNormal { circuit, vector })
}

/// All discriminantal normals in circuit-index order, as primitive integer
/// vectors (same rays, cheaper arithmetic).
pub fn integer_normals(spec: &ArrangementSpec) -> Result<Vec<Vec<BigInt>>> {
    let count = spec.circuit_count();
    (0..count)
        .map(|i| {
            let c = crate::circuits::circuit_unrank(i, spec.n, spec.k)?;
            Ok(primitive_integer_vector(&discriminantal_normal(spec, c)?.vector))
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    n: usize,
    k: usize,
    seed: u64,
    normals: Vec<Vec<String>>,
}

impl From<ArrangementSpec> for SpecJson {
    fn from(spec: ArrangementSpec) -> Self {
        let normals = spec
            .normals
            .iter_rows()
            .map(|row| row.iter().map(format_rational).collect())
            .collect();
        SpecJson { n: spec.n, k: spec.k, seed: spec.seed, normals }
    }
}

impl TryFrom<SpecJson> for ArrangementSpec {
    type Error = DiscError;

    fn try_from(json: SpecJson) -> Result<Self> {
        let rows = json
            .normals
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != json.n {
            return Err(DiscError::Parse(format!("{} normal rows for n={}", rows.len(), json.n)));
        }
        let normals = RationalMatrix::from_rows(json.k, rows)?;
        Self::from_normals(normals, json.seed)
    }
}
