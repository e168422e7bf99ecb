//! Circuits of `B(n, k)` and the Johnson graph `J(n, k+1)` on them.
//!
//! A circuit is a `(k+1)`-subset of `{0, ..., n-1}` stored as a bitmask.
//! Circuits are numbered by colex rank, which also fixes the coordinate
//! order of the support hypercube.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{DiscError, Result};

/// Position of a circuit in colex order, in `[0, C(n, k+1))`.
pub type CircuitIndex = u64;

/// Largest vertex count for which Johnson statistics are cross-checked by
/// all-pairs BFS.
pub const JOHNSON_BFS_LIMIT: u64 = 5000;

/// Largest vertex count for which degrees are recounted vertex by vertex.
pub const JOHNSON_DEGREE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    bits: u64,
}

impl Circuit {
    pub fn from_bits(bits: u64) -> Self {
        Self { bits }
    }

    /// Builds a circuit from 0-based elements.
    pub fn from_elements(elements: &[usize]) -> Self {
        let bits = elements.iter().fold(0u64, |acc, &e| acc | 1 << e);
        Self { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn contains(self, element: usize) -> bool {
        element < 64 && self.bits >> element & 1 == 1
    }

    pub fn max_element(self) -> Option<usize> {
        (self.bits != 0).then(|| 63 - self.bits.leading_zeros() as usize)
    }

    /// 0-based elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// Image under a permutation of the ground set (`perm[i]` is the image of `i`).
    pub fn relabel(self, perm: &[usize]) -> Self {
        Self::from_bits(self.elements().fold(0, |acc, e| acc | 1 << perm[e]))
    }
}

/// 1-based set notation, e.g. `{1,2,4}`.
impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.elements().map(|e| (e + 1).to_string()).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits in u64")
}

/// All `size`-subsets of `{0, ..., n-1}` as bitmasks, in colex order.
pub fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = u64> {
    assert!(n <= 64, "subsets of more than 64 elements");
    let limit: u128 = 1 << n;
    let mut next: Option<u128> = (size <= n).then(|| (1u128 << size) - 1);
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack: next integer with the same popcount.
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            let candidate = (((ripple ^ current) >> 2) / low) | ripple;
            (candidate < limit).then_some(candidate)
        };
        Some(current as u64)
    })
}

/// Colex rank `sum_j C(e_j, j)` over the sorted elements `e_1 < ... < e_{k+1}`.
pub fn circuit_rank(c: Circuit, k: usize) -> Result<CircuitIndex> {
    if c.len() != k + 1 {
        return Err(DiscError::pre(format!("circuit {c} has {} elements, expected {}", c.len(), k + 1)));
    }
    Ok(c
        .elements()
        .enumerate()
        .map(|(j, e)| binomial(e as u64, j as u64 + 1))
        .sum())
}

/// Inverse of [`circuit_rank`] by greedy largest-binomial decoding.
pub fn circuit_unrank(index: CircuitIndex, n: usize, k: usize) -> Result<Circuit> {
    let total = binomial(n as u64, k as u64 + 1);
    if index >= total {
        return Err(DiscError::pre(format!("circuit index {index} out of range [0, {total})")));
    }
    let mut rest = index;
    let mut bits = 0u64;
    let mut top = n as u64;
    for j in (1..=k as u64 + 1).rev() {
        // Largest e < top with C(e, j) <= rest.
        let mut e = top - 1;
        while binomial(e, j) > rest {
            e -= 1;
        }
        rest -= binomial(e, j);
        bits |= 1 << e;
        top = e;
    }
    Ok(Circuit::from_bits(bits))
}

/// Circuits `I`, `J` are adjacent when they share exactly `k` elements.
pub fn johnson_adjacent(a: Circuit, b: Circuit) -> bool {
    a.len() == b.len() && (a.bits & b.bits).count_ones() as usize + 1 == a.len()
}

/// `(k+1) - |I ∩ J|`.
pub fn johnson_distance(a: Circuit, b: Circuit) -> usize {
    a.len() - (a.bits & b.bits).count_ones() as usize
}

/// Characteristic vector of a circuit: a vertex of the hypersimplex
/// `Δ(n, k+1)`.
pub fn hypersimplex_vertex(c: Circuit, n: usize) -> Vec<u8> {
    (0..n).map(|i| u8::from(c.contains(i))).collect()
}

/// The Johnson graph `J(n, k+1)`, with neighbors generated on demand.
#[derive(Clone, Copy, Debug)]
pub struct JohnsonGraph {
    pub n: usize,
    pub k: usize,
}

impl JohnsonGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < k + 1 || n > 64 {
            return Err(DiscError::pre(format!("Johnson graph needs k+1 <= n <= 64, got n={n}, k={k}")));
        }
        Ok(Self { n, k })
    }

    pub fn vertex_count(&self) -> u64 {
        binomial(self.n as u64, self.k as u64 + 1)
    }

    pub fn vertex(&self, index: CircuitIndex) -> Circuit {
        circuit_unrank(index, self.n, self.k).expect("index in range")
    }

    pub fn index(&self, c: Circuit) -> CircuitIndex {
        circuit_rank(c, self.k).expect("circuit of size k+1")
    }

    /// Swap one member out for one non-member.
    pub fn neighbors(&self, c: Circuit) -> Vec<Circuit> {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let outside = full & !c.bits;
        let mut out = Vec::with_capacity((self.k + 1) * (self.n - self.k - 1));
        for i in c.elements() {
            for j in (0..self.n).filter(|j| outside >> j & 1 == 1) {
                out.push(Circuit::from_bits(c.bits & !(1 << i) | 1 << j));
            }
        }
        out
    }

    pub fn degree_formula(&self) -> u64 {
        ((self.k + 1) * (self.n - self.k - 1)) as u64
    }

    pub fn diameter_formula(&self) -> u64 {
        (self.k + 1).min(self.n - self.k - 1) as u64
    }

    /// BFS distances from one vertex, indexed by circuit index.
    pub fn bfs(&self, source: Circuit) -> Vec<u32> {
        let count = self.vertex_count() as usize;
        let mut dist = vec![u32::MAX; count];
        let mut queue = VecDeque::new();
        dist[self.index(source) as usize] = 0;
        queue.push_back(source);
        while let Some(c) = queue.pop_front() {
            let d = dist[self.index(c) as usize];
            for nb in self.neighbors(c) {
                let slot = &mut dist[self.index(nb) as usize];
                if *slot == u32::MAX {
                    *slot = d + 1;
                    queue.push_back(nb);
                }
            }
        }
        dist
    }

    /// Graphviz rendering with 1-based set labels.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph johnson_{}_{} {{\n", self.n, self.k + 1);
        for i in 0..self.vertex_count() {
            out.push_str(&format!("  v{i} [label=\"{}\"];\n", self.vertex(i)));
        }
        for i in 0..self.vertex_count() {
            for nb in self.neighbors(self.vertex(i)) {
                let j = self.index(nb);
                if j > i {
                    out.push_str(&format!("  v{i} -- v{j};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A permutation of `[n]` carrying one circuit onto another, shown to be a
/// graph automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityWitness {
    pub from: String,
    pub to: String,
    /// 1-based images: `permutation[i-1]` is the image of `i`.
    pub permutation: Vec<usize>,
    pub maps_from_to: bool,
    /// `None` when the graph is too large to check every edge.
    pub preserves_adjacency: Option<bool>,
}

/// Permutation sending the members of `from` to the members of `to` in
/// increasing order, and the non-members likewise.
pub fn relabelling(n: usize, from: Circuit, to: Circuit) -> Vec<usize> {
    let mut perm = vec![0; n];
    let src_in = from.elements();
    let dst_in = to.elements();
    for (s, d) in src_in.zip(dst_in) {
        perm[s] = d;
    }
    let src_out = (0..n).filter(|&i| !from.contains(i));
    let dst_out = (0..n).filter(|&i| !to.contains(i));
    for (s, d) in src_out.zip(dst_out) {
        perm[s] = d;
    }
    perm
}

pub fn transitivity_witness(graph: &JohnsonGraph, from: Circuit, to: Circuit) -> TransitivityWitness {
    let perm = relabelling(graph.n, from, to);
    let preserves_adjacency = (graph.vertex_count() <= JOHNSON_BFS_LIMIT).then(|| {
        (0..graph.vertex_count()).all(|i| {
            let c = graph.vertex(i);
            let image = c.relabel(&perm);
            graph.neighbors(c).into_iter().all(|nb| johnson_adjacent(image, nb.relabel(&perm)))
        })
    });
    TransitivityWitness {
        from: from.to_string(),
        to: to.to_string(),
        permutation: perm.iter().map(|p| p + 1).collect(),
        maps_from_to: from.relabel(&perm) == to,
        preserves_adjacency,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JohnsonStats {
    pub n: usize,
    pub k: usize,
    pub vertices: u64,
    /// `(k+1)(n-k-1)`.
    pub degree: u64,
    /// `min{k+1, n-k-1}`.
    pub diameter: u64,
    /// Smallest and largest degree found by explicit neighbor counting.
    pub counted_degree_range: Option<(u64, u64)>,
    pub bfs_diameter: Option<u64>,
    /// Whether the distance formula agrees with BFS on every pair.
    pub distance_formula_matches_bfs: Option<bool>,
    pub is_vertex_transitive_witness: TransitivityWitness,
}

impl JohnsonStats {
    /// Every cross-check that ran agreed with the closed forms.
    pub fn consistent(&self) -> bool {
        self.counted_degree_range.is_none_or(|(lo, hi)| lo == self.degree && hi == self.degree)
            && self.bfs_diameter.is_none_or(|d| d == self.diameter)
            && self.distance_formula_matches_bfs.unwrap_or(true)
            && self.is_vertex_transitive_witness.maps_from_to
            && self.is_vertex_transitive_witness.preserves_adjacency.unwrap_or(true)
    }
}

pub fn johnson_stats(n: usize, k: usize) -> Result<JohnsonStats> {
    let graph = JohnsonGraph::new(n, k)?;
    let vertices = graph.vertex_count();

    let counted_degree_range = if vertices <= JOHNSON_BFS_LIMIT {
        // Pairwise adjacency scan, independent of neighbor generation.
        let all: Vec<Circuit> = (0..vertices).map(|i| graph.vertex(i)).collect();
        let degrees = all.iter().map(|&a| all.iter().filter(|&&b| johnson_adjacent(a, b)).count() as u64);
        Some(min_max(degrees))
    } else if vertices <= JOHNSON_DEGREE_LIMIT {
        Some(min_max((0..vertices).map(|i| graph.neighbors(graph.vertex(i)).len() as u64)))
    } else {
        None
    };

    let (bfs_diameter, distance_formula_matches_bfs) = if vertices <= JOHNSON_BFS_LIMIT {
        let mut diameter = 0u64;
        let mut matches = true;
        for i in 0..vertices {
            let source = graph.vertex(i);
            let dist = graph.bfs(source);
            for (j, &d) in dist.iter().enumerate() {
                diameter = diameter.max(u64::from(d));
                matches &= d as usize == johnson_distance(source, graph.vertex(j as u64));
            }
        }
        (Some(diameter), Some(matches))
    } else {
        (None, None)
    };

    let first = graph.vertex(0);
    let last = graph.vertex(vertices - 1);
    Ok(JohnsonStats {
        n,
        k,
        vertices,
        degree: graph.degree_formula(),
        diameter: graph.diameter_formula(),
        counted_degree_range,
        bfs_diameter,
        distance_formula_matches_bfs,
        is_vertex_transitive_witness: transitivity_witness(&graph, first, last),
    })
}

fn min_max(values: impl Iterator<Item = u64>) -> (u64, u64) {
    values.fold((u64::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn c(elements: &[usize]) -> Circuit {
        Circuit::from_elements(elements)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(circuit_rank(c(&[0, 1, 2]), 2).unwrap(), 0);
        assert_eq!(circuit_rank(c(&[0, 1, 3]), 2).unwrap(), 1);
        assert_eq!(circuit_rank(c(&[1, 2, 3]), 2).unwrap(), 3);
        assert!(circuit_rank(c(&[0, 1]), 2).is_err());
    }

    #[test]
    fn unrank_examples() {
        for (n, k) in [(5, 1), (7, 2), (8, 3)] {
            assert_eq!(circuit_unrank(0, n, k).unwrap(), Circuit::from_bits((1 << (k + 1)) - 1));
            let last = binomial(n as u64, k as u64 + 1) - 1;
            let top: Vec<usize> = (n - k - 1..n).collect();
            assert_eq!(circuit_unrank(last, n, k).unwrap(), c(&top));
            assert!(circuit_unrank(last + 1, n, k).is_err());
        }
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 1..=8 {
            for k in 0..=3usize {
                if k + 1 > n {
                    continue;
                }
                let total = binomial(n as u64, k as u64 + 1);
                let listed: Vec<u64> = subsets_of_size(n, k + 1).collect();
                assert_eq!(listed.len() as u64, total);
                for i in 0..total {
                    let circuit = circuit_unrank(i, n, k).unwrap();
                    assert_eq!(circuit.bits(), listed[i as usize], "colex order");
                    assert_eq!(circuit_rank(circuit, k).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn subsets_edge_cases() {
        assert_eq!(subsets_of_size(4, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(64, 64).collect::<Vec<_>>(), vec![u64::MAX]);
        assert_eq!(subsets_of_size(64, 63).count(), 64);
    }

    #[test]
    fn adjacency_and_distance_examples() {
        // 1-based labels {1,2}, {2,3}, {3,4} are 0-based {0,1}, {1,2}, {2,3}.
        assert!(johnson_adjacent(c(&[0, 1]), c(&[1, 2])));
        assert!(!johnson_adjacent(c(&[0, 1]), c(&[2, 3])));
        assert!(!johnson_adjacent(c(&[0, 1]), c(&[0, 1])));
        assert_eq!(johnson_distance(c(&[0, 1]), c(&[0, 1])), 0);
        assert_eq!(johnson_distance(c(&[0, 1]), c(&[2, 3])), 2);
    }

    #[test]
    fn distance_formula_matches_bfs_exhaustively() {
        for n in 1..=7 {
            for k in 0..=3usize {
                if k + 1 > n {
                    continue;
                }
                let graph = JohnsonGraph::new(n, k).unwrap();
                for i in 0..graph.vertex_count() {
                    let source = graph.vertex(i);
                    assert_eq!(graph.neighbors(source).len() as u64, graph.degree_formula());
                    for nb in graph.neighbors(source) {
                        assert!(johnson_adjacent(source, nb));
                    }
                    for (j, d) in graph.bfs(source).into_iter().enumerate() {
                        assert_eq!(d as usize, johnson_distance(source, graph.vertex(j as u64)));
                    }
                }
            }
        }
    }

    #[test]
    fn stats_examples() {
        let s = johnson_stats(5, 1).unwrap();
        assert_eq!((s.vertices, s.degree, s.diameter), (10, 6, 2));
        assert_eq!(s.bfs_diameter, Some(2));
        assert_eq!(s.counted_degree_range, Some((6, 6)));
        assert!(s.consistent());

        let s = johnson_stats(6, 2).unwrap();
        assert_eq!((s.vertices, s.degree, s.diameter), (20, 9, 3));
        assert!(s.consistent());

        let s = johnson_stats(4, 3).unwrap();
        assert_eq!((s.vertices, s.degree, s.diameter), (1, 0, 0));
        assert_eq!(s.bfs_diameter, Some(0));
        assert!(s.consistent());
    }

    #[test]
    fn hypersimplex_examples() {
        assert_eq!(hypersimplex_vertex(c(&[0, 1]), 4), vec![1, 1, 0, 0]);
        let graph = JohnsonGraph::new(5, 1).unwrap();
        for i in 0..graph.vertex_count() {
            let a = graph.vertex(i);
            let va = hypersimplex_vertex(a, 5);
            assert_eq!(va.iter().map(|&x| x as usize).sum::<usize>(), 2);
            for j in 0..graph.vertex_count() {
                let b = graph.vertex(j);
                let vb = hypersimplex_vertex(b, 5);
                let hamming = va.iter().zip(&vb).filter(|(x, y)| x != y).count();
                assert_eq!(johnson_adjacent(a, b), hamming == 2);
            }
        }
    }

    #[test]
    fn relabelling_preserves_distance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let graph = JohnsonGraph::new(7, 2).unwrap();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..7).collect();
            perm.shuffle(&mut rng);
            for i in (0..graph.vertex_count()).step_by(3) {
                for j in (0..graph.vertex_count()).step_by(5) {
                    let (a, b) = (graph.vertex(i), graph.vertex(j));
                    assert_eq!(johnson_distance(a.relabel(&perm), b.relabel(&perm)), johnson_distance(a, b));
                }
            }
        }
    }

    #[test]
    fn witness_maps_given_vertices() {
        let graph = JohnsonGraph::new(6, 2).unwrap();
        let w = transitivity_witness(&graph, c(&[0, 2, 4]), c(&[1, 3, 5]));
        assert!(w.maps_from_to);
        assert_eq!(w.preserves_adjacency, Some(true));
        assert_eq!(w.from, "{1,3,5}");
    }

    #[test]
    fn dot_labels_are_one_based() {
        let dot = JohnsonGraph::new(4, 1).unwrap().to_dot();
        assert!(dot.contains("label=\"{1,2}\""));
        assert_eq!(dot.matches(" -- ").count(), 6 * 4 / 2);
    }
}
