use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use super::Mode;
use crate::error::{DiscError, Result};
use crate::lattice::Support;

/// Distance-matrix entry for pairs in different components.
pub const UNREACHABLE: u16 = u16::MAX;

/// Largest vertex count for which a cover graph and its all-pairs
/// distance matrix are built.
pub const MAX_GRAPH_VERTICES: usize = 5000;

/// How edges between admissible supports are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphReading {
    /// Hasse diagram of support containment (lattice covers).
    Hasse,
    /// Admissible supports differing in exactly one circuit.
    Toggle,
}

impl GraphReading {
    pub fn name(self) -> &'static str {
        match self {
            GraphReading::Hasse => "hasse",
            GraphReading::Toggle => "toggle",
        }
    }
}

/// Undirected graph on admissible supports.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    width: usize,
    vertices: Vec<Support>,
    index: HashMap<Support, usize>,
    adjacency: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl CoverGraph {
    /// Vertices follow lattice id order (FREE mode: the same canonical
    /// order on all `2^N` supports).
    pub fn build(mode: &Mode<'_>, reading: GraphReading) -> Result<Self> {
        let width = mode.width();
        match mode {
            Mode::Free { .. } => {
                if width > 12 {
                    return Err(DiscError::guard(format!(
                        "FREE mode with N={width} has 2^{width} supports (limit {MAX_GRAPH_VERTICES})"
                    )));
                }
                let mut vertices: Vec<Support> = (0u64..1 << width).map(Support).collect();
                vertices.sort_by_key(|s| s.canonical_key(width));
                Ok(Self::toggle_graph(width, vertices))
            }
            Mode::Geometric(lat) => {
                if lat.len() > MAX_GRAPH_VERTICES {
                    return Err(DiscError::guard(format!(
                        "lattice has {} elements (limit {MAX_GRAPH_VERTICES})",
                        lat.len()
                    )));
                }
                let vertices: Vec<Support> = lat.elements().iter().map(|e| e.support).collect();
                Ok(match reading {
                    GraphReading::Hasse => Self::from_parts(width, vertices, lat.covers().to_vec()),
                    GraphReading::Toggle => Self::toggle_graph(width, vertices),
                })
            }
        }
    }

    fn toggle_graph(width: usize, vertices: Vec<Support>) -> Self {
        let index: HashMap<Support, usize> = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for bit in (0..width).filter(|&b| !v.contains(b)) {
                if let Some(&j) = index.get(&v.with(bit)) {
                    edges.push((i.min(j), i.max(j)));
                }
            }
        }
        Self::from_parts(width, vertices, edges)
    }

    /// Graph from explicit vertices and edges (pairs of vertex positions).
    pub fn from_parts(width: usize, vertices: Vec<Support>, edges: Vec<(usize, usize)>) -> Self {
        let index = vertices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        edges.dedup();
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { width, vertices, index, adjacency, edges }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Support] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> Support {
        self.vertices[id]
    }

    pub fn id_of(&self, f: Support) -> Option<usize> {
        self.index.get(&f).copied()
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, id: usize) -> &[usize] {
        &self.adjacency[id]
    }

    pub fn bfs(&self, source: usize) -> Vec<u16> {
        let mut dist = vec![UNREACHABLE; self.len()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if dist[v] == UNREACHABLE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// All-pairs BFS.
    pub fn distances(&self) -> DistanceMatrix {
        let rows: Vec<Vec<u16>> = (0..self.len()).into_par_iter().map(|s| self.bfs(s)).collect();
        DistanceMatrix { size: self.len(), entries: rows.concat() }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<u16>,
}

impl DistanceMatrix {
    pub fn get(&self, a: usize, b: usize) -> u16 {
        self.entries[a * self.size + b]
    }

    pub fn row(&self, a: usize) -> &[u16] {
        &self.entries[a * self.size..(a + 1) * self.size]
    }

    pub fn size(&self) -> usize {
        self.size
    }
}
