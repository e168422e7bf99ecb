//! The intersection lattice `L(B(n, k))` as a closure system on supports.
//!
//! Every `D_I` passes through the origin of translate space, so every
//! intersection is nonempty and a family of circuits is a lattice element
//! exactly when it is closed: it already contains every circuit whose
//! normal lies in the span of its normals.
//!
//! Closure is decided through the kernel: with `X` the common zero set of
//! the normals in `F`, a circuit `J` belongs to the closure of `F` iff the
//! normal of `D_J` annihilates a basis of `X`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::circuit_unrank;
use crate::error::{DiscError, Result};
use crate::exactgeom::{dot, integer_normals, kernel_basis, rref, ArrangementSpec, Rational, RationalMatrix};

/// Largest circuit count a support bitset can hold.
pub const MAX_CIRCUITS: u64 = 64;

/// Largest number of lattice elements `build_lattice` will enumerate.
pub const MAX_ELEMENTS: usize = 1_000_000;

/// A set of circuits, bit `i` standing for the circuit of colex index `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support(pub u64);

impl Support {
    pub const EMPTY: Support = Support(0);

    /// All `width` circuits.
    pub fn full(width: usize) -> Self {
        if width >= 64 {
            Support(u64::MAX)
        } else {
            Support((1 << width) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        Support(1 << index)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> Self {
        Support(self.0 | 1 << index)
    }

    pub fn toggle(self, index: usize) -> Self {
        Support(self.0 ^ 1 << index)
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn minus(self, other: Support) -> Self {
        Support(self.0 & !other.0)
    }

    /// Circuit indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// `width` characters, index 0 leftmost.
    pub fn to_bitstring(self, width: usize) -> String {
        (0..width).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    pub fn parse_bitstring(text: &str) -> Result<(Support, usize)> {
        let text = text.trim();
        if text.len() > 64 {
            return Err(DiscError::Parse(format!("support of {} bits exceeds 64", text.len())));
        }
        let mut bits = 0u64;
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(DiscError::Parse(format!("not a bitstring: {text:?}"))),
            }
        }
        Ok((Support(bits), text.len()))
    }

    /// The bitstring read as a binary number (index 0 most significant).
    pub fn binary_value(self, width: usize) -> u64 {
        if width == 0 {
            return 0;
        }
        self.0.reverse_bits() >> (64 - width)
    }

    /// Sort key shared by lattice elements and FREE-mode vertices:
    /// by size, then by the bitstring as a binary number.
    pub fn canonical_key(self, width: usize) -> (usize, u64) {
        (self.len(), self.binary_value(width))
    }

    /// 1-based circuit sets, e.g. `{{1,2},{1,3}}`.
    pub fn describe(self, n: usize, k: usize) -> String {
        let parts: Vec<String> = self
            .iter()
            .map(|i| circuit_unrank(i as u64, n, k).map_or_else(|_| format!("#{i}"), |c| c.to_string()))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl BitOr for Support {
    type Output = Support;
    fn bitor(self, rhs: Support) -> Support {
        Support(self.0 | rhs.0)
    }
}

impl BitAnd for Support {
    type Output = Support;
    fn bitand(self, rhs: Support) -> Support {
        Support(self.0 & rhs.0)
    }
}

impl BitXor for Support {
    type Output = Support;
    fn bitxor(self, rhs: Support) -> Support {
        Support(self.0 ^ rhs.0)
    }
}

impl Not for Support {
    type Output = Support;
    fn not(self) -> Support {
        Support(!self.0)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// A closed support together with the linear data that certifies it.
#[derive(Clone, Debug)]
struct Flat {
    support: Support,
    rank: usize,
    basis: RationalMatrix,
}

/// Discriminantal normals of one arrangement, ready for closure queries.
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    n: usize,
    normals: Vec<Vec<BigInt>>,
}

impl ClosureSystem {
    pub fn new(spec: &ArrangementSpec) -> Result<Self> {
        if spec.circuit_count() > MAX_CIRCUITS {
            return Err(DiscError::guard(format!(
                "B({},{}) has {} circuits, supports hold at most {MAX_CIRCUITS}; lower n",
                spec.n(),
                spec.k(),
                spec.circuit_count()
            )));
        }
        Ok(Self { n: spec.n(), normals: integer_normals(spec)? })
    }

    pub fn width(&self) -> usize {
        self.normals.len()
    }

    /// `{J : normal(J) in span{normal(I) : I in f}}`.
    pub fn closure(&self, f: Support) -> Support {
        self.flat_of_rows(self.rows_of(f)).support
    }

    /// Rank of the normals indexed by `f`, i.e. the codimension of `X_f`.
    pub fn rank_of(&self, f: Support) -> usize {
        self.flat_of_rows(self.rows_of(f)).rank
    }

    fn rows_of(&self, f: Support) -> Vec<Vec<Rational>> {
        f.iter().filter(|&i| i < self.width()).map(|i| to_rational(&self.normals[i])).collect()
    }

    fn flat_of_rows(&self, rows: Vec<Vec<Rational>>) -> Flat {
        let m = RationalMatrix::from_rows(self.n, rows).expect("normals have n coordinates");
        let (reduced, _) = rref(&m);
        let kernel = kernel_basis(&m);
        let support = self
            .normals
            .iter()
            .enumerate()
            .filter(|(_, normal)| kernel.iter().all(|x| dot(normal, x).is_zero()))
            .fold(Support::EMPTY, |acc, (i, _)| acc.with(i));
        let rank = reduced.len();
        let basis = RationalMatrix::from_rows(self.n, reduced).expect("rref rows have n coordinates");
        Flat { support, rank, basis }
    }

    /// Closed supports covering-candidates of `flat`: one closure per circuit
    /// not yet accounted for.
    ///
    /// For `J` outside a closed `F`, `cl(F + J)` has rank one more than `F`,
    /// so every circuit inside an already found extension yields that same
    /// extension and is skipped.
    fn extensions(&self, flat: &Flat) -> Vec<Flat> {
        let mut seen = flat.support;
        let mut out = Vec::new();
        for j in 0..self.width() {
            if seen.contains(j) {
                continue;
            }
            let mut rows: Vec<Vec<Rational>> = flat.basis.iter_rows().map(<[Rational]>::to_vec).collect();
            rows.push(to_rational(&self.normals[j]));
            let child = self.flat_of_rows(rows);
            seen = seen | child.support;
            out.push(child);
        }
        out
    }
}

fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Closure of a support under the arrangement's span relation.
pub fn closure(spec: &ArrangementSpec, f: Support) -> Result<Support> {
    Ok(ClosureSystem::new(spec)?.closure(f))
}

#[derive(Clone, Debug)]
pub struct LatticeElement {
    pub id: usize,
    pub support: Support,
    /// Codimension of the intersection.
    pub rank: usize,
    /// Row basis (reduced echelon form) of the span of the support's normals.
    pub basis: RationalMatrix,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    spec: ArrangementSpec,
    width: usize,
    elements: Vec<LatticeElement>,
    levels: Vec<Vec<usize>>,
    covers: Vec<(usize, usize)>,
    index: HashMap<Support, usize>,
}

/// Enumerates every closed support by breadth-first extension from the
/// bottom element, then grades and orders them.
///
/// Elements are sorted by rank, then by support read as a binary number
/// with index 0 most significant; ids follow that order.
pub fn build_lattice(spec: &ArrangementSpec) -> Result<Lattice> {
    let system = ClosureSystem::new(spec)?;
    let bottom = system.flat_of_rows(Vec::new());
    let mut found: HashMap<Support, Flat> = HashMap::new();
    let mut children: HashMap<Support, Vec<Support>> = HashMap::new();
    found.insert(bottom.support, bottom.clone());
    let mut frontier = vec![bottom];
    while !frontier.is_empty() {
        let expanded: Vec<Vec<Flat>> = frontier.par_iter().map(|flat| system.extensions(flat)).collect();
        let mut next = Vec::new();
        for (parent, kids) in frontier.iter().zip(expanded) {
            children.insert(parent.support, kids.iter().map(|c| c.support).collect());
            for kid in kids {
                if let Entry::Vacant(slot) = found.entry(kid.support) {
                    slot.insert(kid.clone());
                    next.push(kid);
                }
            }
        }
        if found.len() > MAX_ELEMENTS {
            return Err(DiscError::guard(format!(
                "B({},{}) has more than {MAX_ELEMENTS} lattice elements; lower n",
                spec.n(),
                spec.k()
            )));
        }
        next.sort_by_key(|f| f.support.canonical_key(system.width()));
        frontier = next;
    }

    let width = system.width();
    let mut flats: Vec<Flat> = found.into_values().collect();
    flats.sort_by_key(|f| (f.rank, f.support.binary_value(width)));
    let elements: Vec<LatticeElement> = flats
        .into_iter()
        .enumerate()
        .map(|(id, f)| LatticeElement { id, support: f.support, rank: f.rank, basis: f.basis })
        .collect();
    let index: HashMap<Support, usize> = elements.iter().map(|e| (e.support, e.id)).collect();

    let max_rank = elements.last().map_or(0, |e| e.rank);
    let mut levels = vec![Vec::new(); max_rank + 1];
    for e in &elements {
        levels[e.rank].push(e.id);
    }

    // Every minimal strict upper bound of x is the closure of x plus one
    // circuit, so the covers of x are the inclusion-minimal extensions.
    let mut covers = Vec::new();
    for e in &elements {
        let ext: Vec<Support> = children.get(&e.support).cloned().unwrap_or_default();
        let mut ups: Vec<usize> = ext
            .iter()
            .filter(|&&c| !ext.iter().any(|&d| d != c && d.is_subset(c)))
            .map(|c| index[c])
            .collect();
        ups.sort_unstable();
        ups.dedup();
        covers.extend(ups.into_iter().map(|u| (e.id, u)));
    }
    covers.sort_unstable();

    Ok(Lattice { spec: spec.clone(), width, elements, levels, covers, index })
}

impl Lattice {
    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    /// Number of circuits `N`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: usize) -> &LatticeElement {
        &self.elements[id]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Hasse diagram edges `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn bottom(&self) -> &LatticeElement {
        &self.elements[0]
    }

    pub fn top(&self) -> &LatticeElement {
        self.elements.last().expect("lattice has a bottom element")
    }

    pub fn id_of(&self, f: Support) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn is_closed(&self, f: Support) -> bool {
        self.index.contains_key(&f)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.elements[x].support.is_subset(self.elements[y].support)
    }

    /// Element counts per rank.
    pub fn rank_counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn summary(&self) -> LatticeSummary {
        LatticeSummary {
            n: self.spec.n(),
            k: self.spec.k(),
            circuits: self.width,
            elements: self.len(),
            covers: self.covers.len(),
            elements_per_rank: self.rank_counts(),
        }
    }

    /// Both lattices have the same closed supports (same labelled lattice).
    pub fn same_labelled_lattice(&self, other: &Lattice) -> bool {
        self.width == other.width
            && self.elements.len() == other.elements.len()
            && self.elements.iter().zip(&other.elements).all(|(a, b)| a.support == b.support && a.rank == b.rank)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            spec: self.spec.clone(),
            circuit_count: self.width,
            elements: self
                .elements
                .iter()
                .map(|e| ElementJson { id: e.id, support: e.support.to_bitstring(self.width), rank: e.rank })
                .collect(),
            covers: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
            levels: self.levels.clone(),
        }
    }

    /// Cover graph in Graphviz syntax, one same-rank cluster per level.
    pub fn to_dot(&self) -> String {
        let (n, k) = (self.spec.n(), self.spec.k());
        let mut out = format!("digraph lattice_B_{n}_{k} {{\n  rankdir=BT;\n");
        for (r, ids) in self.levels.iter().enumerate() {
            out.push_str(&format!("  subgraph cluster_rank_{r} {{\n    label=\"rank {r}\";\n    rank=same;\n"));
            for &id in ids {
                let label = self.elements[id].support.describe(n, k);
                out.push_str(&format!("    x{id} [label=\"{label}\"];\n"));
            }
            out.push_str("  }\n");
        }
        for &(lo, hi) in &self.covers {
            out.push_str(&format!("  x{lo} -> x{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The element with support `f`, if `f` is closed.
pub fn element_by_support(lat: &Lattice, f: Support) -> Option<&LatticeElement> {
    lat.id_of(f).map(|id| lat.element(id))
}

/// Ids `z` with `F(x) ⊆ F(z) ⊆ F(y)`, sorted by rank then support.
pub fn interval(lat: &Lattice, x: usize, y: usize) -> Result<Vec<usize>> {
    if x >= lat.len() || y >= lat.len() {
        return Err(DiscError::pre(format!("element id out of range (lattice has {})", lat.len())));
    }
    if !lat.leq(x, y) {
        return Err(DiscError::pre(format!("element {x} is not below element {y}")));
    }
    let (lo, hi) = (lat.element(x).support, lat.element(y).support);
    Ok(lat
        .elements()
        .iter()
        .filter(|e| lo.is_subset(e.support) && e.support.is_subset(hi))
        .map(|e| e.id)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub n: usize,
    pub k: usize,
    pub circuits: usize,
    pub elements: usize,
    pub covers: usize,
    pub elements_per_rank: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementJson {
    pub id: usize,
    pub support: String,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeJson {
    pub spec: ArrangementSpec,
    #[serde(rename = "N")]
    pub circuit_count: usize,
    pub elements: Vec<ElementJson>,
    pub covers: Vec<[usize; 2]>,
    pub levels: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::Circuit;
    use crate::exactgeom::{in_span, integer_rank, rank};
    use rand::{Rng, SeedableRng};

    fn support_of(n: usize, k: usize, circuits: &[&[usize]]) -> Support {
        circuits.iter().fold(Support::EMPTY, |acc, c| {
            let idx = crate::circuits::circuit_rank(Circuit::from_elements(c), k).unwrap();
            assert!(n > *c.iter().max().unwrap());
            acc.with(idx as usize)
        })
    }

    // Independent closure: J joins F iff appending normal(J) keeps the
    // Bareiss rank of the stack unchanged.
    fn closure_by_rank(normals: &[Vec<BigInt>], f: Support) -> Support {
        let rows: Vec<Vec<BigInt>> = f.iter().map(|i| normals[i].clone()).collect();
        let base = integer_rank(&rows);
        (0..normals.len()).fold(Support::EMPTY, |acc, j| {
            let mut with = rows.clone();
            with.push(normals[j].clone());
            if integer_rank(&with) == base {
                acc.with(j)
            } else {
                acc
            }
        })
    }

    fn brute_force_closed_sets(spec: &ArrangementSpec) -> Vec<Support> {
        let normals = integer_normals(spec).unwrap();
        let width = normals.len();
        let mut out: Vec<Support> = (0u64..1 << width).map(|f| closure_by_rank(&normals, Support(f))).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    // Brute-force transitive reduction of support containment.
    fn covers_by_full_order(lat: &Lattice) -> Vec<(usize, usize)> {
        let es = lat.elements();
        let lt = |a: usize, b: usize| a != b && es[a].support.is_subset(es[b].support);
        let mut out = Vec::new();
        for x in 0..es.len() {
            for y in 0..es.len() {
                if lt(x, y) && !(0..es.len()).any(|z| lt(x, z) && lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    #[test]
    fn closure_examples() {
        let spec = ArrangementSpec::generate(4, 2, 1).unwrap();
        let sys = ClosureSystem::new(&spec).unwrap();
        assert_eq!(sys.closure(Support::EMPTY), Support::EMPTY);
        let pair = support_of(4, 2, &[&[0, 1, 2], &[0, 1, 3]]);
        assert_eq!(sys.closure(pair), Support::full(4));
        assert_eq!(sys.rank_of(pair), 2);
    }

    #[test]
    fn singletons_are_closed() {
        for (n, k) in [(4, 1), (5, 1), (6, 1), (4, 2), (5, 2), (6, 2), (5, 3), (6, 3)] {
            let spec = ArrangementSpec::generate(n, k, 8).unwrap();
            let sys = ClosureSystem::new(&spec).unwrap();
            let normals = integer_normals(&spec).unwrap();
            for i in 0..sys.width() {
                assert_eq!(sys.closure(Support::singleton(i)), Support::singleton(i));
                let basis = RationalMatrix::from_rows(n, vec![to_rational(&normals[i])]).unwrap();
                for j in (0..sys.width()).filter(|&j| j != i) {
                    assert!(!in_span(&to_rational(&normals[j]), &basis).unwrap());
                }
            }
        }
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let spec = ArrangementSpec::generate(5, 2, 4).unwrap();
        let sys = ClosureSystem::new(&spec).unwrap();
        let normals = integer_normals(&spec).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let f = Support(rng.random::<u64>() & rng.random::<u64>() & rng.random::<u64>() & 0x3ff);
            let g = f | Support(rng.random::<u64>() & 0x3ff);
            let cf = sys.closure(f);
            assert!(f.is_subset(cf));
            assert_eq!(sys.closure(cf), cf);
            assert!(cf.is_subset(sys.closure(g)));
            assert_eq!(cf, closure_by_rank(&normals, f));
        }
    }

    #[test]
    fn closure_preserves_rank_exhaustively() {
        let spec = ArrangementSpec::generate(4, 2, 9).unwrap();
        let sys = ClosureSystem::new(&spec).unwrap();
        for f in 0u64..16 {
            let f = Support(f);
            assert_eq!(sys.rank_of(sys.closure(f)), sys.rank_of(f));
        }
    }

    #[test]
    fn braid_lattice_b31() {
        let spec = ArrangementSpec::generate(3, 1, 1).unwrap();
        let lat = build_lattice(&spec).unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.rank_counts(), vec![1, 3, 1]);
        assert_eq!(lat.covers().len(), 6);
        assert_eq!(lat.bottom().support, Support::EMPTY);
        assert_eq!(lat.top().support, Support::full(3));
        // Sorted by binary value with index 0 leftmost: 001 < 010 < 100.
        let atoms: Vec<String> = lat.levels()[1].iter().map(|&i| lat.element(i).support.to_bitstring(3)).collect();
        assert_eq!(atoms, ["001", "010", "100"]);
    }

    #[test]
    fn bell_numbers_for_k1() {
        for (n, bell) in [(3, 5), (4, 15), (5, 52)] {
            let spec = ArrangementSpec::generate(n, 1, 6).unwrap();
            let lat = build_lattice(&spec).unwrap();
            assert_eq!(lat.len(), bell);
            let mut supports: Vec<Support> = lat.elements().iter().map(|e| e.support).collect();
            supports.sort_unstable();
            assert_eq!(supports, brute_force_closed_sets(&spec));
            assert_eq!(lat.rank_counts().iter().sum::<usize>(), bell);
        }
    }

    #[test]
    fn lattice_invariants_b42_and_b52() {
        for (n, k, seed) in [(4, 2, 3), (5, 2, 5), (5, 3, 2)] {
            let spec = ArrangementSpec::generate(n, k, seed).unwrap();
            let lat = build_lattice(&spec).unwrap();
            let sys = ClosureSystem::new(&spec).unwrap();
            let normals = integer_normals(&spec).unwrap();
            if lat.width() <= 10 {
                let mut supports: Vec<Support> = lat.elements().iter().map(|e| e.support).collect();
                supports.sort_unstable();
                assert_eq!(supports, brute_force_closed_sets(&spec));
            }
            assert_eq!(lat.covers(), covers_by_full_order(&lat).as_slice());
            for e in lat.elements() {
                assert_eq!(sys.closure(e.support), e.support);
                let rows: Vec<Vec<BigInt>> = e.support.iter().map(|i| normals[i].clone()).collect();
                assert_eq!(e.rank, integer_rank(&rows));
                assert_eq!(e.basis.rows(), e.rank);
                assert_eq!(rank(&e.basis), e.rank);
            }
            // Support containment agrees with span containment.
            for a in lat.elements() {
                for b in lat.elements() {
                    let spans = a.basis.iter_rows().all(|row| in_span(row, &b.basis).unwrap());
                    assert_eq!(a.support.is_subset(b.support), spans);
                }
            }
        }
    }

    #[test]
    fn element_lookup() {
        let spec = ArrangementSpec::generate(4, 2, 1).unwrap();
        let lat = build_lattice(&spec).unwrap();
        let bottom = element_by_support(&lat, Support::EMPTY).unwrap();
        assert_eq!((bottom.id, bottom.rank), (0, 0));
        for e in lat.elements() {
            assert_eq!(element_by_support(&lat, e.support).unwrap().id, e.id);
        }
        let pair = support_of(4, 2, &[&[0, 1, 2], &[0, 1, 3]]);
        assert!(element_by_support(&lat, pair).is_none());
    }

    #[test]
    fn interval_examples() {
        let spec = ArrangementSpec::generate(3, 1, 1).unwrap();
        let lat = build_lattice(&spec).unwrap();
        let top = lat.top().id;
        assert_eq!(interval(&lat, 2, 2).unwrap(), vec![2]);
        assert_eq!(interval(&lat, 0, top).unwrap(), (0..lat.len()).collect::<Vec<_>>());
        assert_eq!(interval(&lat, 0, 1).unwrap(), vec![0, 1]);
        assert!(interval(&lat, 1, 2).is_err());
        assert!(interval(&lat, top, 0).is_err());
    }

    #[test]
    fn json_layout() {
        let spec = ArrangementSpec::generate(3, 1, 1).unwrap();
        let lat = build_lattice(&spec).unwrap();
        let text = crate::json::to_canonical_string(&lat.to_json());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["N"], 3);
        assert_eq!(value["elements"][0]["support"], "000");
        assert_eq!(value["elements"][4]["support"], "111");
        assert_eq!(value["levels"][1].as_array().unwrap().len(), 3);
        assert_eq!(value["covers"].as_array().unwrap().len(), 6);
        assert!(lat.to_dot().contains("cluster_rank_2"));
    }

    #[test]
    fn guard_on_wide_instances() {
        let spec = ArrangementSpec::generate(9, 2, 1).unwrap();
        assert!(matches!(build_lattice(&spec), Err(DiscError::Guard(_))));
    }

    #[test]
    fn support_bitstrings() {
        let (s, w) = Support::parse_bitstring("0101").unwrap();
        assert_eq!(w, 4);
        assert_eq!(s, Support(0b1010));
        assert_eq!(s.to_bitstring(4), "0101");
        assert_eq!(s.binary_value(4), 0b0101);
        assert!(Support::parse_bitstring("01x").is_err());
        assert_eq!(Support(0b11).describe(3, 1), "{{1,2},{1,3}}");
    }
}
