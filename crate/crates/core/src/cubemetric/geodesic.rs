//! Single-circuit toggle sequences between two supports.
//!
//! With `S = F(X) △ F(Y)`, a state is the subset of `S` toggled so far. A
//! state is *good* when it is admissible, reachable from the empty state
//! through admissible states, and can still reach the full state the same
//! way. Good states are exactly the states visited by complete admissible
//! sequences, which turns every question about those sequences into a pass
//! over at most `2^12` states.

use serde_json::{json, Value};

use super::Mode;
use crate::error::{DiscError, Result};
use crate::lattice::Support;

/// Largest `|F(X) △ F(Y)|` accepted by the sequence search.
pub const MAX_GEODESIC_SPAN: usize = 12;

/// Largest number of paths `geodesics` will list explicitly.
pub const MAX_LISTED_PATHS: u64 = 1_000_000;

/// Precedence forced on the toggles of `S` by admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependencyPoset {
    pub from: Support,
    pub to: Support,
    pub mode: &'static str,
    /// Circuit indices of `S`, increasing.
    pub ground: Vec<usize>,
    /// `(I, J)` meaning `I` must be toggled before `J`.
    pub relations: Vec<(usize, usize)>,
    /// False when no complete admissible sequence exists; the relation is
    /// then vacuously total in both directions and not a partial order.
    pub consistent: bool,
}

impl DependencyPoset {
    pub fn to_json(&self, width: usize) -> Value {
        json!({
            "from": self.from.to_bitstring(width),
            "to": self.to.to_bitstring(width),
            "mode": self.mode,
            "ground": self.ground,
            "relations": self.relations.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "consistent": self.consistent,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicSet {
    /// Complete admissible toggle sequences from `F(X)` to `F(Y)`.
    pub count: u64,
    /// Linear extensions of the dependency poset.
    pub linear_extensions: u64,
    pub agrees: bool,
    /// Each path lists toggled circuit indices; sorted lexicographically.
    pub paths: Option<Vec<Vec<usize>>>,
    pub poset: DependencyPoset,
}

impl GeodesicSet {
    pub fn to_json(&self, width: usize) -> Value {
        json!({
            "count": self.count,
            "linear_extensions": self.linear_extensions,
            "agrees": self.agrees,
            "paths": self.paths,
            "poset": self.poset.to_json(width),
        })
    }
}

struct StateSpace {
    ground: Vec<usize>,
    admissible: Vec<bool>,
    /// Number of admissible sequences from the empty state.
    forward: Vec<u64>,
    good: Vec<bool>,
}

impl StateSpace {
    fn explore(f: Support, g: Support, mode: &Mode<'_>) -> Result<Self> {
        let diff = f ^ g;
        let ground: Vec<usize> = diff.iter().collect();
        let m = ground.len();
        if m > MAX_GEODESIC_SPAN {
            return Err(DiscError::guard(format!(
                "|F(X) △ F(Y)| = {m} exceeds the sequence-search limit {MAX_GEODESIC_SPAN}"
            )));
        }
        let states = 1usize << m;
        let support_at = |state: usize| {
            (0..m).filter(|&i| state >> i & 1 == 1).fold(f, |acc, i| acc.toggle(ground[i]))
        };
        let admissible: Vec<bool> = (0..states).map(|s| mode.admits(support_at(s))).collect();

        let mut forward = vec![0u64; states];
        forward[0] = u64::from(admissible[0]);
        for s in 1..states {
            if admissible[s] {
                forward[s] = (0..m).filter(|&i| s >> i & 1 == 1).map(|i| forward[s ^ 1 << i]).sum();
            }
        }
        let full = states - 1;
        let mut backward = vec![false; states];
        backward[full] = admissible[full];
        for s in (0..full).rev() {
            backward[s] = admissible[s] && (0..m).any(|i| s >> i & 1 == 0 && backward[s | 1 << i]);
        }
        let good = (0..states).map(|s| forward[s] > 0 && backward[s]).collect();
        Ok(Self { ground, admissible, forward, good })
    }

    fn m(&self) -> usize {
        self.ground.len()
    }

    fn count(&self) -> u64 {
        self.forward[self.forward.len() - 1] * u64::from(self.good[self.good.len() - 1])
    }

    /// `preds[b]` has bit `a` set when `a ⪯ b`: no good state has toggled
    /// `b` while `a` is still pending.
    fn predecessors(&self) -> Vec<u32> {
        let m = self.m();
        let mut preds = vec![0u32; m];
        for (b, slot) in preds.iter_mut().enumerate() {
            for a in (0..m).filter(|&a| a != b) {
                let violated = self
                    .good
                    .iter()
                    .enumerate()
                    .any(|(s, &ok)| ok && s >> b & 1 == 1 && s >> a & 1 == 0);
                if !violated {
                    *slot |= 1 << a;
                }
            }
        }
        preds
    }

    fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut trail = Vec::with_capacity(self.m());
        if self.good[0] {
            self.walk(0, &mut trail, &mut out);
        }
        out
    }

    fn walk(&self, state: usize, trail: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if state == self.good.len() - 1 {
            out.push(trail.clone());
            return;
        }
        for i in 0..self.m() {
            let next = state | 1 << i;
            if next != state && self.good[next] {
                debug_assert!(self.admissible[next]);
                trail.push(self.ground[i]);
                self.walk(next, trail, out);
                trail.pop();
            }
        }
    }
}

pub fn dependency_poset(f: Support, g: Support, mode: &Mode<'_>) -> Result<DependencyPoset> {
    let space = StateSpace::explore(f, g, mode)?;
    Ok(poset_from(&space, f, g, mode, &space.predecessors()))
}

fn poset_from(space: &StateSpace, f: Support, g: Support, mode: &Mode<'_>, preds: &[u32]) -> DependencyPoset {
    let mut relations = Vec::new();
    for (b, &mask) in preds.iter().enumerate() {
        for a in (0..space.m()).filter(|&a| mask >> a & 1 == 1) {
            relations.push((space.ground[a], space.ground[b]));
        }
    }
    relations.sort_unstable();
    DependencyPoset {
        from: f,
        to: g,
        mode: mode.name(),
        ground: space.ground.clone(),
        relations,
        consistent: space.count() > 0,
    }
}

/// Counts and optionally lists geodesic toggle sequences, and compares the
/// count with the number of linear extensions of the dependency poset.
pub fn geodesics(f: Support, g: Support, mode: &Mode<'_>, enumerate: bool) -> Result<GeodesicSet> {
    let space = StateSpace::explore(f, g, mode)?;
    let preds = space.predecessors();
    let count = space.count();
    let linear_extensions = count_linear_extensions(space.m(), &preds);
    let paths = if enumerate {
        if count > MAX_LISTED_PATHS {
            return Err(DiscError::guard(format!("{count} geodesics exceed the listing limit {MAX_LISTED_PATHS}")));
        }
        Some(space.paths())
    } else {
        None
    };
    Ok(GeodesicSet {
        count,
        linear_extensions,
        agrees: count == linear_extensions,
        paths,
        poset: poset_from(&space, f, g, mode, &preds),
    })
}

/// Linear extensions of a relation on `m <= 32` points, where `preds[b]`
/// is the bitmask of points required before `b`. Cyclic relations have none.
pub fn count_linear_extensions(m: usize, preds: &[u32]) -> u64 {
    assert!(m <= 32 && preds.len() == m);
    let states = 1usize << m;
    let mut ways = vec![0u64; states];
    ways[0] = 1;
    for placed in 0..states {
        if ways[placed] == 0 {
            continue;
        }
        for (b, &need) in preds.iter().enumerate() {
            if placed >> b & 1 == 0 && (need as usize) & !placed == 0 {
                ways[placed | 1 << b] += ways[placed];
            }
        }
    }
    ways[states - 1]
}
