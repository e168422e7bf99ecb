//! The support metric on lattice elements.
//!
//! Each element is identified with the characteristic vector of its support
//! in `{0,1}^N`. Everything here runs in one of two modes:
//!
//! * [`Mode::Free`] admits every support: the idealized hypercube.
//! * [`Mode::Geometric`] admits only the closed supports of a built
//!   [`Lattice`].
//!
//! Graph-level checks of the metric claims live in [`verify`].

mod geodesic;
mod graph;
pub mod verify;

pub use geodesic::{
    count_linear_extensions, dependency_poset, geodesics, DependencyPoset, GeodesicSet, MAX_GEODESIC_SPAN,
    MAX_LISTED_PATHS,
};
pub use graph::{CoverGraph, DistanceMatrix, GraphReading, UNREACHABLE};

use crate::error::{DiscError, Result};
use crate::lattice::{Lattice, Support};

/// Which supports count as vertices.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    Free { width: usize },
    Geometric(&'a Lattice),
}

impl<'a> Mode<'a> {
    pub fn free(width: usize) -> Result<Self> {
        if width > 64 {
            return Err(DiscError::guard(format!("{width} circuits exceed the 64-bit support width")));
        }
        Ok(Mode::Free { width })
    }

    pub fn width(&self) -> usize {
        match self {
            Mode::Free { width } => *width,
            Mode::Geometric(lat) => lat.width(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Free { .. } => "free",
            Mode::Geometric(_) => "geometric",
        }
    }

    pub fn admits(&self, f: Support) -> bool {
        match self {
            Mode::Free { width } => f.is_subset(Support::full(*width)),
            Mode::Geometric(lat) => lat.is_closed(f),
        }
    }

    pub fn lattice(&self) -> Option<&'a Lattice> {
        match self {
            Mode::Free { .. } => None,
            Mode::Geometric(lat) => Some(lat),
        }
    }
}

/// Hamming distance `|F △ G|`.
pub fn distance(f: Support, g: Support) -> usize {
    (f ^ g).len()
}

/// Coordinatewise majority `(f∧g) ∨ (g∧h) ∨ (h∧f)`.
pub fn majority(f: Support, g: Support, h: Support) -> Support {
    (f & g) | (g & h) | (h & f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Median {
    pub support: Support,
    pub admissible: bool,
}

pub fn median(f: Support, g: Support, h: Support, mode: &Mode<'_>) -> Median {
    let support = majority(f, g, h);
    Median { support, admissible: mode.admits(support) }
}
