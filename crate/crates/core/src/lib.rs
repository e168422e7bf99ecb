//! Exact toolkit for discriminantal arrangements `B(n, k)`.
//!
//! The crate is split along the objects it manipulates:
//!
//! * [`exactgeom`]: exact rational linear algebra and the discriminantal
//!   hyperplane normals built from a certified-generic base arrangement.
//! * [`circuits`]: `(k+1)`-subsets of `[n]`, their colex indexing and the
//!   Johnson graph they span.
//! * [`lattice`]: the intersection lattice as a closure system on circuit
//!   supports, with rank grading and cover relations.
//! * [`cubemetric`]: the support metric (hypercube embedding, medians,
//!   geodesics, interval cubes) and graph-level checks of it.
//! * [`randover`]: overlap statistics of random circuit supports, exact and
//!   Monte Carlo.
//!
//! Circuits are 0-based internally. Anything rendered for people uses
//! 1-based labels.

pub mod circuits;
pub mod cubemetric;
pub mod error;
pub mod exactgeom;
pub mod json;
pub mod lattice;
pub mod randover;

pub use error::{DiscError, Result};

/// Version of the JSON/CSV output formats written by this crate.
pub const FORMAT_SCHEMA_VERSION: u32 = 1;
