//! Exact-arithmetic toolkit for the Hodge theory of Landau-Ginzburg mirrors
//! of crepant resolutions of Gorenstein toric Fano threefolds.
//!
//! The pipeline starts from a reflexive lattice polytope, computes its polar
//! dual, enumerates faces with their lattice point counts, evaluates the
//! closed Hodge-number formulas on both sides of the pair, assembles the two
//! Hodge diamonds, and machine-checks the mirror pairing together with the
//! combinatorial identities it rests on. A census module parses polytope
//! databases and runs the whole verification in batch.

// Coordinate math on [i64; 3] reads best with explicit index loops.
#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod diamond;
pub mod error;
pub mod faces;
pub mod hodge;
pub mod lattice;
pub mod snf;
pub mod sphere;

pub use error::{Error, ParseError, Result};
pub use faces::{DualPair, Face, FaceLattice, FaceRef, Side};
pub use lattice::{
    convex_hull, is_reflexive, polar_dual, FacetInequality, LatticePoint, LatticePolytope,
};
