//! Exact geometry of triangles with vertices on the integer lattice.
//!
//! The crate answers one question in many forms: for which lattice
//! perimeters can a triangle of a given shape have its circumcenter,
//! centroid, orthocenter or incenter on the lattice? Everything is computed
//! with big integers and rationals; floating point appears only in display
//! code and search prefilters that are always followed by an exact check.

pub mod centers;
pub mod constructions;
pub mod enumerator;
pub mod error;
pub mod feasibility;
pub mod incenter;
pub mod lattice;
pub mod tangent;

pub use centers::{center_report, CenterReport, Condition, RationalPoint};
pub use error::{Error, Result};
pub use lattice::{lattice_length, LatticePoint, LatticeTriangle, Parity, ShapeClass};
