//! Verification toolkit for metrically systolic complexes of two-dimensional
//! Artin groups.
//!
//! The crate builds the complexes `X_n` for dihedral Artin groups, synthesizes
//! and assembles vertex links, decides 2pi-largeness by exhaustive cycle
//! search, and rewrites singular disc diagrams into CAT(0) ones.

pub mod checker;
pub mod complex;
pub mod diagrams;
pub mod dihedral;
pub mod error;
pub mod link;
pub mod links;
pub mod metric;
pub mod par;

pub use complex::{MetricComplex, VertexId, VertexKind};
pub use error::{Error, Result};
pub use link::{extract_link, LinkGraph};
pub use metric::{corner_angle, phi, polygon_edge_length, Angle};
