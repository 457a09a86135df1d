//! Singular disc diagrams over metric complexes, the move calculus that
//! turns any filling into a CAT(0) one, cycle filling and Dehn scans.

mod dehn;
mod disc;
mod fill;
mod moves;
mod reduce;
mod svg;

pub use dehn::*;
pub use disc::*;
pub use fill::*;
pub use moves::*;
pub use reduce::*;
pub use svg::*;

use crate::complex::{MetricComplex, VertexId};

/// Read-only view of the ambient complex a diagram maps into. Triangles are
/// not queried separately: the ambient complex is flag.
pub trait AmbientOracle: Sync {
    fn contains(&self, v: VertexId) -> bool;
    fn edge_length(&self, a: VertexId, b: VertexId) -> Option<f64>;
    fn neighbors(&self, v: VertexId) -> Vec<VertexId>;

    fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_length(a, b).is_some()
    }
}

impl AmbientOracle for MetricComplex {
    fn contains(&self, v: VertexId) -> bool {
        MetricComplex::contains(self, v)
    }

    fn edge_length(&self, a: VertexId, b: VertexId) -> Option<f64> {
        MetricComplex::edge_length(self, a, b)
    }

    fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        MetricComplex::neighbors(self, v).iter().map(|&(w, _)| w).collect()
    }
}
