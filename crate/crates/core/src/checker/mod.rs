//! Deciding 2π-largeness of links by exhaustive search over 2-full simple
//! cycles, and classifying short cycles of assembled links by the blocks
//! they cross.
//!
//! A simple cycle of length `k >= 4` is 2-full when no two vertices at
//! distance two along the cycle are joined by an edge of the link.

mod classify;
mod search;

pub use classify::*;
pub use search::*;

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::link::LinkGraph;
use crate::metric::{Angle, TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct CycleWitness {
    /// Cyclic sequence of link vertex indices, least vertex first.
    pub vertices: Vec<usize>,
    pub angular_length: Angle,
    pub two_full: bool,
    /// Block tag of each edge `vertices[i] -> vertices[i+1]` (cyclically).
    pub block_trace: Vec<Option<usize>>,
}

impl CycleWitness {
    /// Builds a witness for `cycle`, checking it is a simple cycle of the link.
    pub fn from_cycle(link: &LinkGraph, cycle: &[usize]) -> Result<CycleWitness> {
        let k = cycle.len();
        if k < 3 {
            return Err(Error::Domain(format!("a cycle needs at least 3 vertices, got {k}")));
        }
        let mut seen = vec![false; link.vertex_count()];
        let mut total = 0.0;
        let mut trace = Vec::with_capacity(k);
        for i in 0..k {
            let (x, y) = (cycle[i], cycle[(i + 1) % k]);
            if x >= seen.len() || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Domain(format!("cycle is not simple at vertex {x}")));
            }
            let e = link
                .edge_between(x, y)
                .ok_or_else(|| Error::Domain(format!("no link edge between {x} and {y}")))?;
            total += e.angle;
            trace.push(e.block);
        }
        let two_full = k >= 4 && is_two_full(link, cycle)?;
        Ok(CycleWitness {
            vertices: cycle.to_vec(),
            angular_length: Angle::new(total)?,
            two_full,
            block_trace: trace,
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex names joined by commas.
    pub fn names(&self, link: &LinkGraph) -> String {
        self.vertices
            .iter()
            .map(|&v| link.vertex(v).name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// True when no two vertices two apart on `cycle` are adjacent in `link`.
pub fn is_two_full(link: &LinkGraph, cycle: &[usize]) -> Result<bool> {
    let k = cycle.len();
    if k < 4 {
        return Err(Error::Domain(format!(
            "2-fullness is defined for cycles of length >= 4, got {k}"
        )));
    }
    Ok((0..k).all(|i| !link.adjacent(cycle[i], cycle[(i + 2) % k])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub large: bool,
    /// Shortest 2-full cycle found below the search cutoff.
    pub witness: Option<CycleWitness>,
}

/// Passes when every 2-full simple cycle has angular length at least
/// `2π - TOL`.
pub fn is_2pi_large(link: &LinkGraph) -> Verdict {
    let witness = min_two_full_cycle(link);
    let large = witness.as_ref().is_none_or(|w| w.angular_length.radians() >= TAU - TOL);
    Verdict { large, witness }
}
