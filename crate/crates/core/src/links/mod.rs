//! Vertex links of `X_n` in closed form and their assembly for general
//! defining graphs.

mod assemble;
mod defining;
mod synth;

pub use assemble::*;
pub use defining::*;
pub use synth::*;

use crate::link::LinkGraph;
use crate::metric::Angle;

/// Angular distance between two named link vertices; `None` when they lie
/// in different components or a name is unknown.
pub fn link_distance(link: &LinkGraph, x: &str, y: &str) -> Option<Angle> {
    link.distance(link.index_of(x)?, link.index_of(y)?)
}
