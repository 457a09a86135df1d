//! Link of a real vertex in the complex of a general Artin group, glued
//! from one real-vertex link per labelled edge.

use std::collections::HashMap;

use super::defining::DefiningGraph;
use super::synth::{interior_link, real_link_tagged};
use crate::complex::VertexKind;
use crate::error::Result;
use crate::link::LinkGraph;
use crate::metric::polygon_edge_length;

/// Name of the interior vertex `local` of the block for edge `e`.
pub fn block_vertex_name(graph: &DefiningGraph, e: usize, local: &str) -> String {
    let edge = &graph.edges()[e];
    format!("{}@{}-{}", local, graph.name(edge.s), graph.name(edge.t))
}

/// Glues `real_link(n)` for every edge `(s, t, n)`, renaming `a -> s`,
/// `b -> t`. Real link vertices with equal names are identified; interior
/// ones stay private to their block. Each block is rescaled so Cayley edges
/// have length 1. Edges carry the index of their defining edge as block tag.
pub fn assemble_gamma_real_link(graph: &DefiningGraph) -> Result<LinkGraph> {
    let mut link = LinkGraph::new("v");
    let mut real: HashMap<String, usize> = HashMap::new();
    for name in graph.names() {
        for dir in ["i", "o"] {
            let v = format!("{name}^{dir}");
            real.insert(v.clone(), link.add_vertex(v, VertexKind::Real, 1.0));
        }
    }
    for (e, edge) in graph.edges().iter().enumerate() {
        let block = real_link_tagged(edge.label, Some(e))?;
        let scale = 1.0 / polygon_edge_length(edge.label)?;
        let (s, t) = (graph.name(edge.s), graph.name(edge.t));
        let mut map = Vec::with_capacity(block.vertex_count());
        for v in block.vertices() {
            let idx = match v.kind {
                VertexKind::Real => {
                    let renamed = match v.name.as_str() {
                        "a^i" => format!("{s}^i"),
                        "a^o" => format!("{s}^o"),
                        "b^i" => format!("{t}^i"),
                        _ => format!("{t}^o"),
                    };
                    real[&renamed]
                }
                VertexKind::Interior => link.add_vertex(
                    block_vertex_name(graph, e, &v.name),
                    VertexKind::Interior,
                    v.radius * scale,
                ),
            };
            map.push(idx);
        }
        for be in block.edges() {
            link.add_metric_edge(map[be.a], map[be.b], be.length * scale, Some(e))?;
        }
    }
    Ok(link)
}

/// Link of an interior vertex of the block for edge `e`: a block is a full
/// subcomplex containing every neighbour, so this is `interior_link(n)`.
pub fn gamma_interior_link(graph: &DefiningGraph, e: usize) -> Result<LinkGraph> {
    let mut g = interior_link(graph.edges()[e].label)?;
    g.center = format!(
        "o@{}-{}",
        graph.name(graph.edges()[e].s),
        graph.name(graph.edges()[e].t)
    );
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::links::real_link;

    #[test]
    fn single_edge_is_real_link() {
        for n in 2..=6 {
            let g = DefiningGraph::parse(&format!("s t {n}")).unwrap();
            let a = assemble_gamma_real_link(&g).unwrap();
            a.validate().unwrap();
            let b = real_link(n).unwrap();
            // radii differ by the block scale, so compare angles only
            assert_eq!(a.vertex_count(), b.vertex_count());
            assert_eq!(a.edge_count(), b.edge_count());
            let mut x: Vec<f64> = a.edges().iter().map(|e| e.angle).collect();
            let mut y: Vec<f64> = b.edges().iter().map(|e| e.angle).collect();
            x.sort_by(f64::total_cmp);
            y.sort_by(f64::total_cmp);
            assert!(x.iter().zip(&y).all(|(p, q)| (p - q).abs() < 1e-12));
        }
    }

    #[test]
    fn isolated_generators() {
        let g = DefiningGraph::parse("N x\na b 3").unwrap();
        let l = assemble_gamma_real_link(&g).unwrap();
        assert_eq!(l.vertex_count(), 2 + 10);
        let xi = l.index_of("x^i").unwrap();
        assert!(l.neighbors(xi).is_empty());
    }
}
