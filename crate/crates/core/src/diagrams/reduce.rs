//! Driving the move calculus to a CAT(0) nondegenerate reduced diagram, and
//! further to one whose flat vertices have injective stars.

use std::f64::consts::PI;

use super::disc::{DVertex, DiscDiagram};
use super::moves::*;
use super::AmbientOracle;
use crate::error::{Error, Result};
use crate::metric::TOL;

/// First 3-cycle that does not bound a triangle but encloses vertices.
fn find_a(d: &DiscDiagram) -> Option<(DiscDiagram, MoveRecord)> {
    let adj = d.adjacency();
    for (&a, na) in &adj {
        for &b in na.range(a + 1..) {
            for &c in adj[&b].range(b + 1..) {
                if na.contains(&c) {
                    if let Ok(res) = apply_a(d, a, b, c) {
                        return Some(res);
                    }
                }
            }
        }
    }
    None
}

fn find_c(d: &DiscDiagram) -> Option<(DiscDiagram, MoveRecord)> {
    d.edges()
        .into_iter()
        .filter(|&(a, b)| d.img(a) == d.img(b))
        .find_map(|(a, b)| apply_c(d, a, b).ok())
}

/// A B-move is only taken when the flipped diagonal is degenerate, which
/// always leaves an A- or C-move behind.
fn find_b(d: &DiscDiagram) -> Option<(DiscDiagram, MoveRecord)> {
    d.edges().into_iter().find_map(|(a, b)| apply_b(d, a, b).ok())
}

fn find_short(d: &DiscDiagram, oracle: &dyn AmbientOracle) -> Option<DVertex> {
    d.interior_vertices()
        .into_iter()
        .find(|&v| matches!(d.angle_sum(oracle, v), Ok(s) if s < 2.0 * PI - TOL))
}

/// Applies A, C, B and short-link fills until none applies. The result is
/// nondegenerate, reduced and CAT(0).
pub fn reduce(d: &DiscDiagram, oracle: &dyn AmbientOracle) -> Result<(DiscDiagram, Vec<MoveRecord>)> {
    let mut cur = d.clone();
    let mut log = Vec::new();
    loop {
        let step = find_a(&cur).or_else(|| find_c(&cur)).or_else(|| find_b(&cur));
        if let Some((next, rec)) = step {
            log::trace!("{rec}");
            log.push(rec);
            cur = next;
            continue;
        }
        if let Some(v) = find_short(&cur, oracle) {
            let (next, recs) = fill_short_link(&cur, oracle, v)?;
            log.extend(recs);
            cur = next;
            continue;
        }
        break;
    }
    if let Some((a, b)) = cur.edges().into_iter().find(|&(a, b)| cur.img(a) == cur.img(b)) {
        return Err(Error::Invariant(format!("degenerate edge {a}-{b} survived reduction")));
    }
    Ok((cur, log))
}

/// Pairs of link vertices of a flat interior vertex that share an image.
pub fn flat_star_collisions(d: &DiscDiagram, oracle: &dyn AmbientOracle) -> Vec<(DVertex, DVertex, DVertex)> {
    let mut out = Vec::new();
    for v in d.interior_vertices() {
        let Ok(sum) = d.angle_sum(oracle, v) else { continue };
        if (sum - 2.0 * PI).abs() > TOL {
            continue;
        }
        let Ok(link) = d.link_cycle(v) else { continue };
        for i in 0..link.len() {
            for j in i + 1..link.len() {
                if d.img(link[i]) == d.img(link[j]) {
                    out.push((v, link[i], link[j]));
                }
            }
        }
    }
    out
}

/// Like [`reduce`], and additionally removes every flat vertex whose closed
/// star is not mapped injectively, using F- and E-moves. When some flat
/// vertex admits neither move the configuration is logged and the current
/// diagram is returned.
pub fn reduce_flat(d: &DiscDiagram, oracle: &dyn AmbientOracle) -> Result<(DiscDiagram, Vec<MoveRecord>)> {
    let (mut cur, mut log) = reduce(d, oracle)?;
    'outer: loop {
        let collisions = flat_star_collisions(&cur, oracle);
        if collisions.is_empty() {
            break;
        }
        for &(v, w, z) in &collisions {
            let attempt = apply_f(&cur, v, w, z).or_else(|_| apply_e(&cur, oracle, v, w, z));
            if let Ok((next, recs)) = attempt {
                log.extend(recs);
                let (next, more) = reduce(&next, oracle)?;
                log.extend(more);
                cur = next;
                continue 'outer;
            }
        }
        let (v, w, z) = collisions[0];
        log::warn!("flat vertex {v} identifies {w} and {z} but neither an E- nor an F-move applies");
        break;
    }
    Ok((cur, log))
}

pub fn is_cat0(d: &DiscDiagram, oracle: &dyn AmbientOracle) -> Result<bool> {
    d.is_cat0(oracle)
}
