//! Structural audits of precell intersections in a built `X_n` piece.

use std::collections::{HashMap, HashSet};

use super::xn::{Half, Intersection, XVertex, XnBall};
use crate::complex::VertexId;
use crate::metric::{phi, strict_triangle, FORMULA_TOL};
use crate::par;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct AuditReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(parts: Vec<AuditReport>) -> AuditReport {
        let mut out = AuditReport::default();
        for p in parts {
            out.checked += p.checked;
            out.violations.extend(p.violations);
        }
        out
    }
}

/// Per precell: intersections with every precell it meets, by index.
fn intersections(ball: &XnBall) -> Vec<Vec<(usize, Result<Intersection, String>)>> {
    let nbrs = ball.precell_neighbors();
    par::map_range(0..ball.precells.len(), |i| {
        nbrs[i]
            .iter()
            .map(|&j| {
                let r = ball
                    .precell_intersection(&ball.precells[i], &ball.precells[j])
                    .map_err(|e| e.to_string());
                (j, r)
            })
            .collect()
    })
}

/// Every pair of meeting precells classifies cleanly, and a shared path of at
/// least one edge is a proper part of one half of each.
pub fn audit_intersections(ball: &XnBall) -> AuditReport {
    let all = intersections(ball);
    let mut rep = AuditReport::default();
    for list in all {
        for (_, r) in list {
            rep.checked += 1;
            if let Err(e) = r {
                rep.violations.push(e);
            }
        }
    }
    rep
}

/// If `p1` meets the upper half of `p2` and `p3` meets its lower half (each
/// in at least one edge), `p1` and `p3` share at most one vertex.
pub fn audit_opposite_halves(ball: &XnBall) -> AuditReport {
    let all = intersections(ball);
    let boundary: Vec<HashSet<VertexId>> = ball
        .precells
        .iter()
        .map(|p| p.boundary_cycle().into_iter().collect())
        .collect();
    let parts = par::map_range(0..ball.precells.len(), |i| {
        let mut rep = AuditReport::default();
        let mut up = Vec::new();
        let mut down = Vec::new();
        for (j, r) in &all[i] {
            // the second precell's half is the half of p2 = precell i
            if let Ok(Intersection::Path { first_half, .. }) = r {
                match first_half {
                    Half::Upper => up.push(*j),
                    Half::Lower => down.push(*j),
                }
            }
        }
        for &a in &up {
            for &c in &down {
                rep.checked += 1;
                let shared = boundary[a].intersection(&boundary[c]).count();
                if shared > 1 {
                    rep.violations.push(format!(
                        "precells {} and {} meet opposite halves of {} yet share {shared} vertices",
                        ball.precells[a].element, ball.precells[c].element, ball.precells[i].element
                    ));
                }
            }
        }
        rep
    });
    AuditReport::merge(parts)
}

/// No two distinct precells meet a third in the same path of at least one edge.
pub fn audit_unique_intersections(ball: &XnBall) -> AuditReport {
    let all = intersections(ball);
    let parts = par::map_range(0..ball.precells.len(), |i| {
        let mut rep = AuditReport::default();
        let mut seen: HashMap<Vec<VertexId>, usize> = HashMap::new();
        for (j, r) in &all[i] {
            if let Ok(Intersection::Path { vertices, .. }) = r {
                rep.checked += 1;
                let mut key = vertices.clone();
                key.sort_unstable();
                if let Some(k) = seen.insert(key, *j) {
                    rep.violations.push(format!(
                        "precells {} and {} meet {} in the same path",
                        ball.precells[k].element, ball.precells[*j].element, ball.precells[i].element
                    ));
                }
            }
        }
        rep
    });
    AuditReport::merge(parts)
}

/// Interior vertices of complete precells are adjacent exactly when the
/// precells share `m >= 2` edges, with length `phi((n-m)/(2n) * 2π)`.
pub fn audit_interior_edges(ball: &XnBall) -> AuditReport {
    let all = intersections(ball);
    let n = ball.n as f64;
    let c = &ball.complex;
    let parts = par::map_range(0..ball.precells.len(), |i| {
        let mut rep = AuditReport::default();
        let oi = ball.precells[i].center;
        let mut explained = HashSet::new();
        for (j, r) in &all[i] {
            let Ok(x) = r else { continue };
            rep.checked += 1;
            let oj = ball.precells[*j].center;
            let m = x.edge_count();
            match (m >= 2, c.edge_length(oi, oj)) {
                (true, Some(len)) => {
                    explained.insert(oj);
                    let want = phi((n - m as f64) / (2.0 * n) * std::f64::consts::TAU).unwrap_or(f64::NAN);
                    if (len - want).abs() > FORMULA_TOL {
                        rep.violations.push(format!(
                            "edge {oi}-{oj}: length {len} but shared path has {m} edges (want {want})"
                        ));
                    }
                }
                (true, None) => rep
                    .violations
                    .push(format!("precells sharing {m} edges lack interior edge {oi}-{oj}")),
                (false, Some(_)) => rep
                    .violations
                    .push(format!("interior edge {oi}-{oj} between precells sharing {m} edges")),
                (false, None) => {}
            }
        }
        for &(w, _) in c.neighbors(oi) {
            let complete = matches!(ball.name(w), XVertex::Interior(h) if ball.precell(h).is_some());
            if complete && !explained.contains(&w) {
                rep.violations
                    .push(format!("interior edge {oi}-{w} between precells that do not meet"));
            }
        }
        rep
    });
    AuditReport::merge(parts)
}

/// Every triangle satisfies the strict triangle inequality.
pub fn audit_strict_triangles(ball: &XnBall) -> AuditReport {
    let c = &ball.complex;
    let mut rep = AuditReport::default();
    for [a, b, d] in c.triangles() {
        rep.checked += 1;
        let (x, y, z) = (
            c.edge_length(a, b).unwrap_or(0.0),
            c.edge_length(b, d).unwrap_or(0.0),
            c.edge_length(a, d).unwrap_or(0.0),
        );
        if !strict_triangle(x, y, z) {
            rep.violations
                .push(format!("triangle {a} {b} {d} has sides {x} {y} {z}"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dihedral::build_xn_ball;

    #[test]
    fn audits_pass_small() {
        for n in 2..=4 {
            let ball = build_xn_ball(n, 2 * n + 2).unwrap();
            for rep in [
                audit_intersections(&ball),
                audit_opposite_halves(&ball),
                audit_unique_intersections(&ball),
                audit_interior_edges(&ball),
                audit_strict_triangles(&ball),
            ] {
                assert!(
                    rep.passed(),
                    "n={n}: {:?}",
                    &rep.violations[..rep.violations.len().min(3)]
                );
            }
        }
    }
}
