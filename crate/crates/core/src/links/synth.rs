//! Closed-form links of vertices of `X_n`.

use std::f64::consts::TAU;

use crate::complex::VertexKind;
use crate::error::{Error, Result};
use crate::link::LinkGraph;
use crate::metric::{phi, polygon_edge_length};

fn turn(k: f64, n: u32) -> f64 {
    k / (2 * n) as f64 * TAU
}

/// Names of the interior vertices of a real link, indexed `0..=n` along the
/// `d` side and the `u` side (index 0 and n are the tips, shared).
pub fn real_interior_name(side: char, i: u32, n: u32) -> String {
    if i == 0 {
        "o[l]".to_string()
    } else if i == n {
        "o[r]".to_string()
    } else {
        format!("o[{side}{i}]")
    }
}

/// Link of a real vertex of `X_n`, with block tag `block` on every edge.
///
/// Real link vertices `a^i, a^o, b^i, b^o` sit at distance `p` (the Cayley
/// edge length) from the centre, interior ones at distance 1.
pub fn real_link_tagged(n: u32, block: Option<usize>) -> Result<LinkGraph> {
    if n < 2 {
        return Err(Error::Domain(format!("real_link needs n >= 2, got {n}")));
    }
    let p = polygon_edge_length(n)?;
    let mut g = LinkGraph::new("v");
    let ai = g.add_vertex("a^i", VertexKind::Real, p);
    let ao = g.add_vertex("a^o", VertexKind::Real, p);
    let bi = g.add_vertex("b^i", VertexKind::Real, p);
    let bo = g.add_vertex("b^o", VertexKind::Real, p);
    let l = g.add_vertex(real_interior_name('d', 0, n), VertexKind::Interior, 1.0);
    let r = g.add_vertex(real_interior_name('d', n, n), VertexKind::Interior, 1.0);
    let mut d = vec![l];
    let mut u = vec![l];
    for i in 1..n {
        d.push(g.add_vertex(real_interior_name('d', i, n), VertexKind::Interior, 1.0));
    }
    for i in 1..n {
        u.push(g.add_vertex(real_interior_name('u', i, n), VertexKind::Interior, 1.0));
    }
    d.push(r);
    u.push(r);

    let n_us = n as usize;
    for j in 1..=n_us {
        g.add_metric_edge(bi, d[j], 1.0, block)?;
        g.add_metric_edge(ai, u[j], 1.0, block)?;
    }
    for j in 0..n_us {
        g.add_metric_edge(ao, d[j], 1.0, block)?;
        g.add_metric_edge(bo, u[j], 1.0, block)?;
    }
    for side in [&d, &u] {
        for i in 0..=n_us {
            for j in i + 1..=(i + n_us - 2).min(n_us) {
                g.add_metric_edge(side[i], side[j], phi(turn((j - i) as f64, n))?, block)?;
            }
        }
    }
    Ok(g)
}

pub fn real_link(n: u32) -> Result<LinkGraph> {
    real_link_tagged(n, None)
}

/// Link of an interior vertex of `X_n`. For `n = 2` this is the boundary
/// 4-cycle of the cell.
pub fn interior_link(n: u32) -> Result<LinkGraph> {
    if n < 2 {
        return Err(Error::Domain(format!("interior_link needs n >= 2, got {n}")));
    }
    let p = polygon_edge_length(n)?;
    let n_us = n as usize;
    let mut g = LinkGraph::new("o");
    let upper: Vec<usize> = (0..=n)
        .map(|i| g.add_vertex(format!("v{i}"), VertexKind::Real, 1.0))
        .collect();
    let mut lower = vec![upper[0]];
    for i in 1..n {
        lower.push(g.add_vertex(format!("v'{i}"), VertexKind::Real, 1.0));
    }
    lower.push(upper[n_us]);
    for half in [&upper, &lower] {
        for k in 0..n_us {
            g.add_metric_edge(half[k], half[k + 1], p, None)?;
        }
    }
    if n == 2 {
        return Ok(g);
    }

    let radius = |i: usize| phi(turn((n_us - i) as f64, n));
    for (half, prime) in [(&upper, ""), (&lower, "'")] {
        let mut ls = Vec::new();
        let mut rs = Vec::new();
        for i in 2..n_us {
            ls.push((
                i,
                g.add_vertex(format!("L{prime}{i}"), VertexKind::Interior, radius(i)?),
            ));
        }
        for i in 2..n_us {
            rs.push((
                i,
                g.add_vertex(format!("R{prime}{i}"), VertexKind::Interior, radius(i)?),
            ));
        }
        for &(i, x) in &ls {
            for &h in &half[..=i] {
                g.add_metric_edge(x, h, 1.0, None)?;
            }
        }
        for &(i, x) in &rs {
            for &h in &half[n_us - i..=n_us] {
                g.add_metric_edge(x, h, 1.0, None)?;
            }
        }
        for group in [&ls, &rs] {
            for (a, &(i, x)) in group.iter().enumerate() {
                for &(j, y) in &group[a + 1..] {
                    if j - i <= n_us - 2 {
                        g.add_metric_edge(x, y, phi(turn((j - i) as f64, n))?, None)?;
                    }
                }
            }
        }
        for &(i, x) in &ls {
            for &(j, y) in &rs {
                if i + j >= n_us + 2 {
                    g.add_metric_edge(x, y, phi(turn((2 * n_us - i - j) as f64, n))?, None)?;
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn real_link_counts() {
        for n in 2..=8 {
            let g = real_link(n).unwrap();
            assert_eq!(g.vertex_count(), 2 * n as usize + 4);
            g.validate().unwrap();
            let ai = g.index_of("a^i").unwrap();
            let bi = g.index_of("b^i").unwrap();
            assert!(!g.adjacent(ai, bi));
        }
        assert!(real_link(1).is_err());
    }

    #[test]
    fn type_one_angle() {
        let n = 5;
        let g = real_link(n).unwrap();
        let bi = g.index_of("b^i").unwrap();
        let d1 = g.index_of("o[d1]").unwrap();
        let want = (n - 1) as f64 / (4 * n) as f64 * TAU;
        assert!((g.angle(bi, d1).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn interior_link_counts() {
        assert_eq!(interior_link(2).unwrap().vertex_count(), 4);
        for n in 3..=8u32 {
            let g = interior_link(n).unwrap();
            assert_eq!(g.vertex_count(), 6 * n as usize - 8);
            g.validate().unwrap();
        }
        let g = interior_link(2).unwrap();
        assert!(g.edges().iter().all(|e| (e.angle - PI / 2.0).abs() < 1e-12));
    }

    #[test]
    fn primed_and_unprimed_never_meet() {
        let g = interior_link(6).unwrap();
        for e in g.edges() {
            let (x, y) = (&g.vertex(e.a).name, &g.vertex(e.b).name);
            let interior = |s: &str| s.starts_with('L') || s.starts_with('R');
            if interior(x) && interior(y) {
                assert_eq!(x.contains('\''), y.contains('\''), "{x} {y}");
            }
        }
    }
}
