//! Elementary moves on disc diagrams. Every move works on a copy and leaves
//! its input untouched; a failed precondition returns `MoveNotApplicable`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt;

use super::disc::{canonical, DVertex, DiscDiagram, Tri};
use super::AmbientOracle;
use crate::error::{Error, Result};
use crate::metric::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    A,
    B,
    C,
    D,
    E,
    F,
    ShortLinkFill,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::A => "A",
            MoveKind::B => "B",
            MoveKind::C => "C",
            MoveKind::D => "D",
            MoveKind::E => "E",
            MoveKind::F => "F",
            MoveKind::ShortLinkFill => "ShortLinkFill",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub kind: MoveKind,
    pub params: Vec<DVertex>,
    pub area_before: usize,
    pub area_after: usize,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "{}({}) area {} -> {}",
            self.kind,
            ps.join(","),
            self.area_before,
            self.area_after
        )
    }
}

fn not_applicable(msg: String) -> Error {
    Error::MoveNotApplicable(msg)
}

fn record(kind: MoveKind, params: Vec<DVertex>, before: &DiscDiagram, after: &DiscDiagram) -> MoveRecord {
    MoveRecord {
        kind,
        params,
        area_before: before.area(),
        area_after: after.area(),
    }
}

fn has_vertex_set(d: &DiscDiagram, a: DVertex, b: DVertex, c: DVertex) -> bool {
    d.tris
        .iter()
        .any(|t| t.contains(&a) && t.contains(&b) && t.contains(&c))
}

fn common_neighbors(adj: &BTreeMap<DVertex, BTreeSet<DVertex>>, a: DVertex, b: DVertex) -> BTreeSet<DVertex> {
    adj[&a].intersection(&adj[&b]).copied().collect()
}

/// Vertices enclosed by the 3-cycle `u v w`: the components of the diagram
/// minus `{u, v, w}` that never reach the boundary.
pub(crate) fn enclosed_by(
    d: &DiscDiagram,
    adj: &BTreeMap<DVertex, BTreeSet<DVertex>>,
    cyc: [DVertex; 3],
) -> BTreeSet<DVertex> {
    let bd = d.boundary_vertices();
    let mut seen: BTreeSet<DVertex> = cyc.iter().copied().collect();
    let mut inside = BTreeSet::new();
    for &s in adj.keys() {
        if seen.contains(&s) {
            continue;
        }
        seen.insert(s);
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[&comp[i]] {
                if seen.insert(w) {
                    comp.push(w);
                }
            }
            i += 1;
        }
        if comp.iter().all(|v| !bd.contains(v)) {
            inside.extend(comp);
        }
    }
    inside
}

/// A-move: replaces everything enclosed by the 3-cycle `u v w` by a single
/// triangle.
pub fn apply_a(d: &DiscDiagram, u: DVertex, v: DVertex, w: DVertex) -> Result<(DiscDiagram, MoveRecord)> {
    let adj = d.adjacency();
    for x in [u, v, w] {
        if !adj.contains_key(&x) {
            return Err(not_applicable(format!("A: unknown vertex {x}")));
        }
    }
    if !(adj[&u].contains(&v) && adj[&v].contains(&w) && adj[&u].contains(&w)) {
        return Err(not_applicable(format!("A: {u}, {v}, {w} are not pairwise adjacent")));
    }
    if has_vertex_set(d, u, v, w) {
        return Err(not_applicable(format!("A: {u}, {v}, {w} already bound a triangle")));
    }
    let inside = enclosed_by(d, &adj, [u, v, w]);
    if inside.is_empty() {
        return Err(not_applicable(format!("A: the cycle {u} {v} {w} encloses nothing")));
    }
    let mut out = d.clone();
    out.tris.retain(|t| t.iter().all(|x| !inside.contains(x)));
    for x in &inside {
        out.vmap.remove(x);
    }
    let tri = if out.apex_of_directed(u, v).is_some() || out.boundary_edges().any(|e| e == (v, u)) {
        [v, u, w]
    } else if out.apex_of_directed(v, u).is_some() || out.boundary_edges().any(|e| e == (u, v)) {
        [u, v, w]
    } else {
        return Err(Error::Invariant(format!("A: edge {u}-{v} has no outer side")));
    };
    out.tris.insert(canonical(tri));
    let rec = record(MoveKind::A, vec![u, v, w], d, &out);
    Ok((out, rec))
}

/// C-move: contracts the degenerate interior edge `u1 u2`.
pub fn apply_c(d: &DiscDiagram, u1: DVertex, u2: DVertex) -> Result<(DiscDiagram, MoveRecord)> {
    let (Some(f1), Some(f2)) = (d.image(u1), d.image(u2)) else {
        return Err(not_applicable(format!("C: unknown vertex in {u1}-{u2}")));
    };
    if f1 != f2 {
        return Err(not_applicable(format!("C: edge {u1}-{u2} is not degenerate")));
    }
    if d.is_boundary_edge(u1, u2) {
        return Err(not_applicable(format!("C: edge {u1}-{u2} is on the boundary")));
    }
    let on_edge = d.triangles_on_edge(u1, u2);
    if on_edge.len() != 2 {
        return Err(not_applicable(format!("C: {u1}-{u2} is not an interior edge")));
    }
    let adj = d.adjacency();
    let apexes: BTreeSet<DVertex> = on_edge
        .iter()
        .map(|t| *t.iter().find(|&&x| x != u1 && x != u2).unwrap())
        .collect();
    if common_neighbors(&adj, u1, u2) != apexes {
        return Err(not_applicable(format!("C: link condition fails on {u1}-{u2}")));
    }
    let bd = d.boundary_vertices();
    let (keep, drop) = if bd.contains(&u2) && !bd.contains(&u1) {
        (u2, u1)
    } else {
        (u1, u2)
    };
    let mut out = d.clone();
    for t in &on_edge {
        out.tris.remove(t);
    }
    out.tris = out
        .tris
        .iter()
        .map(|t| canonical(t.map(|x| if x == drop { keep } else { x })))
        .collect();
    for x in out.boundary.iter_mut() {
        if *x == drop {
            *x = keep;
        }
    }
    out.vmap.remove(&drop);
    let rec = record(MoveKind::C, vec![u1, u2], d, &out);
    Ok((out, rec))
}

/// Replaces the edge `uv` by the other diagonal `wz` of its two triangles.
fn flip(d: &DiscDiagram, u: DVertex, v: DVertex, what: &str) -> Result<(DiscDiagram, DVertex, DVertex)> {
    let (Some(w), Some(z)) = (d.apex_of_directed(u, v), d.apex_of_directed(v, u)) else {
        return Err(not_applicable(format!("{what}: {u}-{v} is not an interior edge")));
    };
    if w == z || d.adjacency()[&w].contains(&z) {
        return Err(not_applicable(format!("{what}: {w} and {z} are already adjacent")));
    }
    let mut out = d.clone();
    out.tris.remove(&canonical([u, v, w]));
    out.tris.remove(&canonical([v, u, z]));
    out.tris.insert(canonical([u, z, w]));
    out.tris.insert(canonical([z, v, w]));
    Ok((out, w, z))
}

/// B-move: flips the edge `uv` whose two triangles have apexes with equal
/// images.
pub fn apply_b(d: &DiscDiagram, u: DVertex, v: DVertex) -> Result<(DiscDiagram, MoveRecord)> {
    let (out, w, z) = flip(d, u, v, "B")?;
    if d.img(w) != d.img(z) {
        return Err(not_applicable(format!("B: apexes {w}, {z} have different images")));
    }
    let rec = record(MoveKind::B, vec![u, v], d, &out);
    Ok((out, rec))
}

/// D-move: at the interior vertex `v`, flips the edge `vu` when the link
/// neighbors of `u` have adjacent images.
pub fn apply_d(
    d: &DiscDiagram,
    oracle: &dyn AmbientOracle,
    v: DVertex,
    u: DVertex,
) -> Result<(DiscDiagram, MoveRecord)> {
    if !d.is_interior(v) {
        return Err(not_applicable(format!("D: {v} is not interior")));
    }
    let (out, w, z) = flip(d, v, u, "D")?;
    let (fw, fz) = (d.img(w), d.img(z));
    if fw == fz || !oracle.adjacent(fw, fz) {
        return Err(not_applicable(format!("D: images of {w}, {z} are not adjacent")));
    }
    let rec = record(MoveKind::D, vec![v, u], d, &out);
    Ok((out, rec))
}

fn link_length(d: &DiscDiagram, oracle: &dyn AmbientOracle, v: DVertex) -> Result<f64> {
    d.angle_sum(oracle, v)
}

/// Replaces the star of an interior vertex whose link is shorter than 2pi
/// by a triangulation of the link without interior vertices. Returns the
/// elementary moves performed.
pub fn fill_short_link(
    d: &DiscDiagram,
    oracle: &dyn AmbientOracle,
    v: DVertex,
) -> Result<(DiscDiagram, Vec<MoveRecord>)> {
    if !d.is_interior(v) {
        return Err(not_applicable(format!("ShortLinkFill: {v} is not interior")));
    }
    let len = link_length(d, oracle, v)?;
    if len >= 2.0 * PI - TOL {
        return Err(not_applicable(format!(
            "ShortLinkFill: link of {v} has length {len} >= 2pi"
        )));
    }
    let mut cur = d.clone();
    let mut log = Vec::new();
    while cur.vmap.contains_key(&v) {
        let link = cur.link_cycle(v)?;
        let k = link.len();
        if k == 3 {
            let (next, rec) = apply_a(&cur, link[0], link[1], link[2])?;
            log.push(rec);
            cur = next;
            break;
        }
        let adj = cur.adjacency();
        let around = |i: usize| (link[(i + k - 1) % k], link[i], link[(i + 1) % k]);
        let mut progressed = false;
        for i in 0..k {
            let (w, u, z) = around(i);
            let (fw, fz) = (cur.img(w), cur.img(z));
            if !adj[&w].contains(&z) && fw != fz && oracle.adjacent(fw, fz) {
                let (next, rec) = apply_d(&cur, oracle, v, u)?;
                log.push(rec);
                cur = next;
                progressed = true;
                break;
            }
        }
        if progressed {
            continue;
        }
        for i in 0..k {
            let (w, u, z) = around(i);
            if !adj[&w].contains(&z) && cur.img(w) == cur.img(z) {
                let (next, rec) = apply_b(&cur, v, u)?;
                log.push(rec);
                cur = next;
                if let Ok((next, rec)) = apply_c(&cur, w, z) {
                    log.push(rec);
                    cur = next;
                }
                progressed = true;
                break;
            }
        }
        if progressed {
            continue;
        }
        for i in 0..k {
            let (w, u, z) = around(i);
            if adj[&w].contains(&z) && !has_vertex_set(&cur, u, w, z) {
                if let Ok((next, rec)) = apply_a(&cur, u, w, z) {
                    log.push(rec);
                    cur = next;
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return Err(Error::AmbientNotSystolic(format!(
                "no D-move at vertex {v} with link of length {k}"
            )));
        }
    }
    let summary = record(MoveKind::ShortLinkFill, vec![v], d, &cur);
    log.push(summary);
    Ok((cur, log))
}

/// Link of `v` rotated to start at `w`, together with the position of `z`.
fn split_link(d: &DiscDiagram, v: DVertex, w: DVertex, z: DVertex, what: &str) -> Result<(Vec<DVertex>, usize)> {
    if !d.is_interior(v) {
        return Err(not_applicable(format!("{what}: {v} is not interior")));
    }
    let link = d.link_cycle(v)?;
    let (Some(iw), Some(iz)) = (link.iter().position(|&x| x == w), link.iter().position(|&x| x == z)) else {
        return Err(not_applicable(format!(
            "{what}: {w} and {z} must lie in the link of {v}"
        )));
    };
    if w == z || d.img(w) != d.img(z) {
        return Err(not_applicable(format!("{what}: {w} and {z} need equal images")));
    }
    if d.adjacency()[&w].contains(&z) {
        return Err(not_applicable(format!("{what}: {w} and {z} are adjacent")));
    }
    let k = link.len();
    let rotated: Vec<DVertex> = (0..k).map(|i| link[(iw + i) % k]).collect();
    Ok((rotated, (iz + k - iw) % k))
}

fn star_triangles(v: DVertex, c: &[DVertex], from: usize, to: usize) -> Vec<Tri> {
    (from..to).map(|i| [v, c[i % c.len()], c[(i + 1) % c.len()]]).collect()
}

/// F-move: cuts the star of `v` along a new edge `wz` and removes the region
/// enclosed by `u w z`, where `u != v` is a common neighbor of `w` and `z`.
/// The degenerate edge `wz` is then contracted when the link condition
/// allows it.
pub fn apply_f(d: &DiscDiagram, v: DVertex, w: DVertex, z: DVertex) -> Result<(DiscDiagram, Vec<MoveRecord>)> {
    let (c, j) = split_link(d, v, w, z, "F")?;
    let adj = d.adjacency();
    let Some(&u) = common_neighbors(&adj, w, z).iter().find(|&&x| x != v) else {
        return Err(not_applicable(format!(
            "F: {w} and {z} have no common neighbor besides {v}"
        )));
    };
    let mut cut = d.clone();
    let v2 = cut.fresh(d.img(v));
    cut.tris.retain(|t| !t.contains(&v));
    let k = c.len();
    for t in star_triangles(v, &c, 0, j) {
        cut.tris.insert(canonical(t));
    }
    cut.tris.insert(canonical([v, c[j], c[0]]));
    for t in star_triangles(v2, &c, j, k) {
        cut.tris.insert(canonical(t));
    }
    cut.tris.insert(canonical([v2, c[0], c[j]]));
    let (mut out, _) = apply_a(&cut, u, w, z)?;
    if let Ok((next, _)) = apply_c(&out, w, z) {
        out = next;
    }
    if out.area() >= d.area() {
        return Err(not_applicable(format!("F: area does not decrease at {v}")));
    }
    let rec = record(MoveKind::F, vec![v, w, z], d, &out);
    Ok((out, vec![rec]))
}

/// E-move: identifies `w` and `z`, splits `v` into two cone points over the
/// two halves of its link, and fills both short links.
pub fn apply_e(
    d: &DiscDiagram,
    oracle: &dyn AmbientOracle,
    v: DVertex,
    w: DVertex,
    z: DVertex,
) -> Result<(DiscDiagram, Vec<MoveRecord>)> {
    let (c, j) = split_link(d, v, w, z, "E")?;
    let adj = d.adjacency();
    if common_neighbors(&adj, w, z).iter().any(|&x| x != v) {
        return Err(not_applicable(format!(
            "E: {w} and {z} have a common neighbor besides {v}"
        )));
    }
    let k = c.len();
    let side = |from: usize, to: usize| -> Result<f64> {
        star_triangles(v, &c, from, to)
            .into_iter()
            .map(|t| d.angle(oracle, v, canonical(t)).map(|a| a.radians()))
            .sum()
    };
    if side(0, j)? >= 2.0 * PI - TOL || side(j, k)? >= 2.0 * PI - TOL {
        return Err(not_applicable(format!("E: a half link at {v} is not shorter than 2pi")));
    }
    let mut out = d.clone();
    let v2 = out.fresh(d.img(v));
    out.tris.retain(|t| !t.contains(&v));
    for t in star_triangles(v, &c, 0, j) {
        out.tris.insert(canonical(t));
    }
    for t in star_triangles(v2, &c, j, k) {
        out.tris.insert(canonical(t));
    }
    out.tris = out
        .tris
        .iter()
        .map(|t| canonical(t.map(|x| if x == z { w } else { x })))
        .collect();
    for x in out.boundary.iter_mut() {
        if *x == z {
            *x = w;
        }
    }
    out.vmap.remove(&z);
    let report = out.validate(oracle);
    if !report.is_valid() {
        return Err(not_applicable(format!(
            "E: identifying {w} and {z} breaks the disc: {}",
            report.errors[0]
        )));
    }
    let mut log = Vec::new();
    for x in [v, v2] {
        let (next, mut recs) = fill_short_link(&out, oracle, x)?;
        log.append(&mut recs);
        out = next;
    }
    let mut all = vec![record(MoveKind::E, vec![v, w, z], d, &out)];
    all.extend(log);
    Ok((out, all))
}
