//! Vertex links as metric graphs with angular edge lengths.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use crate::complex::{fmt_length, MetricComplex, VertexId, VertexKind};
use crate::error::{parse_err, Error, Result};
use crate::metric::{corner_angle, Angle};

#[derive(Debug, Clone, PartialEq)]
pub struct LinkVertex {
    pub name: String,
    pub kind: VertexKind,
    /// Length of the edge from the link center to this vertex.
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkEdge {
    pub a: usize,
    pub b: usize,
    /// Length of the edge in the ambient complex.
    pub length: f64,
    /// Corner angle at the center.
    pub angle: f64,
    /// Block (defining-graph edge index) the edge belongs to, for assembled links.
    pub block: Option<usize>,
}

/// A link graph. Vertices are addressed by dense indices.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinkGraph {
    pub center: String,
    vertices: Vec<LinkVertex>,
    edges: Vec<LinkEdge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    by_name: HashMap<String, usize>,
}

impl LinkGraph {
    pub fn new(center: impl Into<String>) -> Self {
        LinkGraph {
            center: center.into(),
            ..Default::default()
        }
    }

    pub fn add_vertex(&mut self, name: impl Into<String>, kind: VertexKind, radius: f64) -> usize {
        let name = name.into();
        let idx = self.vertices.len();
        self.by_name.insert(name.clone(), idx);
        self.vertices.push(LinkVertex { name, kind, radius });
        self.adjacency.push(Vec::new());
        idx
    }

    /// Adds an edge whose angle is recomputed from the three Euclidean sides.
    pub fn add_metric_edge(&mut self, a: usize, b: usize, length: f64, block: Option<usize>) -> Result<usize> {
        let angle = corner_angle(length, self.vertices[a].radius, self.vertices[b].radius)?;
        Ok(self.add_edge(a, b, length, angle.radians(), block))
    }

    pub fn add_edge(&mut self, a: usize, b: usize, length: f64, angle: f64, block: Option<usize>) -> usize {
        debug_assert!(a != b && self.edge_between(a, b).is_none());
        let idx = self.edges.len();
        self.edges.push(LinkEdge {
            a,
            b,
            length,
            angle,
            block,
        });
        for (x, y) in [(a, b), (b, a)] {
            let list = &mut self.adjacency[x];
            let pos = list.partition_point(|&(w, _)| w < y);
            list.insert(pos, (y, idx));
        }
        idx
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex(&self, i: usize) -> &LinkVertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[LinkVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[LinkEdge] {
        &self.edges
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// Neighbors of `v` as `(vertex, edge index)`, sorted by vertex.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&LinkEdge> {
        let list = &self.adjacency[a];
        list.binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|i| &self.edges[list[i].1])
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edge_between(a, b).is_some()
    }

    pub fn angle(&self, a: usize, b: usize) -> Option<f64> {
        self.edge_between(a, b).map(|e| e.angle)
    }

    pub fn min_edge_angle(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.angle).min_by(|x, y| x.total_cmp(y))
    }

    /// Shortest-path distance in the angular metric; `None` when disconnected.
    pub fn distance(&self, from: usize, to: usize) -> Option<Angle> {
        Angle::new(self.distances_from(from, |_| true)[to]).ok()
    }

    /// Dijkstra restricted to vertices accepted by `allow` (the source is always allowed).
    pub fn distances_from(&self, from: usize, allow: impl Fn(usize) -> bool) -> Vec<f64> {
        #[derive(PartialEq)]
        struct Item(f64, usize);
        impl Eq for Item {}
        impl PartialOrd for Item {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }
        impl Ord for Item {
            fn cmp(&self, other: &Self) -> Ordering {
                other.0.total_cmp(&self.0).then(other.1.cmp(&self.1))
            }
        }
        let mut dist = vec![f64::INFINITY; self.vertices.len()];
        dist[from] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Item(0.0, from));
        while let Some(Item(d, v)) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, e) in &self.adjacency[v] {
                if !allow(w) {
                    continue;
                }
                let nd = d + self.edges[e].angle;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(Item(nd, w));
                }
            }
        }
        dist
    }

    /// Triangles of the link graph (3-cliques), as sorted index triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.vertices.len() {
            let nbrs = &self.adjacency[u];
            for (i, &(v, _)) in nbrs.iter().enumerate() {
                if v <= u {
                    continue;
                }
                for &(w, _) in &nbrs[i + 1..] {
                    if self.adjacent(v, w) {
                        out.push([u, v, w]);
                    }
                }
            }
        }
        out
    }

    /// Checks edge angles lie in (0, pi) and agree with the side lengths.
    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if !(e.angle > 0.0 && e.angle < std::f64::consts::PI) {
                return Err(Error::Invariant(format!(
                    "link edge {}-{} has angle {} outside (0, pi)",
                    self.vertices[e.a].name, self.vertices[e.b].name, e.angle
                )));
            }
            let recomputed = corner_angle(e.length, self.vertices[e.a].radius, self.vertices[e.b].radius)?;
            if (recomputed.radians() - e.angle).abs() > crate::metric::TOL {
                return Err(Error::Invariant(format!(
                    "link edge {}-{} angle {} disagrees with side lengths ({})",
                    self.vertices[e.a].name, self.vertices[e.b].name, e.angle, recomputed
                )));
            }
        }
        Ok(())
    }
}

impl LinkGraph {
    /// Serializes to the line format `C` (center), `LV name KIND radius` and
    /// `LE a b length angle [block]`.
    pub fn to_text(&self) -> String {
        let mut out = format!("C {}\n", self.center);
        for v in &self.vertices {
            out.push_str(&format!("LV {} {} {}\n", v.name, v.kind.tag(), fmt_length(v.radius)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "LE {} {} {} {}",
                self.vertices[e.a].name,
                self.vertices[e.b].name,
                fmt_length(e.length),
                fmt_length(e.angle)
            ));
            if let Some(b) = e.block {
                out.push_str(&format!(" {b}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut link = LinkGraph::new("");
        let mut have_center = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            let num =
                |s: &str| -> Result<f64> { s.parse().map_err(|_| parse_err(line_no, format!("bad number {s:?}"))) };
            let vertex = |link: &LinkGraph, s: &str| {
                link.index_of(s)
                    .ok_or_else(|| parse_err(line_no, format!("unknown link vertex {s:?}")))
            };
            match f[0] {
                "C" if f.len() == 2 && !have_center => {
                    link.center = f[1].to_string();
                    have_center = true;
                }
                "LV" if f.len() == 4 => {
                    if link.index_of(f[1]).is_some() {
                        return Err(parse_err(line_no, format!("duplicate link vertex {:?}", f[1])));
                    }
                    let kind = match f[2] {
                        "REAL" => VertexKind::Real,
                        "INTERIOR" => VertexKind::Interior,
                        k => return Err(parse_err(line_no, format!("unknown vertex kind {k:?}"))),
                    };
                    let r = num(f[3])?;
                    if r.is_nan() || r <= 0.0 {
                        return Err(parse_err(line_no, "radius must be positive"));
                    }
                    link.add_vertex(f[1], kind, r);
                }
                "LE" if f.len() == 5 || f.len() == 6 => {
                    let (a, b) = (vertex(&link, f[1])?, vertex(&link, f[2])?);
                    if a == b || link.adjacent(a, b) {
                        return Err(parse_err(line_no, "self-loop or repeated link edge"));
                    }
                    let block = match f.get(5) {
                        Some(s) => Some(s.parse().map_err(|_| parse_err(line_no, format!("bad block {s:?}")))?),
                        None => None,
                    };
                    link.add_edge(a, b, num(f[3])?, num(f[4])?, block);
                }
                _ => return Err(parse_err(line_no, format!("unrecognized record {line:?}"))),
            }
        }
        if !have_center {
            return Err(parse_err(0, "missing C line"));
        }
        link.validate()?;
        Ok(link)
    }
}

/// Full subgraph on the neighbors of `v`, metrized by corner angles at `v`.
pub fn extract_link(complex: &MetricComplex, v: VertexId) -> Result<LinkGraph> {
    if !complex.contains(v) {
        return Err(Error::Domain(format!("vertex {v} not in complex")));
    }
    let mut link = LinkGraph::new(v.to_string());
    let nbrs = complex.neighbors(v);
    let mut index = BTreeMap::new();
    for &(w, len) in nbrs {
        let kind = complex.kind(w).expect("neighbor exists");
        index.insert(w, link.add_vertex(w.to_string(), kind, len));
    }
    for (i, &(x, _)) in nbrs.iter().enumerate() {
        for &(y, _) in &nbrs[i + 1..] {
            if let Some(len) = complex.edge_length(x, y) {
                link.add_metric_edge(index[&x], index[&y], len, None)?;
            }
        }
    }
    Ok(link)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangleViolation {
    pub center: VertexId,
    pub triple: [VertexId; 3],
    /// The longest angle of the triple.
    pub longest: f64,
    /// Sum of the two shorter angles.
    pub others: f64,
}

/// Checks the weak triangle inequality for angles at every vertex.
pub fn audit_weak_triangle_inequality(complex: &MetricComplex) -> Result<Vec<TriangleViolation>> {
    audit_vertices(complex, complex.vertex_ids())
}

/// Like [`audit_weak_triangle_inequality`] but only at the given centers.
pub fn audit_vertices(
    complex: &MetricComplex,
    centers: impl IntoIterator<Item = VertexId>,
) -> Result<Vec<TriangleViolation>> {
    let mut out = Vec::new();
    for v in centers {
        let link = extract_link(complex, v)?;
        for [x, y, z] in link.triangles() {
            let mut angles = [
                link.angle(x, y).unwrap(),
                link.angle(y, z).unwrap(),
                link.angle(x, z).unwrap(),
            ];
            angles.sort_by(f64::total_cmp);
            if angles[2] > angles[0] + angles[1] + crate::metric::TOL {
                let id = |i: usize| link.vertex(i).name.parse::<VertexId>().unwrap();
                out.push(TriangleViolation {
                    center: v,
                    triple: [id(x), id(y), id(z)],
                    longest: angles[2],
                    others: angles[0] + angles[1],
                });
            }
        }
    }
    Ok(out)
}

fn quantize(x: f64) -> i64 {
    (x * 1e6).round() as i64
}

/// Finds an isomorphism `a -> b` preserving kinds, radii, edge lengths and
/// angles within `tol`. Returns the vertex map indexed by `a`'s vertices.
pub fn find_isomorphism(a: &LinkGraph, b: &LinkGraph, tol: f64) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let (ca, cb) = refine_colors(a, b);
    let mut hist_a: HashMap<u64, usize> = HashMap::new();
    let mut hist_b: HashMap<u64, usize> = HashMap::new();
    ca.iter().for_each(|&c| *hist_a.entry(c).or_default() += 1);
    cb.iter().for_each(|&c| *hist_b.entry(c).or_default() += 1);
    if hist_a != hist_b {
        return None;
    }
    // visit a's vertices in BFS order so each new vertex is constrained
    let n = a.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (hist_a[&ca[v]], v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = std::collections::VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &(w, _) in a.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if backtrack(a, b, &ca, &cb, &order, 0, &mut map, &mut used, tol) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    a: &LinkGraph,
    b: &LinkGraph,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
    tol: f64,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..b.vertex_count() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = (0..depth).all(|k| {
            let u = order[k];
            match (a.edge_between(v, u), b.edge_between(w, map[u])) {
                (None, None) => true,
                (Some(e), Some(f)) => (e.length - f.length).abs() <= tol && (e.angle - f.angle).abs() <= tol,
                _ => false,
            }
        });
        if !consistent || (a.vertex(v).radius - b.vertex(w).radius).abs() > tol {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if backtrack(a, b, ca, cb, order, depth + 1, map, used, tol) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Weisfeiler-Lehman style refinement run jointly on both graphs so that
/// color ids are comparable.
fn refine_colors(a: &LinkGraph, b: &LinkGraph) -> (Vec<u64>, Vec<u64>) {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let init = |g: &LinkGraph| -> Vec<u64> {
        g.vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut h = DefaultHasher::new();
                (v.kind, quantize(v.radius), g.neighbors(i).len()).hash(&mut h);
                h.finish()
            })
            .collect()
    };
    let step = |g: &LinkGraph, c: &[u64]| -> Vec<u64> {
        (0..g.vertex_count())
            .map(|i| {
                let mut sig: Vec<(u64, i64, i64)> = g
                    .neighbors(i)
                    .iter()
                    .map(|&(w, e)| {
                        let e = &g.edges()[e];
                        (c[w], quantize(e.length), quantize(e.angle))
                    })
                    .collect();
                sig.sort_unstable();
                let mut h = DefaultHasher::new();
                (c[i], sig).hash(&mut h);
                h.finish()
            })
            .collect()
    };
    let classes = |x: &[u64], y: &[u64]| {
        let mut all: Vec<u64> = x.iter().chain(y).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let (mut ca, mut cb) = (init(a), init(b));
    let mut count = classes(&ca, &cb);
    loop {
        let (na, nb) = (step(a, &ca), step(b, &cb));
        let next = classes(&na, &nb);
        ca = na;
        cb = nb;
        if next == count {
            return (ca, cb);
        }
        count = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::phi;
    use std::f64::consts::PI;

    fn unit_triangle() -> MetricComplex {
        let mut c = MetricComplex::new();
        for v in 0..3 {
            c.add_vertex(v, VertexKind::Real, None).unwrap();
        }
        c.add_edge(0, 1, 1.0).unwrap();
        c.add_edge(1, 2, 1.0).unwrap();
        c.add_edge(0, 2, 1.0).unwrap();
        c.close_flag();
        c
    }

    #[test]
    fn link_of_triangle_vertex() {
        let c = unit_triangle();
        let link = extract_link(&c, 0).unwrap();
        assert_eq!(link.vertex_count(), 2);
        assert_eq!(link.edge_count(), 1);
        assert!((link.edges()[0].angle - PI / 3.0).abs() < 1e-12);
        assert!(audit_weak_triangle_inequality(&c).unwrap().is_empty());
    }

    #[test]
    fn isolated_vertex_has_empty_link() {
        let mut c = unit_triangle();
        c.add_vertex(9, VertexKind::Interior, None).unwrap();
        let link = extract_link(&c, 9).unwrap();
        assert_eq!(link.vertex_count(), 0);
        assert!(extract_link(&c, 42).is_err());
    }

    /// Tetrahedron with unit spokes from vertex 0 and chosen apex angles.
    fn tetra(angles: [f64; 3]) -> MetricComplex {
        let mut c = MetricComplex::new();
        for v in 0..4 {
            c.add_vertex(v, VertexKind::Real, None).unwrap();
        }
        for v in 1..4 {
            c.add_edge(0, v, 1.0).unwrap();
        }
        c.add_edge(1, 2, phi(angles[0]).unwrap()).unwrap();
        c.add_edge(2, 3, phi(angles[1]).unwrap()).unwrap();
        c.add_edge(1, 3, phi(angles[2]).unwrap()).unwrap();
        c.close_flag();
        c
    }

    /// Independent oracle: angles by the law of cosines with acos.
    fn violating_centers(c: &MetricComplex) -> Vec<VertexId> {
        let ang = |v: u32, x: u32, y: u32| {
            let (a, b, o) = (
                c.edge_length(v, x).unwrap(),
                c.edge_length(v, y).unwrap(),
                c.edge_length(x, y).unwrap(),
            );
            ((a * a + b * b - o * o) / (2.0 * a * b)).acos()
        };
        let mut out = Vec::new();
        for v in 0..4u32 {
            let o: Vec<u32> = (0..4).filter(|&w| w != v).collect();
            let mut s = [ang(v, o[0], o[1]), ang(v, o[1], o[2]), ang(v, o[0], o[2])];
            s.sort_by(f64::total_cmp);
            if s[2] > s[0] + s[1] + 1e-9 {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn shortened_configuration_is_reported() {
        let c = tetra([1.0, 1.0, 2.2]);
        c.validate().unwrap();
        let expected = violating_centers(&c);
        assert!(expected.contains(&0));
        let found: Vec<VertexId> = audit_weak_triangle_inequality(&c)
            .unwrap()
            .iter()
            .map(|v| v.center)
            .collect();
        assert_eq!(found, expected);

        let fine = tetra([1.0, 1.0, 1.5]);
        assert_eq!(violating_centers(&fine), Vec::<u32>::new());
        assert!(audit_weak_triangle_inequality(&fine).unwrap().is_empty());
    }

    #[test]
    fn isomorphism_respects_metric() {
        let c = tetra([1.0, 1.0, 1.5]);
        let l1 = extract_link(&c, 0).unwrap();
        let mut relabeled = MetricComplex::new();
        let perm = [3u32, 2, 1, 0];
        for v in 0..4 {
            relabeled.add_vertex(perm[v as usize], VertexKind::Real, None).unwrap();
        }
        for (a, b, l) in c.edges() {
            relabeled.add_edge(perm[a as usize], perm[b as usize], l).unwrap();
        }
        relabeled.close_flag();
        let l2 = extract_link(&relabeled, 3).unwrap();
        assert!(find_isomorphism(&l1, &l2, 1e-9).is_some());
        let other = tetra([1.0, 1.1, 1.5]);
        let l3 = extract_link(&other, 0).unwrap();
        assert!(find_isomorphism(&l1, &l3, 1e-9).is_none());
    }

    #[test]
    fn distances() {
        let c = tetra([1.0, 1.0, 1.5]);
        let l = extract_link(&c, 0).unwrap();
        let (i1, i3) = (l.index_of("1").unwrap(), l.index_of("3").unwrap());
        assert!((l.distance(i1, i3).unwrap().radians() - 1.5).abs() < 1e-12);
        assert_eq!(l.distance(i1, i1).unwrap().radians(), 0.0);
    }

    #[test]
    fn text_round_trip() {
        let mut link = extract_link(&unit_triangle(), 0).unwrap();
        link.center = "x".into();
        let text = link.to_text();
        let back = LinkGraph::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.edge_count(), 1);
        assert!(LinkGraph::from_text("LV a REAL 1\n").is_err());
        assert!(LinkGraph::from_text("C x\nLV a REAL 1\nLE a b 1 1\n").is_err());
    }
}
