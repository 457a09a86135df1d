//! Singular disc diagrams and their combinatorial bookkeeping.
//!
//! Triangles are stored oriented (counterclockwise). The boundary walk runs
//! with the disc on its left, so the outer face is the reversed walk. The
//! rotation at a vertex is recovered from the faces: a face passing through
//! `p -> v -> q` makes `p` the counterclockwise successor of `q` around `v`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::fmt::Write as _;

use super::AmbientOracle;
use crate::complex::VertexId;
use crate::error::{parse_err, Error, Result};
use crate::metric::{corner_angle, Angle, TOL};

pub type DVertex = u32;
pub type Tri = [DVertex; 3];

/// Rotates an oriented triangle so its smallest vertex comes first.
pub fn canonical(t: Tri) -> Tri {
    let [a, b, c] = t;
    if a <= b && a <= c {
        [a, b, c]
    } else if b <= a && b <= c {
        [b, c, a]
    } else {
        [c, a, b]
    }
}

pub(crate) fn ekey(a: DVertex, b: DVertex) -> (DVertex, DVertex) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Clone)]
pub struct DiscDiagram {
    pub(crate) vmap: BTreeMap<DVertex, VertexId>,
    pub(crate) tris: BTreeSet<Tri>,
    pub(crate) boundary: Vec<DVertex>,
    pub(crate) next: DVertex,
}

// `next` is only the fresh-id counter.
impl PartialEq for DiscDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.vmap == other.vmap && self.tris == other.tris && self.boundary == other.boundary
    }
}

impl Eq for DiscDiagram {}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub errors: Vec<String>,
    pub nondegenerate: bool,
    pub reduced: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl DiscDiagram {
    /// Builds a diagram from raw parts. Triangles must be oriented
    /// consistently with the boundary walk; `validate` checks this.
    pub fn from_parts(
        vertex_map: impl IntoIterator<Item = (DVertex, VertexId)>,
        triangles: impl IntoIterator<Item = Tri>,
        boundary: Vec<DVertex>,
    ) -> Self {
        let vmap: BTreeMap<_, _> = vertex_map.into_iter().collect();
        let next = vmap.keys().next_back().map_or(0, |&v| v + 1);
        DiscDiagram {
            vmap,
            tris: triangles.into_iter().map(canonical).collect(),
            boundary,
            next,
        }
    }

    /// The diagram consisting of a single point.
    pub fn point(v: VertexId) -> Self {
        Self::from_parts([(0, v)], [], vec![0])
    }

    pub fn area(&self) -> usize {
        self.tris.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vmap.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = DVertex> + '_ {
        self.vmap.keys().copied()
    }

    pub fn image(&self, v: DVertex) -> Option<VertexId> {
        self.vmap.get(&v).copied()
    }

    pub(crate) fn img(&self, v: DVertex) -> VertexId {
        self.vmap[&v]
    }

    pub fn triangles(&self) -> impl Iterator<Item = Tri> + '_ {
        self.tris.iter().copied()
    }

    pub fn boundary_walk(&self) -> &[DVertex] {
        &self.boundary
    }

    /// Ambient vertices visited by the boundary walk.
    pub fn boundary_image(&self) -> Vec<VertexId> {
        self.boundary.iter().map(|v| self.img(*v)).collect()
    }

    pub fn vertex_images(&self) -> BTreeSet<VertexId> {
        self.vmap.values().copied().collect()
    }

    pub(crate) fn fresh(&mut self, image: VertexId) -> DVertex {
        let v = self.next;
        self.next += 1;
        self.vmap.insert(v, image);
        v
    }

    pub(crate) fn boundary_edges(&self) -> impl Iterator<Item = (DVertex, DVertex)> + '_ {
        let k = self.boundary.len();
        (0..k)
            .filter(move |_| k > 1)
            .map(move |i| (self.boundary[i], self.boundary[(i + 1) % k]))
    }

    pub fn edges(&self) -> BTreeSet<(DVertex, DVertex)> {
        let mut out = BTreeSet::new();
        for t in &self.tris {
            for i in 0..3 {
                out.insert(ekey(t[i], t[(i + 1) % 3]));
            }
        }
        for (a, b) in self.boundary_edges() {
            if a != b {
                out.insert(ekey(a, b));
            }
        }
        out
    }

    pub fn adjacency(&self) -> BTreeMap<DVertex, BTreeSet<DVertex>> {
        let mut adj: BTreeMap<DVertex, BTreeSet<DVertex>> = self.vmap.keys().map(|&v| (v, BTreeSet::new())).collect();
        for (a, b) in self.edges() {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        adj
    }

    pub fn boundary_vertices(&self) -> BTreeSet<DVertex> {
        self.boundary.iter().copied().collect()
    }

    pub fn is_interior(&self, v: DVertex) -> bool {
        self.vmap.contains_key(&v) && !self.boundary.contains(&v)
    }

    pub fn is_boundary_edge(&self, a: DVertex, b: DVertex) -> bool {
        self.boundary_edges().any(|(x, y)| ekey(x, y) == ekey(a, b))
    }

    /// Oriented triangles containing the directed or undirected edge `ab`.
    pub fn triangles_on_edge(&self, a: DVertex, b: DVertex) -> Vec<Tri> {
        self.tris
            .iter()
            .filter(|t| t.contains(&a) && t.contains(&b))
            .copied()
            .collect()
    }

    pub fn triangles_at(&self, v: DVertex) -> Vec<Tri> {
        self.tris.iter().filter(|t| t.contains(&v)).copied().collect()
    }

    /// The vertex completing the oriented triangle that runs `a -> b`.
    pub fn apex_of_directed(&self, a: DVertex, b: DVertex) -> Option<DVertex> {
        self.tris
            .iter()
            .find_map(|t| (0..3).find_map(|i| (t[i] == a && t[(i + 1) % 3] == b).then_some(t[(i + 2) % 3])))
    }

    /// Counterclockwise successor maps at every vertex, or a description of
    /// the first place where the faces do not close up around a vertex.
    fn successor_maps(&self) -> std::result::Result<BTreeMap<DVertex, BTreeMap<DVertex, DVertex>>, String> {
        let mut succ: BTreeMap<DVertex, BTreeMap<DVertex, DVertex>> = BTreeMap::new();
        let mut set = |v: DVertex, out: DVertex, inn: DVertex| -> std::result::Result<(), String> {
            if succ.entry(v).or_default().insert(out, inn).is_some() {
                return Err(format!("corner ({out}, {v}) used twice"));
            }
            Ok(())
        };
        for t in &self.tris {
            for i in 0..3 {
                set(t[i], t[(i + 1) % 3], t[(i + 2) % 3])?;
            }
        }
        let k = self.boundary.len();
        if k > 1 {
            for i in 0..k {
                let p = self.boundary[(i + k - 1) % k];
                let v = self.boundary[i];
                let q = self.boundary[(i + 1) % k];
                set(v, p, q)?;
            }
        }
        Ok(succ)
    }

    /// Neighbors of `v` in counterclockwise order, starting from the
    /// smallest neighbor.
    pub fn rotation(&self, v: DVertex) -> Result<Vec<DVertex>> {
        let maps = self.successor_maps().map_err(Error::Invariant)?;
        let Some(m) = maps.get(&v) else {
            return Ok(Vec::new());
        };
        let start = *m.keys().next().expect("nonempty successor map");
        let mut out = vec![start];
        let mut cur = m[&start];
        while cur != start {
            out.push(cur);
            cur = *m
                .get(&cur)
                .ok_or_else(|| Error::Invariant(format!("rotation at {v} is not closed")))?;
            if out.len() > m.len() {
                return Err(Error::Invariant(format!("rotation at {v} is not a cycle")));
            }
        }
        if out.len() != m.len() {
            return Err(Error::Invariant(format!("rotation at {v} splits into several cycles")));
        }
        Ok(out)
    }

    /// Link of an interior vertex as a cycle, in counterclockwise order.
    pub fn link_cycle(&self, v: DVertex) -> Result<Vec<DVertex>> {
        if !self.is_interior(v) {
            return Err(Error::Domain(format!("vertex {v} is not interior")));
        }
        self.rotation(v)
    }

    pub fn validate(&self, oracle: &dyn AmbientOracle) -> ValidationReport {
        let mut errors = Vec::new();
        if self.vmap.is_empty() {
            errors.push("diagram has no vertices".to_string());
        }
        let mut used: BTreeSet<DVertex> = self.boundary.iter().copied().collect();
        for t in &self.tris {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                errors.push(format!("triangle {t:?} repeats a vertex"));
            }
            used.extend(t.iter().copied());
        }
        for v in &used {
            if !self.vmap.contains_key(v) {
                errors.push(format!("vertex {v} has no image"));
            }
        }
        for v in self.vmap.keys() {
            if !used.contains(v) {
                errors.push(format!("vertex {v} is not on any triangle or the boundary"));
            }
        }
        if self.boundary.is_empty() {
            errors.push("empty boundary walk".to_string());
        }
        if !errors.is_empty() {
            return ValidationReport {
                errors,
                nondegenerate: false,
                reduced: false,
            };
        }

        // Every edge must be used once in each direction by the faces.
        let mut directed: BTreeMap<(DVertex, DVertex), usize> = BTreeMap::new();
        for t in &self.tris {
            for i in 0..3 {
                *directed.entry((t[i], t[(i + 1) % 3])).or_default() += 1;
            }
        }
        for (a, b) in self.boundary_edges() {
            if a == b {
                errors.push(format!("boundary walk stalls at {a}"));
            } else {
                *directed.entry((b, a)).or_default() += 1;
            }
        }
        for (&(a, b), &c) in &directed {
            if c != 1 || directed.get(&(b, a)) != Some(&1) {
                errors.push(format!("edge {a}-{b} is not bordered by exactly two faces"));
            }
        }
        match self.successor_maps() {
            Err(e) => errors.push(e),
            Ok(maps) => {
                for &v in maps.keys() {
                    if let Err(e) = self.rotation(v) {
                        errors.push(e.to_string());
                    }
                }
            }
        }

        let adj = self.adjacency();
        let edges = self.edges();
        let euler = self.vmap.len() as i64 - edges.len() as i64 + self.tris.len() as i64;
        if euler != 1 {
            errors.push(format!("Euler characteristic is {euler}, expected 1"));
        }
        let mut seen = BTreeSet::new();
        let start = *self.vmap.keys().next().unwrap();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != self.vmap.len() {
            errors.push("diagram is disconnected".to_string());
        }

        let mut nondegenerate = true;
        for &(a, b) in &edges {
            let (fa, fb) = (self.img(a), self.img(b));
            if fa == fb {
                nondegenerate = false;
            } else if !oracle.adjacent(fa, fb) {
                errors.push(format!("edge {a}-{b} maps to non-adjacent {fa}, {fb}"));
            }
        }
        let mut reduced = true;
        for &(a, b) in &edges {
            let ts = self.triangles_on_edge(a, b);
            if ts.len() == 2 {
                let apex = |t: &Tri| *t.iter().find(|&&x| x != a && x != b).unwrap();
                if self.img(apex(&ts[0])) == self.img(apex(&ts[1])) {
                    reduced = false;
                }
            }
        }
        ValidationReport {
            errors,
            nondegenerate,
            reduced,
        }
    }

    /// Corner angle at `v` in triangle `t`, measured in the ambient metric.
    pub fn angle(&self, oracle: &dyn AmbientOracle, v: DVertex, t: Tri) -> Result<Angle> {
        let Some(i) = t.iter().position(|&x| x == v) else {
            return Err(Error::Domain(format!("vertex {v} is not in triangle {t:?}")));
        };
        let (a, b, c) = (self.img(v), self.img(t[(i + 1) % 3]), self.img(t[(i + 2) % 3]));
        let len = |x: VertexId, y: VertexId| {
            oracle.edge_length(x, y).ok_or_else(|| {
                Error::DegenerateMetric(format!("triangle {t:?} has a degenerate or missing side {x}-{y}"))
            })
        };
        corner_angle(len(b, c)?, len(a, b)?, len(a, c)?)
    }

    /// Sum of the corner angles at `v`.
    pub fn angle_sum(&self, oracle: &dyn AmbientOracle, v: DVertex) -> Result<f64> {
        self.triangles_at(v)
            .into_iter()
            .map(|t| self.angle(oracle, v, t).map(Angle::radians))
            .sum()
    }

    pub fn interior_vertices(&self) -> Vec<DVertex> {
        let bd = self.boundary_vertices();
        self.vmap.keys().filter(|v| !bd.contains(v)).copied().collect()
    }

    /// True when every interior vertex has angle sum at least `2pi - 1e-9`.
    pub fn is_cat0(&self, oracle: &dyn AmbientOracle) -> Result<bool> {
        for (a, b) in self.edges() {
            if self.img(a) == self.img(b) {
                return Err(Error::Domain(format!("degenerate edge {a}-{b}")));
            }
        }
        for v in self.interior_vertices() {
            if self.angle_sum(oracle, v)? < 2.0 * PI - TOL {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Renumbers vertices as 0.. in order of their current ids.
    pub fn compact(&self) -> DiscDiagram {
        let ids: BTreeMap<DVertex, DVertex> = self.vmap.keys().enumerate().map(|(i, &v)| (v, i as DVertex)).collect();
        DiscDiagram::from_parts(
            self.vmap.iter().map(|(v, f)| (ids[v], *f)),
            self.tris.iter().map(|t| [ids[&t[0]], ids[&t[1]], ids[&t[2]]]),
            self.boundary.iter().map(|v| ids[v]).collect(),
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (v, f) in &self.vmap {
            let _ = writeln!(s, "DV {v} {f}");
        }
        for t in &self.tris {
            let _ = writeln!(s, "DT {} {} {}", t[0], t[1], t[2]);
        }
        for &v in self.vmap.keys() {
            if let Ok(rot) = self.rotation(v) {
                if !rot.is_empty() {
                    let list: Vec<String> = rot.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(s, "ROT {v} {}", list.join(" "));
                }
            }
        }
        let walk: Vec<String> = self.boundary.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "BD {}", walk.join(" "));
        s
    }

    /// Parses the `DV`/`DT`/`ROT`/`BD` format. `ROT` lines are checked
    /// against the rotation implied by the triangles and the boundary walk.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut vmap = BTreeMap::new();
        let mut tris = Vec::new();
        let mut rots = Vec::new();
        let mut boundary = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let tag = parts.next().unwrap();
            let nums: Vec<u32> = parts
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| parse_err(line_no, format!("bad integer '{p}'")))
                })
                .collect::<Result<_>>()?;
            match tag {
                "DV" => {
                    let [v, f] = nums[..] else {
                        return Err(parse_err(line_no, "DV takes two integers"));
                    };
                    if vmap.insert(v, f).is_some() {
                        return Err(parse_err(line_no, format!("duplicate vertex {v}")));
                    }
                }
                "DT" => {
                    let [a, b, c] = nums[..] else {
                        return Err(parse_err(line_no, "DT takes three integers"));
                    };
                    tris.push([a, b, c]);
                }
                "ROT" => {
                    if nums.is_empty() {
                        return Err(parse_err(line_no, "ROT needs a vertex"));
                    }
                    rots.push((line_no, nums[0], nums[1..].to_vec()));
                }
                "BD" => {
                    if boundary.is_some() {
                        return Err(parse_err(line_no, "second BD line"));
                    }
                    boundary = Some(nums);
                }
                other => return Err(parse_err(line_no, format!("unknown record '{other}'"))),
            }
        }
        let boundary = boundary.ok_or_else(|| parse_err(0, "missing BD line"))?;
        let d = DiscDiagram::from_parts(vmap, tris, boundary);
        for (line_no, v, listed) in rots {
            let derived = d.rotation(v).map_err(|e| parse_err(line_no, e.to_string()))?;
            if !same_cycle(&derived, &listed) {
                return Err(parse_err(line_no, format!("rotation at {v} disagrees with the faces")));
            }
        }
        Ok(d)
    }
}

fn same_cycle(a: &[DVertex], b: &[DVertex]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match b.iter().position(|x| *x == a[0]) {
        Some(k) => (0..a.len()).all(|i| a[i] == b[(i + k) % b.len()]),
        None => false,
    }
}
