//! Flag metric 2-complexes: typed vertices, Euclidean edge lengths and
//! explicitly stored triangles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};
use crate::metric::strict_triangle;

pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Real,
    Interior,
}

impl VertexKind {
    pub fn tag(self) -> &'static str {
        match self {
            VertexKind::Real => "REAL",
            VertexKind::Interior => "INTERIOR",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexInfo {
    pub kind: VertexKind,
    pub label: Option<String>,
}

/// Sorted vertex pair.
pub fn edge_key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn tri_key(a: VertexId, b: VertexId, c: VertexId) -> [VertexId; 3] {
    let mut t = [a, b, c];
    t.sort_unstable();
    t
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricComplex {
    vertices: BTreeMap<VertexId, VertexInfo>,
    // sorted by neighbor id
    adjacency: BTreeMap<VertexId, Vec<(VertexId, f64)>>,
    triangles: BTreeSet<[VertexId; 3]>,
}

impl MetricComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, kind: VertexKind, label: Option<String>) -> Result<()> {
        if self.vertices.contains_key(&id) {
            return Err(Error::InvalidComplex(format!("duplicate vertex {id}")));
        }
        self.vertices.insert(id, VertexInfo { kind, label });
        self.adjacency.insert(id, Vec::new());
        Ok(())
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId, length: f64) -> Result<()> {
        if a == b {
            return Err(Error::InvalidComplex(format!("loop at vertex {a}")));
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::InvalidComplex(format!("edge {a}-{b} has bad length {length}")));
        }
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(Error::InvalidComplex(format!("edge references unknown vertex {v}")));
            }
        }
        if self.edge_length(a, b).is_some() {
            return Err(Error::InvalidComplex(format!("duplicate edge {a}-{b}")));
        }
        for (x, y) in [(a, b), (b, a)] {
            let list = self.adjacency.get_mut(&x).expect("vertex present");
            let pos = list.partition_point(|&(w, _)| w < y);
            list.insert(pos, (y, length));
        }
        Ok(())
    }

    pub fn add_triangle(&mut self, a: VertexId, b: VertexId, c: VertexId) -> Result<()> {
        let t = tri_key(a, b, c);
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::InvalidComplex(format!("degenerate triangle {t:?}")));
        }
        if !self.triangles.insert(t) {
            return Err(Error::InvalidComplex(format!("duplicate triangle {t:?}")));
        }
        Ok(())
    }

    /// Registers every 3-clique of the 1-skeleton as a triangle.
    pub fn close_flag(&mut self) {
        let mut found = Vec::new();
        for (&u, nbrs) in &self.adjacency {
            for (i, &(v, _)) in nbrs.iter().enumerate() {
                if v <= u {
                    continue;
                }
                for &(w, _) in &nbrs[i + 1..] {
                    if self.adjacent(v, w) {
                        found.push(tri_key(u, v, w));
                    }
                }
            }
        }
        self.triangles.extend(found);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(Vec::len).sum::<usize>() / 2
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VertexInfo)> + '_ {
        self.vertices.iter().map(|(&id, info)| (id, info))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn info(&self, v: VertexId) -> Option<&VertexInfo> {
        self.vertices.get(&v)
    }

    pub fn kind(&self, v: VertexId) -> Option<VertexKind> {
        self.vertices.get(&v).map(|i| i.kind)
    }

    /// Edges in lexicographic order, each once with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, f64)> + '_ {
        self.adjacency
            .iter()
            .flat_map(|(&a, nbrs)| nbrs.iter().filter(move |&&(b, _)| a < b).map(move |&(b, l)| (a, b, l)))
    }

    pub fn triangles(&self) -> impl Iterator<Item = [VertexId; 3]> + '_ {
        self.triangles.iter().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        self.adjacency.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edge_length(&self, a: VertexId, b: VertexId) -> Option<f64> {
        let list = self.adjacency.get(&a)?;
        list.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn adjacent(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_length(a, b).is_some()
    }

    pub fn has_triangle(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        self.triangles.contains(&tri_key(a, b, c))
    }

    /// Checks simplicity, flagness and the strict triangle inequality.
    pub fn validate(&self) -> Result<()> {
        for t in &self.triangles {
            let l = [
                self.edge_length(t[0], t[1]),
                self.edge_length(t[1], t[2]),
                self.edge_length(t[0], t[2]),
            ];
            let [Some(x), Some(y), Some(z)] = l else {
                return Err(Error::InvalidComplex(format!("triangle {t:?} is missing an edge")));
            };
            if !strict_triangle(x, y, z) {
                return Err(Error::InvalidComplex(format!(
                    "triangle {t:?} violates the strict triangle inequality ({x}, {y}, {z})"
                )));
            }
        }
        let mut closed = self.clone();
        closed.close_flag();
        if closed.triangles.len() != self.triangles.len() {
            let missing = closed.triangles.difference(&self.triangles).next().copied();
            return Err(Error::InvalidComplex(format!(
                "not flag: 3-clique {missing:?} is not a registered triangle"
            )));
        }
        Ok(())
    }

    /// Serializes to the line format `V`/`E`/`T`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, info) in &self.vertices {
            match &info.label {
                Some(l) => writeln!(out, "V {id} {} {l}", info.kind.tag()),
                None => writeln!(out, "V {id} {}", info.kind.tag()),
            }
            .unwrap();
        }
        for (a, b, l) in self.edges() {
            writeln!(out, "E {a} {b} {}", fmt_length(l)).unwrap();
        }
        for t in &self.triangles {
            writeln!(out, "T {} {} {}", t[0], t[1], t[2]).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut c = MetricComplex::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let id = |s: &str| -> Result<VertexId> {
                s.parse()
                    .map_err(|_| parse_err(line_no, format!("bad vertex id {s:?}")))
            };
            let wrap = |r: Result<()>| r.map_err(|e| parse_err(line_no, e.to_string()));
            match fields[0] {
                "V" if fields.len() == 3 || fields.len() == 4 => {
                    let kind = match fields[2] {
                        "REAL" => VertexKind::Real,
                        "INTERIOR" => VertexKind::Interior,
                        k => return Err(parse_err(line_no, format!("unknown vertex kind {k:?}"))),
                    };
                    let label = fields.get(3).map(|s| s.to_string());
                    wrap(c.add_vertex(id(fields[1])?, kind, label))?;
                }
                "E" if fields.len() == 4 => {
                    let len: f64 = fields[3]
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad length {:?}", fields[3])))?;
                    wrap(c.add_edge(id(fields[1])?, id(fields[2])?, len))?;
                }
                "T" if fields.len() == 4 => {
                    wrap(c.add_triangle(id(fields[1])?, id(fields[2])?, id(fields[3])?))?;
                }
                _ => return Err(parse_err(line_no, format!("unrecognized record {line:?}"))),
            }
        }
        Ok(c)
    }
}

/// Decimal with 17 significant digits.
pub fn fmt_length(x: f64) -> String {
    format!("{:.16e}", x)
}
