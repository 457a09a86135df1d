//! Labelled defining graphs of Artin groups.
//!
//! Text format: one record per line, `#` starts a comment.
//! `<gen1> <gen2> <label>` adds an edge, `N <gen>` declares a generator that
//! may lie on no edge.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{parse_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledEdge {
    pub s: usize,
    pub t: usize,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Record {
    Edge(usize),
    Node(usize),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DefiningGraph {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    edges: Vec<LabeledEdge>,
    records: Vec<Record>,
}

impl DefiningGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `name`, adding it if new.
    pub fn add_generator(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.records.push(Record::Node(i));
        i
    }

    pub fn add_edge(&mut self, s: &str, t: &str, label: u32) -> Result<usize> {
        if label < 2 {
            return Err(Error::Domain(format!("edge {s}-{t} has label {label} < 2")));
        }
        if s == t {
            return Err(Error::Domain(format!("self-loop at {s}")));
        }
        let known = |g: &str| self.index.get(g).copied();
        if let (Some(a), Some(b)) = (known(s), known(t)) {
            if self.label(a, b).is_some() {
                return Err(Error::Domain(format!("duplicate edge {s}-{t}")));
            }
        }
        let fresh_s = !self.index.contains_key(s);
        let a = self.add_generator(s);
        if fresh_s {
            self.records.pop();
        }
        let fresh_t = !self.index.contains_key(t);
        let b = self.add_generator(t);
        if fresh_t {
            self.records.pop();
        }
        self.edges.push(LabeledEdge { s: a, t: b, label });
        self.records.push(Record::Edge(self.edges.len() - 1));
        Ok(self.edges.len() - 1)
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[LabeledEdge] {
        &self.edges
    }

    pub fn label(&self, a: usize, b: usize) -> Option<u32> {
        self.edge_index(a, b).map(|e| self.edges[e].label)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.s == a && e.t == b) || (e.s == b && e.t == a))
    }

    /// Triangles `(a, b, c)` with `a < b < c`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let k = self.names.len();
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if self.label(a, b).is_none() {
                    continue;
                }
                for c in b + 1..k {
                    if self.label(a, c).is_some() && self.label(b, c).is_some() {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Every triangle with labels `p, q, r` has `1/p + 1/q + 1/r <= 1`.
    pub fn two_dimensional(&self) -> bool {
        self.triangles().iter().all(|&[a, b, c]| {
            let (p, q, r) = (
                self.label(a, b).unwrap() as u64,
                self.label(b, c).unwrap() as u64,
                self.label(a, c).unwrap() as u64,
            );
            // 1/p + 1/q + 1/r <= 1  <=>  qr + pr + pq <= pqr
            q * r + p * r + p * q <= p * q * r
        })
    }

    /// Copy of the graph without edge `e`; its endpoints stay as generators.
    pub fn without_edge(&self, e: usize) -> DefiningGraph {
        let mut g = DefiningGraph::new();
        for rec in &self.records {
            match rec {
                Record::Node(i) => {
                    g.add_generator(&self.names[*i]);
                }
                Record::Edge(j) if *j == e => {
                    let LabeledEdge { s, t, .. } = self.edges[*j];
                    g.add_generator(&self.names[s]);
                    g.add_generator(&self.names[t]);
                }
                Record::Edge(j) => {
                    let LabeledEdge { s, t, label } = self.edges[*j];
                    g.add_edge(&self.names[s], &self.names[t], label)
                        .expect("copy of a valid edge");
                }
            }
        }
        g
    }

    pub fn parse(text: &str) -> Result<DefiningGraph> {
        let mut g = DefiningGraph::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            match f.as_slice() {
                ["N", name] => {
                    if g.index.contains_key(*name) {
                        return Err(parse_err(line_no, format!("generator {name} declared twice")));
                    }
                    g.add_generator(name);
                }
                [s, t, label] => {
                    let label: u32 = label
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("bad label {label:?}")))?;
                    g.add_edge(s, t, label).map_err(|e| parse_err(line_no, e.to_string()))?;
                }
                _ => return Err(parse_err(line_no, format!("unrecognized record {line:?}"))),
            }
        }
        if g.names.is_empty() {
            return Err(parse_err(0, "defining graph has no generators"));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for rec in &self.records {
            match rec {
                Record::Node(i) => writeln!(out, "N {}", self.names[*i]).unwrap(),
                Record::Edge(j) => {
                    let e = &self.edges[*j];
                    writeln!(out, "{} {} {}", self.names[e.s], self.names[e.t], e.label).unwrap()
                }
            }
        }
        out
    }
}
