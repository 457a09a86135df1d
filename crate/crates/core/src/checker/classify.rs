//! Which blocks a short cycle of an assembled link passes through.

use std::fmt;

use super::CycleWitness;
use crate::error::{Error, Result};
use crate::links::DefiningGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    OneBlock,
    TwoBlock,
    ThreeBlockTriangle,
    FourBlockSquare,
    Other,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::OneBlock => "one-block",
            CaseTag::TwoBlock => "two-block",
            CaseTag::ThreeBlockTriangle => "three-block-triangle",
            CaseTag::FourBlockSquare => "four-block-square",
            CaseTag::Other => "other",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Maximal runs of equal block tags around the cycle, as `(block, edges)`.
pub fn block_runs(witness: &CycleWitness) -> Result<Vec<(usize, usize)>> {
    let trace: Vec<usize> = witness
        .block_trace
        .iter()
        .map(|b| b.ok_or_else(|| Error::Invariant("cycle edge without a block tag".into())))
        .collect::<Result<_>>()?;
    let k = trace.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let Some(shift) = (0..k).find(|&i| trace[i] != trace[(i + k - 1) % k]) else {
        return Ok(vec![(trace[0], k)]);
    };
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for i in 0..k {
        let b = trace[(shift + i) % k];
        match runs.last_mut() {
            Some((last, n)) if *last == b => *n += 1,
            _ => runs.push((b, 1)),
        }
    }
    Ok(runs)
}

fn share_generator(g: &DefiningGraph, e: usize, f: usize) -> bool {
    let (x, y) = (&g.edges()[e], &g.edges()[f]);
    x.s == y.s || x.s == y.t || x.t == y.s || x.t == y.t
}

/// Sorts a cycle of assembled-link blocks into the cases of a short cycle.
pub fn classify_short_cycle(witness: &CycleWitness, graph: &DefiningGraph) -> Result<CaseTag> {
    let runs = block_runs(witness)?;
    let blocks: Vec<usize> = runs.iter().map(|r| r.0).collect();
    if blocks.iter().any(|&b| b >= graph.edges().len()) {
        return Err(Error::Invariant(format!("block tag out of range in {blocks:?}")));
    }
    let k = blocks.len();
    if k >= 2 {
        for i in 0..k {
            if !share_generator(graph, blocks[i], blocks[(i + 1) % k]) {
                return Err(Error::Invariant(format!(
                    "consecutive blocks {} and {} share no generator",
                    blocks[i],
                    blocks[(i + 1) % k]
                )));
            }
        }
    }
    let mut distinct = blocks.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let tag = match k {
        1 => CaseTag::OneBlock,
        2 => CaseTag::TwoBlock,
        3 if distinct.len() == 3 && triangle(graph, &blocks) => CaseTag::ThreeBlockTriangle,
        4 if distinct.len() == 4 && square(graph, &blocks) => CaseTag::FourBlockSquare,
        _ => CaseTag::Other,
    };
    Ok(tag)
}

fn endpoints(graph: &DefiningGraph, e: usize) -> [usize; 2] {
    [graph.edges()[e].s, graph.edges()[e].t]
}

fn triangle(graph: &DefiningGraph, blocks: &[usize]) -> bool {
    let mut v: Vec<usize> = blocks.iter().flat_map(|&e| endpoints(graph, e)).collect();
    v.sort_unstable();
    v.dedup();
    v.len() == 3
}

/// Four edges forming a 4-cycle of generators with no diagonal.
fn square(graph: &DefiningGraph, blocks: &[usize]) -> bool {
    let mut v: Vec<usize> = blocks.iter().flat_map(|&e| endpoints(graph, e)).collect();
    v.sort_unstable();
    v.dedup();
    if v.len() != 4 {
        return false;
    }
    let degree_two = v
        .iter()
        .all(|&x| blocks.iter().filter(|&&e| endpoints(graph, e).contains(&x)).count() == 2);
    let diagonals = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .filter(|&(i, j)| graph.label(v[i], v[j]).is_some())
        .count();
    degree_two && diagonals == 4
}
