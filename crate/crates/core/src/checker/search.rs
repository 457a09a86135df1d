//! Pruned depth-first enumeration of 2-full simple cycles.
//!
//! Each cycle is found once: from its least vertex, in the direction whose
//! second vertex is smaller than its last. A branch is cut when its length
//! plus the shortest way back to the start exceeds the bound, or when the
//! new vertex is adjacent to the vertex two steps back.

use std::f64::consts::TAU;
use std::sync::atomic::{AtomicU64, Ordering};

use super::CycleWitness;
use crate::link::LinkGraph;
use crate::par;

/// Extra room above 2π for the default search cutoff.
pub const DEFAULT_MARGIN: f64 = 0.5;

/// Lengths closer than this count as tied; ties go to the lexicographically
/// least vertex sequence.
const TIE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Cycles longer than this are not considered.
    pub cutoff: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cutoff: TAU + DEFAULT_MARGIN,
        }
    }
}

impl SearchConfig {
    pub fn with_margin(margin: f64) -> Self {
        SearchConfig { cutoff: TAU + margin }
    }
}

struct Graph {
    words: usize,
    adj: Vec<u64>,
    nbrs: Vec<Vec<(usize, f64)>>,
}

impl Graph {
    fn new(link: &LinkGraph) -> Graph {
        let n = link.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * words];
        let mut nbrs = vec![Vec::new(); n];
        for e in link.edges() {
            adj[e.a * words + e.b / 64] |= 1 << (e.b % 64);
            adj[e.b * words + e.a / 64] |= 1 << (e.a % 64);
            nbrs[e.a].push((e.b, e.angle));
            nbrs[e.b].push((e.a, e.angle));
        }
        for list in &mut nbrs {
            list.sort_by(|x, y| x.1.total_cmp(&y.1).then(x.0.cmp(&y.0)));
        }
        Graph { words, adj, nbrs }
    }

    #[inline]
    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }
}

fn better(a: &(f64, Vec<usize>), b: &(f64, Vec<usize>)) -> bool {
    if a.0 < b.0 - TIE {
        return true;
    }
    (a.0 - b.0).abs() <= TIE && a.1 < b.1
}

enum Mode<'a> {
    /// Keep the best cycle; the bound shrinks as better cycles are found.
    Min {
        shared: &'a AtomicU64,
        best: Option<(f64, Vec<usize>)>,
    },
    /// Keep every cycle within the fixed bound.
    All { found: Vec<(f64, Vec<usize>)> },
}

struct Dfs<'a> {
    g: &'a Graph,
    start: usize,
    cutoff: f64,
    back: Vec<f64>,
    path: Vec<usize>,
    on_path: Vec<bool>,
    mode: Mode<'a>,
}

impl Dfs<'_> {
    fn bound(&self) -> f64 {
        match &self.mode {
            Mode::Min { shared, .. } => self.cutoff.min(f64::from_bits(shared.load(Ordering::Relaxed)) + TIE),
            Mode::All { .. } => self.cutoff,
        }
    }

    fn record(&mut self, total: f64) {
        let cand = (total, self.path.clone());
        match &mut self.mode {
            Mode::Min { shared, best } => {
                if best.as_ref().is_none_or(|b| better(&cand, b)) {
                    *best = Some(cand);
                    let _ = shared.fetch_update(Ordering::Relaxed, Ordering::Relaxed, |cur| {
                        (total < f64::from_bits(cur)).then_some(total.to_bits())
                    });
                }
            }
            Mode::All { found } => found.push(cand),
        }
    }

    fn run(&mut self, v: usize, len: f64) {
        let g = self.g;
        let k = self.path.len();
        for &(w, a) in &g.nbrs[v] {
            let total = len + a;
            if w == self.start {
                if k >= 4
                    && self.path[1] < self.path[k - 1]
                    && !g.adjacent(self.path[k - 2], w)
                    && !g.adjacent(v, self.path[1])
                    && total <= self.bound()
                {
                    self.record(total);
                }
                continue;
            }
            if w < self.start || self.on_path[w] {
                continue;
            }
            if k >= 2 && g.adjacent(self.path[k - 2], w) {
                continue;
            }
            if total + self.back[w] > self.bound() {
                continue;
            }
            self.path.push(w);
            self.on_path[w] = true;
            self.run(w, total);
            self.on_path[w] = false;
            self.path.pop();
        }
    }
}

fn search_from<'a>(link: &LinkGraph, g: &'a Graph, start: usize, cutoff: f64, mode: Mode<'a>) -> Mode<'a> {
    let back = link.distances_from(start, |w| w >= start);
    let mut dfs = Dfs {
        g,
        start,
        cutoff,
        back,
        path: vec![start],
        on_path: vec![false; link.vertex_count()],
        mode,
    };
    dfs.on_path[start] = true;
    dfs.run(start, 0.0);
    dfs.mode
}

/// Shortest 2-full simple cycle with the default cutoff of `2π + 0.5`.
pub fn min_two_full_cycle(link: &LinkGraph) -> Option<CycleWitness> {
    min_two_full_cycle_with(link, SearchConfig::default())
}

pub fn min_two_full_cycle_with(link: &LinkGraph, cfg: SearchConfig) -> Option<CycleWitness> {
    let g = Graph::new(link);
    let shared = AtomicU64::new(f64::INFINITY.to_bits());
    let per_start = par::map_range(0..link.vertex_count(), |s| {
        match search_from(
            link,
            &g,
            s,
            cfg.cutoff,
            Mode::Min {
                shared: &shared,
                best: None,
            },
        ) {
            Mode::Min { best, .. } => best,
            Mode::All { .. } => unreachable!(),
        }
    });
    let mut best: Option<(f64, Vec<usize>)> = None;
    for cand in per_start.into_iter().flatten() {
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    }
    best.map(|(_, cycle)| CycleWitness::from_cycle(link, &cycle).expect("search yields simple cycles"))
}

/// Every 2-full simple cycle of angular length at most `bound`, ordered by
/// length then vertex sequence.
pub fn two_full_cycles_within(link: &LinkGraph, bound: f64) -> Vec<CycleWitness> {
    let g = Graph::new(link);
    let per_start = par::map_range(0..link.vertex_count(), |s| {
        match search_from(link, &g, s, bound, Mode::All { found: Vec::new() }) {
            Mode::All { found } => found,
            Mode::Min { .. } => unreachable!(),
        }
    });
    let mut all: Vec<(f64, Vec<usize>)> = per_start.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    all.into_iter()
        .map(|(_, c)| CycleWitness::from_cycle(link, &c).expect("search yields simple cycles"))
        .collect()
}
