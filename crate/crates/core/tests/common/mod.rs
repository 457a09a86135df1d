//! Test-side oracles, written without the library's search and normal-form
//! code so they can check it.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use systolic::diagrams::{fill_cycle_with, random_trivial_word, word_cycle, DiscDiagram, FillConfig};
use systolic::dihedral::{Gen, Letter, XnBall};
use systolic::links::DefiningGraph;
use systolic::LinkGraph;

/// Every simple cycle of angular length at most `bound`, by plain DFS from
/// its least vertex. Only the total length prunes.
pub fn simple_cycles_within(link: &LinkGraph, bound: f64) -> Vec<(f64, Vec<usize>)> {
    fn go(
        link: &LinkGraph,
        start: usize,
        bound: f64,
        path: &mut Vec<usize>,
        on: &mut [bool],
        len: f64,
        out: &mut Vec<(f64, Vec<usize>)>,
    ) {
        let v = *path.last().unwrap();
        for &(w, e) in link.neighbors(v) {
            let total = len + link.edges()[e].angle;
            if total > bound {
                continue;
            }
            if w == start && path.len() >= 3 && path[1] < v {
                out.push((total, path.clone()));
            } else if w > start && !on[w] {
                on[w] = true;
                path.push(w);
                go(link, start, bound, path, on, total, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; link.vertex_count()];
    for s in 0..link.vertex_count() {
        on[s] = true;
        go(link, s, bound, &mut vec![s], &mut on, 0.0, &mut out);
        on[s] = false;
    }
    out
}

/// No edge between vertices two steps apart along the cycle.
pub fn two_full(link: &LinkGraph, c: &[usize]) -> bool {
    let k = c.len();
    k >= 4 && (0..k).all(|i| link.edge_between(c[i], c[(i + 2) % k]).is_none())
}

/// Shortest 2-full cycle of length at most `bound`, by brute force.
pub fn brute_min_two_full(link: &LinkGraph, bound: f64) -> Option<(f64, Vec<usize>)> {
    simple_cycles_within(link, bound)
        .into_iter()
        .filter(|(_, c)| two_full(link, c))
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// Every simple path from `from` to `to` of angular length at most `bound`.
pub fn simple_paths_within(link: &LinkGraph, from: usize, to: usize, bound: f64) -> Vec<(f64, Vec<usize>)> {
    fn go(
        link: &LinkGraph,
        to: usize,
        bound: f64,
        path: &mut Vec<usize>,
        on: &mut [bool],
        len: f64,
        out: &mut Vec<(f64, Vec<usize>)>,
    ) {
        let v = *path.last().unwrap();
        if v == to {
            out.push((len, path.clone()));
            return;
        }
        for &(w, e) in link.neighbors(v) {
            let total = len + link.edges()[e].angle;
            if total <= bound && !on[w] {
                on[w] = true;
                path.push(w);
                go(link, to, bound, path, on, total, out);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; link.vertex_count()];
    on[from] = true;
    go(link, to, bound, &mut vec![from], &mut on, 0.0, &mut out);
    out
}

/// Equality in `DA_n` decided by rewriting positive words.
///
/// A word is first written `P Δ^-k` with `P` positive: `x^-1 = y Δ^-1` where
/// `x y = Δ`, and `Δ^-1` moves right past a letter by the diagram
/// automorphism. Then `Δ` is stripped off the right of `P` while possible,
/// searching the whole class of `P` under `aba.. <-> bab..`. The key is the
/// remaining power with the least word of the class.
pub struct RewriteOracle {
    n: usize,
}

impl RewriteOracle {
    pub fn new(n: u32) -> Self {
        RewriteOracle { n: n as usize }
    }

    fn alt(&self, start: u8, len: usize) -> Vec<u8> {
        (0..len).map(|i| start ^ (i as u8 & 1)).collect()
    }

    fn shift(&self, g: u8, k: usize) -> u8 {
        if self.n % 2 == 1 && k % 2 == 1 {
            g ^ 1
        } else {
            g
        }
    }

    fn class(&self, w: &[u8]) -> HashSet<Vec<u8>> {
        let rel = [self.alt(0, self.n), self.alt(1, self.n)];
        let mut seen = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            if x.len() < self.n {
                continue;
            }
            for i in 0..=x.len() - self.n {
                let window = &x[i..i + self.n];
                for r in 0..2 {
                    if window == rel[r].as_slice() {
                        let mut y = x.clone();
                        y[i..i + self.n].copy_from_slice(&rel[1 - r]);
                        if seen.insert(y.clone()) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        seen
    }

    pub fn key(&self, word: &[Letter]) -> (usize, Vec<u8>) {
        let mut p: Vec<u8> = Vec::new();
        let mut k = 0usize;
        for l in word {
            let g = match l.gen {
                Gen::A => 0u8,
                Gen::B => 1u8,
            };
            if l.inverse {
                p.extend(self.alt(g ^ 1, self.n - 1).into_iter().map(|x| self.shift(x, k)));
                k += 1;
            } else {
                p.push(self.shift(g, k));
            }
        }
        loop {
            let class = self.class(&p);
            let rel = [self.alt(0, self.n), self.alt(1, self.n)];
            let stripped = if k > 0 {
                class
                    .iter()
                    .find(|w| w.len() >= self.n && rel.iter().any(|r| w.ends_with(r)))
            } else {
                None
            };
            match stripped {
                Some(w) => {
                    p = w[..w.len() - self.n].to_vec();
                    k -= 1;
                }
                None => return (k, class.into_iter().min().unwrap()),
            }
        }
    }
}

/// All words of length at most `max` over `a, a^-1, b, b^-1`.
pub fn all_words(max: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::with_capacity(layer.len() * 4);
        for w in &layer {
            for l in Letter::ALL {
                let mut x: Vec<Letter> = w.clone();
                x.push(l);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn graph(edges: &[(&str, &str, u32)]) -> DefiningGraph {
    let mut g = DefiningGraph::new();
    for &(s, t, m) in edges {
        g.add_edge(s, t, m).unwrap();
    }
    g
}

/// Two-dimensional defining graphs: paths, trees, triangles with
/// `1/p + 1/q + 1/r <= 1`, squares without diagonals and a few mixtures.
pub fn two_dimensional_corpus() -> Vec<(&'static str, DefiningGraph)> {
    vec![
        ("edge-2", graph(&[("a", "b", 2)])),
        ("edge-7", graph(&[("a", "b", 7)])),
        ("path-3-3", graph(&[("a", "b", 3), ("b", "c", 3)])),
        ("path-2-5-7", graph(&[("a", "b", 2), ("b", "c", 5), ("c", "d", 7)])),
        (
            "path-4-4-4-4",
            graph(&[("a", "b", 4), ("b", "c", 4), ("c", "d", 4), ("d", "e", 4)]),
        ),
        ("star-3-4-5", graph(&[("x", "a", 3), ("x", "b", 4), ("x", "c", 5)])),
        (
            "star-2-2-2-2",
            graph(&[("x", "a", 2), ("x", "b", 2), ("x", "c", 2), ("x", "d", 2)]),
        ),
        (
            "tree-mixed",
            graph(&[("a", "b", 2), ("b", "c", 3), ("b", "d", 6), ("d", "e", 2)]),
        ),
        ("triangle-3-3-3", graph(&[("a", "b", 3), ("b", "c", 3), ("c", "a", 3)])),
        ("triangle-2-4-4", graph(&[("a", "b", 2), ("b", "c", 4), ("c", "a", 4)])),
        ("triangle-2-3-6", graph(&[("a", "b", 2), ("b", "c", 3), ("c", "a", 6)])),
        ("triangle-2-3-7", graph(&[("a", "b", 2), ("b", "c", 3), ("c", "a", 7)])),
        ("triangle-3-4-5", graph(&[("a", "b", 3), ("b", "c", 4), ("c", "a", 5)])),
        ("triangle-4-4-4", graph(&[("a", "b", 4), ("b", "c", 4), ("c", "a", 4)])),
        ("triangle-2-5-5", graph(&[("a", "b", 2), ("b", "c", 5), ("c", "a", 5)])),
        ("triangle-3-3-4", graph(&[("a", "b", 3), ("b", "c", 3), ("c", "a", 4)])),
        (
            "square-2-2-2-2",
            graph(&[("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)]),
        ),
        (
            "square-2-3-2-3",
            graph(&[("a", "b", 2), ("b", "c", 3), ("c", "d", 2), ("d", "a", 3)]),
        ),
        (
            "square-3-3-3-3",
            graph(&[("a", "b", 3), ("b", "c", 3), ("c", "d", 3), ("d", "a", 3)]),
        ),
        (
            "square-2-4-5-6",
            graph(&[("a", "b", 2), ("b", "c", 4), ("c", "d", 5), ("d", "a", 6)]),
        ),
        (
            "square-with-tail",
            graph(&[
                ("a", "b", 2),
                ("b", "c", 2),
                ("c", "d", 2),
                ("d", "a", 2),
                ("d", "e", 3),
            ]),
        ),
        (
            "two-triangles",
            graph(&[
                ("a", "b", 3),
                ("b", "c", 3),
                ("c", "a", 3),
                ("c", "d", 3),
                ("d", "a", 3),
            ]),
        ),
        (
            "triangle-with-pendant",
            graph(&[("a", "b", 2), ("b", "c", 4), ("c", "a", 4), ("c", "d", 5)]),
        ),
    ]
}

/// `1/p + 1/q + 1/r` for the labels of a triangle graph.
pub fn triangle_sum(g: &DefiningGraph) -> Option<f64> {
    (g.edges().len() == 3 && g.triangles().len() == 1).then(|| g.edges().iter().map(|e| 1.0 / e.label as f64).sum())
}

/// A corpus item: a filling of a trivial word's cycle with a randomized
/// frontier order and basepoint.
pub struct Filling {
    pub cycle: Vec<u32>,
    pub diagram: DiscDiagram,
}

/// `count` seeded fillings of random trivial words in `ball`.
pub fn random_fillings(ball: &XnBall, count: usize, seed: u64, max_conj: usize, max_factors: usize) -> Vec<Filling> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let factors = rng.gen_range(1..=max_factors);
        let word = random_trivial_word(ball.group(), &mut rng, max_conj, factors);
        if word.is_empty() {
            continue;
        }
        let cycle = word_cycle(ball, &word).expect("ball radius covers the word");
        let cfg = FillConfig {
            basepoint: Some(cycle[rng.gen_range(0..cycle.len())]),
            seed: Some(rng.gen()),
            ..FillConfig::default()
        };
        let diagram = fill_cycle_with(&ball.complex, &cycle, &cfg).expect("filling succeeds");
        out.push(Filling { cycle, diagram });
    }
    out
}
