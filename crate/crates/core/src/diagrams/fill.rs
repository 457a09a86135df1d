//! Filling cycles of the ambient 1-skeleton by contracting a frontier.
//!
//! The unfilled part of the disc is bounded by a simple closed frontier of
//! diagram vertices, initially the cycle itself. Each step is an elementary
//! homotopy of the frontier:
//!
//! * fold: a backtrack `x y x` glues its two edges;
//! * shortcut: `x y z` with `x ~ z` adds the triangle `xyz` and drops `y`;
//! * push: `x y z` is replaced by `x y' z` across two triangles, where `y'`
//!   is a common neighbor closer to the basepoint.
//!
//! Folds and shortcuts shorten the frontier and pushes lower its total hop
//! distance to the basepoint, so the process stops. A step cap guards the
//! sideways fallback.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::disc::{DVertex, DiscDiagram, Tri};
use super::AmbientOracle;
use crate::complex::VertexId;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct FillConfig {
    /// Vertex the frontier is pushed towards; defaults to the first vertex
    /// of the cycle.
    pub basepoint: Option<VertexId>,
    /// Randomizes which shortcut or push is taken. `None` is deterministic.
    pub seed: Option<u64>,
    pub max_steps: usize,
}

impl Default for FillConfig {
    fn default() -> Self {
        FillConfig {
            basepoint: None,
            seed: None,
            max_steps: 200_000,
        }
    }
}

/// Hop distances from `root` over the oracle's 1-skeleton.
pub fn hop_distances(oracle: &dyn AmbientOracle, root: VertexId) -> HashMap<VertexId, u32> {
    let mut dist = HashMap::new();
    dist.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for w in oracle.neighbors(v) {
            dist.entry(w).or_insert_with(|| {
                queue.push_back(w);
                d + 1
            });
        }
    }
    dist
}

struct Builder {
    img: Vec<VertexId>,
    parent: Vec<DVertex>,
    adj: Vec<BTreeSet<DVertex>>,
    tris: Vec<Tri>,
}

impl Builder {
    fn find(&self, mut v: DVertex) -> DVertex {
        while self.parent[v as usize] != v {
            v = self.parent[v as usize];
        }
        v
    }

    fn add_vertex(&mut self, image: VertexId) -> DVertex {
        let v = self.img.len() as DVertex;
        self.img.push(image);
        self.parent.push(v);
        self.adj.push(BTreeSet::new());
        v
    }

    fn connect(&mut self, a: DVertex, b: DVertex) {
        self.adj[a as usize].insert(b);
        self.adj[b as usize].insert(a);
    }

    fn adjacent(&self, a: DVertex, b: DVertex) -> bool {
        self.adj[a as usize].contains(&b)
    }

    fn add_triangle(&mut self, a: DVertex, b: DVertex, c: DVertex) {
        self.connect(a, b);
        self.connect(b, c);
        self.connect(a, c);
        self.tris.push([a, b, c]);
    }

    /// Identifies `c` with `a`.
    fn merge(&mut self, a: DVertex, c: DVertex) {
        self.parent[c as usize] = a;
        let moved = std::mem::take(&mut self.adj[c as usize]);
        for x in moved {
            self.adj[x as usize].remove(&c);
            self.connect(a, x);
        }
        for t in &mut self.tris {
            for x in t.iter_mut() {
                if *x == c {
                    *x = a;
                }
            }
        }
    }
}

pub fn fill_cycle(oracle: &dyn AmbientOracle, cycle: &[VertexId]) -> Result<DiscDiagram> {
    fill_cycle_with(oracle, cycle, &FillConfig::default())
}

pub fn fill_cycle_with(oracle: &dyn AmbientOracle, cycle: &[VertexId], cfg: &FillConfig) -> Result<DiscDiagram> {
    let m = cycle.len();
    if m == 0 {
        return Err(Error::Domain("cannot fill an empty cycle".into()));
    }
    for (i, &v) in cycle.iter().enumerate() {
        if !oracle.contains(v) {
            return Err(Error::Domain(format!("cycle vertex {v} is not in the complex")));
        }
        let w = cycle[(i + 1) % m];
        if m > 1 && (v == w || !oracle.adjacent(v, w)) {
            return Err(Error::Domain(format!("cycle step {v} -> {w} is not an edge")));
        }
    }
    if m == 1 {
        return Ok(DiscDiagram::point(cycle[0]));
    }
    let base = cfg.basepoint.unwrap_or(cycle[0]);
    if !oracle.contains(base) {
        return Err(Error::Domain(format!("basepoint {base} is not in the complex")));
    }
    let dist = hop_distances(oracle, base);
    let pot = |v: VertexId| dist.get(&v).copied().unwrap_or(u32::MAX);
    let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);

    let mut b = Builder {
        img: Vec::new(),
        parent: Vec::new(),
        adj: Vec::new(),
        tris: Vec::new(),
    };
    let mut front: Vec<DVertex> = cycle.iter().map(|&v| b.add_vertex(v)).collect();
    for i in 0..m {
        b.connect(front[i], front[(i + 1) % m]);
    }

    let mut steps = 0;
    while front.len() > 2 {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::RegionTooSmall(format!(
                "no contraction after {} steps",
                cfg.max_steps
            )));
        }
        let k = front.len();
        let at = |i: usize| (front[(i + k - 1) % k], front[i], front[(i + 1) % k]);

        // fold; on a 4-frontier the opposite vertex is a legitimate second
        // common neighbor, both backtracks collapse at once
        let fold = (0..k).find(|&i| {
            let (x, y, z) = at(i);
            let opposite = front[(i + 2) % k];
            k > 3
                && b.img[x as usize] == b.img[z as usize]
                && b.adj[x as usize]
                    .intersection(&b.adj[z as usize])
                    .all(|&c| c == y || (k == 4 && c == opposite))
        });
        if let Some(i) = fold {
            let (x, _, z) = at(i);
            b.merge(x, z);
            let iz = (i + 1) % k;
            let (hi, lo) = if i > iz { (i, iz) } else { (iz, i) };
            front.remove(hi);
            front.remove(lo);
            continue;
        }
        if k == 3 {
            let (x, y, z) = (front[0], front[1], front[2]);
            b.add_triangle(x, y, z);
            front.clear();
            break;
        }

        // shortcut, removing the frontier vertex farthest from the basepoint
        let shortcuts: Vec<usize> = (0..k)
            .filter(|&i| {
                let (x, _, z) = at(i);
                let (fx, fz) = (b.img[x as usize], b.img[z as usize]);
                fx != fz && oracle.adjacent(fx, fz) && !b.adjacent(x, z)
            })
            .collect();
        if !shortcuts.is_empty() {
            let i = match rng.as_mut() {
                Some(r) => *shortcuts.choose(r).unwrap(),
                None => *shortcuts
                    .iter()
                    .max_by_key(|&&i| (pot(b.img[front[i] as usize]), std::cmp::Reverse(i)))
                    .unwrap(),
            };
            let (x, y, z) = at(i);
            b.add_triangle(x, y, z);
            front.remove(i);
            continue;
        }

        // push. Sideways pushes (equal distance, onto a vertex not on the frontier)
        // are a fallback for frontiers that got wedged.
        let mut pushes: Vec<(usize, VertexId)> = Vec::new();
        for sideways in [false, true] {
            let on_front: BTreeSet<VertexId> = front.iter().map(|&v| b.img[v as usize]).collect();
            for i in 0..k {
                let (x, y, z) = at(i);
                let (fx, fy, fz) = (b.img[x as usize], b.img[y as usize], b.img[z as usize]);
                for c in oracle.neighbors(fy) {
                    let closer = if sideways {
                        pot(c) == pot(fy) && !on_front.contains(&c)
                    } else {
                        pot(c) < pot(fy)
                    };
                    if closer && c != fx && c != fz && oracle.adjacent(c, fx) && oracle.adjacent(c, fz) {
                        pushes.push((i, c));
                    }
                }
            }
            if !pushes.is_empty() {
                break;
            }
        }
        if pushes.is_empty() {
            return Err(Error::RegionTooSmall(format!(
                "frontier of length {k} admits no fold, shortcut or push"
            )));
        }
        let (i, c) = match rng.as_mut() {
            Some(r) => pushes[r.gen_range(0..pushes.len())],
            None => *pushes
                .iter()
                .max_by_key(|&&(i, c)| (pot(b.img[front[i] as usize]), std::cmp::Reverse((pot(c), i, c))))
                .unwrap(),
        };
        let (x, y, z) = at(i);
        let fresh = b.add_vertex(c);
        b.add_triangle(x, y, fresh);
        b.add_triangle(y, z, fresh);
        front[i] = fresh;
    }

    let boundary: Vec<DVertex> = (0..m as DVertex).map(|v| b.find(v)).collect();
    let mut used: BTreeSet<DVertex> = boundary.iter().copied().collect();
    for t in &b.tris {
        used.extend(t.iter().copied());
    }
    let d = DiscDiagram::from_parts(used.iter().map(|&v| (v, b.img[v as usize])), b.tris.clone(), boundary);
    let report = d.validate(oracle);
    if !report.is_valid() {
        return Err(Error::Invariant(format!(
            "filling is not a disc: {}",
            report.errors.join("; ")
        )));
    }
    Ok(d.compact())
}
