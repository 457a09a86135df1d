//! Empirical Dehn function of `DA_n`: random null-homotopic words are filled
//! in a ball of `X_n`, reduced, and their areas tabulated by length.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fill::{fill_cycle_with, FillConfig};
use super::reduce::reduce;
use crate::complex::VertexId;
use crate::dihedral::{build_xn_ball, free_reduce, invert_word, Dihedral, GarsideElement, Letter, XVertex, XnBall};
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone)]
pub struct DehnConfig {
    pub n: u32,
    pub max_boundary: usize,
    /// Samples wanted per boundary length.
    pub samples: usize,
    pub seed: u64,
    /// Longest conjugator used when building words.
    pub max_conjugator: usize,
    /// Most conjugated relators multiplied together.
    pub max_factors: usize,
}

impl DehnConfig {
    pub fn new(n: u32, max_boundary: usize, samples: usize, seed: u64) -> Self {
        DehnConfig {
            n,
            max_boundary,
            samples,
            seed,
            max_conjugator: 6,
            max_factors: 10,
        }
    }

    /// Radius of the ball the fillings live in. Every prefix of a product
    /// of conjugates `g r g^-1` stays within `|g| + n` of the identity.
    pub fn radius(&self) -> u32 {
        (2 * self.n).max(self.max_conjugator as u32 + self.n + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DehnRow {
    pub boundary_length: usize,
    pub samples: usize,
    pub max_area: usize,
    pub mean_area: f64,
    pub max_raw_area: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DehnScan {
    pub rows: Vec<DehnRow>,
    pub skipped: usize,
}

impl DehnScan {
    /// Least-squares slope of `ln(max area)` against `ln(L)`.
    pub fn slope(&self) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| r.max_area > 0)
            .map(|r| ((r.boundary_length as f64).ln(), (r.max_area as f64).ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        (sxx > 0.0).then(|| sxy / sxx)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("L samples max_area mean_area max_raw_area\n");
        for r in &self.rows {
            s.push_str(&format!(
                "{} {} {} {:.3} {}\n",
                r.boundary_length, r.samples, r.max_area, r.mean_area, r.max_raw_area
            ));
        }
        if let Some(k) = self.slope() {
            s.push_str(&format!("slope {k:.4}\n"));
        }
        s
    }
}

/// A random product of conjugates of the relator and its inverse, freely
/// reduced.
pub fn random_trivial_word(
    group: Dihedral,
    rng: &mut impl Rng,
    max_conjugator: usize,
    max_factors: usize,
) -> Vec<Letter> {
    let rel = group.relator();
    let k = rng.gen_range(1..=max_factors.max(1));
    let mut word = Vec::new();
    for _ in 0..k {
        let len = rng.gen_range(0..=max_conjugator);
        let g: Vec<Letter> = (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect();
        let r = if rng.gen_bool(0.5) {
            rel.clone()
        } else {
            invert_word(&rel)
        };
        word.extend(&g);
        word.extend(r);
        word.extend(invert_word(&g));
        word = free_reduce(&word);
    }
    word
}

/// Real vertices visited by `word` read from the identity, without the
/// closing return to the identity.
pub fn word_cycle(ball: &XnBall, word: &[Letter]) -> Option<Vec<VertexId>> {
    let group = ball.group();
    let mut x = GarsideElement::identity();
    let mut out = Vec::with_capacity(word.len());
    for &l in word {
        out.push(ball.vertex_of(&XVertex::Real(x.clone()))?);
        group.push_letter(&mut x, l);
    }
    x.is_identity().then_some(out)
}

/// Fills and reduces `samples` words for every even length up to
/// `max_boundary`. Deterministic for a fixed seed.
pub fn dehn_scan(n: u32, max_boundary: usize, samples: usize, seed: u64) -> Result<DehnScan> {
    dehn_scan_with(&DehnConfig::new(n, max_boundary, samples, seed))
}

pub fn dehn_scan_with(cfg: &DehnConfig) -> Result<DehnScan> {
    if cfg.n < 2 {
        return Err(Error::Domain(format!("dehn_scan needs n >= 2, got {}", cfg.n)));
    }
    let ball = build_xn_ball(cfg.n, cfg.radius())?;
    let group = ball.group();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut by_len: BTreeMap<usize, Vec<Vec<Letter>>> = BTreeMap::new();
    let lengths = (2 * cfg.n as usize..=cfg.max_boundary).step_by(2).count();
    let budget = 2000 * cfg.samples.max(1) * lengths.max(1);
    for _ in 0..budget {
        let w = random_trivial_word(group, &mut rng, cfg.max_conjugator, cfg.max_factors);
        if w.is_empty() || w.len() > cfg.max_boundary {
            continue;
        }
        let bucket = by_len.entry(w.len()).or_default();
        if bucket.len() < cfg.samples {
            bucket.push(w);
        }
        if by_len.len() >= lengths && by_len.values().all(|b| b.len() >= cfg.samples) {
            break;
        }
    }
    let jobs: Vec<(usize, Vec<Letter>)> = by_len
        .into_iter()
        .flat_map(|(l, ws)| ws.into_iter().map(move |w| (l, w)))
        .collect();
    let results = par::map_vec(jobs, |(l, w)| (l, fill_and_reduce(&ball, &w)));
    let mut table: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut skipped = 0;
    for (l, res) in results {
        match res {
            Ok(pair) => table.entry(l).or_default().push(pair),
            Err(e) => {
                log::warn!("skipping a word of length {l}: {e}");
                skipped += 1;
            }
        }
    }
    let rows = table
        .into_iter()
        .map(|(l, v)| DehnRow {
            boundary_length: l,
            samples: v.len(),
            max_area: v.iter().map(|p| p.1).max().unwrap_or(0),
            mean_area: v.iter().map(|p| p.1 as f64).sum::<f64>() / v.len() as f64,
            max_raw_area: v.iter().map(|p| p.0).max().unwrap_or(0),
        })
        .collect();
    Ok(DehnScan { rows, skipped })
}

/// Raw and reduced area of the filling of a trivial word.
pub fn fill_and_reduce(ball: &XnBall, word: &[Letter]) -> Result<(usize, usize)> {
    let cycle =
        word_cycle(ball, word).ok_or_else(|| Error::RegionTooSmall("word leaves the ball or is not trivial".into()))?;
    let cfg = FillConfig {
        basepoint: Some(cycle[0]),
        ..FillConfig::default()
    };
    let raw = fill_cycle_with(&ball.complex, &cycle, &cfg)?;
    let (reduced, _) = reduce(&raw, &ball.complex)?;
    Ok((raw.area(), reduced.area()))
}
