//! Finite pieces of the complex `X_n`: real vertices are elements of `DA_n`,
//! each precell `h·Π` (boundary `h·u_i`, `h·d_i`) is coned off from an
//! interior vertex `h·o`, and interior vertices of precells sharing at least
//! two boundary edges are joined.
//!
//! Translates act by left multiplication; the base precell has its left tip
//! at the identity.

use std::collections::{HashMap, HashSet, VecDeque};

use super::garside::{Dihedral, GarsideElement, Letter};
use crate::complex::{MetricComplex, VertexId, VertexKind};
use crate::error::{Error, Result};
use crate::metric::{phi, polygon_edge_length};

/// Refuse to enumerate more real vertices than this unless asked.
pub const DEFAULT_MAX_ELEMENTS: usize = 1_500_000;

/// A vertex of `X_n` named by group data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XVertex {
    Real(GarsideElement),
    /// Centre of the precell whose left tip is the given element.
    Interior(GarsideElement),
}

/// Translation data shared by every construction over a fixed `n`.
#[derive(Debug, Clone)]
pub struct XnShape {
    pub group: Dihedral,
    /// `u_0..u_n`.
    pub upper: Vec<GarsideElement>,
    /// `d_0..d_n`.
    pub lower: Vec<GarsideElement>,
    /// Boundary words `u_0..u_n, d_1..d_{n-1}` (each boundary vertex once).
    boundary: Vec<GarsideElement>,
    boundary_inv: Vec<GarsideElement>,
    /// `(w, i)` with `w ∈ {u_i^±1, d_i^±1}`, `1 <= i <= n-2`.
    shifts: Vec<(GarsideElement, u32, bool)>,
    cayley: Vec<GarsideElement>,
}

impl XnShape {
    pub fn new(n: u32) -> Result<Self> {
        let group = Dihedral::new(n)?;
        let upper: Vec<_> = (0..=n).map(|i| group.upper(i)).collect();
        let lower: Vec<_> = (0..=n).map(|i| group.lower(i)).collect();
        let mut boundary = upper.clone();
        boundary.extend(lower[1..n as usize].iter().cloned());
        let boundary_inv = boundary.iter().map(|w| group.inverse(w)).collect();
        let mut shifts = Vec::new();
        for i in 1..n.saturating_sub(1) {
            for w in [&upper[i as usize], &lower[i as usize]] {
                shifts.push((w.clone(), i, true));
                shifts.push((group.inverse(w), i, false));
            }
        }
        let cayley = Letter::ALL.iter().map(|&l| group.generator(l)).collect();
        Ok(XnShape {
            group,
            upper,
            lower,
            boundary,
            boundary_inv,
            shifts,
            cayley,
        })
    }

    pub fn n(&self) -> u32 {
        self.group.n()
    }

    /// All neighbours of `v` in `X_n`.
    pub fn neighbors(&self, v: &XVertex) -> Vec<XVertex> {
        let g = self.group;
        match v {
            XVertex::Real(x) => {
                let mut out: Vec<XVertex> = self.cayley.iter().map(|c| XVertex::Real(g.multiply(x, c))).collect();
                out.extend(self.boundary_inv.iter().map(|w| XVertex::Interior(g.multiply(x, w))));
                out
            }
            XVertex::Interior(h) => {
                let mut out: Vec<XVertex> = self.boundary.iter().map(|w| XVertex::Real(g.multiply(h, w))).collect();
                out.extend(self.shifts.iter().map(|(w, _, _)| XVertex::Interior(g.multiply(h, w))));
                out
            }
        }
    }

    /// Tips of the `2n` precells whose boundary contains `x`.
    pub fn precells_containing(&self, x: &GarsideElement) -> Vec<GarsideElement> {
        self.boundary_inv.iter().map(|w| self.group.multiply(x, w)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Half {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TipSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precell {
    pub element: GarsideElement,
    /// Vertex ids of `g·u_0 .. g·u_n`.
    pub upper: Vec<VertexId>,
    /// Vertex ids of `g·d_0 .. g·d_n`.
    pub lower: Vec<VertexId>,
    pub center: VertexId,
}

impl Precell {
    pub fn left_tip(&self) -> VertexId {
        self.upper[0]
    }

    pub fn right_tip(&self) -> VertexId {
        *self.upper.last().unwrap()
    }

    /// Boundary vertices in cyclic order: upper half left to right, then the
    /// lower half back.
    pub fn boundary_cycle(&self) -> Vec<VertexId> {
        let mut c = self.upper.clone();
        c.extend(self.lower[1..self.lower.len() - 1].iter().rev());
        c
    }

    fn tip_side(&self, v: VertexId) -> Option<TipSide> {
        if v == self.left_tip() {
            Some(TipSide::Left)
        } else if v == self.right_tip() {
            Some(TipSide::Right)
        } else {
            None
        }
    }

    /// Half containing all of `set` and the index range it covers there.
    fn locate(&self, set: &HashSet<VertexId>) -> Option<(Half, usize, usize)> {
        for (half, seq) in [(Half::Upper, &self.upper), (Half::Lower, &self.lower)] {
            let idx: Vec<usize> = seq
                .iter()
                .enumerate()
                .filter(|(_, v)| set.contains(v))
                .map(|(i, _)| i)
                .collect();
            if idx.len() == set.len() {
                return Some((half, idx[0], *idx.last().unwrap()));
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Vertex(VertexId),
    Path {
        edges: usize,
        /// Vertices in order along the first precell's half.
        vertices: Vec<VertexId>,
        first_half: Half,
        second_half: Half,
        /// Endpoint that is a tip of the first precell.
        first_tip: (VertexId, TipSide),
        /// Endpoint that is a tip of the second precell.
        second_tip: (VertexId, TipSide),
    },
}

impl Intersection {
    pub fn edge_count(&self) -> usize {
        match self {
            Intersection::Path { edges, .. } => *edges,
            _ => 0,
        }
    }
}

/// A full subcomplex of `X_n` together with the group data naming its
/// vertices.
#[derive(Debug, Clone)]
pub struct XnBall {
    pub n: u32,
    /// Word radius for balls, hop radius for regions.
    pub radius: u32,
    pub complex: MetricComplex,
    /// Precells whose whole boundary is present.
    pub precells: Vec<Precell>,
    pub element_index: HashMap<GarsideElement, VertexId>,
    interior_index: HashMap<GarsideElement, VertexId>,
    precell_index: HashMap<GarsideElement, usize>,
    names: Vec<XVertex>,
    shape: XnShape,
}

pub fn build_xn_ball(n: u32, radius: u32) -> Result<XnBall> {
    build_xn_ball_capped(n, radius, DEFAULT_MAX_ELEMENTS)
}

pub fn build_xn_ball_capped(n: u32, radius: u32, max_elements: usize) -> Result<XnBall> {
    let shape = XnShape::new(n)?;
    if radius < 2 * n {
        return Err(Error::Config(format!("ball radius {radius} is below 2n = {}", 2 * n)));
    }
    let elements = shape.group.ball_elements_capped(radius, max_elements)?;
    let present: HashSet<&GarsideElement> = elements.iter().collect();
    let tips: Vec<GarsideElement> = elements
        .iter()
        .filter(|h| {
            shape
                .boundary
                .iter()
                .all(|w| present.contains(&shape.group.multiply(h, w)))
        })
        .cloned()
        .collect();
    log::debug!(
        "DA_{n} ball radius {radius}: {} elements, {} precells",
        elements.len(),
        tips.len()
    );
    XnBall::assemble(shape, radius, elements, tips)
}

/// Full subcomplex on every vertex within `hops` edges of the seed elements.
pub fn build_xn_region(n: u32, seeds: &[GarsideElement], hops: u32, max_vertices: usize) -> Result<XnBall> {
    let shape = XnShape::new(n)?;
    let mut seen: HashSet<XVertex> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    for s in seeds {
        let v = XVertex::Real(s.clone());
        if seen.insert(v.clone()) {
            order.push(v.clone());
            queue.push_back((v, 0u32));
        }
    }
    while let Some((v, d)) = queue.pop_front() {
        if d == hops {
            continue;
        }
        for w in shape.neighbors(&v) {
            if seen.insert(w.clone()) {
                if seen.len() > max_vertices {
                    return Err(Error::Config(format!(
                        "region of {hops} hops in X_{n} exceeds {max_vertices} vertices"
                    )));
                }
                order.push(w.clone());
                queue.push_back((w, d + 1));
            }
        }
    }
    let mut reals = Vec::new();
    let mut tips = Vec::new();
    for v in order {
        match v {
            XVertex::Real(g) => reals.push(g),
            XVertex::Interior(h) => tips.push(h),
        }
    }
    XnBall::assemble(shape, hops, reals, tips)
}

impl XnBall {
    fn assemble(shape: XnShape, radius: u32, reals: Vec<GarsideElement>, tips: Vec<GarsideElement>) -> Result<XnBall> {
        let n = shape.n();
        let g = shape.group;
        let mut complex = MetricComplex::new();
        let mut names = Vec::with_capacity(reals.len() + tips.len());
        let mut element_index = HashMap::with_capacity(reals.len());
        for x in reals {
            let id = names.len() as VertexId;
            complex.add_vertex(id, VertexKind::Real, Some(x.to_string()))?;
            element_index.insert(x.clone(), id);
            names.push(XVertex::Real(x));
        }
        let mut interior_index = HashMap::with_capacity(tips.len());
        for h in tips {
            let id = names.len() as VertexId;
            complex.add_vertex(id, VertexKind::Interior, Some(format!("o@{h}")))?;
            interior_index.insert(h.clone(), id);
            names.push(XVertex::Interior(h));
        }

        let side = polygon_edge_length(n)?;
        for (x, &id) in &element_index {
            for l in [Letter::A, Letter::B] {
                if let Some(&j) = element_index.get(&g.multiply_word(x, &[l])) {
                    complex.add_edge(id, j, side)?;
                }
            }
        }
        let mut precells = Vec::new();
        let mut tip_list: Vec<(&GarsideElement, &VertexId)> = interior_index.iter().collect();
        tip_list.sort_by_key(|(_, &id)| id);
        for (h, &o) in &tip_list {
            for w in &shape.boundary {
                if let Some(&j) = element_index.get(&g.multiply(h, w)) {
                    complex.add_edge(o, j, 1.0)?;
                }
            }
            for (w, i, positive) in &shape.shifts {
                if !positive {
                    continue;
                }
                if let Some(&j) = interior_index.get(&g.multiply(h, w)) {
                    let len = phi(*i as f64 / (2 * n) as f64 * std::f64::consts::TAU)?;
                    complex.add_edge(o, j, len)?;
                }
            }
            let upper: Option<Vec<VertexId>> = shape
                .upper
                .iter()
                .map(|w| element_index.get(&g.multiply(h, w)).copied())
                .collect();
            let lower: Option<Vec<VertexId>> = shape
                .lower
                .iter()
                .map(|w| element_index.get(&g.multiply(h, w)).copied())
                .collect();
            if let (Some(upper), Some(lower)) = (upper, lower) {
                precells.push(Precell {
                    element: (*h).clone(),
                    upper,
                    lower,
                    center: o,
                });
            }
        }
        complex.close_flag();
        let precell_index = precells
            .iter()
            .enumerate()
            .map(|(i, p)| (p.element.clone(), i))
            .collect();
        Ok(XnBall {
            n,
            radius,
            complex,
            precells,
            element_index,
            interior_index,
            precell_index,
            names,
            shape,
        })
    }

    pub fn shape(&self) -> &XnShape {
        &self.shape
    }

    pub fn group(&self) -> Dihedral {
        self.shape.group
    }

    pub fn name(&self, v: VertexId) -> &XVertex {
        &self.names[v as usize]
    }

    pub fn vertex_of(&self, v: &XVertex) -> Option<VertexId> {
        match v {
            XVertex::Real(x) => self.element_index.get(x).copied(),
            XVertex::Interior(h) => self.interior_index.get(h).copied(),
        }
    }

    pub fn precell(&self, tip: &GarsideElement) -> Option<&Precell> {
        self.precell_index.get(tip).map(|&i| &self.precells[i])
    }

    /// True when every neighbour `v` has in `X_n` is present, so the link of
    /// `v` here equals its link in `X_n`.
    pub fn is_deep(&self, v: VertexId) -> bool {
        let name = &self.names[v as usize];
        match name {
            XVertex::Real(x) => {
                self.shape.neighbors(name).iter().all(|w| self.vertex_of(w).is_some())
                    && self
                        .shape
                        .precells_containing(x)
                        .iter()
                        .all(|h| self.precell_index.contains_key(h))
            }
            XVertex::Interior(_) => self.shape.neighbors(name).iter().all(|w| match w {
                XVertex::Real(_) => self.vertex_of(w).is_some(),
                XVertex::Interior(h) => self.precell_index.contains_key(h),
            }),
        }
    }

    pub fn deep_vertices(&self) -> Vec<VertexId> {
        (0..self.names.len() as VertexId).filter(|&v| self.is_deep(v)).collect()
    }

    /// Sidecar index lines `P <element> <o-id>`.
    pub fn precell_index_text(&self) -> String {
        let mut out = String::new();
        for p in &self.precells {
            out.push_str(&format!("P {} {}\n", p.element, p.center));
        }
        out
    }

    /// Classifies the vertex-set intersection of two distinct precells.
    pub fn precell_intersection(&self, p1: &Precell, p2: &Precell) -> Result<Intersection> {
        if p1.element == p2.element {
            return Err(Error::Domain("precell intersected with itself".into()));
        }
        let b2: HashSet<VertexId> = p2.boundary_cycle().into_iter().collect();
        let common: HashSet<VertexId> = p1.boundary_cycle().into_iter().filter(|v| b2.contains(v)).collect();
        match common.len() {
            0 => return Ok(Intersection::Empty),
            1 => return Ok(Intersection::Vertex(*common.iter().next().unwrap())),
            _ => {}
        }
        let bad = |what: &str| {
            Error::Invariant(format!(
                "precells {} and {} meet in {} vertices that {what}",
                p1.element,
                p2.element,
                common.len()
            ))
        };
        let (h1, s1, e1) = p1
            .locate(&common)
            .ok_or_else(|| bad("do not lie in one half of the first"))?;
        let (h2, s2, e2) = p2
            .locate(&common)
            .ok_or_else(|| bad("do not lie in one half of the second"))?;
        let len = common.len();
        if e1 - s1 + 1 != len || e2 - s2 + 1 != len {
            return Err(bad("are not a path"));
        }
        if len == self.n as usize + 1 {
            return Err(bad("fill a whole half"));
        }
        let seq1 = match h1 {
            Half::Upper => &p1.upper,
            Half::Lower => &p1.lower,
        };
        let vertices = seq1[s1..=e1].to_vec();
        let ends = [vertices[0], *vertices.last().unwrap()];
        let mut found = None;
        for (a, b) in [(ends[0], ends[1]), (ends[1], ends[0])] {
            if let (Some(t1), Some(t2)) = (p1.tip_side(a), p2.tip_side(b)) {
                if t1 != t2 {
                    found = Some(((a, t1), (b, t2)));
                    break;
                }
            }
        }
        let (first_tip, second_tip) =
            found.ok_or_else(|| bad("do not end at a left tip of one and a right tip of the other"))?;
        Ok(Intersection::Path {
            edges: len - 1,
            vertices,
            first_half: h1,
            second_half: h2,
            first_tip,
            second_tip,
        })
    }

    /// For each precell, the indices of other precells sharing a vertex with it.
    pub fn precell_neighbors(&self) -> Vec<Vec<usize>> {
        let mut by_vertex: HashMap<VertexId, Vec<usize>> = HashMap::new();
        for (i, p) in self.precells.iter().enumerate() {
            for v in p.boundary_cycle() {
                by_vertex.entry(v).or_default().push(i);
            }
        }
        let mut out = vec![Vec::new(); self.precells.len()];
        for (i, p) in self.precells.iter().enumerate() {
            let mut set: Vec<usize> = p
                .boundary_cycle()
                .iter()
                .flat_map(|v| by_vertex[v].iter().copied())
                .filter(|&j| j != i)
                .collect();
            set.sort_unstable();
            set.dedup();
            out[i] = set;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::extract_link;

    #[test]
    fn radius_precondition() {
        assert!(matches!(build_xn_ball(3, 5), Err(Error::Config(_))));
        assert!(build_xn_ball(1, 10).is_err());
    }

    #[test]
    fn small_ball_shape() {
        let ball = build_xn_ball(2, 4).unwrap();
        assert_eq!(
            ball.complex.vertex_count() - ball.precells.len(),
            ball.element_index.len()
        );
        let base = ball.precell(&GarsideElement::identity()).unwrap();
        assert_eq!(ball.complex.neighbors(base.center).len(), 4);
        assert!(ball.complex.edges().all(|(a, b, _)| {
            !(ball.complex.kind(a) == Some(VertexKind::Interior) && ball.complex.kind(b) == Some(VertexKind::Interior))
        }));
        ball.complex.validate().unwrap();
    }

    #[test]
    fn base_cone_has_2n_triangles() {
        let ball = build_xn_ball(3, 6).unwrap();
        let base = ball.precell(&GarsideElement::identity()).unwrap();
        let cone = ball.complex.triangles().filter(|t| t.contains(&base.center)).count();
        // real triangles at the base centre: the 2n cone triangles plus those
        // through neighbouring centres.
        let real_cone = ball
            .complex
            .triangles()
            .filter(|t| {
                t.contains(&base.center)
                    && t.iter()
                        .filter(|&&v| ball.complex.kind(v) == Some(VertexKind::Real))
                        .count()
                        == 2
            })
            .count();
        assert_eq!(real_cone, 6);
        assert!(cone >= real_cone);
    }

    #[test]
    fn interior_edge_n3() {
        let ball = build_xn_ball(3, 8).unwrap();
        let g = ball.group();
        let o = ball.precell(&GarsideElement::identity()).unwrap().center;
        let o1 = ball.precell(&g.upper(1)).unwrap().center;
        let len = ball.complex.edge_length(o, o1).unwrap();
        assert!((len - 1.0).abs() < 1e-12);
    }

    #[test]
    fn intersection_with_shift() {
        let ball = build_xn_ball(4, 10).unwrap();
        let g = ball.group();
        let p1 = ball.precell(&GarsideElement::identity()).unwrap();
        let p2 = ball.precell(&g.upper(1)).unwrap();
        match ball.precell_intersection(p1, p2).unwrap() {
            Intersection::Path {
                edges,
                first_half,
                second_half,
                first_tip,
                second_tip,
                ..
            } => {
                assert_eq!(edges, 3);
                assert_eq!(first_half, Half::Upper);
                assert_eq!(second_half, Half::Lower);
                assert_eq!(first_tip.1, TipSide::Right);
                assert_eq!(second_tip.1, TipSide::Left);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(ball.precell_intersection(p1, p1).is_err());
    }

    #[test]
    fn deep_real_link_size() {
        let ball = build_xn_ball(3, 10).unwrap();
        let e = ball.element_index[&GarsideElement::identity()];
        assert!(ball.is_deep(e));
        let link = extract_link(&ball.complex, e).unwrap();
        assert_eq!(link.vertex_count(), 4 + 6);
    }

    #[test]
    fn region_matches_ball_locally() {
        let ball = build_xn_ball(3, 10).unwrap();
        let region = build_xn_region(3, &[GarsideElement::identity()], 4, 100_000).unwrap();
        let e_ball = ball.element_index[&GarsideElement::identity()];
        let e_reg = region.element_index[&GarsideElement::identity()];
        assert!(region.is_deep(e_reg));
        let a = extract_link(&ball.complex, e_ball).unwrap();
        let b = extract_link(&region.complex, e_reg).unwrap();
        assert!(crate::link::find_isomorphism(&a, &b, 1e-9).is_some());
    }
}
