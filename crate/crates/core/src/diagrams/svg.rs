//! SVG drawings of disc diagrams using a barycentric (Tutte) layout: the
//! boundary walk is spread on a circle and every other vertex sits at the
//! average of its neighbors.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use super::disc::{DVertex, DiscDiagram};

pub fn tutte_layout(d: &DiscDiagram) -> BTreeMap<DVertex, (f64, f64)> {
    let mut pos: BTreeMap<DVertex, (f64, f64)> = BTreeMap::new();
    let walk = d.boundary_walk();
    let k = walk.len().max(1) as f64;
    for (i, &v) in walk.iter().enumerate() {
        let t = TAU * i as f64 / k;
        pos.entry(v).or_insert((t.cos(), t.sin()));
    }
    let fixed: Vec<DVertex> = pos.keys().copied().collect();
    let adj = d.adjacency();
    for v in d.vertices() {
        pos.entry(v).or_insert((0.0, 0.0));
    }
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for (&v, nbrs) in &adj {
            if fixed.binary_search(&v).is_ok() || nbrs.is_empty() {
                continue;
            }
            let (mut x, mut y) = (0.0, 0.0);
            for w in nbrs {
                x += pos[w].0;
                y += pos[w].1;
            }
            let c = nbrs.len() as f64;
            let new = (x / c, y / c);
            let old = pos[&v];
            moved = moved.max((new.0 - old.0).abs() + (new.1 - old.1).abs());
            pos.insert(v, new);
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

pub fn render_svg(d: &DiscDiagram) -> String {
    let pos = tutte_layout(d);
    let size = 600.0;
    let map = |p: (f64, f64)| (size / 2.0 + 0.45 * size * p.0, size / 2.0 - 0.45 * size * p.1);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    for t in d.triangles() {
        let pts: Vec<String> = t
            .iter()
            .map(|v| {
                let (x, y) = map(pos[v]);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon points="{}" fill="#dde8f5" stroke="#335" stroke-width="1"/>"##,
            pts.join(" ")
        );
    }
    for (a, b) in d.edges() {
        if d.triangles_on_edge(a, b).is_empty() {
            let (x1, y1) = map(pos[&a]);
            let (x2, y2) = map(pos[&b]);
            let _ = writeln!(
                s,
                r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#a33" stroke-width="2"/>"##
            );
        }
    }
    for (v, p) in &pos {
        let (x, y) = map(*p);
        let f = d.image(*v).unwrap_or_default();
        let _ = writeln!(
            s,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#113"><title>{v} -> {f}</title></circle>"##
        );
    }
    s.push_str("</svg>\n");
    s
}
