mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use systolic::checker::{
    classify_short_cycle, is_2pi_large, min_two_full_cycle, min_two_full_cycle_with, two_full_cycles_within, CaseTag,
    SearchConfig,
};
use systolic::links::{assemble_gamma_real_link, real_link, DefiningGraph};
use systolic::{LinkGraph, VertexKind};

use common::{brute_min_two_full, simple_cycles_within, two_full};

fn random_link(k: usize, edges: &[(usize, usize, f64)]) -> LinkGraph {
    let mut g = LinkGraph::new("x");
    for i in 0..k {
        g.add_vertex(format!("x{i}"), VertexKind::Real, 1.0);
    }
    let mut seen = BTreeSet::new();
    for &(a, b, angle) in edges {
        let (a, b) = (a % k, b % k);
        if a != b && seen.insert((a.min(b), a.max(b))) {
            g.add_edge(a, b, 1.0, angle, None);
        }
    }
    g
}

fn arb_link() -> impl Strategy<Value = LinkGraph> {
    (4usize..9).prop_flat_map(|k| {
        prop::collection::vec((0..k, 0..k, 0.2f64..2.0), k..3 * k).prop_map(move |es| random_link(k, &es))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimum_matches_brute_force(link in arb_link()) {
        let cfg = SearchConfig { cutoff: 100.0 };
        let got = min_two_full_cycle_with(&link, cfg);
        let want = brute_min_two_full(&link, 100.0);
        match (got, want) {
            (None, None) => {}
            (Some(w), Some((len, _))) => {
                prop_assert!((w.angular_length.radians() - len).abs() < 1e-9);
                prop_assert!(w.two_full);
                let total: f64 = (0..w.len())
                    .map(|i| link.angle(w.vertices[i], w.vertices[(i + 1) % w.len()]).unwrap())
                    .sum();
                prop_assert!((total - len).abs() < 1e-9);
            }
            (g, w) => prop_assert!(false, "checker {:?} brute force {:?}", g, w),
        }
    }

    #[test]
    fn enumeration_matches_brute_force(link in arb_link(), bound in 1.0f64..8.0) {
        let got: BTreeSet<Vec<usize>> = two_full_cycles_within(&link, bound)
            .into_iter()
            .map(|w| canonical(&w.vertices))
            .collect();
        let want: BTreeSet<Vec<usize>> = simple_cycles_within(&link, bound)
            .into_iter()
            .filter(|(_, c)| two_full(&link, c))
            .map(|(_, c)| canonical(&c))
            .collect();
        prop_assert_eq!(got, want);
    }
}

/// Rotation starting at the least vertex, in the direction with the smaller second vertex.
fn canonical(c: &[usize]) -> Vec<usize> {
    let k = c.len();
    let i = (0..k).min_by_key(|&i| c[i]).unwrap();
    let fwd: Vec<usize> = (0..k).map(|j| c[(i + j) % k]).collect();
    let back: Vec<usize> = (0..k).map(|j| c[(i + k - j) % k]).collect();
    fwd.min(back)
}

fn graph(edges: &[(&str, &str, u32)]) -> DefiningGraph {
    let mut g = DefiningGraph::new();
    for &(s, t, m) in edges {
        g.add_edge(s, t, m).unwrap();
    }
    g
}

#[test]
fn all_two_square_minimum_crosses_four_blocks() {
    let g = graph(&[("a", "b", 2), ("b", "c", 2), ("c", "d", 2), ("d", "a", 2)]);
    let link = assemble_gamma_real_link(&g).unwrap();
    let min = min_two_full_cycle(&link).unwrap();
    assert!((min.angular_length.radians() - std::f64::consts::TAU).abs() < 1e-9);
    let square: Vec<_> = two_full_cycles_within(&link, min.angular_length.radians() + 1e-9)
        .into_iter()
        .filter(|w| classify_short_cycle(w, &g).unwrap() == CaseTag::FourBlockSquare)
        .collect();
    assert!(!square.is_empty());
    // per block, a two-edge detour through an interior vertex
    for w in &square {
        assert_eq!(w.len(), 8);
        let reals = w
            .vertices
            .iter()
            .filter(|&&v| link.vertex(v).kind == VertexKind::Real)
            .count();
        assert_eq!(reals, 4);
    }
}

#[test]
fn negative_triangle_witness_is_three_block() {
    let g = graph(&[("a", "b", 2), ("b", "c", 3), ("c", "a", 3)]);
    let link = assemble_gamma_real_link(&g).unwrap();
    let v = is_2pi_large(&link);
    assert!(!v.large);
    let w = v.witness.unwrap();
    assert!((w.angular_length.radians() - 11.0 * std::f64::consts::PI / 6.0).abs() < 1e-9);
    assert_eq!(classify_short_cycle(&w, &g).unwrap(), CaseTag::ThreeBlockTriangle);
}

#[test]
fn single_block_cycles_are_one_block() {
    let g = graph(&[("a", "b", 4)]);
    let link = assemble_gamma_real_link(&g).unwrap();
    for w in two_full_cycles_within(&link, 7.0) {
        assert_eq!(classify_short_cycle(&w, &g).unwrap(), CaseTag::OneBlock);
    }
}

#[test]
fn untagged_cycles_cannot_be_classified() {
    let link = real_link(3).unwrap();
    let w = min_two_full_cycle(&link).unwrap();
    assert!(classify_short_cycle(&w, &graph(&[("a", "b", 3)])).is_err());
}
