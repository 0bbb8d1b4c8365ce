//! Property tests over generated instances.

use std::collections::BTreeMap;

use plane110::coloring::{solve, verify, Caps, Coloring};
use plane110::discharging::{discharge, initial_charges_for};
use plane110::generators::{canonical_code, enumerate_planar_graphs, sample_in_class};
use plane110::graph_class::{in_class_g, triangles};
use plane110::plane_graph::{Graph, PlaneGraph};
use proptest::prelude::*;
use serde_json::json;

fn sample() -> impl Strategy<Value = PlaneGraph> {
    (3usize..=30, any::<u64>()).prop_map(|(n, seed)| sample_in_class(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_are_in_class_plane_graphs(g in sample()) {
        prop_assert!(in_class_g(&g).in_class);
        prop_assert!(g.graph().is_connected());
        prop_assert_eq!(g.vertex_count() + g.faces().len(), g.edge_count() + 2);
        let mut darts: Vec<(usize, usize)> = g.faces().iter().flat_map(|f| f.darts().collect::<Vec<_>>()).collect();
        darts.sort_unstable();
        let before = darts.len();
        darts.dedup();
        prop_assert_eq!(before, darts.len());
        prop_assert_eq!(darts.len(), 2 * g.edge_count());
        prop_assert_eq!(PlaneGraph::load(&g.to_text()).unwrap().to_text(), g.to_text());
    }

    #[test]
    fn charges_sum_to_zero_for_every_outer_face(g in sample()) {
        for f in g.faces() {
            let ledger = initial_charges_for(&g, f.id).unwrap();
            prop_assert_eq!(ledger.initial_sum(), Default::default());
        }
    }

    #[test]
    fn discharging_preserves_the_total(g in sample()) {
        for f in g.faces().iter().filter(|f| matches!(f.degree(), 3 | 7) && f.is_simple()) {
            let (_, ledger, audit) = discharge(&g, f.id).unwrap();
            prop_assert!(audit.zero_sum);
            prop_assert_eq!(ledger.final_sum(), Default::default());
        }
    }

    #[test]
    fn solver_finds_valid_colorings(g in sample()) {
        let sol = solve(g.graph(), Caps::default(), &Coloring::uncolored(g.vertex_count()), &[]).unwrap();
        let col = sol.coloring().expect("class members are colorable");
        prop_assert!(verify(g.graph(), col, Caps::default()).is_empty());
    }

    #[test]
    fn dropping_frontier_constraints_keeps_sat(g in sample(), mask in any::<u64>(), pin in 1u8..=3) {
        let n = g.vertex_count();
        let pins = Coloring::from_pairs(n, &[(0, pin)]);
        let frontier: Vec<usize> = g.graph().neighbors(0).to_vec();
        let subset: Vec<usize> = frontier.iter().copied().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| v).collect();
        let full = solve(g.graph(), Caps::default(), &pins, &frontier).unwrap();
        let part = solve(g.graph(), Caps::default(), &pins, &subset).unwrap();
        if full.coloring().is_some() {
            prop_assert!(part.coloring().is_some());
        }
    }

    #[test]
    fn canonical_code_ignores_labels(idx in 0usize..99, perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let graphs = enumerate_planar_graphs(6).unwrap();
        let g = &graphs[idx];
        let relabeled: Vec<(usize, usize)> = g.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let h = Graph::from_edges(6, &relabeled).unwrap();
        prop_assert_eq!(canonical_code(g), canonical_code(&h));
    }
}

/// Summary of 1000 samples; compared with the golden file written on the
/// first accepted run (set `PLANE110_BLESS=1` to rewrite it).
#[test]
fn sample_distribution_matches_golden() {
    let mut degrees: BTreeMap<usize, usize> = BTreeMap::new();
    let (mut vertices, mut edges, mut tris, mut with_facial_triangle, mut with_facial_seven) = (0, 0, 0, 0, 0);
    for seed in 0..1000u64 {
        let g = sample_in_class(5 + seed as usize % 36, seed).unwrap();
        vertices += g.vertex_count();
        edges += g.edge_count();
        tris += triangles(g.graph()).len();
        with_facial_triangle += usize::from(g.faces().iter().any(|f| f.degree() == 3));
        with_facial_seven += usize::from(g.faces().iter().any(|f| f.degree() == 7 && f.is_simple()));
        for v in 0..g.vertex_count() {
            *degrees.entry(g.degree(v)).or_default() += 1;
        }
    }
    let stats = json!({
        "samples": 1000,
        "vertices": vertices,
        "edges": edges,
        "triangles": tris,
        "with_facial_triangle": with_facial_triangle,
        "with_simple_facial_7_cycle": with_facial_seven,
        "degree_histogram": degrees,
    });
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/sample_stats.json");
    if std::env::var_os("PLANE110_BLESS").is_some() {
        std::fs::write(path, serde_json::to_string_pretty(&stats).unwrap() + "\n").unwrap();
    }
    let golden: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(stats, golden);
}
