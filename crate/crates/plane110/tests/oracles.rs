//! Library results checked against independent brute force. The expected
//! numbers were produced by these oracles and are frozen here.

mod common;

use std::collections::BTreeSet;

use common::*;
use plane110::coloring::{check_superextendable, enumerate_boundary_colorings, solve, verify, Caps, Coloring};
use plane110::configurations::{explain_with, scan, verify_reduction, LemmaId};
use plane110::discharging::discharge;
use plane110::generators::{
    enumerate_planar_graphs, enumerate_plane_graphs, from_coordinates, plant_configuration, sample_in_class,
};
use plane110::graph_class::{
    identification_in_g, in_class_g, separating_cycle_audit, triangle_distance, triangles, Distance,
};
use plane110::plane_graph::{Graph, PlaneGraph};

const TRIANGLE_COLORINGS: usize = 18;
const K4_SUPEREXTENDING: usize = 12;
const PLANAR_CONNECTED: [usize; 6] = [1, 1, 2, 6, 20, 99];

fn k4() -> PlaneGraph {
    PlaneGraph::load("vertices 4\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 0 1 2\nouter: 0 1 2\n").unwrap()
}

#[test]
fn triangle_colorings() {
    let adj = adjacency(3, &[(0, 1), (1, 2), (2, 0)]);
    let brute = assignments(3).filter(|c| valid(&adj, c)).count();
    assert_eq!(brute, TRIANGLE_COLORINGS);
    let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
    assert_eq!(enumerate_boundary_colorings(&tri, &[0, 1, 2], Caps::default()).unwrap().len(), TRIANGLE_COLORINGS);
}

#[test]
fn k4_coloring_and_superextension() {
    let g = k4();
    let adj = adj_of(g.graph());
    assert!(valid(&adj, &[1, 1, 2, 3]));
    assert!(verify(g.graph(), &Coloring::from_total(&[1, 1, 2, 3]), Caps::default()).is_empty());
    let sat = assignments(4).any(|c| valid(&adj, &c));
    let sol = solve(g.graph(), Caps::default(), &Coloring::uncolored(4), &[]).unwrap();
    assert_eq!(sol.coloring().is_some(), sat);

    let cycle = [0, 1, 2];
    let boundaries = boundary_colorings(&adj, &cycle);
    let brute = boundaries.iter().filter(|b| superextends(&adj, &cycle, b)).count();
    assert_eq!((boundaries.len(), brute), (TRIANGLE_COLORINGS, K4_SUPEREXTENDING));
    let r = check_superextendable(g.graph(), &cycle, Caps::default()).unwrap();
    assert_eq!((r.boundary_colorings, r.extended), (TRIANGLE_COLORINGS, K4_SUPEREXTENDING));
}

#[test]
fn k4_cycles_by_length() {
    let g = k4();
    let adj = adj_of(g.graph());
    let found = g.find_cycles_up_to(5);
    for k in 3..=5 {
        assert_eq!(found.iter().filter(|c| c.len() == k).count(), count_cycles(&adj, k), "length {k}");
    }
    assert_eq!((count_cycles(&adj, 3), count_cycles(&adj, 4), count_cycles(&adj, 5)), (4, 3, 0));
}

/// Nonplanar on at most six vertices means a K5, a K5 with one subdivided
/// edge, or a K3,3 as a subgraph.
fn kuratowski_nonplanar(adj: &Adj) -> bool {
    let n = adj.len();
    let e = |a: usize, b: usize| adj[a].contains(&b);
    let subsets = |k: usize| (0u32..1 << n).filter(move |m| m.count_ones() as usize == k);
    for m in subsets(5) {
        let vs: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
        let missing: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (vs[i], vs[j]))
            .filter(|&(a, b)| !e(a, b))
            .collect();
        match missing.as_slice() {
            [] => return true,
            [(a, b)] if (0..n).any(|x| !vs.contains(&x) && e(x, *a) && e(x, *b)) => {
                return true;
            }
            _ => {}
        }
    }
    if n == 6 {
        for m in subsets(3) {
            let (l, r): (Vec<usize>, Vec<usize>) = (0..6).partition(|v| m >> v & 1 == 1);
            if l.iter().all(|&a| r.iter().all(|&b| e(a, b))) {
                return true;
            }
        }
    }
    false
}

fn connected(adj: &Adj) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest edge mask over all relabelings.
fn min_label(edges: &[(usize, usize)], perms: &[Vec<usize>], index: &[Vec<usize>]) -> u32 {
    perms
        .iter()
        .map(|p| edges.iter().fold(0u32, |m, &(a, b)| m | 1 << index[p[a].min(p[b])][p[a].max(p[b])]))
        .min()
        .unwrap_or(0)
}

#[test]
fn planar_counts_match_kuratowski_brute_force() {
    for n in 1..=6 {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut index = vec![vec![0; n]; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            index[a][b] = i;
        }
        let perms = permutations(n);
        let mut classes = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let adj = adjacency(n, &edges);
            if connected(&adj) && !kuratowski_nonplanar(&adj) {
                classes.insert(min_label(&edges, &perms, &index));
            }
        }
        assert_eq!(classes.len(), PLANAR_CONNECTED[n - 1], "brute force n={n}");
        assert_eq!(enumerate_planar_graphs(n).unwrap().len(), classes.len(), "enumerator n={n}");
        assert_eq!(enumerate_plane_graphs(n).unwrap().len(), classes.len(), "embedded n={n}");
    }
}

fn fw_triangle_distance(adj: &Adj, g: &Graph) -> Option<usize> {
    let d = floyd_warshall(adj);
    let tris = triangles(g);
    let mut best: Option<usize> = None;
    for (i, s) in tris.iter().enumerate() {
        for t in &tris[i + 1..] {
            let m = s.iter().flat_map(|&a| t.iter().map(move |&b| (a, b))).map(|(a, b)| d[a][b]).min().unwrap();
            if m < usize::MAX / 4 {
                best = Some(best.map_or(m, |x: usize| x.min(m)));
            }
        }
    }
    best
}

#[test]
fn triangle_distance_matches_floyd_warshall() {
    // Triangles 0-1-2 and 5-6-7 joined by the path 2-3-4-5, with pendants.
    let edges = [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 5), (0, 8), (6, 9)];
    let g = Graph::from_edges(10, &edges).unwrap();
    let adj = adj_of(&g);
    assert_eq!(fw_triangle_distance(&adj, &g), Some(3));
    assert_eq!(triangle_distance(&g), Distance::Finite(3));
    for seed in 0..60 {
        let s = sample_in_class(10 + seed as usize % 20, seed).unwrap();
        let expect = fw_triangle_distance(&adj_of(s.graph()), s.graph()).map_or(Distance::Infinite, Distance::Finite);
        assert_eq!(triangle_distance(s.graph()), expect, "seed {seed}");
    }
}

/// Separation by point-in-polygon on a straight-line drawing.
fn geometric_separating(pts: &[(f64, f64)], cycle: &[usize]) -> bool {
    let poly: Vec<(f64, f64)> = cycle.iter().map(|&v| pts[v]).collect();
    let rest: Vec<bool> = (0..pts.len()).filter(|v| !cycle.contains(v)).map(|v| inside(&poly, pts[v])).collect();
    rest.iter().any(|&x| x) && rest.iter().any(|&x| !x)
}

#[test]
fn double_wheel_separating_four_cycles() {
    // Octahedron: outer triangle 0 1 2, inner triangle 3 4 5.
    let pts = [(0.0, 10.0), (-10.0, -6.0), (10.0, -6.0), (0.0, -2.0), (2.0, 1.0), (-2.0, 1.0)];
    let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4)];
    let g = from_coordinates(&pts, &edges).unwrap();
    let outer = g.find_face(&[0, 1, 2]).unwrap();
    let g = g.with_outer_face(outer);
    let found: Vec<Vec<usize>> =
        separating_cycle_audit(&g).unwrap().into_iter().filter(|s| s.cycle.len() == 4).map(|s| s.cycle).collect();
    let brute: usize = g.find_cycles_up_to(4).iter().filter(|c| c.len() == 4 && geometric_separating(&pts, c)).count();
    assert_eq!(found.len(), brute);
    assert_eq!(brute, 3);
    for c in &found {
        assert!(geometric_separating(&pts, c));
    }
}

#[test]
fn seven_cycle_with_pendants_is_separating() {
    let mut pts: Vec<(f64, f64)> = (0..7)
        .map(|i| {
            let t = 2.0 * std::f64::consts::PI * i as f64 / 7.0;
            (5.0 * t.cos(), 5.0 * t.sin())
        })
        .collect();
    pts.push((2.5, 0.0));
    pts.push((8.0, 0.0));
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    edges.push((0, 7));
    edges.push((0, 8));
    let g = from_coordinates(&pts, &edges).unwrap();
    let outer = g.faces().iter().find(|f| f.walk.contains(&8)).unwrap().id;
    let g = g.with_outer_face(outer);
    let audit = separating_cycle_audit(&g).unwrap();
    assert_eq!(audit.len(), 1);
    assert_eq!((audit[0].interior.clone(), audit[0].exterior.clone()), (vec![7], vec![8]));
    assert!(geometric_separating(&pts, &audit[0].cycle));
}

#[test]
fn eight_cycle_identification_by_brute_force() {
    let c8 = Graph::from_edges(8, &(0..8).map(|i| (i, (i + 1) % 8)).collect::<Vec<_>>()).unwrap();
    let merged = c8.identify(&[vec![0, 4]]).unwrap().graph;
    let adj = adj_of(&merged);
    assert_eq!((count_cycles(&adj, 4), count_cycles(&adj, 5)), (2, 0));
    assert!(identification_in_g(&c8, &[vec![0, 4]]).unwrap().in_class);
}

#[test]
fn square_diagonal_identification_stays_in_class() {
    for padding in 0..8 {
        let p = plant_configuration(LemmaId::SquareOpposite3s, padding).unwrap();
        let m = scan(&p.graph, p.c0).into_iter().find(|m| m.lemma == LemmaId::SquareOpposite3s).unwrap();
        let (u, w) = (m.vertex("u").unwrap(), m.vertex("w").unwrap());
        assert!(identification_in_g(p.graph.graph(), &[vec![u, w]]).unwrap().in_class);
    }
}

#[test]
fn triangle_square_reduction_drops_sigma_by_two() {
    let p = plant_configuration(LemmaId::TriangleSquare4, 0).unwrap();
    let m = scan(&p.graph, p.c0).into_iter().find(|m| m.lemma == LemmaId::TriangleSquare4).unwrap();
    let adj = adj_of(p.graph.graph());
    let (red, _) = reduce(&adj, m.recipe.as_ref().unwrap());
    let sigma = |a: &Adj| a.len() + a.iter().map(Vec::len).sum::<usize>() / 2;
    assert!(sigma(&adj) >= sigma(&red) + 2);
    let v = verify_reduction(&p.graph, p.c0, &m, Caps::default()).unwrap();
    assert_eq!((v.sigma_before, v.sigma_after), (sigma(&adj), sigma(&red)));
}

/// Reductions on small instances agree with the exhaustive oracle.
#[test]
fn reductions_agree_with_exhaustive_oracle() {
    let mut checked = 0;
    let mut instances: Vec<(PlaneGraph, usize)> = Vec::new();
    for lemma in LemmaId::REDUCIBLE {
        for padding in [0, 2] {
            let p = plant_configuration(lemma, padding).unwrap();
            if p.graph.vertex_count() <= 12 {
                instances.push((p.graph, p.c0));
            }
        }
    }
    for n in 4..=8 {
        for g in enumerate_plane_graphs(n).unwrap() {
            if !in_class_g(&g).in_class {
                continue;
            }
            for f in g.faces() {
                if matches!(f.degree(), 3 | 7) && f.is_simple() {
                    instances.push((g.clone(), f.id));
                }
            }
        }
    }
    let mut lemmas = BTreeSet::new();
    for (g, c0) in &instances {
        let cycle = g.face(*c0).walk.clone();
        for m in scan(g, *c0) {
            let Some(recipe) = m.recipe.as_ref() else { continue };
            let Ok(v) = verify_reduction(g, *c0, &m, Caps::default()) else { continue };
            let (universal, existential) = reduction_oracle(&adj_of(g.graph()), &cycle, recipe);
            if universal {
                assert!(v.pass, "{} on\n{}", m.lemma, g.to_text());
            }
            if v.pass {
                assert!(existential, "{} on\n{}", m.lemma, g.to_text());
            }
            assert!(universal, "{}: some reduced coloring does not lift on\n{}", m.lemma, g.to_text());
            lemmas.insert(m.lemma);
            checked += 1;
        }
    }
    assert!(checked >= 20, "only {checked} reductions checked");
    assert!(lemmas.contains(&LemmaId::No333Path) && lemmas.contains(&LemmaId::Triangle33Low), "{lemmas:?}");
}

#[test]
fn negative_triangle_is_explained() {
    let p = plant_configuration(LemmaId::Triangle33Low, 0).unwrap();
    let (_, _, audit) = discharge(&p.graph, p.c0).unwrap();
    let m = scan(&p.graph, p.c0);
    let tri_face = m.iter().find(|m| m.lemma == LemmaId::Triangle33Low).unwrap().faces[0].1;
    let neg = audit.negatives.iter().find(|n| n.element == plane110::discharging::Element::Face(tri_face));
    let neg = neg.expect("the (3,3,4)-face ends negative");
    assert!(neg.neighborhood.len() > 1);
    assert!(explain_with(&m, neg.element).iter().any(|x| x.lemma == LemmaId::Triangle33Low));
}

/// A 3-vertex on a 7-cycle whose inner edge separates two 4-faces that each
/// meet the cycle twice. It gives 1 to each and receives 3/2, and no
/// configuration accounts for the deficit.
#[test]
fn outer_three_vertex_between_two_squares() {
    let mut pts: Vec<(f64, f64)> = (0..7)
        .map(|i| {
            let a = std::f64::consts::FRAC_PI_2 - i as f64 * std::f64::consts::TAU / 7.0;
            (40.0 * a.cos(), 40.0 * a.sin())
        })
        .collect();
    pts.extend([(0.0, 20.0), (-22.0, 10.0), (22.0, 10.0)]);
    let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
    edges.extend([(0, 7), (7, 8), (8, 6), (7, 9), (9, 1)]);
    let g = from_coordinates(&pts, &edges).unwrap();
    assert!(in_class_g(&g).in_class);
    let c0 = g.faces().iter().find(|f| f.degree() == 7 && f.vertices().iter().all(|&v| v < 7)).unwrap().id;
    let (_, ledger, audit) = discharge(&g, c0).unwrap();
    let v0 = plane110::discharging::Element::Vertex(0);
    assert_eq!(ledger.final_charge[&v0], plane110::discharging::q(-1, 2));
    assert!(audit.negatives.iter().any(|n| n.element == v0));
    assert!(explain_with(&scan(&g, c0), v0).is_empty());
}
