//! Membership in the class of plane graphs without 5-cycles whose triangles
//! are pairwise vertex-disjoint, plus the separating-cycle audit.
//!
//! Distance between two triangles is the minimum shortest-path length over
//! vertex pairs, so triangles sharing a vertex are at distance 0.

use serde::{Serialize, Serializer};

use crate::plane_graph::{find_cycle_of_length, find_cycles_up_to, Graph, GraphError, PlaneGraph};

/// Triangle distance; `Infinite` when there are fewer than two triangles or
/// no two triangles are connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Distance::Finite(d) => d >= k,
            Distance::Infinite => true,
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub in_class: bool,
    pub five_cycle_witness: Option<Vec<usize>>,
    pub triangle_pair_witness: Option<([usize; 3], [usize; 3])>,
    pub triangle_distance: Distance,
    pub embedding_unverified: bool,
}

/// All 3-cliques `[a, b, c]` with `a < b < c`, in lexicographic order.
pub fn triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// True when `v` lies on some 3-cycle.
pub fn on_triangle(g: &Graph, v: usize) -> bool {
    let nb = g.neighbors(v);
    nb.iter().enumerate().any(|(i, &a)| nb[i + 1..].iter().any(|&b| g.has_edge(a, b)))
}

pub fn triangle_distance(g: &Graph) -> Distance {
    closest_triangles(g, &triangles(g)).map_or(Distance::Infinite, |(d, _, _)| Distance::Finite(d))
}

fn closest_triangles(g: &Graph, tris: &[[usize; 3]]) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, t) in tris.iter().enumerate() {
        let dist = g.bfs(t);
        for (j, u) in tris.iter().enumerate().skip(i + 1) {
            let d = u.iter().filter_map(|&x| dist[x]).min();
            if let Some(d) = d {
                if best.is_none_or(|(b, _, _)| d < b) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best
}

/// Class report for an embedded graph.
pub fn in_class_g(g: &PlaneGraph) -> ClassReport {
    report(g.graph(), false)
}

/// Class report for an abstract graph; planarity is not checked and the
/// report says so.
pub fn in_class_abstract(g: &Graph) -> ClassReport {
    report(g, true)
}

fn report(g: &Graph, embedding_unverified: bool) -> ClassReport {
    let five = find_cycle_of_length(g, 5);
    let tris = triangles(g);
    let closest = closest_triangles(g, &tris);
    let triangle_distance = closest.map_or(Distance::Infinite, |(d, _, _)| Distance::Finite(d));
    let triangle_pair_witness = closest.filter(|&(d, _, _)| d == 0).map(|(_, i, j)| (tris[i], tris[j]));
    ClassReport {
        in_class: five.is_none() && triangle_pair_witness.is_none(),
        five_cycle_witness: five,
        triangle_pair_witness,
        triangle_distance,
        embedding_unverified,
    }
}

/// One separating cycle of length 3, 4 or 7.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparatingCycle {
    pub cycle: Vec<usize>,
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    /// For 4-cycles: whether the exterior is exactly two adjacent vertices
    /// forming a triangle with a cycle vertex.
    pub exterior_is_pendant_triangle: Option<bool>,
}

pub fn separating_cycle_audit(g: &PlaneGraph) -> Result<Vec<SeparatingCycle>, GraphError> {
    let mut out = Vec::new();
    for c in find_cycles_up_to(g.graph(), 7) {
        if !matches!(c.len(), 3 | 4 | 7) {
            continue;
        }
        let r = g.classify_cycle(&c)?;
        if !r.separating {
            continue;
        }
        let shape = (c.len() == 4).then(|| exterior_shape(g.graph(), &c, &r.exterior));
        out.push(SeparatingCycle {
            cycle: r.cycle,
            interior: r.interior,
            exterior: r.exterior,
            exterior_is_pendant_triangle: shape,
        });
    }
    Ok(out)
}

fn exterior_shape(g: &Graph, cycle: &[usize], ext: &[usize]) -> bool {
    let [b, c] = ext else { return false };
    g.has_edge(*b, *c) && cycle.iter().any(|&v| g.has_edge(v, *b) && g.has_edge(v, *c))
}

/// Identifies `parts` and reports class membership of the abstract result.
pub fn identification_in_g(g: &Graph, parts: &[Vec<usize>]) -> Result<ClassReport, GraphError> {
    Ok(in_class_abstract(&g.identify(parts)?.graph))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle_graph(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn triangle_lists() {
        assert!(triangles(&cycle_graph(7)).is_empty());
        assert_eq!(triangles(&k4()).len(), 4);
        // Two triangles joined by a 2-path 2-6-3.
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 6), (6, 3)]).unwrap();
        assert_eq!(triangles(&g), vec![[0, 1, 2], [3, 4, 5]]);
        assert_eq!(triangle_distance(&g), Distance::Finite(2));
    }

    #[test]
    fn distances() {
        assert_eq!(triangle_distance(&k4()), Distance::Finite(0));
        let joined = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        assert_eq!(triangle_distance(&joined), Distance::Finite(1));
        assert_eq!(triangle_distance(&cycle_graph(3)), Distance::Infinite);
    }

    #[test]
    fn class_examples() {
        let c5 = in_class_abstract(&cycle_graph(5));
        assert!(!c5.in_class);
        assert_eq!(c5.five_cycle_witness.as_ref().map(Vec::len), Some(5));
        let k = in_class_abstract(&k4());
        assert!(!k.in_class);
        assert!(k.triangle_pair_witness.is_some());
        let mut tail = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        assert!(in_class_abstract(&tail).in_class);
        tail.add_edge(5, 1).unwrap();
        assert!(!in_class_abstract(&tail).in_class);
        assert!(in_class_abstract(&path_graph(4)).in_class);
    }

    #[test]
    fn on_triangle_flags() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(on_triangle(&g, 0) && on_triangle(&g, 2));
        assert!(!on_triangle(&g, 3));
    }

    #[test]
    fn identification_on_eight_cycle() {
        let g = cycle_graph(8);
        let r = identification_in_g(&g, &[vec![0, 4]]).unwrap();
        assert!(r.in_class);
        assert!(r.embedding_unverified);
        assert!(identification_in_g(&g, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn k4_has_no_separating_cycles() {
        let g = PlaneGraph::load("vertices 4\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 0 1 2\nouter: 0 1 2\n").unwrap();
        assert!(separating_cycle_audit(&g).unwrap().is_empty());
    }
}
