//! Defective 3-colorings: verifier, exact backtracking solver and the
//! superextension checker.
//!
//! A coloring assigns colors `1..=3`. The defect of a colored vertex is the
//! number of neighbors with its color; uncolored neighbors never count. A
//! coloring is valid when every colored vertex has defect at most the cap of
//! its color. The default caps are `(1, 1, 0)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::plane_graph::{is_cycle, Graph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ColoringError {
    #[error("vertex {0} is uncolored")]
    Uncolored(usize),
    #[error("pinned assignment is invalid at vertex {0}")]
    PinnedInvalid(usize),
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("bad caps `{0}`: expected three comma-separated nonnegative integers")]
    BadCaps(String),
    #[error("color {0} is not in 1..=3")]
    BadColor(u8),
}

/// Per-color defect caps `(c1, c2, c3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps(pub [u8; 3]);

impl Default for Caps {
    fn default() -> Self {
        Caps([1, 1, 0])
    }
}

impl Caps {
    pub fn cap(&self, color: u8) -> usize {
        self.0[usize::from(color - 1)] as usize
    }

    /// Largest defect a nicely colored vertex of this color may have.
    pub fn nice_bound(&self, color: u8) -> usize {
        self.cap(color).saturating_sub(1)
    }
}

impl FromStr for Caps {
    type Err = ColoringError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<u8> = s
            .split(',')
            .map(|t| t.trim().parse::<u8>())
            .collect::<Result<_, _>>()
            .map_err(|_| ColoringError::BadCaps(s.into()))?;
        let arr: [u8; 3] = parts.try_into().map_err(|_| ColoringError::BadCaps(s.into()))?;
        Ok(Caps(arr))
    }
}

impl fmt::Display for Caps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

/// Partial or total map from vertices to colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    colors: Vec<Option<u8>>,
}

impl Coloring {
    pub fn uncolored(n: usize) -> Self {
        Coloring { colors: vec![None; n] }
    }

    pub fn from_total(colors: &[u8]) -> Self {
        Coloring { colors: colors.iter().map(|&c| Some(c)).collect() }
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u8)]) -> Self {
        let mut c = Coloring::uncolored(n);
        for &(v, k) in pairs {
            c.set(v, k);
        }
        c
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<u8> {
        self.colors[v]
    }

    pub fn set(&mut self, v: usize, color: u8) {
        self.colors[v] = Some(color);
    }

    pub fn clear(&mut self, v: usize) {
        self.colors[v] = None;
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colored(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|c| (v, c)))
    }

    /// `v=c` lines for colored vertices.
    pub fn to_lines(&self) -> String {
        self.colored().map(|(v, c)| format!("{v}={c}\n")).collect()
    }
}

/// A vertex whose defect exceeds its cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub vertex: usize,
    pub color: u8,
    pub defect: usize,
    pub cap: usize,
}

/// Number of colored neighbors sharing `v`'s color; 0 when `v` is uncolored.
pub fn defect(g: &Graph, col: &Coloring, v: usize) -> usize {
    match col.get(v) {
        None => 0,
        Some(c) => g.neighbors(v).iter().filter(|&&w| col.get(w) == Some(c)).count(),
    }
}

/// Every colored vertex whose defect exceeds its cap; empty means valid.
pub fn verify(g: &Graph, col: &Coloring, caps: Caps) -> Vec<Violation> {
    col.colored()
        .filter_map(|(v, c)| {
            let d = defect(g, col, v);
            (d > caps.cap(c)).then_some(Violation { vertex: v, color: c, defect: d, cap: caps.cap(c) })
        })
        .collect()
}

pub fn is_properly_colored(g: &Graph, col: &Coloring, v: usize) -> Result<bool, ColoringError> {
    col.get(v).ok_or(ColoringError::Uncolored(v))?;
    Ok(defect(g, col, v) == 0)
}

pub fn is_nicely_colored(g: &Graph, col: &Coloring, v: usize, caps: Caps) -> Result<bool, ColoringError> {
    let c = col.get(v).ok_or(ColoringError::Uncolored(v))?;
    Ok(defect(g, col, v) <= caps.nice_bound(c))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub max_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Solution {
    Sat { coloring: Coloring, stats: SearchStats },
    Unsat { stats: SearchStats },
}

impl Solution {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            Solution::Sat { coloring, .. } => Some(coloring),
            Solution::Unsat { .. } => None,
        }
    }

    pub fn stats(&self) -> SearchStats {
        match self {
            Solution::Sat { stats, .. } | Solution::Unsat { stats } => *stats,
        }
    }
}

/// Extends `pinned` to a total valid coloring in which every vertex of
/// `proper_frontier` avoids the colors of its pinned neighbors.
pub fn solve(g: &Graph, caps: Caps, pinned: &Coloring, proper_frontier: &[usize]) -> Result<Solution, ColoringError> {
    let anchor: Vec<bool> = (0..g.vertex_count()).map(|v| pinned.get(v).is_some()).collect();
    solve_anchored(g, caps, pinned, proper_frontier, &anchor)
}

/// Like [`solve`], but frontier vertices only have to avoid the colors of
/// neighbors in `anchor`, which need not coincide with the pinned set.
pub fn solve_anchored(
    g: &Graph,
    caps: Caps,
    pinned: &Coloring,
    proper_frontier: &[usize],
    anchor: &[bool],
) -> Result<Solution, ColoringError> {
    let n = g.vertex_count();
    let mut frontier = vec![false; n];
    for &v in proper_frontier {
        frontier[v] = true;
    }
    for (v, c) in pinned.colored() {
        if !(1..=3).contains(&c) {
            return Err(ColoringError::BadColor(c));
        }
        if defect(g, pinned, v) > caps.cap(c) {
            return Err(ColoringError::PinnedInvalid(v));
        }
        if frontier[v] && g.neighbors(v).iter().any(|&w| anchor[w] && pinned.get(w) == Some(c)) {
            return Err(ColoringError::PinnedInvalid(v));
        }
    }
    let mut s = Search {
        g,
        caps,
        frontier,
        anchor: anchor.to_vec(),
        color: (0..n).map(|v| pinned.get(v).unwrap_or(0)).collect(),
        defect: (0..n).map(|v| defect(g, pinned, v)).collect(),
        order: (0..n).filter(|&v| pinned.get(v).is_none()).collect(),
        stats: SearchStats::default(),
    };
    if s.run(0) {
        let coloring = Coloring { colors: s.color.iter().map(|&c| Some(c)).collect() };
        Ok(Solution::Sat { coloring, stats: s.stats })
    } else {
        Ok(Solution::Unsat { stats: s.stats })
    }
}

struct Search<'a> {
    g: &'a Graph,
    caps: Caps,
    frontier: Vec<bool>,
    anchor: Vec<bool>,
    color: Vec<u8>,
    defect: Vec<usize>,
    order: Vec<usize>,
    stats: SearchStats,
}

impl Search<'_> {
    fn fits(&self, v: usize, c: u8) -> bool {
        let cap = self.caps.cap(c);
        let mut same = 0;
        for &w in self.g.neighbors(v) {
            if self.color[w] != c {
                continue;
            }
            if (self.frontier[v] && self.anchor[w]) || (self.anchor[v] && self.frontier[w]) {
                return false;
            }
            same += 1;
            if same > cap || self.defect[w] + 1 > cap {
                return false;
            }
        }
        true
    }

    fn place(&mut self, v: usize, c: u8) {
        self.color[v] = c;
        let mut same = 0;
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            if self.color[w] == c {
                self.defect[w] += 1;
                same += 1;
            }
        }
        self.defect[v] = same;
    }

    fn unplace(&mut self, v: usize) {
        let c = self.color[v];
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            if self.color[w] == c {
                self.defect[w] -= 1;
            }
        }
        self.defect[v] = 0;
        self.color[v] = 0;
    }

    fn neighbors_viable(&self, v: usize) -> bool {
        self.g.neighbors(v).iter().filter(|&&x| self.color[x] == 0).all(|&x| (1..=3).any(|c| self.fits(x, c)))
    }

    fn run(&mut self, depth: usize) -> bool {
        self.stats.nodes += 1;
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let Some(&v) = self.order.get(depth) else { return true };
        for c in 1..=3u8 {
            if !self.fits(v, c) {
                continue;
            }
            self.place(v, c);
            if self.neighbors_viable(v) && self.run(depth + 1) {
                return true;
            }
            self.unplace(v);
        }
        false
    }
}

/// All valid colorings of the subgraph induced by `cycle`, as color vectors
/// aligned with `cycle`, in lexicographic order.
pub fn enumerate_boundary_colorings(g: &Graph, cycle: &[usize], caps: Caps) -> Result<Vec<Vec<u8>>, ColoringError> {
    if !is_cycle(g, cycle) {
        return Err(ColoringError::NotACycle);
    }
    let k = cycle.len();
    let adj: Vec<Vec<usize>> = (0..k).map(|i| (0..k).filter(|&j| g.has_edge(cycle[i], cycle[j])).collect()).collect();
    let mut out = Vec::new();
    let mut cur = vec![1u8; k];
    loop {
        let ok = (0..k).all(|i| adj[i].iter().filter(|&&j| cur[j] == cur[i]).count() <= caps.cap(cur[i]));
        if ok {
            out.push(cur.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < 3 {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryOutcome {
    pub boundary: Vec<u8>,
    pub extension: Option<Coloring>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperextensionReport {
    pub cycle: Vec<usize>,
    pub boundary_colorings: usize,
    pub extended: usize,
    pub outcomes: Vec<BoundaryOutcome>,
}

impl SuperextensionReport {
    pub fn passed(&self) -> bool {
        self.extended == self.boundary_colorings
    }
}

/// Vertices off `cycle` with a neighbor on it.
pub fn frontier_of(g: &Graph, cycle: &[usize]) -> Vec<usize> {
    let on: HashSet<usize> = cycle.iter().copied().collect();
    (0..g.vertex_count()).filter(|v| !on.contains(v) && g.neighbors(*v).iter().any(|w| on.contains(w))).collect()
}

/// Tries every boundary coloring of `c0` and records whether it extends to
/// `g` with every frontier vertex colored differently from its neighbors on
/// `c0`.
pub fn check_superextendable(g: &Graph, c0: &[usize], caps: Caps) -> Result<SuperextensionReport, ColoringError> {
    let boundaries = enumerate_boundary_colorings(g, c0, caps)?;
    let frontier = frontier_of(g, c0);
    let mut outcomes = Vec::with_capacity(boundaries.len());
    for b in boundaries {
        let pairs: Vec<(usize, u8)> = c0.iter().copied().zip(b.iter().copied()).collect();
        let pinned = Coloring::from_pairs(g.vertex_count(), &pairs);
        let sol = solve(g, caps, &pinned, &frontier)?;
        outcomes.push(BoundaryOutcome { boundary: b, extension: sol.coloring().cloned(), stats: sol.stats() });
    }
    let extended = outcomes.iter().filter(|o| o.extension.is_some()).count();
    Ok(SuperextensionReport { cycle: c0.to_vec(), boundary_colorings: outcomes.len(), extended, outcomes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn verify_examples() {
        assert!(verify(&triangle(), &Coloring::from_total(&[1, 1, 2]), Caps::default()).is_empty());
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let bad = verify(&p4, &Coloring::from_total(&[1, 1, 1, 1]), Caps::default());
        assert_eq!(bad.iter().map(|v| (v.vertex, v.defect)).collect::<Vec<_>>(), vec![(1, 2), (2, 2)]);
        assert!(verify(&k4(), &Coloring::from_total(&[1, 1, 2, 3]), Caps::default()).is_empty());
    }

    #[test]
    fn proper_and_nice() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let col = Coloring::from_total(&[3, 3, 1]);
        assert!(!is_nicely_colored(&g, &col, 0, Caps::default()).unwrap());
        assert!(is_properly_colored(&g, &col, 2).unwrap());
        assert!(is_nicely_colored(&g, &col, 2, Caps::default()).unwrap());
        let lone = Graph::empty(1);
        let c = Coloring::from_total(&[2]);
        assert!(
            is_properly_colored(&lone, &c, 0).unwrap() && is_nicely_colored(&lone, &c, 0, Caps::default()).unwrap()
        );
        assert_eq!(is_properly_colored(&g, &Coloring::uncolored(3), 1), Err(ColoringError::Uncolored(1)));
    }

    #[test]
    fn solve_small() {
        let sol = solve(&triangle(), Caps::default(), &Coloring::uncolored(3), &[]).unwrap();
        assert_eq!(sol.coloring(), Some(&Coloring::from_total(&[1, 1, 2])));
        let k = solve(&k4(), Caps::default(), &Coloring::uncolored(4), &[]).unwrap();
        assert!(verify(&k4(), k.coloring().unwrap(), Caps::default()).is_empty());
    }

    #[test]
    fn solve_rejects_invalid_pins() {
        let pinned = Coloring::from_pairs(3, &[(0, 3), (1, 3)]);
        assert_eq!(solve(&triangle(), Caps::default(), &pinned, &[]), Err(ColoringError::PinnedInvalid(0)));
    }

    #[test]
    fn unsat_reports_stats() {
        // K4 with caps (0,0,0) needs four colors.
        let sol = solve(&k4(), Caps([0, 0, 0]), &Coloring::uncolored(4), &[]).unwrap();
        assert!(matches!(sol, Solution::Unsat { stats } if stats.nodes > 0));
    }

    #[test]
    fn frontier_must_avoid_pinned_neighbors() {
        let pinned = Coloring::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]);
        let sol = solve(&k4(), Caps::default(), &pinned, &[3]).unwrap();
        assert!(sol.coloring().is_none());
        let sol = solve(&k4(), Caps::default(), &pinned, &[]).unwrap();
        assert!(sol.coloring().is_some());
    }

    #[test]
    fn seven_cycle_all_threes_excluded() {
        let g = Graph::from_edges(7, &(0..7).map(|i| (i, (i + 1) % 7)).collect::<Vec<_>>()).unwrap();
        let all = enumerate_boundary_colorings(&g, &[0, 1, 2, 3, 4, 5, 6], Caps::default()).unwrap();
        assert!(!all.contains(&vec![3; 7]));
        assert!(enumerate_boundary_colorings(&g, &[0, 1], Caps::default()).is_err());
    }

    #[test]
    fn caps_parse() {
        assert_eq!("1,1,0".parse::<Caps>().unwrap(), Caps::default());
        assert!("1,1".parse::<Caps>().is_err());
        assert_eq!(Caps([2, 0, 0]).to_string(), "2,0,0");
    }

    #[test]
    fn lone_triangle_is_trivially_superextendable() {
        let r = check_superextendable(&triangle(), &[0, 1, 2], Caps::default()).unwrap();
        assert!(r.passed());
    }
}
