//! Test-instance generators: exhaustive small plane graphs, seeded random
//! members of the class, and gadgets that plant a chosen configuration.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` (rand_chacha 0.3)
//! so samples are reproducible across platforms.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::configurations::LemmaId;
use crate::graph_class::in_class_g;
use crate::plane_graph::{Graph, GraphError, PlaneGraph};

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("enumeration is limited to n <= 10 (got {0})")]
    TooLarge(usize),
    #[error("sampling is limited to 1 <= n <= 40 (got {0})")]
    SampleSize(usize),
    #[error("sampler gave up after {0} attempts")]
    GaveUp(usize),
    #[error("no face matches the outer cycle")]
    NoOuterFace,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Plane graph whose rotation system is read off straight-line coordinates,
/// neighbors sorted clockwise. Crossing edges fail the Euler check.
pub fn from_coordinates(points: &[(f64, f64)], edges: &[(usize, usize)]) -> Result<PlaneGraph, GraphError> {
    let g = Graph::from_edges(points.len(), edges)?;
    let rotation = (0..points.len())
        .map(|v| {
            let (x, y) = points[v];
            let mut nb = g.neighbors(v).to_vec();
            nb.sort_by(|&a, &b| {
                let ta = (points[a].1 - y).atan2(points[a].0 - x);
                let tb = (points[b].1 - y).atan2(points[b].0 - x);
                tb.total_cmp(&ta)
            });
            nb
        })
        .collect();
    PlaneGraph::from_rotation(rotation)
}

/// Canonical upper-triangle adjacency code of a graph on at most 11
/// vertices; equal codes mean isomorphic graphs.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical_code supports n <= 11");
    let adj: Vec<u32> = (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let mut best = None;
    individualize(&adj, vec![(0..n).collect()], &mut best);
    best.unwrap_or(0)
}

fn refine(adj: &[u32], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> =
                cell.iter().map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|k| k.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn individualize(adj: &[u32], cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let cells = refine(adj, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..order.len() {
                for j in i + 1..order.len() {
                    if adj[order[i]] >> order[j] & 1 == 1 {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            if best.is_none_or(|b| code > b) {
                *best = Some(code);
            }
        }
        Some(k) => {
            for &v in &cells[k] {
                let mut next = cells[..k].to_vec();
                next.push(vec![v]);
                next.push(cells[k].iter().copied().filter(|&w| w != v).collect());
                next.extend(cells[k + 1..].iter().cloned());
                individualize(adj, next, best);
            }
        }
    }
}

/// A planar embedding of a connected graph, or `None` if it is not planar.
pub fn embed(g: &Graph) -> Option<PlaneGraph> {
    let n = g.vertex_count();
    if n == 0 || !g.is_connected() {
        return None;
    }
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (a, b) = block[0];
            rotation[a].push(b);
            rotation[b].push(a);
            continue;
        }
        let faces = embed_block(g, &block)?;
        let mut succ: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for f in &faces {
            let k = f.len();
            for i in 0..k {
                succ.insert((f[i], f[(i + k - 1) % k]), f[(i + 1) % k]);
            }
        }
        let mut verts: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
        verts.sort_unstable();
        verts.dedup();
        for v in verts {
            let first = *succ.range((v, 0)..(v + 1, 0)).next()?.0;
            let mut cur = first.1;
            loop {
                rotation[v].push(cur);
                cur = *succ.get(&(v, cur))?;
                if cur == first.1 {
                    break;
                }
            }
        }
    }
    PlaneGraph::from_rotation(rotation).ok()
}

/// Biconnected components as edge lists.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct St<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(s: &mut St, v: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[v] = s.time;
        s.low[v] = s.time;
        for &w in s.g.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push((v, w));
                dfs(s, w, Some(v));
                s.low[v] = s.low[v].min(s.low[w]);
                if s.low[w] >= s.disc[v] {
                    let mut comp = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        comp.push(e);
                        if e == (v, w) {
                            break;
                        }
                    }
                    s.out.push(comp);
                }
            } else if s.disc[w] < s.disc[v] {
                s.stack.push((v, w));
                s.low[v] = s.low[v].min(s.disc[w]);
            }
        }
    }
    let n = g.vertex_count();
    let mut s = St { g, disc: vec![0; n], low: vec![0; n], time: 0, stack: Vec::new(), out: Vec::new() };
    for v in 0..n {
        if s.disc[v] == 0 {
            dfs(&mut s, v, None);
        }
    }
    s.out
}

/// Face cycles of a 2-connected block, built by repeatedly routing a path
/// of the least flexible fragment through one admissible face.
fn embed_block(g: &Graph, block: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in block {
        adj[a].push(b);
        adj[b].push(a);
    }
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    let cycle = find_cycle(&adj, block[0].0, block[0].1)?;
    let mut in_h = vec![false; n];
    let mut edges_h: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..cycle.len() {
        in_h[cycle[i]] = true;
        edges_h.insert(key(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut rev = cycle.clone();
    rev.reverse();
    let mut faces = vec![cycle, rev];
    loop {
        // Fragments: (attachments, path through the fragment).
        let mut frags: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for &(a, b) in block {
            if in_h[a] && in_h[b] && !edges_h.contains(&key(a, b)) {
                frags.push((vec![a, b], vec![a, b]));
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if in_h[s] || seen[s] || adj[s].is_empty() {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !in_h[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            let mut att: Vec<usize> = comp.iter().flat_map(|&x| adj[x].iter().copied()).filter(|&w| in_h[w]).collect();
            att.sort_unstable();
            att.dedup();
            let path = fragment_path(&adj, &in_h, &comp, &att)?;
            frags.push((att, path));
        }
        if frags.is_empty() {
            return Some(faces);
        }
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for (i, (att, _)) in frags.iter().enumerate() {
            let ok: Vec<usize> = (0..faces.len()).filter(|&f| att.iter().all(|a| faces[f].contains(a))).collect();
            if ok.is_empty() {
                return None;
            }
            if pick.as_ref().is_none_or(|(_, p)| ok.len() < p.len()) {
                pick = Some((i, ok));
            }
        }
        let (i, ok) = pick?;
        let path = frags[i].1.clone();
        let f = faces.swap_remove(ok[0]);
        let (a, b) = (path[0], path[path.len() - 1]);
        let pa = f.iter().position(|&x| x == a)?;
        let pb = f.iter().position(|&x| x == b)?;
        let k = f.len();
        let inner = &path[1..path.len() - 1];
        let mut f1: Vec<usize> = (0..).map(|s| f[(pa + s) % k]).take((pb + k - pa) % k + 1).collect();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = (0..).map(|s| f[(pb + s) % k]).take((pa + k - pb) % k + 1).collect();
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            edges_h.insert(key(w[0], w[1]));
        }
        for &x in &path {
            in_h[x] = true;
        }
    }
}

/// A cycle through the edge `(a, b)`: the edge plus a shortest detour.
fn find_cycle(adj: &[Vec<usize>], a: usize, b: usize) -> Option<Vec<usize>> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[a] = a;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        for &w in &adj[x] {
            if (x == a && w == b) || prev[w] != usize::MAX {
                continue;
            }
            prev[w] = x;
            if w == b {
                let mut cyc = vec![b];
                let mut cur = b;
                while cur != a {
                    cur = prev[cur];
                    cyc.push(cur);
                }
                return Some(cyc);
            }
            queue.push_back(w);
        }
    }
    None
}

fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], comp: &[usize], att: &[usize]) -> Option<Vec<usize>> {
    let a = *att.first()?;
    let member: HashSet<usize> = comp.iter().copied().collect();
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: std::collections::VecDeque<usize> = adj[a].iter().copied().filter(|w| member.contains(w)).collect();
    for &w in &queue {
        prev.insert(w, a);
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = adj[x].iter().find(|&&b| in_h[b] && b != a) {
            let mut path = vec![b, x];
            let mut cur = x;
            while let Some(&p) = prev.get(&cur) {
                path.push(p);
                if p == a {
                    break;
                }
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[x] {
            if member.contains(&w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}

/// All connected planar graphs on `n` vertices up to isomorphism, in
/// canonical-code order.
pub fn enumerate_planar_graphs(n: usize) -> Result<Vec<Graph>, GenError> {
    if n > 10 {
        return Err(GenError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for k in 2..=n {
        let mut next: BTreeMap<u64, Graph> = BTreeMap::new();
        let mut rejected: HashSet<u64> = HashSet::new();
        for g in &level {
            for mask in 1u32..(1 << (k - 1)) {
                let mut h = Graph::empty(k);
                for (a, b) in g.edges() {
                    h.add_edge(a, b)?;
                }
                for w in 0..k - 1 {
                    if mask >> w & 1 == 1 {
                        h.add_edge(k - 1, w)?;
                    }
                }
                if k >= 3 && h.edge_count() > 3 * k - 6 {
                    continue;
                }
                let code = canonical_code(&h);
                if next.contains_key(&code) || rejected.contains(&code) {
                    continue;
                }
                if embed(&h).is_some() {
                    next.insert(code, h);
                } else {
                    rejected.insert(code);
                }
            }
        }
        level = next.into_values().collect();
    }
    Ok(level)
}

/// Each connected planar graph on `n` vertices with one embedding.
pub fn enumerate_plane_graphs(n: usize) -> Result<Vec<PlaneGraph>, GenError> {
    Ok(enumerate_planar_graphs(n)?.iter().filter_map(embed).collect())
}

/// Random connected member of the class: a stacked triangulation thinned by
/// deleting edges of 5-cycle or touching-triangle witnesses.
pub fn sample_in_class(n: usize, seed: u64) -> Result<PlaneGraph, GenError> {
    if n == 0 || n > 40 {
        return Err(GenError::SampleSize(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rot: Vec<Vec<usize>> = match n {
        1 => vec![vec![]],
        2 => vec![vec![1], vec![0]],
        _ => vec![vec![1, 2], vec![2, 0], vec![0, 1]],
    };
    // Triangular faces as walks (a, b, c).
    let mut faces: Vec<[usize; 3]> = Vec::new();
    if n >= 3 {
        let g = PlaneGraph::from_rotation(rot.clone())?;
        faces = g.faces().iter().map(|f| [f.walk[0], f.walk[1], f.walk[2]]).collect();
    }
    while rot.len() < n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        let x = rot.len();
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        insert_after(&mut rot[a], c, x);
        rot.push(vec![b, a, c]);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    let mut g = PlaneGraph::from_rotation(rot)?;
    let limit = 4 * n * n;
    for _ in 0..limit {
        let r = in_class_g(&g);
        if r.in_class {
            return Ok(g);
        }
        let mut cand: Vec<(usize, usize)> = Vec::new();
        if let Some(c) = r.five_cycle_witness {
            cand.extend((0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])));
        } else if let Some((s, t)) = r.triangle_pair_witness {
            for tri in [s, t] {
                cand.extend([(tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])]);
            }
        }
        let &(u, v) = cand.choose(&mut rng).ok_or(GenError::GaveUp(limit))?;
        g = g.without_edge(u, v)?;
    }
    Err(GenError::GaveUp(limit))
}

fn insert_after(list: &mut Vec<usize>, after: usize, x: usize) {
    let p = list.iter().position(|&w| w == after).map_or(list.len(), |p| p + 1);
    list.insert(p, x);
}

/// A generated instance with the configuration it was built to contain.
#[derive(Debug, Clone)]
pub struct Planted {
    pub graph: PlaneGraph,
    pub c0: usize,
    pub lemma: LemmaId,
    /// Vertices the planted match must involve.
    pub key: Vec<usize>,
    /// False for gadgets that cannot exist inside the class.
    pub in_class: bool,
}

#[derive(Default)]
struct Gadget {
    pts: Vec<(f64, f64)>,
    edges: Vec<(usize, usize)>,
    /// Topmost vertex joined to the outer cycle by a path.
    anchor: Option<usize>,
    /// Vertex drawn at the top outer vertex and merged with it.
    hang: Option<usize>,
    /// Extra edges from gadget vertices to outer-cycle positions.
    to_c0: Vec<(usize, usize)>,
    key: Vec<usize>,
    seven: bool,
    bare: bool,
}

impl Gadget {
    fn v(&mut self, x: f64, y: f64) -> usize {
        self.pts.push((x, y));
        self.pts.len() - 1
    }

    fn e(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn path(&mut self, vs: &[usize]) {
        for w in vs.windows(2) {
            self.e(w[0], w[1]);
        }
    }

    fn cycle(&mut self, vs: &[usize]) {
        self.path(vs);
        self.e(vs[vs.len() - 1], vs[0]);
    }

    fn leaf(&mut self, a: usize, x: f64, y: f64) -> usize {
        let l = self.v(x, y);
        self.e(a, l);
        l
    }

    /// Stem above `a` that becomes the anchor.
    fn stem(&mut self, a: usize, x: f64, y: f64) {
        let s = self.leaf(a, x, y);
        self.anchor = Some(s);
    }
}

const R: f64 = 40.0;

/// Builds an instance containing `lemma`'s configuration. `padding` varies
/// the outer cycle (triangle or 7-cycle), the connecting path length, a
/// pendant path on the outer cycle and gadget-specific degrees.
pub fn plant_configuration(lemma: LemmaId, padding: usize) -> Result<Planted, GenError> {
    let gadget = gadget(lemma, padding);
    let seven = gadget.seven || padding % 2 == 1;
    let len = 1 + (padding / 2) % 4;
    let pendant = (padding / 8) % 4;
    let k = if seven { 7 } else { 3 };
    let mut pts: Vec<(f64, f64)> = (0..k)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            (R * t.cos(), R * t.sin())
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    let cycle: Vec<usize> = (0..k).collect();
    let off = pts.len();
    let map = |v: usize| if gadget.hang == Some(v) { 0 } else { off + v };
    for (i, &p) in gadget.pts.iter().enumerate() {
        if gadget.hang == Some(i) {
            pts.push((f64::NAN, f64::NAN));
        } else {
            pts.push(p);
        }
    }
    for &(a, b) in &gadget.edges {
        edges.push((map(a), map(b)));
    }
    for &(a, pos) in &gadget.to_c0 {
        edges.push((map(a), pos % k));
    }
    if !gadget.bare {
        if let Some(a) = gadget.anchor {
            let (x0, y0) = gadget.pts[a];
            let mut prev = map(a);
            for s in 1..len {
                let t = s as f64 / len as f64;
                pts.push((x0 * (1.0 - t), y0 + (R - y0) * t));
                edges.push((prev, pts.len() - 1));
                prev = pts.len() - 1;
            }
            edges.push((prev, 0));
        }
        let (bx, by) = pts[1];
        let mut prev = 1;
        for s in 1..=pendant {
            let f = 1.0 - 0.04 * s as f64;
            pts.push((bx * f, by * f));
            edges.push((prev, pts.len() - 1));
            prev = pts.len() - 1;
        }
    }
    // Drop the placeholder of a hung vertex and renumber.
    let mut keep: Vec<Option<usize>> = vec![None; pts.len()];
    let mut kept_pts = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if !p.0.is_nan() {
            keep[i] = Some(kept_pts.len());
            kept_pts.push(*p);
        }
    }
    let renum = |v: usize| keep[v].expect("hung vertex is remapped to the outer cycle");
    let edges: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (renum(a), renum(b))).collect();
    let graph = from_coordinates(&kept_pts, &edges)?;
    let c0 = graph.find_face(&cycle).ok_or(GenError::NoOuterFace)?;
    let key = gadget.key.iter().map(|&v| renum(map(v))).collect();
    let in_class = in_class_g(&graph).in_class;
    Ok(Planted { graph, c0, lemma, key, in_class })
}

fn gadget(lemma: LemmaId, padding: usize) -> Gadget {
    let mut g = Gadget::default();
    let var = padding / 32 + padding;
    match lemma {
        LemmaId::LowDegree => {
            let a = g.v(0.0, 0.0);
            g.anchor = Some(a);
            g.key = vec![a];
        }
        LemmaId::TwoTriangleFaces => {
            let o = g.v(0.0, 0.0);
            let a = g.v(-1.0, 1.0);
            let b = g.v(-1.0, -1.0);
            let c = g.v(1.0, 1.0);
            let d = g.v(1.0, -1.0);
            g.cycle(&[o, a, b]);
            g.cycle(&[o, c, d]);
            g.stem(a, 0.0, 2.0);
            g.key = vec![o];
        }
        LemmaId::TriangleSquareEdge => {
            let a = g.v(-1.0, 0.0);
            let b = g.v(1.0, 0.0);
            let c = g.v(1.0, -2.0);
            let d = g.v(-1.0, -2.0);
            let r = g.v(0.0, 1.0);
            g.cycle(&[a, b, c, d]);
            g.e(a, r);
            g.e(b, r);
            g.stem(r, 0.0, 2.0);
            g.key = vec![a, b];
        }
        LemmaId::SeparatingCycle => {
            let cyc: Vec<usize> = if var.is_multiple_of(2) {
                vec![g.v(-1.0, 0.0), g.v(0.0, 1.5), g.v(1.0, 0.0)]
            } else {
                (0..7)
                    .map(|i| {
                        let t = std::f64::consts::FRAC_PI_2 - 2.0 * std::f64::consts::PI * i as f64 / 7.0;
                        g.v(2.0 * t.cos(), 2.0 * t.sin())
                    })
                    .collect()
            };
            g.cycle(&cyc);
            let top = cyc[if cyc.len() == 3 { 1 } else { 0 }];
            let (tx, ty) = g.pts[top];
            let inner = g.v(tx, ty - 0.8);
            g.e(top, inner);
            g.stem(top, tx, ty + 1.0);
            g.key = cyc;
        }
        LemmaId::SeparatingFourCycle => {
            let t = g.v(0.0, 1.0);
            let r = g.v(1.0, 0.0);
            let b = g.v(0.0, -1.0);
            let l = g.v(-1.0, 0.0);
            g.cycle(&[t, r, b, l]);
            g.leaf(r, 0.2, 0.0);
            g.stem(t, 0.0, 2.0);
            g.key = vec![t, r, b, l];
        }
        LemmaId::BoundaryChord => {
            let z = g.v(0.0, 30.0);
            g.to_c0 = vec![(z, 6), (z, 1)];
            g.seven = true;
            if var % 2 == 1 {
                g.leaf(z, 0.0, 28.0);
            }
            g.key = vec![z];
        }
        LemmaId::SquareBoundaryContact => {
            let u = g.v(0.0, R);
            let v = g.v(-0.8, R - 2.0);
            let w = g.v(0.0, R - 4.0);
            let x = g.v(0.8, R - 2.0);
            g.cycle(&[u, v, w, x]);
            g.hang = Some(u);
            if var % 3 >= 1 {
                g.leaf(w, 0.0, R - 5.0);
            }
            if var % 3 == 2 {
                g.leaf(v, -0.8, R - 3.0);
            }
            g.key = vec![u, w];
        }
        LemmaId::SquareOpposite3s => {
            let u = g.v(0.0, 1.0);
            let v = g.v(1.0, 0.0);
            let w = g.v(0.0, -1.0);
            let x = g.v(-1.0, 0.0);
            g.cycle(&[u, v, w, x]);
            g.stem(u, 0.0, 2.0);
            g.leaf(w, 0.0, -2.0);
            if var % 3 >= 1 {
                g.leaf(v, 2.0, 0.0);
            }
            if var % 3 == 2 {
                g.leaf(x, -2.0, 0.0);
                g.leaf(x, -2.0, -0.5);
            }
            g.key = vec![u, v, w, x];
        }
        LemmaId::No333Path => {
            let v = g.v(0.0, 0.0);
            let u = g.v(1.0, 0.0);
            let v1 = g.v(-1.0, 0.0);
            g.path(&[v1, v, u]);
            g.stem(v, 0.0, 1.0);
            let a = g.leaf(u, 2.0, 0.5);
            let b = g.leaf(u, 2.0, -0.5);
            let c = g.leaf(v1, -2.0, 0.5);
            let d = g.leaf(v1, -2.0, -0.5);
            if var % 3 >= 1 {
                let e = g.v(-3.0, 0.0);
                g.e(c, e);
                g.e(d, e);
            }
            if var % 3 == 2 {
                let f = g.v(3.0, 0.0);
                g.e(a, f);
                g.e(b, f);
            }
            g.key = vec![v, u, v1];
        }
        LemmaId::Triangle33Low => {
            let u = g.v(-1.0, 0.0);
            let v = g.v(1.0, 0.0);
            let w = g.v(0.0, 1.5);
            g.cycle(&[u, v, w]);
            g.leaf(u, -2.0, -1.0);
            g.leaf(v, 2.0, -1.0);
            g.stem(w, 0.0, 2.5);
            if var % 2 == 1 {
                g.leaf(w, 1.2, 2.0);
            }
            g.key = vec![u, v, w];
        }
        LemmaId::Triangle33Pendant => {
            let u = g.v(-1.0, 0.0);
            let v = g.v(1.0, 0.0);
            let w = g.v(0.0, 1.5);
            g.cycle(&[u, v, w]);
            g.stem(w, 0.0, 2.5);
            g.leaf(w, -1.0, 2.2);
            g.leaf(w, 1.0, 2.2);
            if var % 2 == 1 {
                g.leaf(w, 1.4, 1.8);
            }
            let up = g.leaf(u, -2.0, -1.0);
            g.leaf(up, -3.0, -1.0);
            g.leaf(up, -2.0, -2.0);
            g.leaf(v, 2.0, -1.0);
            g.key = vec![u, v, w, up];
        }
        LemmaId::Triangle344Pendant => {
            let u = g.v(0.0, 0.0);
            let v = g.v(-1.0, 1.5);
            let w = g.v(1.0, 1.5);
            g.cycle(&[u, v, w]);
            let up = g.leaf(u, 0.0, -1.0);
            let l1 = g.leaf(up, -1.0, -2.0);
            let l2 = g.leaf(up, 1.0, -2.0);
            g.leaf(v, -2.0, 1.0);
            g.leaf(v, -1.8, 2.2);
            g.leaf(w, 2.0, 1.0);
            g.stem(w, 0.0, 3.0);
            if var % 2 == 1 {
                let a = g.v(0.0, -2.5);
                g.e(l1, a);
                g.e(l2, a);
            }
            g.key = vec![u, v, w, up];
        }
        LemmaId::Triangle344Side => {
            let u = g.v(0.0, 0.0);
            let v = g.v(-1.0, 1.5);
            let w = g.v(1.0, 1.5);
            g.cycle(&[u, v, w]);
            g.leaf(u, 0.0, -1.0);
            let v1 = g.leaf(v, -2.0, 1.0);
            let v2 = g.leaf(v, -2.0, 2.3);
            let a = g.leaf(v1, -3.0, 0.5);
            let b = g.leaf(v1, -2.5, 0.0);
            g.leaf(v2, -3.0, 2.5);
            g.leaf(v2, -2.5, 2.9);
            g.leaf(w, 2.0, 1.0);
            g.stem(w, 0.0, 3.5);
            if var % 2 == 1 {
                let z = g.v(-3.5, -0.5);
                g.e(a, z);
                g.e(b, z);
            }
            g.key = vec![u, v, w, v1, v2];
        }
        LemmaId::TriangleSquare4 => {
            let v = g.v(0.0, 0.0);
            let v1 = g.v(-1.0, 1.0);
            let v2 = g.v(1.0, 1.0);
            let v3 = g.v(1.0, -1.0);
            let v4 = g.v(-1.0, -1.0);
            let u = g.v(0.0, -2.0);
            for x in [v1, v2, v3, v4] {
                g.e(v, x);
            }
            g.e(v1, v2);
            g.path(&[v3, u, v4]);
            g.leaf(v1, -2.0, 1.0);
            g.leaf(v2, 2.0, 1.0);
            g.stem(v2, 0.5, 2.5);
            g.leaf(u, 0.0, -3.0);
            if var % 3 >= 1 {
                g.leaf(v3, 2.0, -1.0);
            }
            if var % 3 == 2 {
                g.leaf(v4, -2.0, -1.0);
            }
            g.key = vec![v, v1, v2, v3, v4, u];
        }
        LemmaId::TriangleSquare5 => {
            let v = g.v(0.0, 0.0);
            let v1 = g.v(-1.0, 1.0);
            let v2 = g.v(1.0, 1.0);
            let v3 = g.v(1.5, -0.5);
            let v4 = g.v(0.0, -1.5);
            let v5 = g.v(-1.5, -0.5);
            let u = g.v(1.5, -2.0);
            let w = g.v(-1.5, -2.0);
            for x in [v1, v2, v3, v4, v5] {
                g.e(v, x);
            }
            g.e(v1, v2);
            g.path(&[v3, u, v4, w, v5]);
            g.leaf(v1, -2.0, 1.2);
            g.stem(v2, 1.0, 2.5);
            g.leaf(u, 2.5, -2.8);
            g.leaf(w, -2.5, -2.8);
            if var % 3 >= 1 {
                g.leaf(v2, 2.0, 1.2);
            }
            if var % 3 == 2 {
                g.leaf(v3, 3.0, -0.5);
                g.leaf(v5, -3.0, -0.5);
            }
            g.key = vec![v, v1, v2, v3, v4, v5, u, w];
        }
        LemmaId::TPath => {
            let (v, nb, _) = grid(&mut g);
            let p1 = g.v(0.0, 2.0);
            let p2 = g.v(-2.0, 1.5);
            let p3 = g.v(-2.0, -2.0);
            let p4 = g.v(0.0, -2.0);
            g.path(&[nb[0], p1, p2, p3, p4, nb[2]]);
            g.stem(p1, 0.0, 3.0);
            g.key = vec![v, nb[0], nb[2]];
        }
        LemmaId::BehavedAdjacent => {
            let (v, nb, u) = partial_grid(&mut g, &[0, 1]);
            g.stem(nb[0], 0.0, 2.0);
            g.leaf(u[0], 2.0, 1.8);
            g.leaf(u[1], 2.0, -2.0);
            g.leaf(nb[3], -2.0, 0.0);
            if var % 2 == 1 {
                g.leaf(nb[2], 0.0, -2.0);
            }
            g.key = vec![v, nb[0], nb[1], nb[2], u[0], u[1]];
        }
        LemmaId::BehavedOpposite => {
            let (v, nb, u) = partial_grid(&mut g, &[0, 2]);
            g.stem(nb[0], 0.0, 2.0);
            g.leaf(u[0], 2.0, 1.8);
            g.leaf(u[2], -2.0, -2.0);
            if var % 2 == 1 {
                g.leaf(nb[1], 2.0, 0.0);
            }
            g.key = vec![v, u[0], u[2]];
        }
        LemmaId::Double3344 => {
            if var.is_multiple_of(2) {
                let (v, nb, u) = partial_grid(&mut g, &[0, 1]);
                g.stem(nb[0], 0.0, 2.0);
                g.leaf(nb[1], 2.0, 0.0);
                g.leaf(u[0], 1.8, 1.6);
                g.leaf(u[1], 2.0, -2.0);
                g.leaf(nb[2], 0.0, -2.0);
                g.key = vec![v, u[0], u[1]];
            } else {
                let (v, nb, u) = partial_grid(&mut g, &[0, 2]);
                g.stem(nb[0], 0.0, 2.0);
                g.leaf(nb[1], 2.0, 0.3);
                g.leaf(nb[1], 2.0, -0.3);
                g.leaf(u[0], 1.8, 1.6);
                g.leaf(u[2], -2.0, -2.0);
                g.leaf(nb[2], 0.0, -2.0);
                g.leaf(nb[3], -2.0, 0.3);
                g.leaf(nb[3], -2.0, -0.3);
                g.key = vec![v, u[0], u[2]];
            }
        }
        LemmaId::Behaved3344 => {
            let (v, nb, u) = partial_grid(&mut g, &[0, 1]);
            g.stem(nb[0], 0.0, 2.0);
            g.leaf(u[0], 1.8, 1.6);
            g.leaf(nb[1], 2.0, 0.0);
            g.leaf(nb[2], -0.5, -2.0);
            g.leaf(nb[2], 0.5, -2.0);
            if var % 2 == 1 {
                g.leaf(u[1], 2.0, -2.0);
            }
            g.key = vec![v, nb[0], nb[1], u[0]];
        }
        LemmaId::PoorFour => {
            let (v, nb, u) = grid(&mut g);
            g.stem(u[0], 0.5, 2.0);
            let variant = var % 4;
            if variant & 1 == 1 {
                g.leaf(nb[1], 2.0, 0.0);
            }
            if variant & 2 == 2 {
                g.leaf(nb[3], -2.0, 0.0);
            }
            g.key = vec![v];
        }
        LemmaId::PoorFivePair => {
            let (v, nb, u) = five_squares(&mut g);
            let j = 1 + var % 4;
            five_leaf(&mut g, u[j], j, 4.0, 36.0);
            g.key = vec![v, nb[0], u[0], u[j]];
        }
        LemmaId::PoorFiveThree => {
            let (v, _, u) = five_squares(&mut g);
            let picks: [usize; 2] = if var.is_multiple_of(2) { [1, 2] } else { [1, 3] };
            for j in picks {
                five_leaf(&mut g, u[j], j, 4.0, 36.0);
            }
            g.key = vec![v, u[0], u[picks[0]], u[picks[1]]];
        }
        LemmaId::PoorFiveBehaved => {
            let (v, nb, u) = five_squares(&mut g);
            let variant = var % 4;
            if variant & 1 == 1 {
                five_leaf(&mut g, nb[2], 2, 2.2, 0.0);
            }
            if variant & 2 == 2 {
                five_leaf(&mut g, nb[4], 4, 2.2, 0.0);
            }
            g.key = vec![v, u[0], nb[2], nb[4]];
        }
        LemmaId::BareBoundary => {
            g.bare = true;
            g.seven = var % 2 == 1;
        }
    }
    g
}

/// Center with neighbors N, E, S, W and all four corner vertices.
fn grid(g: &mut Gadget) -> (usize, [usize; 4], [usize; 4]) {
    let (v, nb, u) = partial_grid(g, &[0, 1, 2, 3]);
    (v, nb, [u[0], u[1], u[2], u[3]])
}

/// Center with neighbors N, E, S, W; corner `i` closes the square between
/// neighbors `i` and `i + 1`. Missing corners are `usize::MAX`.
fn partial_grid(g: &mut Gadget, corners: &[usize]) -> (usize, [usize; 4], [usize; 4]) {
    let v = g.v(0.0, 0.0);
    let dirs = [(0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0)];
    let nb = dirs.map(|(x, y)| g.v(x, y));
    for &x in &nb {
        g.e(v, x);
    }
    let corner_pts = [(1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)];
    let mut u = [usize::MAX; 4];
    for &i in corners {
        let (x, y) = corner_pts[i];
        u[i] = g.v(x, y);
        g.e(nb[i], u[i]);
        g.e(u[i], nb[(i + 1) % 4]);
    }
    (v, nb, u)
}

/// Poor 5-vertex: center, five spokes and five squares, with a stem on
/// corner 0 so that corner has degree 3.
fn five_squares(g: &mut Gadget) -> (usize, [usize; 5], [usize; 5]) {
    let polar = |r: f64, deg: f64| {
        let t = deg.to_radians();
        (r * t.cos(), r * t.sin())
    };
    let v = g.v(0.0, 0.0);
    let nb: [usize; 5] = std::array::from_fn(|i| {
        let (x, y) = polar(1.5, 90.0 - 72.0 * i as f64);
        g.v(x, y)
    });
    let u: [usize; 5] = std::array::from_fn(|i| {
        let (x, y) = polar(3.0, 90.0 - 72.0 * i as f64 - 36.0);
        g.v(x, y)
    });
    for i in 0..5 {
        g.e(v, nb[i]);
        g.e(nb[i], u[i]);
        g.e(u[i], nb[(i + 1) % 5]);
    }
    g.stem(u[0], 0.5, 5.0);
    (v, nb, u)
}

fn five_leaf(g: &mut Gadget, at: usize, i: usize, r: f64, shift: f64) {
    let t = (90.0 - 72.0 * i as f64 - shift).to_radians();
    g.leaf(at, r * t.cos(), r * t.sin());
}
