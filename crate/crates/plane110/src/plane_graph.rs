//! Connected simple plane graphs given as rotation systems.
//!
//! A [`PlaneGraph`] stores, for every vertex, its neighbors in clockwise
//! order. Faces are traced eagerly at construction: arriving at `v` along the
//! dart `(u, v)`, the walk leaves along `(v, w)` where `w` is the neighbor
//! immediately after `u` in the clockwise rotation of `v`. Face ids follow
//! discovery order (vertices by id, darts by rotation position), so they are
//! stable for a given input.
//!
//! [`Graph`] is the abstract counterpart used for identified graphs, which
//! carry no embedding.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {0} lists neighbor {1} more than once")]
    RepeatedNeighbor(usize, usize),
    #[error("adjacency not symmetric: {0} lists {1} but {1} does not list {0}")]
    Asymmetric(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("Euler check failed: V - E + F = {v} - {e} + {f} != 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("outer walk does not match any traced face")]
    OuterMismatch,
    #[error("no outer face designated")]
    NoOuterFace,
    #[error("vertex sequence is not a cycle of the graph")]
    NotACycle,
    #[error("identification parts overlap at vertex {0}")]
    Overlap(usize),
    #[error("identifying adjacent vertices {0} and {1} creates a loop")]
    IdentifyLoop(usize, usize),
    #[error("color {1} for vertex {0} is not in 1..=3")]
    BadColor(usize, u8),
}

/// Abstract simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.adj.len();
        if u >= n {
            return Err(GraphError::VertexOutOfRange(u));
        }
        if v >= n {
            return Err(GraphError::VertexOutOfRange(v));
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if let Err(i) = self.adj[u].binary_search(&v) {
            self.adj[u].insert(i, v);
            let j = self.adj[v].binary_search(&u).unwrap_err();
            self.adj[v].insert(j, u);
        }
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if let Ok(i) = self.adj[u].binary_search(&v) {
            self.adj[u].remove(i);
        }
        if let Ok(i) = self.adj[v].binary_search(&u) {
            self.adj[v].remove(i);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in self.adj.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// `|V| + |E|`, the size measure that orders reductions.
    pub fn sigma(&self) -> usize {
        self.vertex_count() + self.edge_count()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return true;
        }
        let dist = self.bfs(&[0]);
        dist.iter().all(Option::is_some)
    }

    /// Multi-source BFS distances; `None` for unreachable vertices.
    pub fn bfs(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Removes `del` and renumbers the survivors in increasing id order.
    /// The returned map sends old ids to new ids.
    pub fn delete_vertices(&self, del: &[usize]) -> (Graph, Vec<Option<usize>>) {
        let gone: HashSet<usize> = del.iter().copied().collect();
        let mut map = vec![None; self.adj.len()];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !gone.contains(&v) {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.adj[a].push(b);
                g.adj[b].push(a);
            }
        }
        for nb in &mut g.adj {
            nb.sort_unstable();
        }
        (g, map)
    }

    /// Identifies each part to a single vertex. Parallel edges merge; a part
    /// containing an edge is an error. New ids follow the smallest old id of
    /// each class.
    pub fn identify(&self, parts: &[Vec<usize>]) -> Result<Identified, GraphError> {
        let n = self.adj.len();
        let mut rep: Vec<usize> = (0..n).collect();
        let mut seen = HashSet::new();
        for part in parts {
            for &v in part {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange(v));
                }
                if !seen.insert(v) {
                    return Err(GraphError::Overlap(v));
                }
            }
            for (i, &a) in part.iter().enumerate() {
                for &b in &part[i + 1..] {
                    if self.has_edge(a, b) {
                        return Err(GraphError::IdentifyLoop(a.min(b), a.max(b)));
                    }
                }
            }
            if let Some(&m) = part.iter().min() {
                for &v in part {
                    rep[v] = m;
                }
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if rep[v] == v {
                new_id[v] = next;
                next += 1;
            }
        }
        let map: Vec<usize> = (0..n).map(|v| new_id[rep[v]]).collect();
        let mut g = Graph::empty(next);
        for (u, v) in self.edges() {
            g.add_edge(map[u], map[v])?;
        }
        Ok(Identified { graph: g, map })
    }

    /// Adjacency-list text without rotation semantics.
    pub fn to_adjacency_text(&self) -> String {
        let mut s = format!("graph {}\n", self.adj.len());
        for (v, nb) in self.adj.iter().enumerate() {
            let list: Vec<String> = nb.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}: {}", v, list.join(" "));
        }
        s
    }

    /// Parses the `graph N` adjacency format written by
    /// [`Graph::to_adjacency_text`].
    pub fn parse_adjacency(text: &str) -> Result<Graph, GraphError> {
        let (n, rows, _, _) = parse_lines(text, "graph")?;
        let mut g = Graph::empty(n);
        for (v, nb) in rows.iter().enumerate() {
            for &w in nb {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange(w));
                }
                g.add_edge(v, w)?;
            }
        }
        for (v, nb) in rows.iter().enumerate() {
            for &w in nb {
                if !rows[w].contains(&v) {
                    return Err(GraphError::Asymmetric(v, w));
                }
            }
        }
        Ok(g)
    }
}

/// Result of [`Graph::identify`]: the new graph and the old-to-new vertex map.
#[derive(Debug, Clone)]
pub struct Identified {
    pub graph: Graph,
    pub map: Vec<usize>,
}

/// A face of a plane graph. `walk[i] -> walk[i+1]` (cyclically) are the darts
/// on its boundary; a vertex may repeat when the boundary is not a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub id: usize,
    pub walk: Vec<usize>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }

    /// `b(f)`, the set of vertices on the face.
    pub fn vertices(&self) -> BTreeSet<usize> {
        self.walk.iter().copied().collect()
    }

    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.walk.len();
        (0..k).map(move |i| (self.walk[i], self.walk[(i + 1) % k]))
    }

    /// True when the boundary walk visits no vertex twice.
    pub fn is_simple(&self) -> bool {
        self.vertices().len() == self.walk.len()
    }
}

/// A simple cycle classified against the outer face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRef {
    pub cycle: Vec<usize>,
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    pub separating: bool,
}

/// Connected simple plane graph with traced faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    graph: Graph,
    faces: Vec<Face>,
    dart_face: Vec<Vec<usize>>,
    outer: Option<usize>,
    precolor: Vec<(usize, u8)>,
}

impl PlaneGraph {
    /// Validates a rotation system and traces its faces.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, GraphError> {
        let n = rotation.len();
        if n == 0 {
            return Err(GraphError::Parse { line: 0, msg: "graph has no vertices".into() });
        }
        let mut graph = Graph::empty(n);
        for (v, rot) in rotation.iter().enumerate() {
            let mut seen = HashSet::new();
            for &w in rot {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange(w));
                }
                if w == v {
                    return Err(GraphError::Loop(v));
                }
                if !seen.insert(w) {
                    return Err(GraphError::RepeatedNeighbor(v, w));
                }
            }
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if !rotation[w].contains(&v) {
                    return Err(GraphError::Asymmetric(v, w));
                }
                if v < w {
                    graph.add_edge(v, w)?;
                }
            }
        }
        if !graph.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let (faces, dart_face) = trace(&rotation);
        let (v, e, f) = (n, graph.edge_count(), faces.len());
        if v + f != e + 2 {
            return Err(GraphError::Euler { v, e, f });
        }
        Ok(PlaneGraph { rotation, graph, faces, dart_face, outer: None, precolor: Vec::new() })
    }

    /// Parses the `.pg` text format.
    pub fn load(text: &str) -> Result<Self, GraphError> {
        let (_, rows, outer, precolor) = parse_lines(text, "vertices")?;
        let mut g = PlaneGraph::from_rotation(rows)?;
        if let Some(walk) = outer {
            let id = g.find_face(&walk).ok_or(GraphError::OuterMismatch)?;
            g.outer = Some(id);
        }
        for &(v, c) in &precolor {
            if v >= g.vertex_count() {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if !(1..=3).contains(&c) {
                return Err(GraphError::BadColor(v, c));
            }
        }
        g.precolor = precolor;
        Ok(g)
    }

    /// Writes the `.pg` text format; `load(to_text(g))` reproduces `g`.
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices {}\n", self.vertex_count());
        for (v, rot) in self.rotation.iter().enumerate() {
            let list: Vec<String> = rot.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}: {}", v, list.join(" "));
        }
        if let Some(o) = self.outer {
            let list: Vec<String> = self.faces[o].walk.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "outer: {}", list.join(" "));
        }
        if !self.precolor.is_empty() {
            let list: Vec<String> = self.precolor.iter().map(|(v, c)| format!("{v}={c}")).collect();
            let _ = writeln!(s, "precolor: {}", list.join(" "));
        }
        s
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    /// Face on the left of dart `(u, v)`, i.e. the face whose walk uses it.
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        let i = self.rotation[u].iter().position(|&w| w == v)?;
        Some(self.dart_face[u][i])
    }

    /// Distinct faces around `v` in rotation order.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &f in &self.dart_face[v] {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        if out.is_empty() && !self.faces.is_empty() {
            out.push(0);
        }
        out
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer
    }

    pub fn set_outer_face(&mut self, face: Option<usize>) {
        self.outer = face.filter(|&f| f < self.faces.len());
    }

    pub fn with_outer_face(mut self, face: usize) -> Self {
        self.set_outer_face(Some(face));
        self
    }

    pub fn precolor(&self) -> &[(usize, u8)] {
        &self.precolor
    }

    pub fn set_precolor(&mut self, precolor: Vec<(usize, u8)>) {
        self.precolor = precolor;
    }

    /// Face whose walk equals `walk` up to rotation or reversal.
    pub fn find_face(&self, walk: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| same_cyclic(&f.walk, walk))
    }

    pub fn sigma(&self) -> usize {
        self.graph.sigma()
    }

    pub fn find_cycles_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        find_cycles_up_to(&self.graph, max_len)
    }

    /// Splits the vertices off `cycle` into interior and exterior, the
    /// exterior being the side holding the outer face.
    pub fn classify_cycle(&self, cycle: &[usize]) -> Result<CycleRef, GraphError> {
        if !is_cycle(&self.graph, cycle) {
            return Err(GraphError::NotACycle);
        }
        let outer = self.outer.ok_or(GraphError::NoOuterFace)?;
        let k = cycle.len();
        let on_cycle: HashSet<(usize, usize)> = (0..k)
            .map(|i| {
                let (a, b) = (cycle[i], cycle[(i + 1) % k]);
                (a.min(b), a.max(b))
            })
            .collect();
        let mut outside = vec![false; self.faces.len()];
        outside[outer] = true;
        let mut queue = VecDeque::from([outer]);
        while let Some(f) = queue.pop_front() {
            for (a, b) in self.faces[f].darts() {
                if on_cycle.contains(&(a.min(b), a.max(b))) {
                    continue;
                }
                if let Some(g) = self.face_of_dart(b, a) {
                    if !outside[g] {
                        outside[g] = true;
                        queue.push_back(g);
                    }
                }
            }
        }
        let members: HashSet<usize> = cycle.iter().copied().collect();
        let (mut interior, mut exterior) = (Vec::new(), Vec::new());
        for v in 0..self.vertex_count() {
            if members.contains(&v) {
                continue;
            }
            if self.dart_face[v].iter().any(|&f| outside[f]) {
                exterior.push(v);
            } else {
                interior.push(v);
            }
        }
        let separating = !interior.is_empty() && !exterior.is_empty();
        Ok(CycleRef { cycle: cycle.to_vec(), interior, exterior, separating })
    }

    pub fn identify(&self, parts: &[Vec<usize>]) -> Result<Identified, GraphError> {
        self.graph.identify(parts)
    }

    /// Copy with edge `uv` removed from the rotation system. Fails if the
    /// result is disconnected.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        let mut rot = self.rotation.clone();
        rot[u].retain(|&w| w != v);
        rot[v].retain(|&w| w != u);
        PlaneGraph::from_rotation(rot)
    }

    /// Copy with `w` inserted into the rotation of `u` just after `after`, and
    /// `u` inserted into the rotation of `w` just after `after_w`. Used by
    /// generators; the Euler check still guards the result.
    pub fn with_edge(
        &self,
        (u, after_u): (usize, Option<usize>),
        (w, after_w): (usize, Option<usize>),
    ) -> Result<Self, GraphError> {
        let mut rot = self.rotation.clone();
        insert_after(&mut rot[u], w, after_u);
        insert_after(&mut rot[w], u, after_w);
        PlaneGraph::from_rotation(rot)
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }
}

fn insert_after(rot: &mut Vec<usize>, x: usize, after: Option<usize>) {
    let at = after.and_then(|a| rot.iter().position(|&y| y == a)).map_or(rot.len(), |i| i + 1);
    rot.insert(at, x);
}

fn trace(rotation: &[Vec<usize>]) -> (Vec<Face>, Vec<Vec<usize>>) {
    let n = rotation.len();
    let mut dart_face: Vec<Vec<usize>> = rotation.iter().map(|r| vec![usize::MAX; r.len()]).collect();
    let mut faces = Vec::new();
    for s in 0..n {
        for i in 0..rotation[s].len() {
            if dart_face[s][i] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let (mut u, mut j) = (s, i);
            while dart_face[u][j] == usize::MAX {
                dart_face[u][j] = id;
                walk.push(u);
                let v = rotation[u][j];
                let back = rotation[v].iter().position(|&x| x == u).unwrap_or(0);
                let next = (back + 1) % rotation[v].len();
                u = v;
                j = next;
            }
            faces.push(Face { id, walk });
        }
    }
    if faces.is_empty() {
        faces.push(Face { id: 0, walk: Vec::new() });
    }
    (faces, dart_face)
}

fn same_cyclic(a: &[usize], b: &[usize]) -> bool {
    let k = a.len();
    if k != b.len() {
        return false;
    }
    if k == 0 {
        return true;
    }
    (0..k).any(|s| (0..k).all(|i| a[(s + i) % k] == b[i]) || (0..k).all(|i| a[(s + k - i) % k] == b[i]))
}

/// True when `cycle` lists at least three distinct vertices, consecutive ones
/// (cyclically) adjacent.
pub fn is_cycle(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 3 || cycle.iter().any(|&v| v >= g.vertex_count()) {
        return false;
    }
    let distinct: HashSet<usize> = cycle.iter().copied().collect();
    distinct.len() == k && (0..k).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % k]))
}

/// Every simple cycle of length `3..=max_len`, once each. A cycle is reported
/// starting at its smallest vertex, oriented so the second vertex is smaller
/// than the last.
pub fn find_cycles_up_to(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        path.push(s);
        on_path[s] = true;
        extend_cycles(g, s, max_len, &mut path, &mut on_path, &mut out, None);
        on_path[s] = false;
        path.pop();
    }
    out
}

/// First simple cycle of exactly `len` vertices in the search order of
/// [`find_cycles_up_to`], if any.
pub fn find_cycle_of_length(g: &Graph, len: usize) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        path.push(s);
        on_path[s] = true;
        extend_cycles(g, s, len, &mut path, &mut on_path, &mut out, Some(len));
        on_path[s] = false;
        path.pop();
        if !out.is_empty() {
            return out.pop();
        }
    }
    None
}

fn extend_cycles(
    g: &Graph,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    exact: Option<usize>,
) {
    if exact.is_some() && !out.is_empty() {
        return;
    }
    let last = *path.last().unwrap_or(&s);
    for &w in g.neighbors(last) {
        if w == s && path.len() >= 3 && path[1] < last && exact.is_none_or(|e| e == path.len()) {
            out.push(path.clone());
            if exact.is_some() {
                return;
            }
        }
        if w > s && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_cycles(g, s, max_len, path, on_path, out, exact);
            on_path[w] = false;
            path.pop();
        }
    }
}

type Parsed = (usize, Vec<Vec<usize>>, Option<Vec<usize>>, Vec<(usize, u8)>);

fn parse_lines(text: &str, header: &str) -> Result<Parsed, GraphError> {
    let err = |line: usize, msg: String| GraphError::Parse { line, msg };
    let mut n: Option<usize> = None;
    let mut rows: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer = None;
    let mut precolor = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(count) = n else {
            let mut it = line.split_whitespace();
            if it.next() != Some(header) {
                return Err(err(line_no, format!("expected `{header} N`")));
            }
            let count: usize =
                it.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(line_no, "bad vertex count".into()))?;
            n = Some(count);
            rows = vec![None; count];
            continue;
        };
        let (key, rest) =
            line.split_once(':').ok_or_else(|| err(line_no, format!("expected `<id>: ...`, got `{line}`")))?;
        let key = key.trim();
        let nums = |s: &str| -> Result<Vec<usize>, GraphError> {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| err(line_no, format!("bad vertex id `{t}`"))))
                .collect()
        };
        match key {
            "outer" => outer = Some(nums(rest)?),
            "precolor" => {
                for tok in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                    let (v, c) =
                        tok.split_once('=').ok_or_else(|| err(line_no, format!("expected v=c, got `{tok}`")))?;
                    let v = v.parse().map_err(|_| err(line_no, format!("bad vertex `{v}`")))?;
                    let c = c.parse().map_err(|_| err(line_no, format!("bad color `{c}`")))?;
                    precolor.push((v, c));
                }
            }
            _ => {
                let v: usize = key.parse().map_err(|_| err(line_no, format!("bad line key `{key}`")))?;
                if v >= count {
                    return Err(GraphError::VertexOutOfRange(v));
                }
                if rows[v].is_some() {
                    return Err(err(line_no, format!("vertex {v} listed twice")));
                }
                rows[v] = Some(nums(rest)?);
            }
        }
    }
    let count = n.ok_or_else(|| err(0, format!("missing `{header} N` line")))?;
    let rows = rows
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| err(0, format!("vertex {v} has no rotation line"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((count, rows, outer, precolor))
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "vertices 3\n0: 1 2\n1: 2 0\n2: 0 1\n";
    // Center 3 inside triangle 0 1 2.
    const K4: &str = "vertices 4\n0: 1 3 2\n1: 2 3 0\n2: 0 3 1\n3: 0 1 2\n";

    fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        PlaneGraph::from_rotation(rot).unwrap()
    }

    #[test]
    fn triangle_counts() {
        let g = PlaneGraph::load(TRIANGLE).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().len()), (3, 3, 2));
        assert!(g.faces().iter().all(|f| f.degree() == 3));
        assert_eq!(g.sigma(), 6);
    }

    #[test]
    fn k4_has_four_triangular_faces() {
        let g = PlaneGraph::load(K4).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.faces().len()), (4, 6, 4));
        assert!(g.faces().iter().all(|f| f.degree() == 3));
        assert_eq!(g.sigma(), 10);
    }

    #[test]
    fn four_cycle_has_two_square_faces() {
        let g = cycle(4);
        assert_eq!(g.faces().len(), 2);
        assert!(g.faces().iter().all(|f| f.degree() == 4));
    }

    #[test]
    fn c7_sigma_and_single_cycle() {
        let g = cycle(7);
        assert_eq!(g.sigma(), 14);
        assert_eq!(g.find_cycles_up_to(7).len(), 1);
    }

    #[test]
    fn k5_fails_euler_for_every_rotation() {
        // Exhaust all (3!)^5 rotation systems of K5.
        let perms = |v: usize| -> Vec<Vec<usize>> {
            let others: Vec<usize> = (0..5).filter(|&w| w != v).collect();
            let mut out = Vec::new();
            let first = others[0];
            let rest = &others[1..];
            for a in 0..3 {
                for b in 0..3 {
                    if a == b {
                        continue;
                    }
                    let c = 3 - a - b;
                    out.push(vec![first, rest[a], rest[b], rest[c]]);
                }
            }
            out
        };
        let all: Vec<Vec<Vec<usize>>> = (0..5).map(perms).collect();
        let mut tried = 0;
        let mut idx = [0usize; 5];
        loop {
            let rot: Vec<Vec<usize>> = (0..5).map(|v| all[v][idx[v]].clone()).collect();
            assert!(matches!(PlaneGraph::from_rotation(rot), Err(GraphError::Euler { .. })));
            tried += 1;
            let mut k = 0;
            while k < 5 {
                idx[k] += 1;
                if idx[k] < 6 {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == 5 {
                break;
            }
        }
        assert_eq!(tried, 6usize.pow(5));
    }

    #[test]
    fn load_rejects_bad_input() {
        assert!(matches!(PlaneGraph::load("vertices 2\n0: 1\n1:\n"), Err(GraphError::Asymmetric(0, 1))));
        assert!(matches!(PlaneGraph::load("vertices 4\n0: 1\n1: 0\n2: 3\n3: 2\n"), Err(GraphError::Disconnected)));
        assert!(matches!(PlaneGraph::load("vertices 2\n0: 0\n1:\n"), Err(GraphError::Loop(0))));
        assert!(matches!(PlaneGraph::load("vertex 2\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(PlaneGraph::load("vertices 2\n0: 1\n"), Err(GraphError::Parse { .. })));
        assert!(PlaneGraph::load(&format!("{TRIANGLE}outer: 0 1 3\n")).is_err());
    }

    #[test]
    fn outer_and_precolor_round_trip() {
        let text = format!("# K4\n{K4}outer: 0 1 2\nprecolor: 0=1, 1=2\n");
        let g = PlaneGraph::load(&text).unwrap();
        assert!(g.outer_face().is_some());
        assert_eq!(g.precolor(), &[(0, 1), (1, 2)]);
        let again = PlaneGraph::load(&g.to_text()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn single_vertex_has_one_face() {
        let g = PlaneGraph::load("vertices 1\n0:\n").unwrap();
        assert_eq!(g.faces().len(), 1);
        assert_eq!(g.faces()[0].degree(), 0);
    }

    #[test]
    fn k4_cycle_counts_by_length() {
        let g = PlaneGraph::load(K4).unwrap();
        let cycles = g.find_cycles_up_to(5);
        let count = |k: usize| cycles.iter().filter(|c| c.len() == k).count();
        assert_eq!((count(3), count(4), count(5)), (4, 3, 0));
    }

    #[test]
    fn triangle_cycles() {
        let g = PlaneGraph::load(TRIANGLE).unwrap();
        assert_eq!(g.find_cycles_up_to(5), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn classify_k4_triangles() {
        let g = PlaneGraph::load(&format!("{K4}outer: 0 1 2\n")).unwrap();
        let outer = g.classify_cycle(&[0, 1, 2]).unwrap();
        assert_eq!(outer.interior, vec![3]);
        assert!(outer.exterior.is_empty());
        assert!(!outer.separating);
        let inner = g.classify_cycle(&[0, 1, 3]).unwrap();
        assert!(!inner.separating);
        assert_eq!(inner.exterior, vec![2]);
        assert!(g.classify_cycle(&[0, 1]).is_err());
    }

    #[test]
    fn classify_requires_outer_face() {
        let g = PlaneGraph::load(K4).unwrap();
        assert_eq!(g.classify_cycle(&[0, 1, 2]), Err(GraphError::NoOuterFace));
    }

    #[test]
    fn identify_c4_diagonal() {
        let g = cycle(4);
        let id = g.identify(&[vec![0, 2]]).unwrap();
        assert_eq!(id.graph.vertex_count(), 3);
        assert_eq!(id.graph.edge_count(), 2);
        assert_eq!(id.map[0], id.map[2]);
        assert!(id.graph.sigma() < g.sigma());
    }

    #[test]
    fn identify_adjacent_is_loop_error() {
        let g = cycle(4);
        assert_eq!(g.identify(&[vec![0, 1]]).unwrap_err(), GraphError::IdentifyLoop(0, 1));
        assert_eq!(g.identify(&[vec![0, 2], vec![2, 3]]).unwrap_err(), GraphError::Overlap(2));
    }

    #[test]
    fn adjacency_text_round_trip() {
        let g = PlaneGraph::load(K4).unwrap();
        let text = g.graph().to_adjacency_text();
        assert_eq!(&Graph::parse_adjacency(&text).unwrap(), g.graph());
    }

    #[test]
    fn delete_vertices_renumbers() {
        let g = PlaneGraph::load(K4).unwrap();
        let (h, map) = g.graph().delete_vertices(&[1]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
    }
}
