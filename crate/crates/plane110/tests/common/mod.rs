//! Brute-force helpers shared by the integration tests. Nothing here calls
//! the library's solver, enumerator or reduction code.

#![allow(dead_code)]

use plane110::configurations::Recipe;

pub type Adj = Vec<Vec<usize>>;

pub const CAPS: [usize; 3] = [1, 1, 0];

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adj {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if a != b && !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    adj
}

pub fn adj_of(g: &plane110::plane_graph::Graph) -> Adj {
    adjacency(g.vertex_count(), &g.edges())
}

/// Every assignment of colors 1..=3 to `n` vertices, in odometer order.
pub fn assignments(n: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = 3usize.pow(n as u32);
    (0..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let c = (k % 3) as u8 + 1;
                k /= 3;
                c
            })
            .collect()
    })
}

/// Each vertex has at most `cap(color)` neighbors of its own color.
pub fn valid(adj: &Adj, col: &[u8]) -> bool {
    (0..adj.len()).all(|v| adj[v].iter().filter(|&&w| col[w] == col[v]).count() <= CAPS[col[v] as usize - 1])
}

/// Induced subgraph on `verts`, relabeled by position.
pub fn induced(adj: &Adj, verts: &[usize]) -> Adj {
    verts.iter().map(|&v| adj[v].iter().filter_map(|w| verts.iter().position(|x| x == w)).collect()).collect()
}

/// Valid colorings of the induced boundary, as color vectors in cycle order.
pub fn boundary_colorings(adj: &Adj, cycle: &[usize]) -> Vec<Vec<u8>> {
    let h = induced(adj, cycle);
    assignments(cycle.len()).filter(|c| valid(&h, c)).collect()
}

/// Valid total colorings where no vertex off `cycle` shares a color with a
/// neighbor on it.
pub fn superextending(adj: &Adj, cycle: &[usize], col: &[u8]) -> bool {
    valid(adj, col)
        && (0..adj.len())
            .filter(|v| !cycle.contains(v))
            .all(|v| adj[v].iter().all(|w| !cycle.contains(w) || col[*w] != col[v]))
}

/// Brute-force superextension for one boundary coloring.
pub fn superextends(adj: &Adj, cycle: &[usize], boundary: &[u8]) -> bool {
    let rest: Vec<usize> = (0..adj.len()).filter(|v| !cycle.contains(v)).collect();
    let mut col = vec![0u8; adj.len()];
    for (i, &v) in cycle.iter().enumerate() {
        col[v] = boundary[i];
    }
    assignments(rest.len()).any(|a| {
        for (i, &v) in rest.iter().enumerate() {
            col[v] = a[i];
        }
        superextending(adj, cycle, &col)
    })
}

/// Delete then identify, written independently of the library.
pub fn reduce(adj: &Adj, recipe: &Recipe) -> (Adj, Vec<Option<usize>>) {
    let n = adj.len();
    let mut rep: Vec<usize> = (0..n).collect();
    for part in &recipe.identify {
        let kept: Vec<usize> = part.iter().copied().filter(|v| !recipe.delete.contains(v)).collect();
        if let Some(&r) = kept.iter().min() {
            for &v in &kept {
                rep[v] = r;
            }
        }
    }
    let mut id: Vec<Option<usize>> = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if !recipe.delete.contains(&v) && rep[v] == v {
            id[v] = Some(next);
            next += 1;
        }
    }
    let map: Vec<Option<usize>> = (0..n).map(|v| if recipe.delete.contains(&v) { None } else { id[rep[v]] }).collect();
    let mut edges = Vec::new();
    for v in 0..n {
        for &w in &adj[v] {
            if let (Some(a), Some(b)) = (map[v], map[w]) {
                assert_ne!(a, b, "identification creates a loop");
                edges.push((a, b));
            }
        }
    }
    (adjacency(next, &edges), map)
}

/// For every boundary coloring: does every superextending coloring of the
/// reduced graph lift (universal), and does at least one (existential)?
pub fn reduction_oracle(adj: &Adj, cycle: &[usize], recipe: &Recipe) -> (bool, bool) {
    let (red, map) = reduce(adj, recipe);
    let cycle2: Vec<usize> = cycle.iter().map(|&v| map[v].expect("boundary kept")).collect();
    let n = adj.len();
    let good_g: Vec<Vec<u8>> = assignments(n).filter(|c| superextending(adj, cycle, c)).collect();
    let good_r: Vec<Vec<u8>> = assignments(red.len()).filter(|c| superextending(&red, &cycle2, c)).collect();
    let (mut universal, mut existential) = (true, true);
    for b in boundary_colorings(adj, cycle) {
        let mut any = false;
        for c2 in good_r.iter().filter(|c| cycle2.iter().zip(&b).all(|(&v, &x)| c[v] == x)) {
            let lifts = good_g.iter().any(|c| {
                cycle.iter().zip(&b).all(|(&v, &x)| c[v] == x)
                    && (0..n).all(|v| recipe.recolor.contains(&v) || map[v].is_none_or(|y| c[v] == c2[y]))
            });
            any |= lifts;
            universal &= lifts;
        }
        existential &= any;
    }
    (universal, existential)
}

/// All-pairs shortest paths.
pub fn floyd_warshall(adj: &Adj) -> Vec<Vec<usize>> {
    let n = adj.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
        for &w in &adj[v] {
            d[v][w] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Simple cycles of length `k` counted by brute force over vertex sequences.
pub fn count_cycles(adj: &Adj, k: usize) -> usize {
    fn extend(adj: &Adj, path: &mut Vec<usize>, k: usize, count: &mut usize) {
        let last = *path.last().unwrap();
        if path.len() == k {
            if adj[last].contains(&path[0]) {
                *count += 1;
            }
            return;
        }
        for &w in &adj[last] {
            if w > path[0] && !path.contains(&w) {
                path.push(w);
                extend(adj, path, k, count);
                path.pop();
            }
        }
    }
    let mut count = 0;
    for s in 0..adj.len() {
        extend(adj, &mut vec![s], k, &mut count);
    }
    // Each cycle is seen once per direction from its least vertex.
    count / 2
}

/// Point strictly inside a polygon (even-odd rule).
pub fn inside(poly: &[(f64, f64)], p: (f64, f64)) -> bool {
    let mut inside = false;
    let k = poly.len();
    for i in 0..k {
        let (a, b) = (poly[i], poly[(i + 1) % k]);
        if (a.1 > p.1) != (b.1 > p.1) && p.0 < (b.0 - a.0) * (p.1 - a.1) / (b.1 - a.1) + a.0 {
            inside = !inside;
        }
    }
    inside
}
