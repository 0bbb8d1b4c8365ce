//! Detectors for the forbidden configurations of a minimal counterexample and
//! brute-force oracles for their reductions.
//!
//! A [`ConfigurationMatch`] names the vertices and faces playing each role,
//! plus a [`Recipe`] (delete, identify, recolor) when the configuration is
//! reducible. [`verify_reduction`] superextends the reduced graph for every
//! boundary coloring, lifts the coloring back and asks the solver to finish
//! the job on the original graph.
//!
//! Besides the faces a detector names, every match covers each face that
//! runs along an edge between two of its role vertices.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::coloring::{
    enumerate_boundary_colorings, frontier_of, solve_anchored, Caps, Coloring, ColoringError, SearchStats,
};
use crate::discharging::{classify_unchecked, matches_at, Element, Taxonomy, P3344PLUS, P344, P34MINUS5};
use crate::graph_class::{in_class_abstract, ClassReport};
use crate::plane_graph::{find_cycles_up_to, Graph, GraphError, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    LowDegree,
    TwoTriangleFaces,
    TriangleSquareEdge,
    SeparatingCycle,
    SeparatingFourCycle,
    BoundaryChord,
    SquareBoundaryContact,
    SquareOpposite3s,
    No333Path,
    Triangle33Low,
    Triangle33Pendant,
    Triangle344Pendant,
    Triangle344Side,
    TriangleSquare4,
    TriangleSquare5,
    TPath,
    BehavedAdjacent,
    BehavedOpposite,
    Double3344,
    Behaved3344,
    PoorFour,
    PoorFivePair,
    PoorFiveThree,
    PoorFiveBehaved,
    BareBoundary,
}

impl LemmaId {
    pub const ALL: [LemmaId; 25] = [
        LemmaId::LowDegree,
        LemmaId::TwoTriangleFaces,
        LemmaId::TriangleSquareEdge,
        LemmaId::SeparatingCycle,
        LemmaId::SeparatingFourCycle,
        LemmaId::BoundaryChord,
        LemmaId::SquareBoundaryContact,
        LemmaId::SquareOpposite3s,
        LemmaId::No333Path,
        LemmaId::Triangle33Low,
        LemmaId::Triangle33Pendant,
        LemmaId::Triangle344Pendant,
        LemmaId::Triangle344Side,
        LemmaId::TriangleSquare4,
        LemmaId::TriangleSquare5,
        LemmaId::TPath,
        LemmaId::BehavedAdjacent,
        LemmaId::BehavedOpposite,
        LemmaId::Double3344,
        LemmaId::Behaved3344,
        LemmaId::PoorFour,
        LemmaId::PoorFivePair,
        LemmaId::PoorFiveThree,
        LemmaId::PoorFiveBehaved,
        LemmaId::BareBoundary,
    ];

    /// Lemmas whose matches carry a reduction recipe.
    pub const REDUCIBLE: [LemmaId; 17] = [
        LemmaId::SquareBoundaryContact,
        LemmaId::SquareOpposite3s,
        LemmaId::No333Path,
        LemmaId::Triangle33Low,
        LemmaId::Triangle33Pendant,
        LemmaId::Triangle344Pendant,
        LemmaId::Triangle344Side,
        LemmaId::TriangleSquare4,
        LemmaId::TriangleSquare5,
        LemmaId::BehavedAdjacent,
        LemmaId::BehavedOpposite,
        LemmaId::Double3344,
        LemmaId::Behaved3344,
        LemmaId::PoorFour,
        LemmaId::PoorFivePair,
        LemmaId::PoorFiveThree,
        LemmaId::PoorFiveBehaved,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::LowDegree => "low-degree",
            LemmaId::TwoTriangleFaces => "two-triangle-faces",
            LemmaId::TriangleSquareEdge => "triangle-square-edge",
            LemmaId::SeparatingCycle => "separating-cycle",
            LemmaId::SeparatingFourCycle => "separating-4-cycle",
            LemmaId::BoundaryChord => "boundary-chord",
            LemmaId::SquareBoundaryContact => "square-boundary-contact",
            LemmaId::SquareOpposite3s => "square-opposite-3s",
            LemmaId::No333Path => "no-333-path",
            LemmaId::Triangle33Low => "triangle-33-low",
            LemmaId::Triangle33Pendant => "triangle-33-pendant",
            LemmaId::Triangle344Pendant => "triangle-344-pendant",
            LemmaId::Triangle344Side => "triangle-344-side",
            LemmaId::TriangleSquare4 => "triangle-square-4",
            LemmaId::TriangleSquare5 => "triangle-square-5",
            LemmaId::TPath => "t-path",
            LemmaId::BehavedAdjacent => "behaved-adjacent",
            LemmaId::BehavedOpposite => "behaved-opposite",
            LemmaId::Double3344 => "double-3344",
            LemmaId::Behaved3344 => "behaved-3344",
            LemmaId::PoorFour => "poor-4",
            LemmaId::PoorFivePair => "poor-5-pair",
            LemmaId::PoorFiveThree => "poor-5-three",
            LemmaId::PoorFiveBehaved => "poor-5-behaved",
            LemmaId::BareBoundary => "bare-boundary",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        LemmaId::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| format!("unknown lemma `{s}`"))
    }
}

impl Serialize for LemmaId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Reduction: delete vertices, identify parts of the rest, then leave the
/// `recolor` vertices free when lifting a coloring back.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Default)]
pub struct Recipe {
    pub delete: Vec<usize>,
    pub identify: Vec<Vec<usize>>,
    pub recolor: Vec<usize>,
    /// Whether the lemma asserts the reduced graph stays in the class.
    pub claims_in_class: bool,
}

impl Recipe {
    fn new(delete: &[usize], identify: &[&[usize]], recolor: &[usize]) -> Self {
        Recipe {
            delete: delete.to_vec(),
            identify: identify.iter().map(|p| p.to_vec()).collect(),
            recolor: recolor.to_vec(),
            claims_in_class: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigurationMatch {
    pub lemma: LemmaId,
    pub vertices: Vec<(String, usize)>,
    pub faces: Vec<(String, usize)>,
    /// Vertices covered without a named role, such as the inside of a
    /// separating cycle.
    pub region: Vec<usize>,
    pub recipe: Option<Recipe>,
}

impl ConfigurationMatch {
    pub fn vertex(&self, role: &str) -> Option<usize> {
        self.vertices.iter().find(|(r, _)| r == role).map(|&(_, v)| v)
    }

    pub fn elements(&self) -> BTreeSet<Element> {
        let mut out: BTreeSet<Element> = self.vertices.iter().map(|&(_, v)| Element::Vertex(v)).collect();
        out.extend(self.region.iter().map(|&v| Element::Vertex(v)));
        out.extend(self.faces.iter().map(|&(_, f)| Element::Face(f)));
        out
    }

    pub fn covers(&self, e: Element) -> bool {
        self.elements().contains(&e)
    }

    fn key(&self) -> (LemmaId, BTreeSet<usize>, BTreeSet<usize>) {
        (self.lemma, self.vertices.iter().map(|&(_, v)| v).collect(), self.faces.iter().map(|&(_, f)| f).collect())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("match has no recipe")]
    NoRecipe,
    #[error("recipe deletes and identifies nothing")]
    IdentityRecipe,
    #[error("recipe removes or merges vertices of the outer cycle")]
    BoundaryDisturbed,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

struct Ctx<'a> {
    g: &'a PlaneGraph,
    gr: &'a Graph,
    c0: usize,
    on_c0: Vec<bool>,
    tri: Vec<bool>,
    tax: Taxonomy,
}

/// Neighbor `nb` of a center vertex, the face following it clockwise, and
/// the vertex of that face opposite the center when it is a simple 4-face.
#[derive(Clone, Copy)]
struct Spoke {
    nb: usize,
    face: usize,
    far: Option<usize>,
}

impl<'a> Ctx<'a> {
    fn new(g: &'a PlaneGraph, c0: usize) -> Self {
        let gr = g.graph();
        let n = g.vertex_count();
        let mut on_c0 = vec![false; n];
        for &v in &g.face(c0).walk {
            on_c0[v] = true;
        }
        let tri = (0..n).map(|v| crate::graph_class::on_triangle(gr, v)).collect();
        Ctx { g, gr, c0, on_c0, tri, tax: classify_unchecked(g, c0) }
    }

    fn inner(&self, v: usize) -> bool {
        !self.on_c0[v]
    }

    fn d(&self, v: usize) -> usize {
        self.gr.degree(v)
    }

    fn f3(&self, f: usize) -> bool {
        self.tax.is_f3(f)
    }

    fn f4(&self, f: usize) -> bool {
        self.tax.is_f4(f) && self.g.face(f).is_simple()
    }

    fn spokes(&self, v: usize) -> Vec<Spoke> {
        self.g
            .rotation(v)
            .iter()
            .map(|&nb| {
                let face = self.g.face_of_dart(nb, v).unwrap_or(self.c0);
                let walk = &self.g.face(face).walk;
                let far = (walk.len() == 4 && self.g.face(face).is_simple())
                    .then(|| (0..4).find(|&p| walk[p] == nb && walk[(p + 1) % 4] == v).map(|p| walk[(p + 3) % 4]))
                    .flatten();
                Spoke { nb, face, far }
            })
            .collect()
    }

    /// At most one of the two vertices lies on a triangle.
    fn behaved(&self, a: usize, b: usize) -> bool {
        !(self.tri[a] && self.tri[b])
    }

    fn deg3_or_behaved4(&self, x: usize, a: Option<usize>, b: Option<usize>) -> bool {
        match (self.d(x), a, b) {
            (3, _, _) => true,
            (4, Some(a), Some(b)) => self.behaved(a, b),
            _ => false,
        }
    }

    fn pendant_neighbor(&self, x: usize, f: usize) -> Option<usize> {
        let on: BTreeSet<usize> = self.g.face(f).vertices();
        let rest: Vec<usize> = self.gr.neighbors(x).iter().copied().filter(|w| !on.contains(w)).collect();
        (rest.len() == 1).then(|| rest[0])
    }

    fn face_pos(&self, f: usize, v: usize) -> usize {
        self.g.face(f).walk.iter().position(|&x| x == v).unwrap_or(0)
    }
}

struct Out<'a, 'b> {
    ctx: &'b Ctx<'a>,
    seen: HashSet<(LemmaId, BTreeSet<usize>, BTreeSet<usize>)>,
    list: Vec<ConfigurationMatch>,
}

impl Out<'_, '_> {
    fn add(&mut self, lemma: LemmaId, roles: &[(&str, usize)], faces: &[(&str, usize)], recipe: Option<Recipe>) {
        self.add_region(lemma, roles, faces, &[], recipe);
    }

    fn add_region(
        &mut self,
        lemma: LemmaId,
        roles: &[(&str, usize)],
        faces: &[(&str, usize)],
        region: &[usize],
        recipe: Option<Recipe>,
    ) {
        let g = self.ctx.g;
        let mut face_roles: Vec<(String, usize)> = faces.iter().map(|&(r, f)| (r.to_string(), f)).collect();
        let members: BTreeSet<usize> = roles.iter().map(|&(_, v)| v).collect();
        let mut along = BTreeSet::new();
        for &a in &members {
            for &b in g.graph().neighbors(a) {
                if members.contains(&b) {
                    if let Some(f) = g.face_of_dart(a, b) {
                        along.insert(f);
                    }
                }
            }
        }
        for f in along {
            if !face_roles.iter().any(|&(_, x)| x == f) {
                face_roles.push(("edge-face".to_string(), f));
            }
        }
        let m = ConfigurationMatch {
            lemma,
            vertices: roles.iter().map(|&(r, v)| (r.to_string(), v)).collect(),
            faces: face_roles,
            region: region.to_vec(),
            recipe,
        };
        if self.seen.insert(m.key()) {
            self.list.push(m);
        }
    }
}

/// Every configuration match in `g` with outer face `c0`.
pub fn scan(g: &PlaneGraph, c0: usize) -> Vec<ConfigurationMatch> {
    let ctx = Ctx::new(g, c0);
    let mut out = Out { ctx: &ctx, seen: HashSet::new(), list: Vec::new() };
    low_degree(&mut out);
    triangle_faces(&mut out);
    separating(&mut out);
    boundary_chords(&mut out);
    square_faces(&mut out);
    three_paths(&mut out);
    triangle_neighborhoods(&mut out);
    for v in 0..g.vertex_count() {
        if !ctx.inner(v) {
            continue;
        }
        match ctx.d(v) {
            4 => {
                four_vertex(&mut out, v);
                if ctx.tax.is_poor(v) {
                    poor_four(&mut out, v);
                }
            }
            5 => {
                triangle_square_5(&mut out, v);
                if ctx.tax.is_poor(v) {
                    poor_five(&mut out, v);
                }
            }
            _ => {}
        }
    }
    bare_boundary(&mut out);
    let mut list = out.list;
    list.sort_by(|a, b| a.lemma.cmp(&b.lemma).then_with(|| a.key().cmp(&b.key())));
    list
}

/// Matches from `matches` covering `e`.
pub fn explain_with(matches: &[ConfigurationMatch], e: Element) -> Vec<ConfigurationMatch> {
    matches.iter().filter(|m| m.covers(e)).cloned().collect()
}

/// Scan matches whose elements include `e`; an empty list for a negatively
/// charged element means no configuration accounts for it.
pub fn explain_negative_charge(g: &PlaneGraph, c0: usize, e: Element) -> Vec<ConfigurationMatch> {
    explain_with(&scan(g, c0), e)
}

fn low_degree(out: &mut Out) {
    let ctx = out.ctx;
    for v in 0..ctx.g.vertex_count() {
        if ctx.inner(v) && ctx.d(v) <= 2 {
            let faces: Vec<(&str, usize)> = ctx.g.faces_at(v).into_iter().map(|f| ("f", f)).collect();
            out.add(LemmaId::LowDegree, &[("v", v)], &faces, Some(Recipe::new(&[v], &[], &[])));
        }
    }
}

fn triangle_faces(out: &mut Out) {
    let ctx = out.ctx;
    let g = ctx.g;
    for v in 0..g.vertex_count() {
        let tri: Vec<usize> = g.faces_at(v).into_iter().filter(|&f| g.face(f).degree() == 3).collect();
        if tri.len() >= 2 {
            let faces: Vec<(&str, usize)> = tri.iter().map(|&f| ("f", f)).collect();
            out.add(LemmaId::TwoTriangleFaces, &[("v", v)], &faces, None);
        }
    }
    for (a, b) in g.graph().edges() {
        let (Some(f), Some(h)) = (g.face_of_dart(a, b), g.face_of_dart(b, a)) else { continue };
        let (df, dh) = (g.face(f).degree(), g.face(h).degree());
        if (df, dh) == (3, 4) || (df, dh) == (4, 3) {
            out.add(LemmaId::TriangleSquareEdge, &[("a", a), ("b", b)], &[("f", f), ("h", h)], None);
        }
    }
}

fn separating(out: &mut Out) {
    let ctx = out.ctx;
    let mut g = ctx.g.clone();
    g.set_outer_face(Some(ctx.c0));
    let mut fours = Vec::new();
    for c in find_cycles_up_to(ctx.gr, 7) {
        if !matches!(c.len(), 3 | 4 | 7) {
            continue;
        }
        let Ok(r) = g.classify_cycle(&c) else { continue };
        if !r.separating {
            continue;
        }
        if c.len() == 4 {
            fours.push(r);
            continue;
        }
        let inside: BTreeSet<usize> = r.interior.iter().copied().collect();
        push_cycle(out, LemmaId::SeparatingCycle, &c, &inside, Some(Recipe::new(&r.interior, &[], &[])));
    }
    let unique = fours.len() == 1;
    for r in &fours {
        let pendant = match r.exterior.as_slice() {
            [b, c] => {
                ctx.gr.has_edge(*b, *c) && r.cycle.iter().any(|&v| ctx.gr.has_edge(v, *b) && ctx.gr.has_edge(v, *c))
            }
            _ => false,
        };
        if !(pendant && unique) {
            let inside: BTreeSet<usize> = r.interior.iter().copied().collect();
            push_cycle(out, LemmaId::SeparatingFourCycle, &r.cycle, &inside, None);
        }
    }
}

fn push_cycle(out: &mut Out, lemma: LemmaId, cycle: &[usize], inside: &BTreeSet<usize>, recipe: Option<Recipe>) {
    let g = out.ctx.g;
    let labels: Vec<String> = (0..cycle.len()).map(|i| format!("c{i}")).collect();
    let roles: Vec<(&str, usize)> = labels.iter().map(String::as_str).zip(cycle.iter().copied()).collect();
    let faces: Vec<(&str, usize)> =
        g.faces().iter().filter(|f| f.walk.iter().any(|v| inside.contains(v))).map(|f| ("inside", f.id)).collect();
    let region: Vec<usize> = inside.iter().copied().collect();
    out.add_region(lemma, &roles, &faces, &region, recipe);
}

fn boundary_chords(out: &mut Out) {
    let ctx = out.ctx;
    let walk = ctx.g.face(ctx.c0).walk.clone();
    let k = walk.len();
    for i in 0..k {
        for j in i + 2..k {
            if i == 0 && j == k - 1 {
                continue;
            }
            let (x, y) = (walk[i], walk[j]);
            if ctx.gr.has_edge(x, y) {
                out.add(LemmaId::BoundaryChord, &[("x", x), ("y", y)], &[], None);
            }
            for &z in ctx.gr.neighbors(x) {
                if ctx.inner(z) && ctx.gr.has_edge(z, y) {
                    out.add(LemmaId::BoundaryChord, &[("x", x), ("y", y), ("z", z)], &[], None);
                }
            }
        }
    }
}

fn square_faces(out: &mut Out) {
    let ctx = out.ctx;
    for f in ctx.g.faces() {
        if f.degree() != 4 || !f.is_simple() || f.id == ctx.c0 {
            continue;
        }
        let w = &f.walk;
        let info = ctx.tax.face(f.id);
        if info.contacts == 1 {
            let p = (0..4).find(|&p| ctx.on_c0[w[p]]).unwrap_or(0);
            let (u, v, x, y) = (w[p], w[(p + 1) % 4], w[(p + 2) % 4], w[(p + 3) % 4]);
            if !(ctx.tri[u] && ctx.tri[x]) {
                out.add(
                    LemmaId::SquareBoundaryContact,
                    &[("u", u), ("v", v), ("w", x), ("x", y)],
                    &[("f", f.id)],
                    Some(Recipe::new(&[], &[&[u, x]], &[v, y])),
                );
            }
        }
        if ctx.f4(f.id) {
            for p in 0..2 {
                let (u, v, x, y) = (w[p], w[p + 1], w[p + 2], w[(p + 3) % 4]);
                if ctx.d(u) == 3 && ctx.d(x) == 3 && !(ctx.tri[v] && ctx.tri[y]) {
                    out.add(
                        LemmaId::SquareOpposite3s,
                        &[("u", u), ("v", v), ("w", x), ("x", y)],
                        &[("f", f.id)],
                        Some(Recipe::new(&[u, x], &[&[v, y]], &[])),
                    );
                }
            }
        }
    }
}

fn three_paths(out: &mut Out) {
    let ctx = out.ctx;
    for v in 0..ctx.g.vertex_count() {
        if !ctx.inner(v) || ctx.d(v) != 3 {
            continue;
        }
        for &u in ctx.gr.neighbors(v) {
            if !ctx.inner(u) || ctx.d(u) != 3 {
                continue;
            }
            for &v1 in ctx.gr.neighbors(v) {
                if v1 != u && ctx.inner(v1) && ctx.d(v1) == 3 {
                    out.add(
                        LemmaId::No333Path,
                        &[("v", v), ("u", u), ("v1", v1)],
                        &[],
                        Some(Recipe::new(&[u, v], &[], &[v1])),
                    );
                }
            }
        }
    }
}

fn triangle_neighborhoods(out: &mut Out) {
    let ctx = out.ctx;
    for f in ctx.g.faces() {
        if !ctx.f3(f.id) {
            continue;
        }
        let mut w = f.walk.clone();
        w.sort_by_key(|&x| (ctx.d(x), x));
        let (a, b, c) = (w[0], w[1], w[2]);
        let degs = (ctx.d(a), ctx.d(b), ctx.d(c));
        let face = [("f", f.id)];
        if degs.0 == 3 && degs.1 == 3 {
            if degs.2 <= 4 {
                out.add(
                    LemmaId::Triangle33Low,
                    &[("u", a), ("v", b), ("w", c)],
                    &face,
                    Some(Recipe::new(&[a, b], &[], &[c])),
                );
            } else {
                for (x, y) in [(a, b), (b, a)] {
                    if let Some(p) = ctx.pendant_neighbor(x, f.id) {
                        low_neighbor(out, x, p, f.id);
                        if ctx.inner(p) && ctx.d(p) == 3 {
                            out.add(
                                LemmaId::Triangle33Pendant,
                                &[("u", x), ("v", y), ("w", c), ("u'", p)],
                                &face,
                                Some(Recipe::new(&[x, y], &[], &[p])),
                            );
                        }
                    }
                }
            }
        }
        if degs == (3, 4, 4) {
            if let Some(p) = ctx.pendant_neighbor(a, f.id) {
                low_neighbor(out, a, p, f.id);
                if ctx.inner(p) && ctx.d(p) == 3 {
                    out.add(
                        LemmaId::Triangle344Pendant,
                        &[("u", a), ("v", b), ("w", c), ("u'", p)],
                        &face,
                        Some(Recipe::new(&[a, p], &[], &[b, c])),
                    );
                }
            }
            for (v, other) in [(b, c), (c, b)] {
                let side: Vec<usize> = ctx.gr.neighbors(v).iter().copied().filter(|&x| x != a && x != other).collect();
                if side.len() == 2 && side.iter().all(|&x| ctx.inner(x) && ctx.d(x) <= 3) {
                    for &x in &side {
                        low_neighbor(out, v, x, f.id);
                    }
                }
                if side.len() == 2 && side.iter().all(|&x| ctx.inner(x) && ctx.d(x) == 3) {
                    out.add(
                        LemmaId::Triangle344Side,
                        &[("u", a), ("v", v), ("w", other), ("v1", side[0]), ("v2", side[1])],
                        &face,
                        Some(Recipe::new(&[a, v, other, side[0], side[1]], &[], &[])),
                    );
                }
            }
        }
    }
}

/// A neighbor `p` of the triangle vertex `x` that is internal with degree at
/// most 2: the triangle's degree conditions fail because of `p` itself.
fn low_neighbor(out: &mut Out, x: usize, p: usize, f: usize) {
    let ctx = out.ctx;
    if ctx.inner(p) && ctx.d(p) <= 2 {
        out.add(LemmaId::LowDegree, &[("v", p), ("via", x)], &[("f", f)], Some(Recipe::new(&[p], &[], &[])));
    }
}

fn four_vertex(out: &mut Out, v: usize) {
    let ctx = out.ctx;
    let s = ctx.spokes(v);
    if s.len() != 4 {
        return;
    }
    let at = |i: usize| s[i % 4];
    let deg4 = |i: usize| ctx.g.face(at(i).face).degree() == 4 && at(i).face != ctx.c0;
    // Triangle on v1 v v2 with a square v v3 u v4 across.
    for i in 0..4 {
        let (t, sq) = (at(i), at(i + 2));
        if !ctx.f3(t.face) || !matches_at(&ctx.tax.face(t.face).pattern, ctx.face_pos(t.face, v), &P344) {
            continue;
        }
        let (v1, v2, v3, v4) = (at(i).nb, at(i + 1).nb, at(i + 2).nb, at(i + 3).nb);
        if let Some(u) = sq.far {
            if ctx.f4(sq.face) && ctx.d(u) == 3 && !(ctx.tri[v3] && ctx.tri[v4]) {
                out.add(
                    LemmaId::TriangleSquare4,
                    &[("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4), ("u", u)],
                    &[("f1", t.face), ("f2", sq.face)],
                    Some(Recipe::new(&[v, v1, v2, u], &[&[v3, v4]], &[])),
                );
            }
        }
    }
    let shared_squares = (0..4).any(|i| deg4(i) && deg4(i + 1));
    if shared_squares {
        for i in 0..2 {
            let (a, b) = (at(i).nb, at(i + 2).nb);
            for t in [1, 2, 3, 5] {
                if let Some(path) = path_of_length(ctx.gr, a, b, t, v) {
                    let labels: Vec<String> = (0..path.len()).map(|k| format!("p{k}")).collect();
                    let mut roles: Vec<(&str, usize)> = vec![("v", v)];
                    roles.extend(labels.iter().map(String::as_str).zip(path.iter().copied()));
                    out.add(LemmaId::TPath, &roles, &[], None);
                }
            }
        }
    }
    let sq = |i: usize| ctx.f4(at(i).face) && at(i).far.is_some();
    let far = |i: usize| at(i).far.unwrap_or(usize::MAX);
    let nb = |i: usize| at(i).nb;
    for i in 0..4 {
        if sq(i) && sq(i + 1) {
            let trio = [nb(i), nb(i + 1), nb(i + 2)];
            let on = trio.iter().filter(|&&x| ctx.tri[x]).count();
            if on <= 1 && ctx.d(far(i)) == 3 && ctx.d(far(i + 1)) == 3 {
                out.add(
                    LemmaId::BehavedAdjacent,
                    &[
                        ("v", v),
                        ("vi", nb(i)),
                        ("vi+1", nb(i + 1)),
                        ("vi+2", nb(i + 2)),
                        ("ui", far(i)),
                        ("ui+1", far(i + 1)),
                    ],
                    &[("fi", at(i).face), ("fi+1", at(i + 1).face)],
                    Some(Recipe::new(&[], &[&trio], &[far(i), far(i + 1), v])),
                );
            }
        }
        if sq(i) && sq(i + 2) {
            let ok = ctx.behaved(nb(i), nb(i + 1)) && ctx.behaved(nb(i + 2), nb(i + 3));
            if ok && ctx.d(far(i)) == 3 && ctx.d(far(i + 2)) == 3 {
                out.add(
                    LemmaId::BehavedOpposite,
                    &[
                        ("v", v),
                        ("vi", nb(i)),
                        ("vi+1", nb(i + 1)),
                        ("vi+2", nb(i + 2)),
                        ("vi+3", nb(i + 3)),
                        ("ui", far(i)),
                        ("ui+2", far(i + 2)),
                    ],
                    &[("fi", at(i).face), ("fi+2", at(i + 2).face)],
                    Some(Recipe::new(&[], &[&[nb(i), nb(i + 1)], &[nb(i + 2), nb(i + 3)]], &[v, far(i), far(i + 2)])),
                );
            }
        }
    }
    let is3344 =
        |i: usize| sq(i) && matches_at(&ctx.tax.face(at(i).face).pattern, ctx.face_pos(at(i).face, v), &P3344PLUS);
    let hits: Vec<usize> = (0..4).filter(|&i| is3344(i)).collect();
    for (x, &i) in hits.iter().enumerate() {
        for &j in &hits[x + 1..] {
            let recipe = if (j - i) % 2 == 1 {
                // Adjacent squares; rotate so the shared spoke is i + 1.
                let i = if (i + 1) % 4 == j { i } else { j };
                let (v2, u1, u2) = (nb(i + 1), far(i), far(i + 1));
                if ctx.d(v2) == 3 && ctx.d(u1) == 3 && ctx.d(u2) == 3 {
                    Some(Recipe::new(&[v2, u1], &[], &[u2]))
                } else if ctx.d(u1) == 3 && ctx.d(u2) == 3 {
                    Some(Recipe::new(&[], &[&[nb(i), nb(i + 1), nb(i + 2)]], &[u1, u2, v]))
                } else {
                    None
                }
            } else if ctx.d(far(i)) == 3 && ctx.d(far(j)) == 3 {
                Some(Recipe::new(&[], &[&[nb(i), nb(i + 1)], &[nb(i + 2), nb(i + 3)]], &[v, far(i), far(j)]))
            } else {
                None
            };
            out.add(
                LemmaId::Double3344,
                &[("v", v), ("ui", far(i)), ("uj", far(j))],
                &[("fi", at(i).face), ("fj", at(j).face)],
                recipe,
            );
        }
    }
    if shared_squares && ctx.behaved(nb(0), nb(2)) && ctx.behaved(nb(1), nb(3)) {
        for &i in &hits {
            let (a, b, u) = (nb(i), nb(i + 1), far(i));
            let recipe = if ctx.d(a) == 3 && ctx.d(u) == 3 {
                Some(Recipe::new(&[v], &[&[nb(i + 1), nb(i + 3)]], &[u, a]))
            } else if ctx.d(b) == 3 && ctx.d(u) == 3 {
                Some(Recipe::new(&[v], &[&[nb(i), nb(i + 2)]], &[u, b]))
            } else {
                None
            };
            out.add(LemmaId::Behaved3344, &[("v", v), ("v1", a), ("v2", b), ("u1", u)], &[("f1", at(i).face)], recipe);
        }
    }
}

/// A simple path with exactly `t` edges from `a` to `b` that avoids `avoid`.
pub fn path_of_length(g: &Graph, a: usize, b: usize, t: usize, avoid: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, path: &mut Vec<usize>, b: usize, t: usize, avoid: usize) -> bool {
        let last = *path.last().unwrap_or(&b);
        if path.len() == t + 1 {
            return last == b;
        }
        for &w in g.neighbors(last) {
            if w == avoid || path.contains(&w) || (w == b && path.len() < t) {
                continue;
            }
            path.push(w);
            if go(g, path, b, t, avoid) {
                return true;
            }
            path.pop();
        }
        false
    }
    if a == avoid || b == avoid || a == b {
        return None;
    }
    let mut path = vec![a];
    go(g, &mut path, b, t, avoid).then_some(path)
}

fn triangle_square_5(out: &mut Out, v: usize) {
    let ctx = out.ctx;
    let s = ctx.spokes(v);
    if s.len() != 5 {
        return;
    }
    let at = |i: usize| s[i % 5];
    for i in 0..5 {
        let t = at(i);
        if !ctx.f3(t.face) || !matches_at(&ctx.tax.face(t.face).pattern, ctx.face_pos(t.face, v), &P34MINUS5) {
            continue;
        }
        let (f2, f3) = (at(i + 2), at(i + 3));
        let (Some(u), Some(w)) = (f2.far, f3.far) else { continue };
        if !ctx.f4(f2.face) || !ctx.f4(f3.face) || ctx.d(u) != 3 || ctx.d(w) != 3 {
            continue;
        }
        let (v1, v2, v3, v4, v5) = (at(i).nb, at(i + 1).nb, at(i + 2).nb, at(i + 3).nb, at(i + 4).nb);
        let on = [v3, v4, v5].iter().filter(|&&x| ctx.tri[x]).count();
        if on <= 1 {
            out.add(
                LemmaId::TriangleSquare5,
                &[("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4), ("v5", v5), ("u", u), ("w", w)],
                &[("f1", t.face), ("f2", f2.face), ("f3", f3.face)],
                Some(Recipe::new(&[v, u, w], &[&[v3, v4, v5]], &[v1, v2])),
            );
        }
    }
}

fn all_squares(ctx: &Ctx, s: &[Spoke]) -> bool {
    s.iter().all(|x| ctx.f4(x.face) && x.far.is_some())
}

fn poor_four(out: &mut Out, v: usize) {
    let ctx = out.ctx;
    let s = ctx.spokes(v);
    if s.len() != 4 || !all_squares(ctx, &s) {
        return;
    }
    let faces: Vec<(&str, usize)> = s.iter().map(|x| ("f", x.face)).collect();
    for r in 0..4 {
        let nb = |i: usize| s[(r + i - 1) % 4].nb;
        let u = |i: usize| s[(r + i - 1) % 4].far.unwrap_or(usize::MAX);
        let (v1, v2, v3, v4) = (nb(1), nb(2), nb(3), nb(4));
        let (u1, u2, u3, u4) = (u(1), u(2), u(3), u(4));
        if !ctx.behaved(v1, v3) || !ctx.deg3_or_behaved4(v2, Some(u1), Some(u2)) {
            continue;
        }
        if !ctx.deg3_or_behaved4(v4, Some(u3), Some(u4)) {
            continue;
        }
        let recipe = match (ctx.d(v2), ctx.d(v4)) {
            (3, 3) => Recipe::new(&[v], &[&[v1, v3]], &[v2, v4]),
            (3, _) => Recipe::new(&[v, v4], &[&[v1, v3], &[u3, u4]], &[v2]),
            (_, 3) => Recipe::new(&[v, v2], &[&[v1, v3], &[u1, u2]], &[v4]),
            _ => Recipe::new(&[v, v2, v4], &[&[u1, u2], &[v1, v3], &[u3, u4]], &[]),
        };
        out.add(
            LemmaId::PoorFour,
            &[("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4), ("u1", u1), ("u2", u2), ("u3", u3), ("u4", u4)],
            &faces,
            Some(recipe),
        );
    }
}

fn poor_five(out: &mut Out, v: usize) {
    let ctx = out.ctx;
    let s = ctx.spokes(v);
    if s.len() != 5 || !all_squares(ctx, &s) {
        return;
    }
    if s.iter().filter(|x| ctx.tri[x.nb]).count() > 1 {
        return;
    }
    let faces: Vec<(&str, usize)> = s.iter().map(|x| ("f", x.face)).collect();
    let nb = |i: usize| s[i % 5].nb;
    let u = |i: usize| s[i % 5].far.unwrap_or(usize::MAX);
    let roles = |extra: &[(&'static str, usize)]| {
        let mut r: Vec<(&str, usize)> = vec![("v", v)];
        r.extend(extra.iter().copied());
        r
    };
    for i in 0..5 {
        if ctx.d(u(i)) != 3 || ctx.d(nb(i)) != 3 {
            continue;
        }
        for j in 0..5 {
            if j == i || ctx.d(u(j)) != 3 {
                continue;
            }
            let recipe = if j == (i + 4) % 5 {
                Recipe::new(&[nb(i), u(i)], &[], &[u(j)])
            } else {
                Recipe::new(&[v], &[&[nb(j), nb(j + 1), nb(j + 3)]], &[u(j), u(i), nb(i)])
            };
            out.add(LemmaId::PoorFivePair, &roles(&[("vi", nb(i)), ("ui", u(i)), ("uj", u(j))]), &faces, Some(recipe));
        }
    }
    let low: Vec<bool> = (0..5).map(|i| ctx.d(u(i)) == 3).collect();
    if low.iter().filter(|&&b| b).count() >= 3 {
        for i in 0..5 {
            let has = |k: usize| low[(i + k) % 5];
            let recipe = if has(0) && has(1) && has(2) {
                Recipe::new(&[], &[&[nb(i), nb(i + 1), nb(i + 2), nb(i + 3)]], &[u(i), u(i + 1), u(i + 2), v])
            } else if has(0) && has(1) && has(3) {
                Recipe::new(
                    &[],
                    &[&[nb(i), nb(i + 1), nb(i + 2)], &[nb(i + 3), nb(i + 4)]],
                    &[u(i), u(i + 1), u(i + 3), v],
                )
            } else {
                continue;
            };
            let lows: Vec<(&'static str, usize)> = [("u1", 0), ("u2", 1), ("u3", 2), ("u4", 3), ("u5", 4)]
                .iter()
                .filter(|&&(_, k)| has(k))
                .map(|&(r, k)| (r, u(i + k)))
                .collect();
            out.add(LemmaId::PoorFiveThree, &roles(&lows), &faces, Some(recipe));
        }
    }
    for i in 0..5 {
        if ctx.d(u(i)) != 3 {
            continue;
        }
        for (j, k) in [(i + 4, i + 2), (i + 2, i + 4)] {
            let cond = |x: usize| ctx.deg3_or_behaved4(nb(x), Some(u(x + 4)), Some(u(x)));
            if !cond(j) || !cond(k) {
                continue;
            }
            let mut delete = vec![v, u(i)];
            let mut identify: Vec<Vec<usize>> = vec![vec![nb(i), nb(i + 1), nb(i + 3)]];
            let mut recolor = Vec::new();
            for x in [j, k] {
                if ctx.d(nb(x)) == 4 {
                    delete.push(nb(x));
                    identify.push(vec![u(x + 4), u(x)]);
                } else {
                    recolor.push(nb(x));
                }
            }
            let parts: Vec<&[usize]> = identify.iter().map(Vec::as_slice).collect();
            out.add(
                LemmaId::PoorFiveBehaved,
                &roles(&[("ui", u(i)), ("vi", nb(i)), ("vi+1", nb(i + 1)), ("vj", nb(j)), ("vk", nb(k))]),
                &faces,
                Some(Recipe::new(&delete, &parts, &recolor)),
            );
        }
    }
}

fn bare_boundary(out: &mut Out) {
    let ctx = out.ctx;
    let walk = &ctx.g.face(ctx.c0).walk;
    if ctx.g.vertex_count() == walk.len() && ctx.g.edge_count() == walk.len() {
        let labels: Vec<String> = (0..walk.len()).map(|i| format!("c{i}")).collect();
        let roles: Vec<(&str, usize)> = labels.iter().map(String::as_str).zip(walk.iter().copied()).collect();
        let faces: Vec<(&str, usize)> = ctx.g.faces().iter().map(|f| ("f", f.id)).collect();
        out.add(LemmaId::BareBoundary, &roles, &faces, None);
    }
}

/// Reduced graph and the old-to-new vertex map (`None` for deleted).
#[derive(Debug, Clone)]
pub struct Reduced {
    pub graph: Graph,
    pub map: Vec<Option<usize>>,
}

pub fn reduce(g: &Graph, recipe: &Recipe) -> Result<Reduced, GraphError> {
    let (del, m1) = g.delete_vertices(&recipe.delete);
    let parts: Vec<Vec<usize>> =
        recipe.identify.iter().map(|p| p.iter().filter_map(|&x| m1.get(x).copied().flatten()).collect()).collect();
    let id = del.identify(&parts)?;
    let map = m1.iter().map(|x| x.map(|y| id.map[y])).collect();
    Ok(Reduced { graph: id.graph, map })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub lemma: LemmaId,
    pub pass: bool,
    pub boundary_colorings: usize,
    pub extended: usize,
    /// Boundary colorings for which the reduced graph itself failed.
    pub reduced_unsat: usize,
    /// Boundary colorings whose lifted pins already violated a cap.
    pub lift_invalid: usize,
    pub sigma_before: usize,
    pub sigma_after: usize,
    pub sigma_descends: bool,
    pub reduced_class: ClassReport,
    pub class_claim: bool,
    pub class_matches_claim: bool,
    pub stats: SearchStats,
}

/// Checks the match's reduction on `g` for every boundary coloring of `c0`.
pub fn verify_reduction(g: &PlaneGraph, c0: usize, m: &ConfigurationMatch, caps: Caps) -> Result<Verdict, ConfigError> {
    let recipe = m.recipe.as_ref().ok_or(ConfigError::NoRecipe)?;
    if recipe.delete.is_empty() && recipe.identify.iter().all(|p| p.len() < 2) {
        return Err(ConfigError::IdentityRecipe);
    }
    let gr = g.graph();
    let cycle = g.face(c0).walk.clone();
    let red = reduce(gr, recipe)?;
    let cycle2: Vec<usize> =
        cycle.iter().map(|&v| red.map[v]).collect::<Option<_>>().ok_or(ConfigError::BoundaryDisturbed)?;
    if cycle2.iter().collect::<BTreeSet<_>>().len() != cycle.len() {
        return Err(ConfigError::BoundaryDisturbed);
    }
    let n = gr.vertex_count();
    let n2 = red.graph.vertex_count();
    let mut anchor = vec![false; n];
    let mut anchor2 = vec![false; n2];
    for (&a, &b) in cycle.iter().zip(&cycle2) {
        anchor[a] = true;
        anchor2[b] = true;
    }
    let frontier = frontier_of(gr, &cycle);
    let frontier2 = frontier_of(&red.graph, &cycle2);
    let free: BTreeSet<usize> = recipe.recolor.iter().copied().collect();
    let boundaries = enumerate_boundary_colorings(gr, &cycle, caps)?;
    let mut stats = SearchStats::default();
    let (mut extended, mut reduced_unsat, mut lift_invalid) = (0, 0, 0);
    for b in &boundaries {
        let pins2: Vec<(usize, u8)> = cycle2.iter().copied().zip(b.iter().copied()).collect();
        let sol2 = match solve_anchored(&red.graph, caps, &Coloring::from_pairs(n2, &pins2), &frontier2, &anchor2) {
            Ok(s) => s,
            Err(ColoringError::PinnedInvalid(_)) => {
                reduced_unsat += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        add_stats(&mut stats, sol2.stats());
        let Some(col2) = sol2.coloring() else {
            reduced_unsat += 1;
            continue;
        };
        let mut pins = Coloring::uncolored(n);
        for (x, &slot) in red.map.iter().enumerate() {
            if let Some(y) = slot {
                if !free.contains(&x) || anchor[x] {
                    if let Some(c) = col2.get(y) {
                        pins.set(x, c);
                    }
                }
            }
        }
        match solve_anchored(gr, caps, &pins, &frontier, &anchor) {
            Ok(sol) => {
                add_stats(&mut stats, sol.stats());
                if sol.coloring().is_some() {
                    extended += 1;
                }
            }
            Err(ColoringError::PinnedInvalid(_)) => lift_invalid += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let sigma_before = gr.sigma();
    let sigma_after = red.graph.sigma();
    let reduced_class = in_class_abstract(&red.graph);
    let class_matches_claim = !recipe.claims_in_class || reduced_class.in_class;
    Ok(Verdict {
        lemma: m.lemma,
        pass: extended == boundaries.len(),
        boundary_colorings: boundaries.len(),
        extended,
        reduced_unsat,
        lift_invalid,
        sigma_before,
        sigma_after,
        sigma_descends: sigma_after < sigma_before,
        reduced_class,
        class_claim: recipe.claims_in_class,
        class_matches_claim,
        stats,
    })
}

fn add_stats(acc: &mut SearchStats, s: SearchStats) {
    acc.nodes += s.nodes;
    acc.max_depth = acc.max_depth.max(s.max_depth);
}
