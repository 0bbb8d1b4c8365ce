//! Exact-rational discharging over a plane graph with a designated outer
//! face `C0`.
//!
//! Initial charges are `2d(v) - 6` for vertices, `d(f) - 6` for faces other
//! than `C0`, and `d(C0) + 6` for `C0`; by Euler's formula they sum to zero.
//! [`apply_rules`] moves charge along itemized, rule-tagged transfers in two
//! phases: every donor except poor 4-vertices first, then poor 4-vertices,
//! whose gifts depend on what each face already received.
//!
//! Face classes count how many vertices of a face lie on `C0`: internal
//! (none), one contact, two contacts. A 4- or 5-vertex off `C0` is *poor*
//! when all of its incident faces are internal 4-faces, and *rich* otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::graph_class::on_triangle;
use crate::plane_graph::PlaneGraph;

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` rendering used in reports, including for integers.
pub fn fmt_q(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DischargeError {
    #[error("outer face {0} does not exist")]
    NoSuchFace(usize),
    #[error("outer face has length {0}; expected 3 or 7")]
    BadOuterLength(usize),
    #[error("outer face boundary is not a cycle")]
    OuterNotCycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    RichFour,
    PoorFour,
    RichFive,
    PoorFive,
    Big,
    Boundary,
    Outer,
}

impl Rule {
    pub fn tag(self) -> &'static str {
        match self {
            Rule::RichFour => "rich-4",
            Rule::PoorFour => "poor-4",
            Rule::RichFive => "rich-5",
            Rule::PoorFive => "poor-5",
            Rule::Big => "big",
            Rule::Boundary => "boundary",
            Rule::Outer => "outer",
        }
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

fn ser_q<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

fn ser_charges<S: Serializer>(m: &BTreeMap<Element, Rational>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&k.to_string(), &fmt_q(v))?;
    }
    map.end()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub from: Element,
    pub to: Element,
    #[serde(serialize_with = "ser_q")]
    pub amount: Rational,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChargeLedger {
    pub c0: usize,
    #[serde(serialize_with = "ser_charges")]
    pub initial: BTreeMap<Element, Rational>,
    pub transfers: Vec<Transfer>,
    #[serde(rename = "final", serialize_with = "ser_charges")]
    pub final_charge: BTreeMap<Element, Rational>,
}

impl ChargeLedger {
    pub fn initial_sum(&self) -> Rational {
        self.initial.values().cloned().sum()
    }

    pub fn final_sum(&self) -> Rational {
        self.final_charge.values().cloned().sum()
    }

    pub fn outflow(&self, e: Element) -> Rational {
        self.transfers.iter().filter(|t| t.from == e).map(|t| t.amount.clone()).sum()
    }

    pub fn inflow(&self, e: Element) -> Rational {
        self.transfers.iter().filter(|t| t.to == e).map(|t| t.amount.clone()).sum()
    }

    pub fn given(&self, from: Element, to: Element) -> Rational {
        self.transfers.iter().filter(|t| t.from == from && t.to == to).map(|t| t.amount.clone()).sum()
    }

    fn recompute_final(&mut self) {
        let mut fin = self.initial.clone();
        for t in &self.transfers {
            *fin.entry(t.from).or_insert_with(Rational::zero) -= &t.amount;
            *fin.entry(t.to).or_insert_with(Rational::zero) += &t.amount;
        }
        self.final_charge = fin;
    }

    fn push(&mut self, from: Element, to: Element, amount: Rational, rule: Rule) {
        if amount.is_positive() {
            self.transfers.push(Transfer { from, to, amount, rule });
        }
    }
}

/// Initial charges with `outer` as `C0`, for any face; the identity holds for
/// every face choice.
pub fn initial_charges_for(g: &PlaneGraph, outer: usize) -> Result<ChargeLedger, DischargeError> {
    if outer >= g.faces().len() {
        return Err(DischargeError::NoSuchFace(outer));
    }
    let mut initial = BTreeMap::new();
    for v in 0..g.vertex_count() {
        initial.insert(Element::Vertex(v), q(2 * g.degree(v) as i64 - 6, 1));
    }
    for f in g.faces() {
        let d = f.degree() as i64;
        let mu = if f.id == outer { d + 6 } else { d - 6 };
        initial.insert(Element::Face(f.id), q(mu, 1));
    }
    let final_charge = initial.clone();
    Ok(ChargeLedger { c0: outer, initial, transfers: Vec::new(), final_charge })
}

/// Initial charges for a `C0` that is a 3- or 7-cycle face.
pub fn initial_charges(g: &PlaneGraph, c0: usize) -> Result<ChargeLedger, DischargeError> {
    check_outer(g, c0)?;
    initial_charges_for(g, c0)
}

fn check_outer(g: &PlaneGraph, c0: usize) -> Result<(), DischargeError> {
    let f = g.faces().get(c0).ok_or(DischargeError::NoSuchFace(c0))?;
    if !matches!(f.degree(), 3 | 7) {
        return Err(DischargeError::BadOuterLength(f.degree()));
    }
    if !f.is_simple() {
        return Err(DischargeError::OuterNotCycle);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FaceClass {
    Outer,
    Internal,
    OneContact,
    TwoContact,
    ManyContacts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceInfo {
    pub id: usize,
    pub degree: usize,
    pub contacts: usize,
    pub class: FaceClass,
    /// Vertex degrees along the boundary walk.
    pub pattern: Vec<usize>,
    pub special: bool,
    pub weak: bool,
    pub rich: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    pub id: usize,
    pub degree: usize,
    pub on_c0: bool,
    pub on_triangle: bool,
    pub poor: bool,
    pub rich: bool,
    pub faces: Vec<usize>,
    pub pendant_faces: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceTaxonomy {
    pub c0: usize,
    pub faces: Vec<FaceInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexTaxonomy {
    pub c0_vertices: Vec<usize>,
    pub vertices: Vec<VertexInfo>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Taxonomy {
    pub faces: FaceTaxonomy,
    pub vertices: VertexTaxonomy,
}

impl Taxonomy {
    pub fn c0(&self) -> usize {
        self.faces.c0
    }

    pub fn face(&self, f: usize) -> &FaceInfo {
        &self.faces.faces[f]
    }

    pub fn vertex(&self, v: usize) -> &VertexInfo {
        &self.vertices.vertices[v]
    }

    /// Internal 3-face.
    pub fn is_f3(&self, f: usize) -> bool {
        let i = self.face(f);
        i.degree == 3 && i.class == FaceClass::Internal
    }

    /// Internal 4-face.
    pub fn is_f4(&self, f: usize) -> bool {
        let i = self.face(f);
        i.degree == 4 && i.class == FaceClass::Internal
    }

    pub fn is_poor(&self, v: usize) -> bool {
        self.vertex(v).poor
    }
}

/// Degree label in a face pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deg {
    Is(usize),
    AtLeast(usize),
    AtMost(usize),
}

impl Deg {
    pub fn accepts(self, d: usize) -> bool {
        match self {
            Deg::Is(k) => d == k,
            Deg::AtLeast(k) => d >= k,
            Deg::AtMost(k) => d <= k,
        }
    }
}

const fn is(k: usize) -> Deg {
    Deg::Is(k)
}

/// Alignments of `pattern` onto the cyclic sequence `degs` (rotation or
/// reflection) under which every label accepts; each alignment is the list of
/// walk positions for pattern indices `0..k`.
pub fn alignments(degs: &[usize], pattern: &[Deg]) -> Vec<Vec<usize>> {
    let k = degs.len();
    let mut out = Vec::new();
    if k != pattern.len() || k == 0 {
        return out;
    }
    for start in 0..k {
        for dir in [1usize, k - 1] {
            let pos: Vec<usize> = (0..k).map(|i| (start + dir * i) % k).collect();
            if pattern.iter().zip(&pos).all(|(lab, &p)| lab.accepts(degs[p])) && !out.contains(&pos) {
                out.push(pos);
            }
        }
    }
    out
}

/// True when the face pattern matches with walk position `at` (the donor)
/// placed on some index; every label, the donor's included, must accept.
pub fn matches_at(degs: &[usize], at: usize, pattern: &[Deg]) -> bool {
    alignments(degs, pattern).iter().any(|pos| pos.contains(&at))
}

pub fn matches(degs: &[usize], pattern: &[Deg]) -> bool {
    !alignments(degs, pattern).is_empty()
}

pub const P3445: [Deg; 4] = [is(3), is(4), is(4), is(5)];
pub const P3455: [Deg; 4] = [is(3), is(4), is(5), is(5)];
pub const P3545: [Deg; 4] = [is(3), is(5), is(4), is(5)];
pub const P3555: [Deg; 4] = [is(3), is(5), is(5), is(5)];
pub const P4445: [Deg; 4] = [is(4), is(4), is(4), is(5)];
pub const P4455: [Deg; 4] = [is(4), is(4), is(5), is(5)];
pub const P3454: [Deg; 4] = [is(3), is(4), is(5), is(4)];
pub const P3354PLUS: [Deg; 4] = [is(3), is(3), is(5), Deg::AtLeast(4)];
pub const P3344PLUS: [Deg; 4] = [is(3), is(3), is(4), Deg::AtLeast(4)];
pub const P344: [Deg; 3] = [is(3), is(4), is(4)];
pub const P34MINUS5: [Deg; 3] = [is(3), Deg::AtMost(4), is(5)];

/// Computes face classes, special/weak/rich flags, poor/rich vertices,
/// triangle incidence and pendant 3-faces.
pub fn classify(g: &PlaneGraph, c0: usize) -> Result<Taxonomy, DischargeError> {
    check_outer(g, c0)?;
    Ok(classify_unchecked(g, c0))
}

pub(crate) fn classify_unchecked(g: &PlaneGraph, c0: usize) -> Taxonomy {
    let gr = g.graph();
    let n = g.vertex_count();
    let c0_set: BTreeSet<usize> = g.face(c0).vertices();
    let mut faces: Vec<FaceInfo> = g
        .faces()
        .iter()
        .map(|f| {
            let contacts = f.vertices().intersection(&c0_set).count();
            let class = if f.id == c0 {
                FaceClass::Outer
            } else {
                match contacts {
                    0 => FaceClass::Internal,
                    1 => FaceClass::OneContact,
                    2 => FaceClass::TwoContact,
                    _ => FaceClass::ManyContacts,
                }
            };
            FaceInfo {
                id: f.id,
                degree: f.degree(),
                contacts,
                class,
                pattern: f.walk.iter().map(|&v| g.degree(v)).collect(),
                special: false,
                weak: false,
                rich: false,
            }
        })
        .collect();
    let mut vertices: Vec<VertexInfo> = (0..n)
        .map(|v| VertexInfo {
            id: v,
            degree: g.degree(v),
            on_c0: c0_set.contains(&v),
            on_triangle: on_triangle(gr, v),
            poor: false,
            rich: false,
            faces: g.faces_at(v),
            pendant_faces: Vec::new(),
        })
        .collect();
    for info in vertices.iter_mut() {
        let k = info.degree;
        if info.on_c0 || !(k == 4 || k == 5) {
            continue;
        }
        let square =
            info.faces.iter().filter(|&&f| faces[f].degree == 4 && faces[f].class == FaceClass::Internal).count();
        info.poor = square == k;
        info.rich = !info.poor;
    }
    for (v, info) in vertices.iter_mut().enumerate() {
        let mut pend = Vec::new();
        for &u in gr.neighbors(v) {
            if g.degree(u) != 3 {
                continue;
            }
            for f in g.faces_at(u) {
                if f != c0 && faces[f].degree == 3 && !g.face(f).walk.contains(&v) && !pend.contains(&f) {
                    pend.push(f);
                }
            }
        }
        pend.sort_unstable();
        info.pendant_faces = pend;
    }
    for f in g.faces() {
        let info = &faces[f.id];
        if info.degree != 4 || info.class != FaceClass::Internal {
            continue;
        }
        let degs = info.pattern.clone();
        let walk = &f.walk;
        let poor = |v: usize| vertices[v].poor;
        let tri = |v: usize| vertices[v].on_triangle;
        let mut special = false;
        let mut weak = false;
        if matches(&degs, &P3445) {
            let on = walk.iter().filter(|&&v| g.degree(v) == 4 && tri(v)).count();
            special = on == 0;
            weak = on == 1;
        } else if matches(&degs, &P3455) || matches(&degs, &P3545) || matches(&degs, &P3555) {
            special = walk.iter().filter(|&&v| g.degree(v) == 5).all(|&v| poor(v));
        } else if matches(&degs, &P4445) {
            let i = degs.iter().position(|&d| d == 5).unwrap_or(0);
            let (a, b) = (walk[(i + 1) % 4], walk[(i + 3) % 4]);
            special = poor(walk[i]) && poor(a) && poor(b);
        } else if matches(&degs, &P4455) {
            special = walk.iter().all(|&v| poor(v));
        }
        let strong = walk
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .filter(|&v| g.degree(v) >= 6 || (g.degree(v) == 5 && vertices[v].rich))
            .count();
        let entry = &mut faces[f.id];
        entry.special = special;
        entry.weak = weak;
        entry.rich = strong >= 2;
    }
    Taxonomy {
        faces: FaceTaxonomy { c0, faces },
        vertices: VertexTaxonomy { c0_vertices: c0_set.into_iter().collect(), vertices },
    }
}

fn position_in(g: &PlaneGraph, f: usize, v: usize) -> Option<usize> {
    g.face(f).walk.iter().position(|&x| x == v)
}

/// Runs the rules and returns the full ledger.
pub fn apply_rules(g: &PlaneGraph, tax: &Taxonomy) -> ChargeLedger {
    let c0 = tax.c0();
    let mut ledger = match initial_charges_for(g, c0) {
        Ok(l) => l,
        Err(_) => return empty_ledger(c0),
    };
    for v in 0..g.vertex_count() {
        let info = tax.vertex(v);
        if info.on_c0 {
            boundary_vertex(g, tax, v, &mut ledger);
            continue;
        }
        match info.degree {
            4 if info.rich => rich_four(g, tax, v, &mut ledger),
            5 if info.rich => rich_five(g, tax, v, &mut ledger),
            5 => poor_five(g, tax, v, &mut ledger),
            d if d >= 6 => big_vertex(g, tax, v, &mut ledger),
            _ => {}
        }
    }
    outer_face(g, tax, &mut ledger);
    let phase_one = ledger.transfers.len();
    for v in 0..g.vertex_count() {
        let info = tax.vertex(v);
        if info.on_c0 || info.degree != 4 || !info.poor {
            continue;
        }
        for &f in &info.faces {
            if !tax.is_f4(f) {
                continue;
            }
            let members: BTreeSet<usize> = g.face(f).vertices();
            let qset: BTreeSet<usize> =
                members.iter().copied().filter(|&x| g.degree(x) == 4 && tax.is_poor(x)).collect();
            let w: Rational = ledger.transfers[..phase_one]
                .iter()
                .filter(|t| t.to == Element::Face(f))
                .filter(|t| matches!(t.from, Element::Vertex(x) if !qset.contains(&x)))
                .map(|t| t.amount.clone())
                .sum();
            let share = (q(2, 1) - w) / q(qset.len() as i64, 1);
            if share.is_positive() {
                ledger.push(Element::Vertex(v), Element::Face(f), share, Rule::PoorFour);
            }
        }
    }
    ledger.recompute_final();
    ledger
}

fn empty_ledger(c0: usize) -> ChargeLedger {
    ChargeLedger { c0, initial: BTreeMap::new(), transfers: Vec::new(), final_charge: BTreeMap::new() }
}

fn pendant_internal(tax: &Taxonomy, v: usize) -> Vec<usize> {
    tax.vertex(v).pendant_faces.iter().copied().filter(|&f| tax.is_f3(f)).collect()
}

fn incident_of_degree(tax: &Taxonomy, v: usize, d: usize) -> Vec<usize> {
    tax.vertex(v).faces.iter().copied().filter(|&f| f != tax.c0() && tax.face(f).degree == d).collect()
}

fn rich_four(g: &PlaneGraph, tax: &Taxonomy, v: usize, l: &mut ChargeLedger) {
    let me = Element::Vertex(v);
    let mut spent = Rational::zero();
    let give = |l: &mut ChargeLedger, f: usize, amt: Rational, spent: &mut Rational| {
        *spent += &amt;
        l.push(me, Element::Face(f), amt, Rule::RichFour);
    };
    for f in incident_of_degree(tax, v, 3) {
        if !tax.is_f3(f) {
            continue;
        }
        let at = position_in(g, f, v).unwrap_or(0);
        let amt = if matches_at(&tax.face(f).pattern, at, &P344) { q(5, 4) } else { q(1, 1) };
        give(l, f, amt, &mut spent);
    }
    for f in pendant_internal(tax, v) {
        give(l, f, q(1, 2), &mut spent);
    }
    let mut fixed = BTreeSet::new();
    for f in incident_of_degree(tax, v, 4) {
        let at = position_in(g, f, v).unwrap_or(0);
        if tax.is_f4(f) && matches_at(&tax.face(f).pattern, at, &P3344PLUS) {
            fixed.insert(f);
            give(l, f, q(1, 1), &mut spent);
        }
    }
    let rest: Vec<usize> = incident_of_degree(tax, v, 4).into_iter().filter(|f| !fixed.contains(f)).collect();
    if tax.vertex(v).on_triangle {
        for f in rest {
            give(l, f, q(3, 4), &mut spent);
        }
    } else {
        let targets: Vec<usize> = rest.into_iter().filter(|&f| tax.is_f4(f)).collect();
        spread(l, me, &targets, q(2, 1) - spent, Rule::RichFour);
    }
}

fn rich_five(g: &PlaneGraph, tax: &Taxonomy, v: usize, l: &mut ChargeLedger) {
    let me = Element::Vertex(v);
    let mut spent = Rational::zero();
    for f in incident_of_degree(tax, v, 3) {
        if !tax.is_f3(f) {
            continue;
        }
        let at = position_in(g, f, v).unwrap_or(0);
        let amt = if matches_at(&tax.face(f).pattern, at, &P34MINUS5) { q(2, 1) } else { q(3, 2) };
        spent += &amt;
        l.push(me, Element::Face(f), amt, Rule::RichFive);
    }
    for f in pendant_internal(tax, v) {
        spent += q(1, 2);
        l.push(me, Element::Face(f), q(1, 2), Rule::RichFive);
    }
    let squares = incident_of_degree(tax, v, 4);
    if tax.vertex(v).on_triangle {
        for f in squares {
            l.push(me, Element::Face(f), q(1, 1), Rule::RichFive);
        }
    } else {
        let targets: Vec<usize> = squares.into_iter().filter(|&f| tax.is_f4(f)).collect();
        spread(l, me, &targets, q(4, 1) - spent, Rule::RichFive);
    }
}

/// Amount a poor 5-vertex gives to one incident internal 4-face.
pub fn poor_five_gift(g: &PlaneGraph, tax: &Taxonomy, v: usize, f: usize) -> Rational {
    let info = tax.face(f);
    let at = position_in(g, f, v).unwrap_or(0);
    let degs = &info.pattern;
    let full = matches_at(degs, at, &P3354PLUS)
        || matches_at(degs, at, &P3454)
        || (info.special && matches_at(degs, at, &P3445));
    if full {
        return q(1, 1);
    }
    let three_quarters = (info.special
        && [&P3455, &P3545, &P3555, &P4455, &P4445].iter().any(|p| matches_at(degs, at, &p[..])))
        || (info.weak && matches_at(degs, at, &P3445));
    if three_quarters {
        q(3, 4)
    } else if info.rich {
        Rational::zero()
    } else {
        q(1, 2)
    }
}

fn poor_five(g: &PlaneGraph, tax: &Taxonomy, v: usize, l: &mut ChargeLedger) {
    for f in incident_of_degree(tax, v, 4) {
        let amt = poor_five_gift(g, tax, v, f);
        l.push(Element::Vertex(v), Element::Face(f), amt, Rule::PoorFive);
    }
}

fn big_vertex(_g: &PlaneGraph, tax: &Taxonomy, v: usize, l: &mut ChargeLedger) {
    let me = Element::Vertex(v);
    let mut spent = Rational::zero();
    for f in incident_of_degree(tax, v, 3) {
        spent += q(2, 1);
        l.push(me, Element::Face(f), q(2, 1), Rule::Big);
    }
    for f in pendant_internal(tax, v) {
        spent += q(1, 2);
        l.push(me, Element::Face(f), q(1, 2), Rule::Big);
    }
    let targets = incident_of_degree(tax, v, 4);
    let mu = q(2 * tax.vertex(v).degree as i64 - 6, 1);
    spread(l, me, &targets, mu - spent, Rule::Big);
}

fn spread(l: &mut ChargeLedger, from: Element, targets: &[usize], remaining: Rational, rule: Rule) {
    if targets.is_empty() || !remaining.is_positive() {
        return;
    }
    let share = remaining / q(targets.len() as i64, 1);
    for &f in targets {
        l.push(from, Element::Face(f), share.clone(), rule);
    }
}

fn boundary_vertex(_g: &PlaneGraph, tax: &Taxonomy, v: usize, l: &mut ChargeLedger) {
    let me = Element::Vertex(v);
    for f in pendant_internal(tax, v) {
        l.push(me, Element::Face(f), q(1, 2), Rule::Boundary);
    }
    for &f in &tax.vertex(v).faces {
        if f == tax.c0() {
            continue;
        }
        let info = tax.face(f);
        let amt = match (info.degree, info.class) {
            (4, FaceClass::TwoContact) => q(1, 1),
            (3, FaceClass::TwoContact) | (4, FaceClass::OneContact) => q(3, 2),
            (3, FaceClass::OneContact) => q(3, 1),
            _ => continue,
        };
        l.push(me, Element::Face(f), amt, Rule::Boundary);
    }
}

fn outer_face(g: &PlaneGraph, tax: &Taxonomy, l: &mut ChargeLedger) {
    let c0 = tax.c0();
    let me = Element::Face(c0);
    let mut twos = 0;
    for &v in &tax.vertices.c0_vertices {
        let amt = match g.degree(v) {
            2 => {
                twos += 1;
                q(2, 1)
            }
            3 => q(3, 2),
            4 => q(1, 1),
            _ => continue,
        };
        l.push(me, Element::Vertex(v), amt, Rule::Outer);
    }
    if g.face(c0).degree() == 7 && twos == 6 {
        if let Some(f) = outer_donor(g, c0) {
            l.push(Element::Face(f), me, q(1, 1), Rule::Outer);
        }
    }
}

/// Face other than `C0` sharing an edge with it, largest degree first, then
/// lowest id.
pub fn outer_donor(g: &PlaneGraph, c0: usize) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (a, b) in g.face(c0).darts() {
        if let Some(f) = g.face_of_dart(b, a) {
            if f == c0 {
                continue;
            }
            let better = match best {
                None => true,
                Some(x) => {
                    let (dx, df) = (g.face(x).degree(), g.face(f).degree());
                    df > dx || (df == dx && f < x)
                }
            };
            if better {
                best = Some(f);
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeCharge {
    pub element: Element,
    #[serde(serialize_with = "ser_q")]
    pub charge: Rational,
    /// The element itself, plus adjacent vertices and incident faces for a
    /// vertex, or boundary vertices for a face.
    pub neighborhood: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolvencyFinding {
    pub vertex: usize,
    pub claim: &'static str,
    #[serde(serialize_with = "ser_q")]
    pub observed: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OuterCheck {
    pub length: usize,
    pub t2: usize,
    pub t3: usize,
    pub t4: usize,
    #[serde(serialize_with = "ser_q")]
    pub formula: Rational,
    #[serde(serialize_with = "ser_q")]
    pub gained: Rational,
    #[serde(serialize_with = "ser_q")]
    pub ledger: Rational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Audit {
    pub zero_sum: bool,
    pub negatives: Vec<NegativeCharge>,
    pub solvency: Vec<SolvencyFinding>,
    pub outer: OuterCheck,
}

/// Final-charge verdicts, derived-fact checks and the `C0` formula.
pub fn audit_final(g: &PlaneGraph, ledger: &ChargeLedger, tax: &Taxonomy) -> Audit {
    let mut negatives = Vec::new();
    for (&e, x) in &ledger.final_charge {
        if x.is_negative() {
            negatives.push(NegativeCharge { element: e, charge: x.clone(), neighborhood: neighborhood(g, e) });
        }
    }
    let mut solvency = Vec::new();
    for v in 0..g.vertex_count() {
        let info = tax.vertex(v);
        if info.on_c0 {
            continue;
        }
        let out = ledger.outflow(Element::Vertex(v));
        if info.degree == 4 && info.rich && out > q(2, 1) {
            solvency.push(SolvencyFinding { vertex: v, claim: "rich 4-vertex gives out at most 2", observed: out });
        }
        if info.degree == 5 && info.rich {
            for f in incident_of_degree(tax, v, 4) {
                let got = ledger.given(Element::Vertex(v), Element::Face(f));
                if got < q(1, 1) {
                    solvency.push(SolvencyFinding {
                        vertex: v,
                        claim: "rich 5-vertex gives at least 1 to each incident 4-face",
                        observed: got,
                    });
                }
            }
        }
    }
    Audit { zero_sum: ledger.final_sum().is_zero(), negatives, solvency, outer: outer_check(g, ledger, tax) }
}

fn outer_check(g: &PlaneGraph, ledger: &ChargeLedger, tax: &Taxonomy) -> OuterCheck {
    let c0 = tax.c0();
    let count = |k: usize| tax.vertices.c0_vertices.iter().filter(|&&v| g.degree(v) == k).count();
    let (t2, t3, t4) = (count(2), count(3), count(4));
    let d = g.face(c0).degree() as i64;
    let formula = q(d + 6, 1) - q(2 * t2 as i64, 1) - q(3 * t3 as i64, 2) - q(t4 as i64, 1);
    let gained = ledger.inflow(Element::Face(c0));
    let actual = ledger.final_charge.get(&Element::Face(c0)).cloned().unwrap_or_else(Rational::zero);
    let holds = &formula + &gained == actual;
    OuterCheck { length: d as usize, t2, t3, t4, formula, gained, ledger: actual, holds }
}

fn neighborhood(g: &PlaneGraph, e: Element) -> Vec<Element> {
    let mut out = vec![e];
    match e {
        Element::Vertex(v) => {
            out.extend(g.graph().neighbors(v).iter().map(|&w| Element::Vertex(w)));
            out.extend(g.faces_at(v).into_iter().map(Element::Face));
        }
        Element::Face(f) => out.extend(g.face(f).vertices().into_iter().map(Element::Vertex)),
    }
    out
}

/// One-call pipeline: classify, apply the rules and audit.
pub fn discharge(g: &PlaneGraph, c0: usize) -> Result<(Taxonomy, ChargeLedger, Audit), DischargeError> {
    let tax = classify(g, c0)?;
    let ledger = apply_rules(g, &tax);
    let audit = audit_final(g, &ledger, &tax);
    Ok((tax, ledger, audit))
}

/// JSON report `{initial, transfers, final, negatives}`.
pub fn ledger_json(ledger: &ChargeLedger, audit: &Audit) -> serde_json::Value {
    let mut v = serde_json::to_value(ledger).unwrap_or(serde_json::Value::Null);
    if let serde_json::Value::Object(m) = &mut v {
        m.insert("negatives".into(), serde_json::to_value(&audit.negatives).unwrap_or_default());
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wheel(k: usize) -> PlaneGraph {
        // Hub k, rim 0..k.
        let mut rot: Vec<Vec<usize>> = (0..k).map(|i| vec![(i + 1) % k, k, (i + k - 1) % k]).collect();
        rot.push((0..k).collect());
        PlaneGraph::from_rotation(rot).unwrap()
    }

    #[test]
    fn pattern_alignment() {
        assert!(matches(&[3, 4, 4, 5], &P3445));
        assert!(!matches(&[3, 4, 5, 4], &P3445));
        assert!(matches_at(&[3, 4, 5, 4], 2, &P3454));
        assert!(!matches(&[3, 4, 4, 5], &P3454));
        assert!(matches(&[5, 4, 3, 3], &P3354PLUS));
        assert!(matches(&[4, 3, 3, 6], &P3344PLUS));
        assert!(matches(&[3, 4, 5], &P34MINUS5) && matches(&[3, 3, 5], &P34MINUS5));
        assert!(!matches(&[3, 5, 5], &P34MINUS5));
        assert!(!matches(&[3, 4, 4], &P3445));
    }

    #[test]
    fn initial_charges_sum_to_zero() {
        let g = wheel(6);
        for f in 0..g.faces().len() {
            assert!(initial_charges_for(&g, f).unwrap().initial_sum().is_zero());
        }
        let tri = g.faces().iter().position(|f| f.degree() == 3).unwrap();
        let l = initial_charges(&g, tri).unwrap();
        assert_eq!(l.initial[&Element::Face(tri)], q(9, 1));
    }

    #[test]
    fn outer_length_checked() {
        let g = wheel(6);
        let rim = g.faces().iter().position(|f| f.degree() == 6).unwrap();
        assert_eq!(initial_charges(&g, rim).unwrap_err(), DischargeError::BadOuterLength(6));
    }

    #[test]
    fn rational_rendering() {
        assert_eq!(fmt_q(&q(-2, 1)), "-2/1");
        assert_eq!(fmt_q(&q(6, 8)), "3/4");
    }
}
