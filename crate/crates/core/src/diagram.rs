//! Geometric diagrams of slim rectangular lattices with exact rational
//! coordinates: natural diagrams, edge slope classes, and the C₁ / C₂
//! conditions.
//!
//! A natural diagram places `x` by walking `u` steps in the 135° direction
//! and `v` steps in the 45° direction from the bottom, where
//! `(u, v) = (height(x ∧ c_l), height(x ∧ c_r))`. Internally many checks use
//! the rotated frame `ℓ = (y − x) / 2`, `r = (y + x) / 2`, in which both
//! normal directions are axis-aligned.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::fork::{insert_fork, Cell4, ForkError, ForkScript, ForkTrace};
use crate::lattice::{ElementId, LeveledLattice};
use crate::rect::{corners, grid, NotRectangular, RectFrame};
use crate::report::{Check, VerificationReport};
use crate::sublattice::{find_s7, S7Kind};

/// Exact rational coordinate.
pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    /// From rotated-frame coordinates `(ℓ, r)`.
    fn from_lr(l: Q, r: Q) -> Self {
        Point { x: r - l, y: l + r }
    }

    fn lr(&self) -> (Q, Q) {
        let two = Q::from_integer(2);
        ((self.y - self.x) / two, (self.y + self.x) / two)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    /// Indexed by element id.
    pub coords: Vec<Point>,
    /// Cover pairs `(lower, upper)`.
    pub edges: Vec<(ElementId, ElementId)>,
    /// Step lengths along `[0, c_l]`, bottom first.
    pub left_units: Vec<Q>,
    /// Step lengths along `[0, c_r]`, bottom first.
    pub right_units: Vec<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    NotRectangular(NotRectangular),
    NonPositiveUnit,
    UnitCount { expected: (usize, usize), got: (usize, usize) },
    ZeroLengthEdge(ElementId, ElementId),
    /// Projections onto the normal axes decrease along this edge.
    Malformed(ElementId, ElementId),
    /// No position for the new elements fits inside every subdivided edge.
    NoRoomForFork(Cell4),
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::NotRectangular(e) => write!(f, "{e}"),
            DiagramError::NonPositiveUnit => f.write_str("unit lengths must be positive"),
            DiagramError::UnitCount { expected, got } => {
                write!(f, "expected {}+{} unit lengths, got {}+{}", expected.0, expected.1, got.0, got.1)
            }
            DiagramError::ZeroLengthEdge(a, b) => write!(f, "edge ({a}, {b}) has zero length"),
            DiagramError::Malformed(a, b) => write!(f, "edge ({a}, {b}) is not monotone on the normal axes"),
            DiagramError::NoRoomForFork(c) => write!(f, "cannot place a fork in cell {:?}", c.elements()),
        }
    }
}

impl From<NotRectangular> for DiagramError {
    fn from(e: NotRectangular) -> Self {
        DiagramError::NotRectangular(e)
    }
}

/// `ψ(x) = (height(x ∧ c_l), height(x ∧ c_r))` for every element.
pub fn psi(l: &LeveledLattice) -> Result<Vec<(usize, usize)>, NotRectangular> {
    let f = corners(l)?;
    Ok(psi_with(l, &f, false))
}

/// The mirrored map `x ↦ (height(x ∧ c_r), height(x ∧ c_l))`.
pub fn psi_mirror(l: &LeveledLattice) -> Result<Vec<(usize, usize)>, NotRectangular> {
    let f = corners(l)?;
    Ok(psi_with(l, &f, true))
}

fn psi_with(l: &LeveledLattice, f: &RectFrame, mirror: bool) -> Vec<(usize, usize)> {
    l.elements()
        .map(|x| {
            let u = l.height(l.meet(x, f.left_corner));
            let v = l.height(l.meet(x, f.right_corner));
            if mirror {
                (v, u)
            } else {
                (u, v)
            }
        })
        .collect()
}

fn prefix_sums(units: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero()];
    for &u in units {
        out.push(*out.last().unwrap() + u);
    }
    out
}

fn check_units(f: &RectFrame, left: &[Q], right: &[Q]) -> Result<(), DiagramError> {
    let expected = (f.lower_left.len() - 1, f.lower_right.len() - 1);
    if (left.len(), right.len()) != expected {
        return Err(DiagramError::UnitCount { expected, got: (left.len(), right.len()) });
    }
    if left.iter().chain(right).any(|u| *u <= Q::zero()) {
        return Err(DiagramError::NonPositiveUnit);
    }
    Ok(())
}

/// Natural diagram with the given step lengths along `[0, c_l]` and
/// `[0, c_r]`.
pub fn natural_diagram(l: &LeveledLattice, left_units: &[Q], right_units: &[Q]) -> Result<Diagram, DiagramError> {
    let f = corners(l)?;
    check_units(&f, left_units, right_units)?;
    let (ls, rs) = (prefix_sums(left_units), prefix_sums(right_units));
    let coords = psi_with(l, &f, false)
        .into_iter()
        .map(|(u, v)| Point::from_lr(ls[u], rs[v]))
        .collect();
    Ok(Diagram {
        coords,
        edges: l.cover_pairs(),
        left_units: left_units.to_vec(),
        right_units: right_units.to_vec(),
    })
}

/// Natural diagram drawn through `ψ̃`: the left chain's steps are laid out
/// along the 45° direction. Equals the reflection of [`natural_diagram`].
pub fn mirror_natural_diagram(l: &LeveledLattice, left_units: &[Q], right_units: &[Q]) -> Result<Diagram, DiagramError> {
    let f = corners(l)?;
    check_units(&f, left_units, right_units)?;
    let (ls, rs) = (prefix_sums(left_units), prefix_sums(right_units));
    let coords = psi_with(l, &f, true)
        .into_iter()
        .map(|(v, u)| Point::from_lr(rs[v], ls[u]))
        .collect();
    Ok(Diagram {
        coords,
        edges: l.cover_pairs(),
        left_units: left_units.to_vec(),
        right_units: right_units.to_vec(),
    })
}

fn unit_steps(l: &LeveledLattice) -> Result<(Vec<Q>, Vec<Q>), DiagramError> {
    let f = corners(l)?;
    Ok((
        vec![Q::from_integer(1); f.lower_left.len() - 1],
        vec![Q::from_integer(1); f.lower_right.len() - 1],
    ))
}

/// Natural diagram with every step of length one.
pub fn unit_natural_diagram(l: &LeveledLattice) -> Result<Diagram, DiagramError> {
    let (a, b) = unit_steps(l)?;
    natural_diagram(l, &a, &b)
}

pub fn unit_mirror_natural_diagram(l: &LeveledLattice) -> Result<Diagram, DiagramError> {
    let (a, b) = unit_steps(l)?;
    mirror_natural_diagram(l, &a, &b)
}

impl Diagram {
    /// Left-right reflection `x ↦ −x`.
    pub fn reflect(&self) -> Diagram {
        Diagram {
            coords: self.coords.iter().map(|p| Point::new(-p.x, p.y)).collect(),
            edges: self.edges.clone(),
            left_units: self.left_units.clone(),
            right_units: self.right_units.clone(),
        }
    }

    /// Exact check that no two edges meet except at shared endpoints, and
    /// that `y` strictly increases along every edge.
    pub fn is_planar_drawing(&self) -> bool {
        let orient = |a: Point, b: Point, c: Point| {
            let v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        };
        let on_segment = |a: Point, b: Point, p: Point| {
            orient(a, b, p) == 0
                && p.x >= a.x.min(b.x)
                && p.x <= a.x.max(b.x)
                && p.y >= a.y.min(b.y)
                && p.y <= a.y.max(b.y)
        };
        for &(u, v) in &self.edges {
            if self.coords[v].y <= self.coords[u].y {
                return false;
            }
            for (k, &p) in self.coords.iter().enumerate() {
                if k != u && k != v && on_segment(self.coords[u], self.coords[v], p) {
                    return false;
                }
            }
        }
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            for &(c, d) in &self.edges[k + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let (pa, pb, pc, pd) = (self.coords[a], self.coords[b], self.coords[c], self.coords[d]);
                let (o1, o2) = (orient(pa, pb, pc), orient(pa, pb, pd));
                let (o3, o4) = (orient(pc, pd, pa), orient(pc, pd, pb));
                if o1 * o2 < 0 && o3 * o4 < 0 {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SlopeClass {
    /// 135°: up and to the left.
    NormalLeft,
    /// 45°: up and to the right.
    NormalRight,
    /// Strictly between 45° and 135°.
    Steep,
    Other,
}

impl SlopeClass {
    pub fn is_normal(self) -> bool {
        matches!(self, SlopeClass::NormalLeft | SlopeClass::NormalRight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub edge: (ElementId, ElementId),
    pub class: SlopeClass,
}

pub fn classify(lower: Point, upper: Point) -> Option<SlopeClass> {
    let (dx, dy) = (upper.x - lower.x, upper.y - lower.y);
    if dx.is_zero() && dy.is_zero() {
        return None;
    }
    Some(if dy.abs() == dx.abs() {
        if dx.is_negative() {
            SlopeClass::NormalLeft
        } else {
            SlopeClass::NormalRight
        }
    } else if dy > dx.abs() {
        SlopeClass::Steep
    } else {
        SlopeClass::Other
    })
}

pub fn classify_edges(d: &Diagram) -> Result<Vec<EdgeClass>, DiagramError> {
    d.edges
        .iter()
        .map(|&(u, v)| {
            classify(d.coords[u], d.coords[v])
                .map(|class| EdgeClass { edge: (u, v), class })
                .ok_or(DiagramError::ZeroLengthEdge(u, v))
        })
        .collect()
}

/// Middle edges `m ≺ t` of peak `S₇` sublattices.
pub fn peak_middle_edges(l: &LeveledLattice) -> BTreeSet<(ElementId, ElementId)> {
    find_s7(l, S7Kind::Peak).iter().map(|s| (s.m, s.t)).collect()
}

/// C₁: peak middle edges are steep, all other edges normal.
pub fn check_c1(l: &LeveledLattice, d: &Diagram) -> VerificationReport {
    let mut report = VerificationReport::new();
    let middles = peak_middle_edges(l);
    let classes = match classify_edges(d) {
        Ok(c) => c,
        Err(e) => {
            report.fail(Check::NaturalIsC1, "diagram", &[], format!("{e}"));
            return report;
        }
    };
    for ec in classes {
        let (u, v) = ec.edge;
        let want_steep = middles.contains(&ec.edge);
        let ok = if want_steep { ec.class == SlopeClass::Steep } else { ec.class.is_normal() };
        report.record(
            Check::NaturalIsC1,
            ok,
            "diagram",
            &[u, v],
            format!(
                "edge {}-{} is {:?}, expected {}",
                l.label(u),
                l.label(v),
                ec.class,
                if want_steep { "steep" } else { "normal" }
            ),
        );
    }
    report
}

fn squared_length(a: Point, b: Point) -> Q {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    dx * dx + dy * dy
}

/// C₂: a C₁ diagram whose lower-boundary edges all have the same length.
pub fn check_c2(l: &LeveledLattice, d: &Diagram) -> VerificationReport {
    let mut report = check_c1(l, d);
    let f = match corners(l) {
        Ok(f) => f,
        Err(e) => {
            report.fail(Check::C2, "diagram", &[], format!("{e}"));
            return report;
        }
    };
    let edges: Vec<(ElementId, ElementId)> = f
        .lower_left
        .windows(2)
        .chain(f.lower_right.windows(2))
        .map(|w| (w[0], w[1]))
        .collect();
    let reference = squared_length(d.coords[edges[0].0], d.coords[edges[0].1]);
    for (u, v) in edges {
        let len = squared_length(d.coords[u], d.coords[v]);
        report.record(
            Check::C2,
            len == reference,
            "diagram",
            &[u, v],
            format!("lower boundary edge {}-{} has squared length {len}, expected {reference}", l.label(u), l.label(v)),
        );
    }
    report
}

/// Integer grid coordinates read back from a diagram: rank of each point's
/// projection among the distinct projections on the two normal axes.
pub fn coordinates_of(d: &Diagram) -> Result<Vec<(usize, usize)>, DiagramError> {
    let proj: Vec<(Q, Q)> = d.coords.iter().map(Point::lr).collect();
    for &(u, v) in &d.edges {
        let (a, b) = (proj[u], proj[v]);
        if b.0 < a.0 || b.1 < a.1 || a == b {
            return Err(DiagramError::Malformed(u, v));
        }
    }
    let ls: Vec<Q> = proj.iter().map(|p| p.0).collect::<BTreeSet<_>>().into_iter().collect();
    let rs: Vec<Q> = proj.iter().map(|p| p.1).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(proj
        .iter()
        .map(|(a, b)| (ls.binary_search(a).unwrap(), rs.binary_search(b).unwrap()))
        .collect())
}

/// Passes when the diagram's read-back coordinates equal `ψ` pointwise, or
/// `ψ̃` (then `mirrored` is set).
pub fn verify_c1_equals_natural(l: &LeveledLattice, d: &Diagram) -> VerificationReport {
    let mut report = VerificationReport::new();
    let (direct, mirror) = match (psi(l), psi_mirror(l)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            report.fail(Check::C1IsNatural, "diagram", &[], format!("{e}"));
            return report;
        }
    };
    match coordinates_of(d) {
        Ok(c) if c == direct => report.count(Check::C1IsNatural),
        Ok(c) if c == mirror => {
            report.count(Check::C1IsNatural);
            report.mirrored = true;
        }
        Ok(c) => {
            let bad: Vec<ElementId> = l.elements().filter(|&x| c[x] != direct[x]).collect();
            report.fail(Check::C1IsNatural, "diagram", &bad, "coordinates differ from psi and its mirror");
        }
        Err(e) => report.fail(Check::C1IsNatural, "diagram", &[], format!("{e}")),
    }
    report
}

/// `b - b₀ = s (a - a₀)` for all points with one common `s > 0`.
fn similar(a: &[Point], b: &[Point]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let (a0, b0) = (a[0], b[0]);
    let mut scale: Option<Q> = None;
    for (p, q) in a.iter().zip(b) {
        let (ax, ay, bx, by) = (p.x - a0.x, p.y - a0.y, q.x - b0.x, q.y - b0.y);
        if scale.is_none() {
            if !ax.is_zero() {
                scale = Some(bx / ax);
            } else if !ay.is_zero() {
                scale = Some(by / ay);
            }
        }
        match scale {
            Some(s) => {
                if !s.is_positive() || bx != s * ax || by != s * ay {
                    return false;
                }
            }
            None => {
                if !bx.is_zero() || !by.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Two diagrams of `l` agree up to translation and positive scaling, or up
/// to the same after a left-right reflection.
pub fn verify_c2_uniqueness(l: &LeveledLattice, d1: &Diagram, d2: &Diagram) -> VerificationReport {
    let mut report = VerificationReport::new();
    if d1.coords.len() != l.len() || d2.coords.len() != l.len() {
        report.fail(Check::C2Uniqueness, "diagram", &[], "diagrams do not draw the same element set");
        return report;
    }
    if similar(&d1.coords, &d2.coords) {
        report.count(Check::C2Uniqueness);
    } else if similar(&d1.reflect().coords, &d2.coords) {
        report.count(Check::C2Uniqueness);
        report.mirrored = true;
    } else {
        report.fail(Check::C2Uniqueness, "diagram", &[], "diagrams differ beyond similarity and reflection");
    }
    report
}

/// Step lengths along the lower boundaries of `l` as drawn in `coords`.
fn boundary_units(f: &RectFrame, coords: &[Point]) -> (Vec<Q>, Vec<Q>) {
    let steps = |chain: &[ElementId], left: bool| {
        chain
            .windows(2)
            .map(|w| {
                let (a, b) = (coords[w[0]].lr(), coords[w[1]].lr());
                if left {
                    b.0 - a.0
                } else {
                    b.1 - a.1
                }
            })
            .collect()
    };
    (steps(&f.lower_left, true), steps(&f.lower_right, false))
}

/// Draws the fork just inserted by [`insert_fork`](crate::fork::insert_fork)
/// into an existing diagram `d` of `old`: the middle element goes inside the
/// cell and the trajectory elements go onto the edges they subdivide, so
/// that `m, x₁, x₂, …` and `m, y₁, y₂, …` each lie on a normal line.
pub fn fork_diagram(old: &LeveledLattice, d: &Diagram, new: &LeveledLattice, trace: &ForkTrace) -> Result<Diagram, DiagramError> {
    let mut lr: Vec<Option<(Q, Q)>> = vec![None; new.len()];
    for x in old.elements() {
        lr[trace.old_ids[x]] = Some(d.coords[x].lr());
    }
    let old_lr = lr.clone();
    let at = |x: ElementId| old_lr[x].expect("old element");
    // subdivided edges in new ids
    let left_edges: Vec<(ElementId, ElementId)> = trace
        .left
        .iter()
        .map(|&x| (*new.down_covers(x).last().unwrap(), new.up_covers(x)[0]))
        .collect();
    let right_edges: Vec<(ElementId, ElementId)> = trace
        .right
        .iter()
        .map(|&y| (new.down_covers(y)[0], *new.up_covers(y).last().unwrap()))
        .collect();
    let i = new.up_covers(trace.m)[0];
    let cell = Cell4 {
        o: left_edges[0].0,
        c: left_edges[0].1,
        d: right_edges[0].1,
        i,
    };
    let two = Q::from_integer(2);
    let lo = left_edges.iter().map(|&(u, _)| at(u).0).max().unwrap();
    let hi = left_edges.iter().map(|&(_, v)| at(v).0).min().unwrap();
    let rlo = right_edges.iter().map(|&(u, _)| at(u).1).max().unwrap();
    let rhi = right_edges.iter().map(|&(_, v)| at(v).1).min().unwrap();
    if lo >= hi || rlo >= rhi {
        return Err(DiagramError::NoRoomForFork(cell));
    }
    let (l_star, r_star) = ((lo + hi) / two, (rlo + rhi) / two);
    if l_star >= at(i).0 || r_star >= at(i).1 {
        return Err(DiagramError::NoRoomForFork(cell));
    }
    lr[trace.m] = Some((l_star, r_star));
    for (&x, &(u, v)) in trace.left.iter().zip(&left_edges) {
        let (a, b) = (at(u), at(v));
        let t = (l_star - a.0) / (b.0 - a.0);
        lr[x] = Some((l_star, a.1 + t * (b.1 - a.1)));
    }
    for (&y, &(u, v)) in trace.right.iter().zip(&right_edges) {
        let (a, b) = (at(u), at(v));
        let t = (r_star - a.1) / (b.1 - a.1);
        lr[y] = Some((a.0 + t * (b.0 - a.0), r_star));
    }
    let coords: Vec<Point> = lr.iter().map(|p| {
        let (a, b) = p.expect("every element placed");
        Point::from_lr(a, b)
    }).collect();
    let f = corners(new)?;
    let (left_units, right_units) = boundary_units(&f, &coords);
    Ok(Diagram { coords, edges: new.cover_pairs(), left_units, right_units })
}

/// Replays `script` from the natural diagram of its grid, drawing each
/// fork with [`fork_diagram`]. Returns the lattice and its drawing.
pub fn replay_diagram(script: &ForkScript, left_units: &[Q], right_units: &[Q]) -> Result<(LeveledLattice, Diagram), ReplayDiagramError> {
    let (p, q) = script.grid;
    let mut lattice = grid(p, q).map_err(|_| ReplayDiagramError::Fork(ForkError::BadGrid(p, q)))?;
    let mut d = natural_diagram(&lattice, left_units, right_units).map_err(ReplayDiagramError::Diagram)?;
    for (step, cref) in script.steps.iter().enumerate() {
        let cell = cref
            .resolve(&lattice)
            .ok_or(ReplayDiagramError::Fork(ForkError::UnresolvableStep { step, cell: *cref }))?;
        let (next, trace) = insert_fork(&lattice, &cell).map_err(ReplayDiagramError::Fork)?;
        d = fork_diagram(&lattice, &d, &next, &trace).map_err(ReplayDiagramError::Diagram)?;
        lattice = next;
    }
    Ok((lattice, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayDiagramError {
    Fork(ForkError),
    Diagram(DiagramError),
}

impl fmt::Display for ReplayDiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReplayDiagramError::Fork(e) => write!(f, "{e}"),
            ReplayDiagramError::Diagram(e) => write!(f, "{e}"),
        }
    }
}

/// `ψ` preserves meets componentwise, is injective, and sends the bounds to
/// `(0, 0)` and to the pair of corner heights.
pub fn check_psi_embedding(l: &LeveledLattice) -> VerificationReport {
    let mut report = VerificationReport::new();
    let f = match corners(l) {
        Ok(f) => f,
        Err(e) => {
            report.fail(Check::PsiEmbedding, "L", &[], format!("{e}"));
            return report;
        }
    };
    let p = psi_with(l, &f, false);
    let min = |a: (usize, usize), b: (usize, usize)| (a.0.min(b.0), a.1.min(b.1));
    for x in l.elements() {
        for y in l.elements() {
            report.record(
                Check::PsiEmbedding,
                p[l.meet(x, y)] == min(p[x], p[y]),
                "L",
                &[x, y],
                "psi(x ∧ y) differs from the componentwise minimum",
            );
            if x < y {
                report.record(Check::PsiEmbedding, p[x] != p[y], "L", &[x, y], "psi is not injective");
            }
        }
    }
    let top = (l.height(f.left_corner), l.height(f.right_corner));
    report.record(
        Check::PsiEmbedding,
        p[l.bottom()] == (0, 0) && p[l.top()] == top,
        "L",
        &[l.bottom(), l.top()],
        "psi does not preserve the bounds",
    );
    report
}

impl core::error::Error for DiagramError {}
impl core::error::Error for ReplayDiagramError {}
