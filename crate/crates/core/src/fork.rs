//! Fork calculus: 4-cells, fork insertion and deletion, decomposition into
//! a grid plus a replayable sequence of insertions, and rank.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::embed::Embedding;
use crate::enumerate::{canonical_code, CanonicalCode};
use crate::lattice::{ElementId, LatticeError, LeveledLattice};
use crate::rect::{corners, grid, is_sr};
use crate::sublattice::{find_s7, S7Kind, S7Occurrence};

/// A covering square `{o, c, d, i}` with empty interior; `c` is the left
/// upper cover of `o`, `d` the right one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell4 {
    pub o: ElementId,
    pub c: ElementId,
    pub d: ElementId,
    pub i: ElementId,
}

/// Position-based reference to a 4-cell, stable across relabelling:
/// `o = levels[o_height][o_index]`, `c = up_covers(o)[c_index]`,
/// `d = up_covers(o)[c_index + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub o_height: usize,
    pub o_index: usize,
    pub c_index: usize,
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.o_height, self.o_index, self.c_index)
    }
}

impl Cell4 {
    pub fn elements(&self) -> [ElementId; 4] {
        [self.o, self.c, self.d, self.i]
    }

    pub fn reference(&self, l: &LeveledLattice) -> CellRef {
        CellRef {
            o_height: l.height(self.o),
            o_index: l.position(self.o),
            c_index: l.up_covers(self.o).iter().position(|&x| x == self.c).expect("c covers o"),
        }
    }
}

impl CellRef {
    pub fn resolve(&self, l: &LeveledLattice) -> Option<Cell4> {
        let o = *l.levels().get(self.o_height)?.get(self.o_index)?;
        let ups = l.up_covers(o);
        let (c, d) = (*ups.get(self.c_index)?, *ups.get(self.c_index + 1)?);
        let cell = Cell4 { o, c, d, i: l.join(c, d) };
        is_cell(l, &cell).then_some(cell)
    }
}

/// Trajectories added by one fork insertion, in ids of the extended lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForkTrace {
    pub m: ElementId,
    /// `x₁, x₂, …` going down to the lower-left boundary.
    pub left: Vec<ElementId>,
    /// `y₁, y₂, …` going down to the lower-right boundary.
    pub right: Vec<ElementId>,
    /// Id in the extended lattice of each element of the original one.
    pub old_ids: Vec<ElementId>,
}

impl ForkTrace {
    pub fn added(&self) -> usize {
        1 + self.left.len() + self.right.len()
    }
}

/// A grid plus an ordered list of cell references: replaying the
/// insertions rebuilds the lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForkScript {
    pub grid: (usize, usize),
    pub steps: Vec<CellRef>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ForkError {
    NotACell(Cell4),
    NotSlimRectangular,
    NotMinimal(S7Occurrence),
    /// The covers around a fork do not have the shape fork insertion leaves.
    MalformedTrace(S7Occurrence),
    /// Re-inserting the fork did not reproduce the lattice.
    RoundTrip,
    /// The ideal below `c` or `d` of a recorded cell is not distributive.
    IdealNotDistributive { step: usize },
    UnresolvableStep { step: usize, cell: CellRef },
    StepNotSlimRectangular { step: usize },
    BadGrid(usize, usize),
    Lattice(LatticeError),
}

impl fmt::Display for ForkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ForkError::NotACell(c) => write!(f, "{:?} is not a 4-cell", c.elements()),
            ForkError::NotSlimRectangular => f.write_str("lattice is not slim rectangular"),
            ForkError::NotMinimal(s) => write!(f, "covering S7 with top {} is not minimal", s.t),
            ForkError::MalformedTrace(s) => write!(f, "fork at middle element {} has an unexpected trajectory", s.m),
            ForkError::RoundTrip => f.write_str("re-inserting the deleted fork does not reproduce the lattice"),
            ForkError::IdealNotDistributive { step } => write!(f, "step {step}: ideal of c or d is not distributive"),
            ForkError::UnresolvableStep { step, cell } => write!(f, "step {step}: cell {cell} does not resolve to a 4-cell"),
            ForkError::StepNotSlimRectangular { step } => write!(f, "step {step}: result is not slim rectangular"),
            ForkError::BadGrid(p, q) => write!(f, "grid({p}, {q}) is not allowed"),
            ForkError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl From<LatticeError> for ForkError {
    fn from(e: LatticeError) -> Self {
        ForkError::Lattice(e)
    }
}

pub fn is_cell(l: &LeveledLattice, cell: &Cell4) -> bool {
    let Cell4 { o, c, d, i } = *cell;
    let adjacent = |list: &[ElementId], a: ElementId, b: ElementId| {
        list.iter().position(|&x| x == a).map(|k| list.get(k + 1) == Some(&b)).unwrap_or(false)
    };
    l.covers(o, c)
        && l.covers(o, d)
        && l.covers(c, i)
        && l.covers(d, i)
        && adjacent(l.up_covers(o), c, d)
        && adjacent(l.down_covers(i), c, d)
}

/// All 4-cells, bottom to top and left to right by their bottom element.
pub fn cells4(l: &LeveledLattice) -> Vec<Cell4> {
    let mut out = Vec::new();
    for o in l.elements() {
        for pair in l.up_covers(o).windows(2) {
            let cell = Cell4 { o, c: pair[0], d: pair[1], i: l.join(pair[0], pair[1]) };
            if is_cell(l, &cell) {
                out.push(cell);
            }
        }
    }
    out
}

/// Smallest `k ≥ 1` such that `m{k}` and the `x{k}_j`, `y{k}_j` labels of a
/// fork with the given trajectory lengths are all unused.
fn fresh_fork_index(l: &LeveledLattice, left: usize, right: usize) -> usize {
    let taken: BTreeSet<&str> = l.labels().iter().map(String::as_str).collect();
    (1..)
        .find(|k| {
            !taken.contains(format!("m{k}").as_str())
                && (1..=left).all(|j| !taken.contains(format!("x{k}_{j}").as_str()))
                && (1..=right).all(|j| !taken.contains(format!("y{k}_{j}").as_str()))
        })
        .unwrap()
}

/// Edges subdivided by a fork at `cell`: `(lower, upper)` pairs going down
/// to the left and to the right.
fn trajectories(l: &LeveledLattice, cell: &Cell4) -> Result<(Vec<(ElementId, ElementId)>, Vec<(ElementId, ElementId)>), ForkError> {
    let mut left = vec![(cell.o, cell.c)];
    loop {
        let (u, v) = *left.last().unwrap();
        let dv = l.down_covers(v);
        let k = dv.iter().position(|&x| x == u).unwrap();
        if k == 0 {
            break;
        }
        let ce = dv[k - 1];
        let oe = l.meet(ce, u);
        if !is_cell(l, &Cell4 { o: oe, c: ce, d: u, i: v }) {
            return Err(ForkError::NotACell(Cell4 { o: oe, c: ce, d: u, i: v }));
        }
        left.push((oe, ce));
    }
    let mut right = vec![(cell.o, cell.d)];
    loop {
        let (u, v) = *right.last().unwrap();
        let dv = l.down_covers(v);
        let k = dv.iter().position(|&x| x == u).unwrap();
        if k + 1 == dv.len() {
            break;
        }
        let de = dv[k + 1];
        let oe = l.meet(u, de);
        if !is_cell(l, &Cell4 { o: oe, c: u, d: de, i: v }) {
            return Err(ForkError::NotACell(Cell4 { o: oe, c: u, d: de, i: v }));
        }
        right.push((oe, de));
    }
    Ok((left, right))
}

/// Inserts a fork into the 4-cell `cell`: a middle element `m ≺ i` and
/// trajectories of edge-subdividing elements down to both lower boundaries.
pub fn insert_fork(l: &LeveledLattice, cell: &Cell4) -> Result<(LeveledLattice, ForkTrace), ForkError> {
    if !is_cell(l, cell) {
        return Err(ForkError::NotACell(*cell));
    }
    let (left_edges, right_edges) = trajectories(l, cell)?;
    let k = fresh_fork_index(l, left_edges.len(), right_edges.len());
    let mut e = Embedding::of(l);

    let mut left = Vec::new();
    for (j, &(u, v)) in left_edges.iter().enumerate() {
        let x = e.subdivide(u, v, format!("x{k}_{}", j + 1));
        if let Some(&prev) = left.last() {
            e.up[x].push(prev);
            e.down[prev].insert(0, x);
        }
        left.push(x);
    }
    let mut right = Vec::new();
    for (j, &(u, v)) in right_edges.iter().enumerate() {
        let y = e.subdivide(u, v, format!("y{k}_{}", j + 1));
        if let Some(&prev) = right.last() {
            e.up[y].insert(0, prev);
            e.down[prev].push(y);
        }
        right.push(y);
    }
    let m = e.add(format!("m{k}"));
    let (x1, y1) = (left[0], right[0]);
    e.down[m] = vec![x1, y1];
    e.up[m] = vec![cell.i];
    e.up[x1].push(m);
    e.up[y1].insert(0, m);
    let at = e.down[cell.i].iter().position(|&z| z == cell.c).unwrap();
    e.down[cell.i].insert(at + 1, m);

    let (lattice, id) = e.finish()?;
    let trace = ForkTrace {
        m: id[m],
        left: left.iter().map(|&x| id[x]).collect(),
        right: right.iter().map(|&y| id[y]).collect(),
        old_ids: id[..l.len()].to_vec(),
    };
    Ok((lattice, trace))
}

/// Covering `S₇` sublattices; with `minimal_only`, those whose top has no
/// covering `S₇` strictly below it.
pub fn find_covering_s7(l: &LeveledLattice, minimal_only: bool) -> Vec<S7Occurrence> {
    let all = find_s7(l, S7Kind::Covering);
    if !minimal_only {
        return all;
    }
    let tops: BTreeSet<ElementId> = all.iter().map(|s| s.t).collect();
    all.iter()
        .copied()
        .filter(|s| !tops.iter().any(|&t| l.lt(t, s.t)))
        .collect()
}

/// Deterministic pick among minimal occurrences: lowest top, then leftmost
/// top, then leftmost middle, then leftmost left corner.
pub fn canonical_minimal_s7(l: &LeveledLattice) -> Option<S7Occurrence> {
    find_covering_s7(l, true)
        .into_iter()
        .min_by_key(|s| (l.height(s.t), l.position(s.t), l.position(s.m), l.position(s.a)))
}

/// Deletes the fork of a minimal covering `S₇`. Returns the smaller lattice
/// and the 4-cell `{o, a, b, t}` at which the fork was inserted.
pub fn delete_fork(l: &LeveledLattice, s: &S7Occurrence) -> Result<(LeveledLattice, Cell4), ForkError> {
    let is_minimal = find_covering_s7(l, true).iter().any(|x| x == s);
    if !is_minimal {
        return Err(ForkError::NotMinimal(*s));
    }
    undo_fork(l, s)
}

/// Removes the fork of any covering `S₇`, minimal or not, provided that
/// re-inserting a fork at the returned cell gives back `l`. This inverts
/// [`insert_fork`] also when the new fork sits above older ones.
pub fn undo_fork(l: &LeveledLattice, s: &S7Occurrence) -> Result<(LeveledLattice, Cell4), ForkError> {
    let bad = || ForkError::MalformedTrace(*s);

    let mut xs = vec![s.xa];
    while l.down_covers(*xs.last().unwrap()).len() == 2 {
        let x = *xs.last().unwrap();
        xs.push(l.down_covers(x)[0]);
    }
    let mut ys = vec![s.yb];
    while l.down_covers(*ys.last().unwrap()).len() == 2 {
        let y = *ys.last().unwrap();
        ys.push(l.down_covers(y)[1]);
    }
    if l.up_covers(s.xa) != [s.a, s.m] || l.up_covers(s.yb) != [s.m, s.b] || l.up_covers(s.m) != [s.t] {
        return Err(bad());
    }
    for w in xs.windows(2) {
        if l.up_covers(w[1]).len() != 2 || l.up_covers(w[1])[1] != w[0] {
            return Err(bad());
        }
    }
    for w in ys.windows(2) {
        if l.up_covers(w[1]).len() != 2 || l.up_covers(w[1])[0] != w[0] {
            return Err(bad());
        }
    }

    let mut e = Embedding::of(l);
    e.detach(s.xa, s.m);
    e.detach(s.yb, s.m);
    e.detach(s.m, s.t);
    e.alive[s.m] = false;
    for w in xs.windows(2).chain(ys.windows(2)) {
        e.detach(w[1], w[0]);
    }
    for &x in xs.iter().chain(&ys) {
        let (lower, upper) = (e.down[x][0], e.up[x][0]);
        e.unsubdivide(x, lower, upper);
    }
    let (smaller, id) = e.finish()?;
    let cell = Cell4 { o: id[s.o], c: id[s.a], d: id[s.b], i: id[s.t] };
    if !is_cell(&smaller, &cell) {
        return Err(ForkError::NotACell(cell));
    }
    let (again, _) = insert_fork(&smaller, &cell)?;
    if !again.same_diagram(l) {
        return Err(ForkError::RoundTrip);
    }
    Ok((smaller, cell))
}

/// One fork deletion recorded by [`decompose_steps`].
#[derive(Clone, Debug)]
pub struct DeletionStep {
    /// Lattice before the fork was inserted.
    pub before: LeveledLattice,
    /// Cell of `before` receiving the fork.
    pub cell: Cell4,
}

/// Full decomposition: the grid, then steps in insertion order.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub grid: LeveledLattice,
    pub steps: Vec<DeletionStep>,
    pub script: ForkScript,
}

/// Repeatedly deletes the canonical minimal covering `S₇` until a grid is
/// left. Every recorded cell is checked to have distributive ideals below
/// `c` and `d`.
pub fn decompose_steps(l: &LeveledLattice) -> Result<Decomposition, ForkError> {
    if !is_sr(l) {
        return Err(ForkError::NotSlimRectangular);
    }
    let mut current = l.clone();
    let mut steps = Vec::new();
    while let Some(s) = canonical_minimal_s7(&current) {
        let (before, cell) = delete_fork(&current, &s)?;
        steps.push(DeletionStep { before: before.clone(), cell });
        current = before;
    }
    steps.reverse();
    for (k, st) in steps.iter().enumerate() {
        if !st.before.is_distributive_ideal(st.cell.c) || !st.before.is_distributive_ideal(st.cell.d) {
            return Err(ForkError::IdealNotDistributive { step: k });
        }
    }
    let frame = corners(&current).map_err(|_| ForkError::NotSlimRectangular)?;
    let dims = (frame.lower_left.len(), frame.lower_right.len());
    let g = grid(dims.0, dims.1).map_err(|_| ForkError::BadGrid(dims.0, dims.1))?;
    if !g.same_diagram(&current) {
        return Err(ForkError::NotSlimRectangular);
    }
    let script = ForkScript {
        grid: dims,
        steps: steps.iter().map(|s| s.cell.reference(&s.before)).collect(),
    };
    Ok(Decomposition { grid: current, steps, script })
}

pub fn decompose(l: &LeveledLattice) -> Result<ForkScript, ForkError> {
    decompose_steps(l).map(|d| d.script)
}

/// Number of fork insertions needed to build `l` from a grid.
pub fn rank(l: &LeveledLattice) -> Result<usize, ForkError> {
    decompose(l).map(|s| s.steps.len())
}

/// Every rank reachable by branching over all minimal covering `S₇` choices
/// at each deletion. A singleton set means the rank is well defined.
pub fn ranks_over_all_choices(l: &LeveledLattice) -> Result<BTreeSet<usize>, ForkError> {
    fn go(l: &LeveledLattice, memo: &mut BTreeMap<CanonicalCode, BTreeSet<usize>>) -> Result<BTreeSet<usize>, ForkError> {
        let code = canonical_code(l);
        if let Some(r) = memo.get(&code) {
            return Ok(r.clone());
        }
        let occs = find_covering_s7(l, true);
        let mut out = BTreeSet::new();
        if occs.is_empty() {
            out.insert(0);
        }
        for s in occs {
            let (smaller, _) = delete_fork(l, &s)?;
            out.extend(go(&smaller, memo)?.into_iter().map(|r| r + 1));
        }
        memo.insert(code, out.clone());
        Ok(out)
    }
    go(l, &mut BTreeMap::new())
}

/// Every intermediate lattice `K₁ = G, K₂, …, Kₙ` of a script.
pub fn replay_sequence(script: &ForkScript) -> Result<Vec<LeveledLattice>, ForkError> {
    let (p, q) = script.grid;
    let mut current = grid(p, q).map_err(|_| ForkError::BadGrid(p, q))?;
    let mut out = vec![current.clone()];
    for (step, cref) in script.steps.iter().enumerate() {
        let cell = cref.resolve(&current).ok_or(ForkError::UnresolvableStep { step, cell: *cref })?;
        let (next, _) = insert_fork(&current, &cell)?;
        if !is_sr(&next) {
            return Err(ForkError::StepNotSlimRectangular { step });
        }
        out.push(next.clone());
        current = next;
    }
    Ok(out)
}

pub fn replay(script: &ForkScript) -> Result<LeveledLattice, ForkError> {
    replay_sequence(script).map(|mut v| v.pop().unwrap())
}

impl core::error::Error for ForkError {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::s7;
    use crate::rect::grid_label;

    fn b2_cell() -> (LeveledLattice, Cell4) {
        let g = grid(2, 2).unwrap();
        let cell = cells4(&g)[0];
        (g, cell)
    }

    #[test]
    fn cell_counts() {
        assert_eq!(cells4(&grid(2, 2).unwrap()).len(), 1);
        assert_eq!(cells4(&grid(3, 3).unwrap()).len(), 4);
        let s = s7();
        let named: Vec<[&str; 4]> = cells4(&s)
            .iter()
            .map(|c| c.elements().map(|x| s.label(x)))
            .collect();
        assert_eq!(named, vec![["o", "x1", "y1", "m"], ["x1", "a", "m", "t"], ["y1", "m", "b", "t"]]);
        let (o, a, b, t) = (s.find("o").unwrap(), s.find("a").unwrap(), s.find("b").unwrap(), s.find("t").unwrap());
        assert!(!is_cell(&s, &Cell4 { o, c: a, d: b, i: t }));
    }

    #[test]
    fn fork_into_b2_is_s7() {
        let (g, cell) = b2_cell();
        let (l, trace) = insert_fork(&g, &cell).unwrap();
        assert_eq!(l.len(), 7);
        assert!(l.same_diagram(&s7()));
        assert_eq!(trace.left.len(), 1);
        assert_eq!(trace.right.len(), 1);
        assert_eq!(l.label(trace.m), "m1");
    }

    #[test]
    fn fork_sizes_in_grid33() {
        let g = grid(3, 3).unwrap();
        let bottom = cells4(&g).into_iter().find(|c| c.o == g.bottom()).unwrap();
        let top = cells4(&g).into_iter().find(|c| c.i == g.top()).unwrap();
        assert_eq!(insert_fork(&g, &bottom).unwrap().0.len(), 12);
        let (l, trace) = insert_fork(&g, &top).unwrap();
        assert_eq!(l.len(), 14);
        assert_eq!((trace.left.len(), trace.right.len()), (2, 2));
        assert!(is_sr(&l));
        assert_eq!(rank(&l), Ok(1));

        let s = find_covering_s7(&l, true)[0];
        let (back, cell) = delete_fork(&l, &s).unwrap();
        assert_eq!(back, g);
        assert_eq!(cell, top);
    }

    #[test]
    fn non_cell_rejected() {
        let s = s7();
        let (o, a, b, t) = (s.find("o").unwrap(), s.find("a").unwrap(), s.find("b").unwrap(), s.find("t").unwrap());
        assert!(matches!(insert_fork(&s, &Cell4 { o, c: a, d: b, i: t }), Err(ForkError::NotACell(_))));
    }

    #[test]
    fn delete_from_s7() {
        let (g, cell) = b2_cell();
        let (s, _) = insert_fork(&g, &cell).unwrap();
        let occ = find_covering_s7(&s, true);
        assert_eq!(occ.len(), 1);
        let (back, c) = delete_fork(&s, &occ[0]).unwrap();
        assert_eq!(back, g);
        assert_eq!(c, cell);
    }

    #[test]
    fn stacked_fork_minimality() {
        let g = grid(3, 3).unwrap();
        let low = *cells4(&g).iter().find(|c| c.o == g.bottom()).unwrap();
        let (l, _) = insert_fork(&g, &low).unwrap();
        let high = *cells4(&l).iter().find(|c| c.i == l.top()).unwrap();
        let (l, _) = insert_fork(&l, &high).unwrap();
        let all = find_covering_s7(&l, false);
        let minimal = find_covering_s7(&l, true);
        assert!(all.len() > minimal.len());
        for s in &minimal {
            assert!(!all.iter().any(|o| l.lt(o.t, s.t)));
        }
        for s in all.iter().filter(|s| !minimal.contains(s)) {
            assert!(matches!(delete_fork(&l, s), Err(ForkError::NotMinimal(_))));
        }
        assert_eq!(rank(&l), Ok(2));
    }

    #[test]
    fn decompose_small() {
        let script = decompose(&grid(3, 4).unwrap()).unwrap();
        assert_eq!(script, ForkScript { grid: (3, 4), steps: vec![] });
        let script = decompose(&s7()).unwrap();
        assert_eq!(script.grid, (2, 2));
        assert_eq!(script.steps, vec![CellRef { o_height: 0, o_index: 0, c_index: 0 }]);
        assert!(replay(&script).unwrap().same_diagram(&s7()));
        assert_eq!(rank(&s7()), Ok(1));
    }

    #[test]
    fn replay_errors() {
        let script = ForkScript { grid: (3, 3), steps: vec![] };
        let g = replay(&script).unwrap();
        assert_eq!(g.find(&grid_label(2, 2)), Some(g.top()));
        let bad = ForkScript { grid: (2, 2), steps: vec![CellRef { o_height: 0, o_index: 0, c_index: 0 }, CellRef { o_height: 5, o_index: 0, c_index: 0 }] };
        assert!(matches!(replay(&bad), Err(ForkError::UnresolvableStep { step: 1, .. })));
    }

    #[test]
    fn rank_choices_are_unique() {
        let s = s7();
        let (l, _) = insert_fork(&s, &cells4(&s)[0]).unwrap();
        assert_eq!(ranks_over_all_choices(&l).unwrap().into_iter().collect::<Vec<_>>(), vec![2]);
    }
}
