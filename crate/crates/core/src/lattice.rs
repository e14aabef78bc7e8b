//! Finite graded planar lattices stored as a leveled, left-to-right ordered
//! cover diagram, plus the order-theoretic predicates used by every other
//! module.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Dense element index, `0..len`.
pub type ElementId = usize;

/// Unvalidated input: an ordered list of levels over the ids `0..n` plus the
/// cover pairs `(lower, upper)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawLattice {
    pub levels: Vec<Vec<ElementId>>,
    pub covers: Vec<(ElementId, ElementId)>,
    pub labels: Vec<Option<String>>,
}

impl RawLattice {
    pub fn new(levels: Vec<Vec<ElementId>>, covers: Vec<(ElementId, ElementId)>) -> Self {
        let n = levels.iter().map(Vec::len).sum();
        RawLattice {
            levels,
            covers,
            labels: vec![None; n],
        }
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefectKind {
    NotALattice,
    NotGraded,
    CrossingEdges,
    NotBounded,
}

impl fmt::Display for DefectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefectKind::NotALattice => "not-a-lattice",
            DefectKind::NotGraded => "not-graded",
            DefectKind::CrossingEdges => "crossing-edges",
            DefectKind::NotBounded => "not-bounded",
        })
    }
}

/// A violated invariant with the raw ids that exhibit it.
///
/// Witness layouts:
/// * `NotGraded`: `[lower, upper]` of a cover that skips or reverses a level.
/// * `NotBounded`: the offending extremal elements.
/// * `CrossingEdges`: `[u1, v1, u2, v2]`, `u1` left of `u2` but `v1` right of `v2`.
/// * `NotALattice`: `[x, y, p, q]` where `p`, `q` are two distinct minimal upper
///   (or maximal lower) bounds of `x`, `y`; `[x, y]` when no common bound exists.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeDefect {
    pub kind: DefectKind,
    pub witness: Vec<ElementId>,
}

impl fmt::Display for LatticeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.kind, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// Indices out of range, duplicated, or missing from the levels.
    Malformed(String),
    Defects(Vec<LatticeDefect>),
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Malformed(msg) => write!(f, "malformed lattice: {msg}"),
            LatticeError::Defects(ds) => {
                write!(f, "invalid lattice:")?;
                for d in ds {
                    write!(f, " [{d}]")?;
                }
                Ok(())
            }
        }
    }
}

/// Transitive closure of the cover relation over raw ids. Only meaningful
/// when every cover goes from a level to a strictly higher one.
fn order_matrix(n: usize, level_of: &[usize], levels: &[Vec<ElementId>], covers: &[(ElementId, ElementId)]) -> Vec<bool> {
    let mut down: Vec<Vec<ElementId>> = vec![Vec::new(); n];
    for &(u, v) in covers {
        down[v].push(u);
    }
    let mut leq = vec![false; n * n];
    let mut order: Vec<ElementId> = levels.iter().flatten().copied().collect();
    order.sort_by_key(|&x| level_of[x]);
    for &y in &order {
        leq[y * n + y] = true;
        for &u in &down[y] {
            for x in 0..n {
                if leq[x * n + u] {
                    leq[x * n + y] = true;
                }
            }
        }
    }
    leq
}

/// Pairwise bound scan; returns a defect per pair lacking a unique join or meet.
fn lattice_defects(n: usize, leq: &[bool]) -> Vec<LatticeDefect> {
    let le = |a: usize, b: usize| leq[a * n + b];
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if le(x, y) || le(y, x) {
                continue;
            }
            let ub: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            let minimal: Vec<usize> = ub
                .iter()
                .copied()
                .filter(|&z| !ub.iter().any(|&w| w != z && le(w, z)))
                .collect();
            match minimal.len() {
                0 => out.push(LatticeDefect { kind: DefectKind::NotALattice, witness: vec![x, y] }),
                1 => {}
                _ => out.push(LatticeDefect {
                    kind: DefectKind::NotALattice,
                    witness: vec![x, y, minimal[0], minimal[1]],
                }),
            }
            let lb: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
            let maximal: Vec<usize> = lb
                .iter()
                .copied()
                .filter(|&z| !lb.iter().any(|&w| w != z && le(z, w)))
                .collect();
            match maximal.len() {
                0 => out.push(LatticeDefect { kind: DefectKind::NotALattice, witness: vec![x, y] }),
                1 => {}
                _ => out.push(LatticeDefect {
                    kind: DefectKind::NotALattice,
                    witness: vec![x, y, maximal[0], maximal[1]],
                }),
            }
        }
    }
    out
}

fn check_well_formed(raw: &RawLattice) -> Result<Vec<usize>, LatticeError> {
    let n = raw.len();
    if n == 0 {
        return Err(LatticeError::Malformed("no elements".into()));
    }
    let mut level_of = vec![usize::MAX; n];
    for (h, level) in raw.levels.iter().enumerate() {
        if level.is_empty() {
            return Err(LatticeError::Malformed(format!("level {h} is empty")));
        }
        for &x in level {
            if x >= n {
                return Err(LatticeError::Malformed(format!("element {x} out of range 0..{n}")));
            }
            if level_of[x] != usize::MAX {
                return Err(LatticeError::Malformed(format!("element {x} listed twice")));
            }
            level_of[x] = h;
        }
    }
    if raw.labels.len() != n {
        return Err(LatticeError::Malformed(format!("{} labels for {n} elements", raw.labels.len())));
    }
    let mut seen = BTreeSet::new();
    for (k, &(u, v)) in raw.covers.iter().enumerate() {
        if u >= n || v >= n {
            return Err(LatticeError::Malformed(format!("cover {k} references an element out of range")));
        }
        if u == v {
            return Err(LatticeError::Malformed(format!("cover {k} is a loop")));
        }
        if !seen.insert((u, v)) {
            return Err(LatticeError::Malformed(format!("cover {k} is duplicated")));
        }
    }
    Ok(level_of)
}

fn structural_defects(raw: &RawLattice, level_of: &[usize]) -> (Vec<LatticeDefect>, bool) {
    let n = raw.len();
    let top_level = raw.levels.len() - 1;
    let mut defects = Vec::new();
    let mut upward = true;
    for &(u, v) in &raw.covers {
        if level_of[v] != level_of[u] + 1 {
            defects.push(LatticeDefect { kind: DefectKind::NotGraded, witness: vec![u, v] });
            if level_of[v] <= level_of[u] {
                upward = false;
            }
        }
    }
    if raw.levels[0].len() != 1 {
        defects.push(LatticeDefect { kind: DefectKind::NotBounded, witness: raw.levels[0].clone() });
    }
    if top_level > 0 && raw.levels[top_level].len() != 1 {
        defects.push(LatticeDefect { kind: DefectKind::NotBounded, witness: raw.levels[top_level].clone() });
    }
    let mut has_down = vec![false; n];
    let mut has_up = vec![false; n];
    for &(u, v) in &raw.covers {
        has_up[u] = true;
        has_down[v] = true;
    }
    let stray_min: Vec<_> = (0..n).filter(|&x| level_of[x] > 0 && !has_down[x]).collect();
    if !stray_min.is_empty() {
        defects.push(LatticeDefect { kind: DefectKind::NotBounded, witness: stray_min });
    }
    let stray_max: Vec<_> = (0..n).filter(|&x| level_of[x] < top_level && !has_up[x]).collect();
    if !stray_max.is_empty() {
        defects.push(LatticeDefect { kind: DefectKind::NotBounded, witness: stray_max });
    }

    let mut pos = vec![0usize; n];
    for level in &raw.levels {
        for (k, &x) in level.iter().enumerate() {
            pos[x] = k;
        }
    }
    for h in 0..top_level {
        let strip: Vec<(ElementId, ElementId)> = raw
            .covers
            .iter()
            .copied()
            .filter(|&(u, v)| level_of[u] == h && level_of[v] == h + 1)
            .collect();
        for (k, &(u1, v1)) in strip.iter().enumerate() {
            for &(u2, v2) in &strip[k + 1..] {
                let (a, b) = if pos[u1] <= pos[u2] { ((u1, v1), (u2, v2)) } else { ((u2, v2), (u1, v1)) };
                if pos[a.0] < pos[b.0] && pos[a.1] > pos[b.1] {
                    defects.push(LatticeDefect {
                        kind: DefectKind::CrossingEdges,
                        witness: vec![a.0, a.1, b.0, b.1],
                    });
                }
            }
        }
    }
    (defects, upward)
}

impl LatticeDefect {
    /// Re-checks this defect against `raw`.
    pub fn exhibits(&self, raw: &RawLattice) -> bool {
        let Ok(level_of) = check_well_formed(raw) else {
            return false;
        };
        let n = raw.len();
        let w = &self.witness;
        if w.iter().any(|&x| x >= n) {
            return false;
        }
        match self.kind {
            DefectKind::NotGraded => {
                w.len() == 2 && raw.covers.contains(&(w[0], w[1])) && level_of[w[1]] != level_of[w[0]] + 1
            }
            DefectKind::NotBounded => {
                let top = raw.levels.len() - 1;
                let minimal = |x: usize| !raw.covers.iter().any(|&(_, v)| v == x);
                let maximal = |x: usize| !raw.covers.iter().any(|&(u, _)| u == x);
                (w.len() >= 2 && (w.iter().all(|&x| minimal(x)) || w.iter().all(|&x| maximal(x))))
                    || w.iter().all(|&x| (level_of[x] > 0 && minimal(x)) || (level_of[x] < top && maximal(x)))
            }
            DefectKind::CrossingEdges => {
                let pos = |x: usize| raw.levels[level_of[x]].iter().position(|&y| y == x).unwrap();
                w.len() == 4
                    && raw.covers.contains(&(w[0], w[1]))
                    && raw.covers.contains(&(w[2], w[3]))
                    && level_of[w[0]] == level_of[w[2]]
                    && level_of[w[1]] == level_of[w[3]]
                    && pos(w[0]) < pos(w[2])
                    && pos(w[1]) > pos(w[3])
            }
            DefectKind::NotALattice => {
                let leq = order_matrix(n, &level_of, &raw.levels, &raw.covers);
                let le = |a: usize, b: usize| leq[a * n + b];
                let (x, y) = (w[0], w[1]);
                if le(x, y) || le(y, x) {
                    return false;
                }
                if w.len() == 2 {
                    let no_ub = !(0..n).any(|z| le(x, z) && le(y, z));
                    let no_lb = !(0..n).any(|z| le(z, x) && le(z, y));
                    return no_ub || no_lb;
                }
                let (p, q) = (w[2], w[3]);
                let upper = le(x, p) && le(y, p) && le(x, q) && le(y, q);
                let lower = le(p, x) && le(p, y) && le(q, x) && le(q, y);
                p != q && !le(p, q) && !le(q, p) && (upper || lower)
            }
        }
    }
}

/// A validated finite graded planar lattice.
///
/// Element ids are assigned level by level, left to right. Upper and lower
/// cover lists are kept in left-to-right order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeveledLattice {
    levels: Vec<Vec<ElementId>>,
    height: Vec<usize>,
    pos: Vec<usize>,
    up: Vec<Vec<ElementId>>,
    down: Vec<Vec<ElementId>>,
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<ElementId>,
    join: Vec<ElementId>,
}

/// Checks every invariant of [`LeveledLattice`] and renumbers the elements
/// level-major. On failure every detected defect is returned.
pub fn validate(raw: &RawLattice) -> Result<LeveledLattice, LatticeError> {
    let level_of = check_well_formed(raw)?;
    let n = raw.len();
    let (mut defects, upward) = structural_defects(raw, &level_of);
    if upward {
        let leq = order_matrix(n, &level_of, &raw.levels, &raw.covers);
        defects.extend(lattice_defects(n, &leq));
    }
    if !defects.is_empty() {
        defects.sort();
        defects.dedup();
        return Err(LatticeError::Defects(defects));
    }

    let mut new_id = vec![0usize; n];
    let mut levels = Vec::with_capacity(raw.levels.len());
    let mut next = 0;
    for level in &raw.levels {
        let mut row = Vec::with_capacity(level.len());
        for &x in level {
            new_id[x] = next;
            row.push(next);
            next += 1;
        }
        levels.push(row);
    }
    let mut labels = vec![String::new(); n];
    for x in 0..n {
        labels[new_id[x]] = match &raw.labels[x] {
            Some(s) => s.clone(),
            None => format!("e{}", new_id[x]),
        };
    }
    let covers: Vec<(usize, usize)> = raw.covers.iter().map(|&(u, v)| (new_id[u], new_id[v])).collect();
    Ok(LeveledLattice::assemble(levels, &covers, labels))
}

impl LeveledLattice {
    /// Builds all derived tables. `levels` must already be level-major
    /// numbered and `covers` must satisfy the validated invariants.
    fn assemble(levels: Vec<Vec<ElementId>>, covers: &[(ElementId, ElementId)], labels: Vec<String>) -> Self {
        let n = labels.len();
        let mut height = vec![0; n];
        let mut pos = vec![0; n];
        for (h, level) in levels.iter().enumerate() {
            for (k, &x) in level.iter().enumerate() {
                height[x] = h;
                pos[x] = k;
            }
        }
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for &(u, v) in covers {
            up[u].push(v);
            down[v].push(u);
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_by_key(|&x| pos[x]);
        }
        // ids are level-major, so increasing id order is a linear extension
        let mut leq = vec![false; n * n];
        for y in 0..n {
            leq[y * n + y] = true;
            for &u in &down[y] {
                for x in 0..=u {
                    if leq[x * n + u] {
                        leq[x * n + y] = true;
                    }
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                // highest common lower bound; unique by validation
                let m = (0..n)
                    .rev()
                    .find(|&z| leq[z * n + x] && leq[z * n + y])
                    .expect("bounded");
                meet[x * n + y] = m;
                let j = (0..n).find(|&z| leq[x * n + z] && leq[y * n + z]).expect("bounded");
                join[x * n + y] = j;
            }
        }
        LeveledLattice {
            levels,
            height,
            pos,
            up,
            down,
            labels,
            leq,
            meet,
            join,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> core::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn levels(&self) -> &[Vec<ElementId>] {
        &self.levels
    }

    pub fn bottom(&self) -> ElementId {
        self.levels[0][0]
    }

    pub fn top(&self) -> ElementId {
        self.levels[self.levels.len() - 1][0]
    }

    /// Level index of `x`; the bottom has height 0.
    pub fn height(&self, x: ElementId) -> usize {
        self.height[x]
    }

    /// Length of a maximal chain.
    pub fn total_height(&self) -> usize {
        self.levels.len() - 1
    }

    /// Left-to-right index of `x` within its level.
    pub fn position(&self, x: ElementId) -> usize {
        self.pos[x]
    }

    pub fn up_covers(&self, x: ElementId) -> &[ElementId] {
        &self.up[x]
    }

    pub fn down_covers(&self, x: ElementId) -> &[ElementId] {
        &self.down[x]
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn covers(&self, lower: ElementId, upper: ElementId) -> bool {
        self.up[lower].contains(&upper)
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.join[x * self.len() + y]
    }

    /// All cover pairs `(lower, upper)`, bottom to top, left to right.
    pub fn cover_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.elements()
            .flat_map(|u| self.up[u].iter().map(move |&v| (u, v)))
            .collect()
    }

    /// Raw form of this lattice; `validate` of the result reproduces `self`.
    pub fn to_raw(&self) -> RawLattice {
        RawLattice {
            levels: self.levels.clone(),
            covers: self.cover_pairs(),
            labels: self.labels.iter().cloned().map(Some).collect(),
        }
    }

    /// Left-right reflection of the diagram.
    pub fn mirror(&self) -> LeveledLattice {
        let mut raw = self.to_raw();
        for level in &mut raw.levels {
            level.reverse();
        }
        validate(&raw).expect("mirror of a valid lattice is valid")
    }

    /// The interval `[lo, hi]` with the inherited left-to-right order, heights
    /// shifted so that `lo` sits at level 0. Returns the sublattice and the
    /// map from its ids back to ids of `self`.
    pub fn interval(&self, lo: ElementId, hi: ElementId) -> Option<(LeveledLattice, Vec<ElementId>)> {
        if !self.leq(lo, hi) {
            return None;
        }
        let members: Vec<ElementId> = self.elements().filter(|&x| self.leq(lo, x) && self.leq(x, hi)).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (k, &x) in members.iter().enumerate() {
            local[x] = k;
        }
        let base = self.height(lo);
        let mut levels = vec![Vec::new(); self.height(hi) - base + 1];
        for h in base..=self.height(hi) {
            for &x in &self.levels[h] {
                if local[x] != usize::MAX {
                    levels[h - base].push(local[x]);
                }
            }
        }
        let covers = members
            .iter()
            .flat_map(|&u| self.up[u].iter().filter(|&&v| local[v] != usize::MAX).map(move |&v| (u, v)))
            .map(|(u, v)| (local[u], local[v]))
            .collect();
        let labels = members.iter().map(|&x| Some(self.labels[x].clone())).collect();
        let raw = RawLattice { levels, covers, labels };
        let sub = validate(&raw).ok()?;
        // validate renumbers level-major; recover the parent ids through labels-free positions
        let mut back = vec![0; sub.len()];
        for (h, level) in sub.levels.iter().enumerate() {
            for (k, &x) in level.iter().enumerate() {
                back[x] = self.levels[h + base].iter().copied().filter(|&y| local[y] != usize::MAX).nth(k).unwrap();
            }
        }
        Some((sub, back))
    }

    /// Principal ideal `↓x`.
    pub fn ideal(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// Semimodularity: `a ∧ b ≺ a` implies `b ≺ a ∨ b`. Returns the first
    /// violating pair `(a, b)`.
    pub fn semimodularity_witness(&self) -> Option<(ElementId, ElementId)> {
        for a in self.elements() {
            for b in self.elements() {
                let m = self.meet(a, b);
                if self.covers(m, a) && !self.covers(b, self.join(a, b)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_semimodular(&self) -> bool {
        self.semimodularity_witness().is_none()
    }

    /// An `M₃` sublattice `[bottom, a, b, c, top]`, if one exists.
    pub fn m3_witness(&self) -> Option<[ElementId; 5]> {
        self.m3_in(&self.elements().collect::<Vec<_>>())
    }

    fn m3_in(&self, set: &[ElementId]) -> Option<[ElementId; 5]> {
        for (i, &a) in set.iter().enumerate() {
            for (j, &b) in set.iter().enumerate().skip(i + 1) {
                if self.comparable(a, b) {
                    continue;
                }
                let (lo, hi) = (self.meet(a, b), self.join(a, b));
                for &c in &set[j + 1..] {
                    if self.comparable(a, c) || self.comparable(b, c) {
                        continue;
                    }
                    if self.meet(a, c) == lo && self.meet(b, c) == lo && self.join(a, c) == hi && self.join(b, c) == hi {
                        return Some([lo, a, b, c, hi]);
                    }
                }
            }
        }
        None
    }

    /// An `N₅` sublattice `[bottom, x, z, y, top]` with `x < z` and `y`
    /// incomparable to both, if one exists within `set`.
    fn n5_in(&self, set: &[ElementId]) -> Option<[ElementId; 5]> {
        for &x in set {
            for &z in set {
                if !self.lt(x, z) {
                    continue;
                }
                for &y in set {
                    if self.comparable(x, y) || self.comparable(z, y) {
                        continue;
                    }
                    if self.meet(x, y) == self.meet(z, y) && self.join(x, y) == self.join(z, y) {
                        return Some([self.meet(x, y), x, z, y, self.join(x, y)]);
                    }
                }
            }
        }
        None
    }

    pub fn is_slim(&self) -> bool {
        self.m3_witness().is_none()
    }

    /// A pentagon or diamond sublattice inside `set` (which must be closed
    /// under meet and join), or `None` when `set` is distributive.
    pub fn distributivity_witness_in(&self, set: &[ElementId]) -> Option<[ElementId; 5]> {
        self.n5_in(set).or_else(|| self.m3_in(set))
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness_in(&self.elements().collect::<Vec<_>>()).is_none()
    }

    /// Distributivity of the principal ideal `↓c` as a sublattice.
    pub fn is_distributive_ideal(&self, c: ElementId) -> bool {
        self.distributivity_witness_in(&self.ideal(c)).is_none()
    }

    /// Element at height `h` on the chain through `x` obtained by walking
    /// leftmost covers (down or up).
    fn leftmost_chain_at(&self, x: ElementId, h: usize) -> ElementId {
        let mut z = x;
        while self.height[z] > h {
            z = self.down[z][0];
        }
        while self.height[z] < h {
            z = self.up[z][0];
        }
        z
    }

    /// `a` is to the left of `b`. Defined for incomparable pairs only: the
    /// element at `a`'s height on a maximal chain through `b` lies strictly
    /// to the right of `a` in the level order.
    pub fn left_of(&self, a: ElementId, b: ElementId) -> Result<bool, ComparablePair> {
        if self.comparable(a, b) {
            return Err(ComparablePair(a, b));
        }
        let z = self.leftmost_chain_at(b, self.height[a]);
        Ok(self.pos[a] < self.pos[z])
    }

    /// Doubly irreducible: exactly one lower and one upper cover.
    pub fn is_doubly_irreducible(&self, x: ElementId) -> bool {
        self.up[x].len() == 1 && self.down[x].len() == 1
    }

    pub fn is_join_irreducible(&self, x: ElementId) -> bool {
        self.down[x].len() == 1
    }

    /// Embedded-diagram equality ignoring labels.
    pub fn same_diagram(&self, other: &LeveledLattice) -> bool {
        self.levels == other.levels && self.up == other.up
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComparablePair(pub ElementId, pub ElementId);

impl fmt::Display for ComparablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "elements {} and {} are comparable", self.0, self.1)
    }
}

/// The chain `0 ≺ 1 ≺ … ≺ n-1`.
pub fn chain(n: usize) -> LeveledLattice {
    assert!(n >= 1);
    let levels = (0..n).map(|k| vec![k]).collect();
    let covers = (1..n).map(|k| (k - 1, k)).collect();
    validate(&RawLattice::new(levels, covers)).expect("chain")
}

/// The diamond `M₃`: bottom, three atoms, top.
pub fn m3() -> LeveledLattice {
    let raw = RawLattice::new(
        vec![vec![0], vec![1, 2, 3], vec![4]],
        vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )
    .with_labels(["0", "a", "b", "c", "1"].iter().map(|s| Some((*s).into())).collect());
    validate(&raw).expect("M3")
}

/// `S₇` drawn with the middle element between its corners.
///
/// Labels: `o`, `x1` (= m ∧ a), `y1` (= m ∧ b), `a`, `m`, `b`, `t`.
pub fn s7() -> LeveledLattice {
    let raw = RawLattice::new(
        vec![vec![0], vec![1, 2], vec![3, 4, 5], vec![6]],
        vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6), (4, 6), (5, 6)],
    )
    .with_labels(["o", "x1", "y1", "a", "m", "b", "t"].iter().map(|s| Some((*s).into())).collect());
    validate(&raw).expect("S7")
}

impl core::error::Error for LatticeError {}
impl core::error::Error for ComparablePair {}
