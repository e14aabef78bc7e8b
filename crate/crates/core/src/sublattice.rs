//! Role-labelled sublattice search: `M₃`, `N₅` and the two flavours of `S₇`.

use alloc::vec::Vec;

use crate::lattice::{ElementId, LeveledLattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pattern {
    M3,
    N5,
    S7Covering,
    S7Peak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum S7Kind {
    /// All nine edges are covers of the ambient lattice.
    Covering,
    /// Only `a ≺ t`, `m ≺ t`, `b ≺ t` are required to be covers.
    Peak,
}

/// An `S₇` sublattice `{o, m∧a, m∧b, a, b, m, t}` with `a` left of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct S7Occurrence {
    pub o: ElementId,
    pub xa: ElementId,
    pub yb: ElementId,
    pub a: ElementId,
    pub b: ElementId,
    pub m: ElementId,
    pub t: ElementId,
    pub kind: S7Kind,
}

impl S7Occurrence {
    pub fn elements(&self) -> [ElementId; 7] {
        [self.o, self.xa, self.yb, self.a, self.m, self.b, self.t]
    }

    /// The nine edges of `S₇` as `(lower, upper)` pairs.
    pub fn edges(&self) -> [(ElementId, ElementId); 9] {
        [
            (self.o, self.xa),
            (self.o, self.yb),
            (self.xa, self.a),
            (self.xa, self.m),
            (self.yb, self.m),
            (self.yb, self.b),
            (self.a, self.t),
            (self.m, self.t),
            (self.b, self.t),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Occurrence {
    /// `[bottom, a, b, c, top]`.
    M3([ElementId; 5]),
    /// `[bottom, x, z, y, top]` with `x < z`.
    N5([ElementId; 5]),
    S7(S7Occurrence),
}

/// Every `S₇` sublattice with top `t` and middle `m` whose three top edges
/// are covers. The caller filters by kind.
fn s7_candidates(l: &LeveledLattice, t: ElementId, out: &mut Vec<S7Occurrence>, covering: bool) {
    let tops = l.down_covers(t);
    for &m in tops {
        for &a in tops {
            for &b in tops {
                if a == m || b == m || a == b || l.left_of(a, b) != Ok(true) {
                    continue;
                }
                let xa = l.meet(m, a);
                let yb = l.meet(m, b);
                let o = l.meet(a, b);
                let set = [o, xa, yb, a, m, b, t];
                let distinct = set.iter().enumerate().all(|(k, x)| !set[..k].contains(x));
                if !distinct {
                    continue;
                }
                let shape = l.meet(xa, yb) == o
                    && l.join(xa, yb) == m
                    && l.meet(a, yb) == o
                    && l.meet(b, xa) == o
                    && l.join(a, yb) == t
                    && l.join(b, xa) == t
                    && l.lt(o, xa)
                    && l.lt(o, yb);
                if !shape {
                    continue;
                }
                let occ = S7Occurrence {
                    o,
                    xa,
                    yb,
                    a,
                    b,
                    m,
                    t,
                    kind: if covering { S7Kind::Covering } else { S7Kind::Peak },
                };
                if covering && !occ.edges().iter().all(|&(u, v)| l.covers(u, v)) {
                    continue;
                }
                out.push(occ);
            }
        }
    }
}

/// All `S₇` occurrences of the requested kind, ordered by top (bottom to
/// top, left to right), then middle, then left corner.
pub fn find_s7(l: &LeveledLattice, kind: S7Kind) -> Vec<S7Occurrence> {
    let mut out = Vec::new();
    for t in l.elements() {
        s7_candidates(l, t, &mut out, kind == S7Kind::Covering);
    }
    out
}

/// All occurrences of `pattern` in `l`, with role-labelled elements.
pub fn find_sublattice(l: &LeveledLattice, pattern: Pattern) -> Vec<Occurrence> {
    match pattern {
        Pattern::S7Covering => find_s7(l, S7Kind::Covering).into_iter().map(Occurrence::S7).collect(),
        Pattern::S7Peak => find_s7(l, S7Kind::Peak).into_iter().map(Occurrence::S7).collect(),
        Pattern::M3 => {
            let mut out = Vec::new();
            for a in l.elements() {
                for b in a + 1..l.len() {
                    if l.comparable(a, b) {
                        continue;
                    }
                    let (lo, hi) = (l.meet(a, b), l.join(a, b));
                    for c in b + 1..l.len() {
                        if l.comparable(a, c) || l.comparable(b, c) {
                            continue;
                        }
                        if [l.meet(a, c), l.meet(b, c)] == [lo, lo] && [l.join(a, c), l.join(b, c)] == [hi, hi] {
                            out.push(Occurrence::M3([lo, a, b, c, hi]));
                        }
                    }
                }
            }
            out
        }
        Pattern::N5 => {
            let mut out = Vec::new();
            for x in l.elements() {
                for z in l.elements().filter(|&z| l.lt(x, z)) {
                    for y in l.elements() {
                        if l.comparable(x, y) || l.comparable(z, y) {
                            continue;
                        }
                        if l.meet(x, y) == l.meet(z, y) && l.join(x, y) == l.join(z, y) {
                            out.push(Occurrence::N5([l.meet(x, y), x, z, y, l.join(x, y)]));
                        }
                    }
                }
            }
            out
        }
    }
}
