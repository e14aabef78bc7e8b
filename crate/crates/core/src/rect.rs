//! Grids, boundary chains, corners and rectangular intervals.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::{validate, ElementId, LeveledLattice, RawLattice};
use crate::report::{Check, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridError {
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid({}, {}) needs both chains to have at least 2 elements", self.p, self.q)
    }
}

/// Label of the grid element with factor coordinates `(i, j)`.
pub fn grid_label(i: usize, j: usize) -> String {
    format!("g{i}_{j}")
}

/// Direct product of a `p`-element and a `q`-element chain, with the
/// `p`-chain along the lower-left boundary. Element `(i, j)` is labelled
/// `g{i}_{j}`.
pub fn grid(p: usize, q: usize) -> Result<LeveledLattice, GridError> {
    if p < 2 || q < 2 {
        return Err(GridError { p, q });
    }
    let id = |i: usize, j: usize| i * q + j;
    let mut levels = vec![Vec::new(); p + q - 1];
    for h in 0..p + q - 1 {
        // leftmost first: largest left-chain coordinate
        for i in (0..p).rev() {
            if h >= i && h - i < q {
                levels[h].push(id(i, h - i));
            }
        }
    }
    let mut covers = Vec::new();
    for i in 0..p {
        for j in 0..q {
            if i + 1 < p {
                covers.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < q {
                covers.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    let mut labels = vec![None; p * q];
    for i in 0..p {
        for j in 0..q {
            labels[id(i, j)] = Some(grid_label(i, j));
        }
    }
    Ok(validate(&RawLattice::new(levels, covers).with_labels(labels)).expect("grid is a planar lattice"))
}

/// Leftmost and rightmost maximal chains, bottom to top.
pub fn boundary_chains(l: &LeveledLattice) -> (Vec<ElementId>, Vec<ElementId>) {
    let walk = |pick_left: bool| {
        let mut x = l.bottom();
        let mut chain = vec![x];
        while x != l.top() {
            let ups = l.up_covers(x);
            x = if pick_left { ups[0] } else { ups[ups.len() - 1] };
            chain.push(x);
        }
        chain
    };
    (walk(true), walk(false))
}

/// Corners and boundary segments of a rectangular lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectFrame {
    pub left_corner: ElementId,
    pub right_corner: ElementId,
    /// `[0, c_l]`, bottom first.
    pub lower_left: Vec<ElementId>,
    /// `[0, c_r]`, bottom first.
    pub lower_right: Vec<ElementId>,
    /// `[c_l, 1]`, bottom first.
    pub upper_left: Vec<ElementId>,
    /// `[c_r, 1]`, bottom first.
    pub upper_right: Vec<ElementId>,
}

/// Why [`corners`] failed: the non-bound doubly irreducible elements found
/// on each boundary chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotRectangular {
    pub left: Vec<ElementId>,
    pub right: Vec<ElementId>,
}

impl fmt::Display for NotRectangular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "not rectangular: doubly irreducible elements on the left boundary {:?}, on the right boundary {:?}",
            self.left, self.right
        )
    }
}

pub fn corners(l: &LeveledLattice) -> Result<RectFrame, NotRectangular> {
    let (left, right) = boundary_chains(l);
    let irreducible = |chain: &[ElementId]| -> Vec<ElementId> {
        chain
            .iter()
            .copied()
            .filter(|&x| x != l.bottom() && x != l.top() && l.is_doubly_irreducible(x))
            .collect()
    };
    let (dl, dr) = (irreducible(&left), irreducible(&right));
    let fail = || NotRectangular { left: dl.clone(), right: dr.clone() };
    if dl.len() != 1 || dr.len() != 1 {
        return Err(fail());
    }
    let (cl, cr) = (dl[0], dr[0]);
    if l.comparable(cl, cr) || l.meet(cl, cr) != l.bottom() || l.join(cl, cr) != l.top() || l.left_of(cl, cr) != Ok(true) {
        return Err(fail());
    }
    let split = |chain: &[ElementId], c: ElementId| {
        let k = chain.iter().position(|&x| x == c).unwrap();
        (chain[..=k].to_vec(), chain[k..].to_vec())
    };
    let (lower_left, upper_left) = split(&left, cl);
    let (lower_right, upper_right) = split(&right, cr);
    Ok(RectFrame {
        left_corner: cl,
        right_corner: cr,
        lower_left,
        lower_right,
        upper_left,
        upper_right,
    })
}

/// Slim rectangular: semimodular, slim, and with complementary corners.
pub fn is_sr(l: &LeveledLattice) -> bool {
    l.is_semimodular() && l.is_slim() && corners(l).is_ok()
}

/// `[o, i]` with complementary `a`, `b` and `a` to the left of `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RectInterval {
    pub o: ElementId,
    pub i: ElementId,
    pub a: ElementId,
    pub b: ElementId,
}

/// Every rectangular interval together with every witnessing pair.
pub fn rectangular_intervals(l: &LeveledLattice) -> Vec<RectInterval> {
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if l.left_of(a, b) == Ok(true) {
                out.push(RectInterval {
                    o: l.meet(a, b),
                    i: l.join(a, b),
                    a,
                    b,
                });
            }
        }
    }
    out.sort();
    out
}

fn subject(l: &LeveledLattice, o: ElementId, i: ElementId) -> String {
    format!("[{}, {}]", l.label(o), l.label(i))
}

/// Restricts `l` to each rectangular interval and checks that the result is
/// slim rectangular.
pub fn verify_main_theorem(l: &LeveledLattice) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut cache: BTreeMap<(ElementId, ElementId), bool> = BTreeMap::new();
    for r in rectangular_intervals(l) {
        let ok = *cache
            .entry((r.o, r.i))
            .or_insert_with(|| l.interval(r.o, r.i).map(|(sub, _)| is_sr(&sub)).unwrap_or(false));
        report.record(
            Check::IntervalIsSlimRectangular,
            ok,
            &subject(l, r.o, r.i),
            &[r.o, r.i, r.a, r.b],
            "rectangular interval is not slim rectangular",
        );
    }
    report
}

/// Lower boundary, meet decomposition and left-middle-right identities.
///
/// The lower boundary is checked against every witnessing pair `a`, `b`:
/// `[o, a]` and `[o, b]` are chains whose elements other than `a`, `b` have
/// two upper covers inside `I`. Meet decomposition is checked against the
/// corners of `I` itself, on intervals that have corners. The third identity
/// runs over all triples of `l`.
pub fn verify_corollaries(l: &LeveledLattice) -> VerificationReport {
    let mut report = VerificationReport::new();
    let mut restricted: BTreeMap<(ElementId, ElementId), Option<(LeveledLattice, Vec<ElementId>)>> = BTreeMap::new();
    let intervals = rectangular_intervals(l);
    for r in &intervals {
        let name = subject(l, r.o, r.i);
        let Some((sub, back)) = restricted.entry((r.o, r.i)).or_insert_with(|| l.interval(r.o, r.i)) else {
            report.fail(Check::LowerBoundary, &name, &[r.o, r.i], "interval does not restrict to a valid diagram");
            continue;
        };
        let local = |x: ElementId| back.iter().position(|&y| y == x).expect("element of the interval");
        let (a, b) = (local(r.a), local(r.b));
        let is_chain = |c: ElementId| {
            let below = sub.ideal(c);
            below.iter().all(|&x| below.iter().all(|&y| sub.comparable(x, y)))
        };
        let chains = is_chain(a) && is_chain(b);
        let reducible = sub
            .ideal(a)
            .into_iter()
            .chain(sub.ideal(b))
            .filter(|&x| x != a && x != b)
            .find(|&x| sub.up_covers(x).len() < 2);
        let mut witness = vec![r.a, r.b];
        witness.extend(reducible.map(|x| back[x]));
        report.record(
            Check::LowerBoundary,
            chains && reducible.is_none(),
            &name,
            &witness,
            "lower boundary is not two chains of meet-reducible elements",
        );
    }

    for (&(o, i), entry) in &restricted {
        let Some((sub, back)) = entry else { continue };
        let Ok(frame) = corners(sub) else { continue };
        let name = subject(l, o, i);
        let (a, b) = (back[frame.left_corner], back[frame.right_corner]);
        for x in sub.elements().map(|x| back[x]) {
            let rebuilt = l.join(l.meet(x, a), l.meet(x, b));
            report.record(
                Check::MeetDecomposition,
                rebuilt == x,
                &name,
                &[x, a, b],
                format!("(x ∧ a) ∨ (x ∧ b) = {} differs from x = {}", l.label(rebuilt), l.label(x)),
            );
        }
    }

    for b in l.elements() {
        for a in l.elements() {
            if l.left_of(a, b) != Ok(true) {
                continue;
            }
            for c in l.elements() {
                if l.left_of(b, c) != Ok(true) || l.comparable(a, c) {
                    continue;
                }
                let rebuilt = l.join(l.meet(b, a), l.meet(b, c));
                report.record(
                    Check::LeftMiddleRight,
                    rebuilt == b,
                    "L",
                    &[a, b, c],
                    "(b ∧ a) ∨ (b ∧ c) differs from b",
                );
            }
        }
    }
    report
}

impl core::error::Error for GridError {}
impl core::error::Error for NotRectangular {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{chain, m3, s7};

    fn g(l: &LeveledLattice, i: usize, j: usize) -> ElementId {
        l.find(&grid_label(i, j)).unwrap()
    }

    #[test]
    fn small_grids() {
        let b2 = grid(2, 2).unwrap();
        assert_eq!(b2.len(), 4);
        let (a, b) = (g(&b2, 1, 0), g(&b2, 0, 1));
        assert_eq!(b2.left_of(a, b), Ok(true));
        assert_eq!(b2.meet(a, b), b2.bottom());
        assert_eq!(b2.join(a, b), b2.top());

        let g33 = grid(3, 3).unwrap();
        assert_eq!(g33.len(), 9);
        assert_eq!(g33.height(g33.top()), 4);
        assert!(g33.is_semimodular() && g33.is_slim() && g33.is_distributive());
        assert!(grid(1, 3).is_err());
    }

    #[test]
    fn boundaries() {
        let c = chain(3);
        let (l, r) = boundary_chains(&c);
        assert_eq!(l, vec![0, 1, 2]);
        assert_eq!(l, r);

        let s = s7();
        let names: Vec<&str> = boundary_chains(&s).0.iter().map(|&x| s.label(x)).collect();
        assert_eq!(names, ["o", "x1", "a", "t"]);

        let g33 = grid(3, 3).unwrap();
        let (left, _) = boundary_chains(&g33);
        let expect: Vec<ElementId> = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)].iter().map(|&(i, j)| g(&g33, i, j)).collect();
        assert_eq!(left, expect);
    }

    #[test]
    fn corner_detection() {
        let s = s7();
        let f = corners(&s).unwrap();
        assert_eq!((s.label(f.left_corner), s.label(f.right_corner)), ("a", "b"));
        assert!(corners(&chain(3)).is_err());
        let g33 = grid(3, 3).unwrap();
        let f = corners(&g33).unwrap();
        assert_eq!((f.left_corner, f.right_corner), (g(&g33, 2, 0), g(&g33, 0, 2)));
        assert_eq!(f.lower_left.len(), 3);
        assert_eq!(f.upper_right.len(), 3);
    }

    #[test]
    fn sr_examples() {
        assert!(is_sr(&s7()));
        assert!(!is_sr(&m3()));
        assert!(is_sr(&grid(2, 2).unwrap()));
    }

    #[test]
    fn intervals() {
        let s = s7();
        let f = corners(&s).unwrap();
        let all = rectangular_intervals(&s);
        assert!(all.contains(&RectInterval { o: s.bottom(), i: s.top(), a: f.left_corner, b: f.right_corner }));
        assert!(rectangular_intervals(&chain(3)).is_empty());

        let g33 = grid(3, 3).unwrap();
        let want = RectInterval { o: g(&g33, 0, 0), i: g(&g33, 1, 1), a: g(&g33, 1, 0), b: g(&g33, 0, 1) };
        assert!(rectangular_intervals(&g33).contains(&want));
    }

    #[test]
    fn theorem_and_corollaries_on_small_cases() {
        for l in [s7(), grid(4, 4).unwrap(), grid(2, 3).unwrap()] {
            let r = verify_main_theorem(&l);
            assert!(r.passed(), "{r}");
            let r = verify_corollaries(&l);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn s7_meet_decomposition_of_m() {
        let s = s7();
        let (m, a, b) = (s.find("m").unwrap(), s.find("a").unwrap(), s.find("b").unwrap());
        assert_eq!(s.join(s.meet(m, a), s.meet(m, b)), m);
    }

    #[test]
    fn m3_fails_the_interval_check() {
        let r = verify_main_theorem(&m3());
        assert!(!r.passed());
    }
}
