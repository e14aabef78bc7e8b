use std::collections::BTreeSet;

use proptest::prelude::*;
use slimrect_core::diagram::{classify, coordinates_of, natural_diagram, psi};
use slimrect_core::fork::{cells4, decompose, insert_fork, rank, replay};
use slimrect_core::rect::{corners, is_sr};
use slimrect_core::{canonical_code, grid, validate, LeveledLattice, Point, RawLattice, Q};

/// Grid dimensions and a list of cell choices, each reduced modulo the
/// number of cells available at that step.
fn scripts() -> impl Strategy<Value = (usize, usize, Vec<usize>)> {
    (2usize..=4, 2usize..=4, prop::collection::vec(0usize..64, 0..=3))
}

fn build(p: usize, q: usize, picks: &[usize]) -> LeveledLattice {
    let mut l = grid(p, q).unwrap();
    for &k in picks {
        let cells = cells4(&l);
        l = insert_fork(&l, &cells[k % cells.len()]).unwrap().0;
    }
    l
}

fn relabel(l: &LeveledLattice, perm: &[usize]) -> RawLattice {
    let raw = l.to_raw();
    let mut labels = vec![None; raw.len()];
    for (x, name) in raw.labels.iter().enumerate() {
        labels[perm[x]] = name.clone();
    }
    let mut covers: Vec<(usize, usize)> = raw.covers.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    covers.reverse();
    RawLattice {
        levels: raw.levels.iter().map(|lv| lv.iter().map(|&x| perm[x]).collect()).collect(),
        covers,
        labels,
    }
}

fn ratio(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_lattices_are_slim_rectangular((p, q, picks) in scripts()) {
        let l = build(p, q, &picks);
        prop_assert!(is_sr(&l));
        prop_assert!(l.is_semimodular());
        prop_assert!(l.is_slim());
    }

    #[test]
    fn left_of_is_antisymmetric_and_chain_independent((p, q, picks) in scripts()) {
        let l = build(p, q, &picks);
        for a in l.elements() {
            for b in l.elements() {
                if a == b || l.comparable(a, b) {
                    prop_assert!(l.left_of(a, b).is_err());
                    continue;
                }
                let ab = l.left_of(a, b).unwrap();
                prop_assert_ne!(ab, l.left_of(b, a).unwrap());
                // every element comparable with b at a's height sits on the same side of a
                let sides: BTreeSet<bool> = l.levels()[l.height(a)]
                    .iter()
                    .filter(|&&c| l.comparable(c, b))
                    .map(|&c| l.position(a) < l.position(c))
                    .collect();
                prop_assert_eq!(sides.into_iter().collect::<Vec<_>>(), vec![ab]);
            }
        }
    }

    #[test]
    fn canonical_code_ignores_relabeling((p, q, picks) in scripts(), seed in any::<u64>()) {
        let l = build(p, q, &picks);
        let mut perm: Vec<usize> = (0..l.len()).collect();
        let mut s = seed | 1;
        for k in (1..perm.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(k, (s % (k as u64 + 1)) as usize);
        }
        let other = validate(&relabel(&l, &perm)).unwrap();
        prop_assert_eq!(canonical_code(&other), canonical_code(&l));
        prop_assert_eq!(canonical_code(&l.mirror()), canonical_code(&l));
    }

    #[test]
    fn fork_size_law((p, q, picks) in scripts(), pick in 0usize..64) {
        let l = build(p, q, &picks);
        let cells = cells4(&l);
        let (bigger, trace) = insert_fork(&l, &cells[pick % cells.len()]).unwrap();
        prop_assert!(!trace.left.is_empty() && !trace.right.is_empty());
        prop_assert_eq!(bigger.len(), l.len() + 1 + trace.left.len() + trace.right.len());
        prop_assert!(is_sr(&bigger));
    }

    #[test]
    fn rank_counts_insertions((p, q, picks) in scripts(), pick in 0usize..64) {
        let l = build(p, q, &picks);
        let before = rank(&l).unwrap();
        prop_assert_eq!(before, picks.len());
        let cells = cells4(&l);
        let (bigger, _) = insert_fork(&l, &cells[pick % cells.len()]).unwrap();
        prop_assert_eq!(rank(&bigger).unwrap(), before + 1);
    }

    #[test]
    fn decompose_then_replay((p, q, picks) in scripts()) {
        let l = build(p, q, &picks);
        let script = decompose(&l).unwrap();
        prop_assert_eq!(script.steps.len(), picks.len());
        prop_assert_eq!(canonical_code(&replay(&script).unwrap()), canonical_code(&l));
    }

    #[test]
    fn slope_class_survives_scaling(
        x in -20i64..20, y in -20i64..20, dx in -20i64..20, dy in 1i64..20, n in 1i64..9, d in 1i64..9,
    ) {
        let lower = Point::new(Q::from_integer(x), Q::from_integer(y));
        let upper = Point::new(Q::from_integer(x + dx), Q::from_integer(y + dy));
        let s = ratio(n, d);
        let scaled = |p: Point| Point::new(p.x * s, p.y * s);
        prop_assert_eq!(classify(lower, upper), classify(scaled(lower), scaled(upper)));
    }

    #[test]
    fn coordinates_recover_psi((p, q, picks) in scripts(), units in prop::collection::vec((1i64..7, 1i64..5), 16)) {
        let l = build(p, q, &picks);
        let f = corners(&l).unwrap();
        let (nl, nr) = (f.lower_left.len() - 1, f.lower_right.len() - 1);
        let left: Vec<Q> = units.iter().cycle().take(nl).map(|&(n, d)| ratio(n, d)).collect();
        let right: Vec<Q> = units.iter().rev().cycle().take(nr).map(|&(n, d)| ratio(n, d)).collect();
        let d = natural_diagram(&l, &left, &right).unwrap();
        prop_assert_eq!(coordinates_of(&d).unwrap(), psi(&l).unwrap());
    }
}

#[test]
fn disjoint_forks_commute() {
    let g = grid(4, 4).unwrap();
    let cells = cells4(&g);
    let bottom = *cells.iter().find(|c| c.o == g.bottom()).unwrap();
    let top = *cells.iter().find(|c| c.i == g.top()).unwrap();
    let code_of = |first, second: &dyn Fn(&LeveledLattice) -> slimrect_core::Cell4| {
        let (l, _) = insert_fork(&g, &first).unwrap();
        let c = second(&l);
        canonical_code(&insert_fork(&l, &c).unwrap().0)
    };
    let one = code_of(bottom, &|l| *cells4(l).iter().find(|c| c.i == l.top()).unwrap());
    let two = code_of(top, &|l| *cells4(l).iter().find(|c| c.o == l.bottom()).unwrap());
    assert_eq!(one, two);
}
