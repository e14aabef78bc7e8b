use std::collections::BTreeSet;

use slimrect_core::enumerate::oracle_join_irreducibles_two_chains;
use slimrect_core::fork::{cells4, insert_fork, rank, replay};
use slimrect_core::lattice::{m3, s7};
use slimrect_core::rect::{is_sr, rectangular_intervals, verify_main_theorem};
use slimrect_core::{
    canonical_code, enumerate_sr, grid, validate, CellRef, ForkScript, LeveledLattice, Limits, RawLattice,
};

/// Order relation from covers alone, by transitive closure.
fn order_of(l: &LeveledLattice) -> Vec<Vec<bool>> {
    let n = l.len();
    let mut le = vec![vec![false; n]; n];
    for x in 0..n {
        le[x][x] = true;
    }
    for (u, v) in l.cover_pairs() {
        le[u][v] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    le
}

/// Order isomorphism by backtracking over height-preserving bijections.
fn isomorphic(a: &LeveledLattice, b: &LeveledLattice) -> bool {
    let profile = |l: &LeveledLattice| l.levels().iter().map(Vec::len).collect::<Vec<_>>();
    if a.len() != b.len() || profile(a) != profile(b) {
        return false;
    }
    let (la, lb) = (order_of(a), order_of(b));
    let n = a.len();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        x: usize,
        a: &LeveledLattice,
        b: &LeveledLattice,
        la: &[Vec<bool>],
        lb: &[Vec<bool>],
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if x == a.len() {
            return true;
        }
        for &y in &b.levels()[a.height(x)] {
            if used[y] || a.up_covers(x).len() != b.up_covers(y).len() {
                continue;
            }
            let fits = (0..x).all(|w| la[w][x] == lb[image[w]][y] && la[x][w] == lb[y][image[w]]);
            if fits {
                image[x] = y;
                used[y] = true;
                if extend(x + 1, a, b, la, lb, image, used) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    extend(0, a, b, &la, &lb, &mut image, &mut used)
}

#[test]
fn universe_members_are_pairwise_non_isomorphic() {
    let u = enumerate_sr(3, 3, 2, Limits::default()).unwrap();
    let members: Vec<&LeveledLattice> = u.iter().map(|(_, m)| &m.lattice).collect();
    assert!(members.len() > 2);
    for (k, a) in members.iter().enumerate() {
        assert!(isomorphic(a, a));
        assert!(isomorphic(a, &a.mirror()));
        for b in &members[k + 1..] {
            assert!(!isomorphic(a, b), "{} and {} elements", a.len(), b.len());
        }
    }
}

#[test]
fn tiny_universes() {
    let u = enumerate_sr(2, 2, 0, Limits::default()).unwrap();
    assert_eq!(u.len(), 1);
    let u = enumerate_sr(2, 2, 1, Limits::default()).unwrap();
    assert_eq!(u.len(), 2);
    assert!(u.members.contains_key(&canonical_code(&s7())));
}

/// Depth-first generation visiting cells in reverse order; must reach the
/// same code set as breadth-first enumeration.
#[test]
fn enumeration_is_confluent() {
    fn walk(l: &LeveledLattice, depth: usize, seen: &mut BTreeSet<Vec<u8>>) {
        if !seen.insert(canonical_code(l).0) || depth == 0 {
            return;
        }
        for cell in cells4(l).iter().rev() {
            walk(&insert_fork(l, cell).unwrap().0, depth - 1, seen);
        }
    }
    let mut seen = BTreeSet::new();
    for (p, q) in [(3, 3), (3, 2), (2, 3), (2, 2)] {
        walk(&grid(p, q).unwrap(), 2, &mut seen);
    }
    let u = enumerate_sr(3, 3, 2, Limits::default()).unwrap();
    let codes: BTreeSet<Vec<u8>> = u.iter().map(|(c, _)| c.0.clone()).collect();
    assert_eq!(codes, seen);
}

#[test]
fn slim_oracle_agrees_on_universe() {
    let u = enumerate_sr(3, 3, 2, Limits::default()).unwrap();
    for (_, m) in u.iter() {
        assert!(m.lattice.is_slim());
        assert!(oracle_join_irreducibles_two_chains(&m.lattice));
    }
}

/// `M₃` with a two-element chain glued below and above.
fn m3_glued() -> LeveledLattice {
    let raw = RawLattice::new(
        vec![vec![0], vec![1], vec![2, 3, 4], vec![5], vec![6]],
        vec![(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5), (5, 6)],
    );
    validate(&raw).unwrap()
}

/// `grid(2,3)` with a third middle element in its lower cell.
fn grid_with_m3_cell() -> LeveledLattice {
    let raw = RawLattice::new(
        vec![vec![0], vec![1, 2, 3], vec![4, 5], vec![6]],
        vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6)],
    );
    validate(&raw).unwrap()
}

#[test]
fn slim_oracle_negative_controls() {
    for l in [m3(), m3_glued(), grid_with_m3_cell()] {
        assert!(l.is_semimodular());
        assert!(!l.is_slim());
        assert!(!oracle_join_irreducibles_two_chains(&l));
        assert!(!is_sr(&l));
    }
}

#[test]
fn grid_cells_count() {
    for p in 2..=5 {
        for q in 2..=5 {
            let g = grid(p, q).unwrap();
            assert_eq!(g.len(), p * q);
            assert_eq!(cells4(&g).len(), (p - 1) * (q - 1));
            assert_eq!(rank(&g), Ok(0));
        }
    }
}

/// A fork inserted into `grid(3,3)` at the top cell, drawn once as built and
/// once reflected: different drawings of the same lattice share a code.
#[test]
fn two_drawings_of_one_fork_extension() {
    let g = grid(3, 3).unwrap();
    let top = *cells4(&g).iter().find(|c| c.i == g.top()).unwrap();
    let (l, _) = insert_fork(&g, &top).unwrap();
    assert_eq!(l.len(), 14);
    let mirrored = validate(&l.mirror().to_raw()).unwrap();
    let names = |l: &LeveledLattice| -> Vec<String> { l.labels().to_vec() };
    assert_ne!(names(&mirrored), names(&l));
    assert_eq!(canonical_code(&mirrored), canonical_code(&l));
    let by_script = replay(&ForkScript {
        grid: (3, 3),
        steps: vec![top.reference(&g)],
    })
    .unwrap();
    assert_eq!(top.reference(&g), CellRef { o_height: 2, o_index: 1, c_index: 0 });
    assert_eq!(canonical_code(&by_script), canonical_code(&l));
}

fn doubly_irreducible(le: &[Vec<bool>], set: &[usize], x: usize) -> bool {
    let covers = |lo: usize, hi: usize| {
        lo != hi && le[lo][hi] && !set.iter().any(|&z| z != lo && z != hi && le[lo][z] && le[z][hi])
    };
    set.iter().filter(|&&y| covers(y, x)).count() == 1 && set.iter().filter(|&&y| covers(x, y)).count() == 1
}

/// Two forks on `grid(2,3)`: the interval above the lower fork's right
/// trajectory element holds a complementary pair, yet has three doubly
/// irreducible elements besides its bounds, so it is not rectangular.
#[test]
fn complementary_pair_does_not_force_rectangular() {
    let l = replay(&ForkScript {
        grid: (2, 3),
        steps: vec![
            CellRef { o_height: 1, o_index: 1, c_index: 0 },
            CellRef { o_height: 0, o_index: 0, c_index: 0 },
        ],
    })
    .unwrap();
    assert!(is_sr(&l));
    let le = order_of(&l);
    let (o, i) = (l.find("y2_1").unwrap(), l.top());
    let set: Vec<usize> = l.elements().filter(|&x| le[o][x] && le[x][i]).collect();
    assert_eq!(set.len(), 9);

    let meet_in = |a: usize, b: usize| {
        let lower: Vec<usize> = set.iter().copied().filter(|&z| le[z][a] && le[z][b]).collect();
        lower.iter().copied().find(|&z| lower.iter().all(|&w| le[w][z]))
    };
    let join_in = |a: usize, b: usize| {
        let upper: Vec<usize> = set.iter().copied().filter(|&z| le[a][z] && le[b][z]).collect();
        upper.iter().copied().find(|&z| upper.iter().all(|&w| le[z][w]))
    };
    let (a, b) = (l.find("m2").unwrap(), l.find("g0_2").unwrap());
    assert_eq!(meet_in(a, b), Some(o));
    assert_eq!(join_in(a, b), Some(i));

    let inner: Vec<&str> = set
        .iter()
        .copied()
        .filter(|&x| x != o && x != i && doubly_irreducible(&le, &set, x))
        .map(|x| l.label(x))
        .collect();
    assert_eq!(inner, ["m2", "g1_1", "g0_2"]);

    let (sub, _) = l.interval(o, i).unwrap();
    assert!(sub.is_slim() && sub.is_semimodular());
    assert!(!is_sr(&sub));
    assert!(rectangular_intervals(&l).iter().any(|r| (r.o, r.i, r.a, r.b) == (o, i, a, b)));
    assert!(!verify_main_theorem(&l).passed());
}
