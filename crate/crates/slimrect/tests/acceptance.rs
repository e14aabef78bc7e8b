//! Acceptance suite: one PASS/FAIL line per criterion, with the time each
//! took against its budget. Exits non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use slimrect::render::render_svg;
use slimrect::universe::par_enumerate_sr;
use slimrect_core::diagram::{
    check_c1, check_c2, check_psi_embedding, classify_edges, coordinates_of, psi, psi_mirror, replay_diagram,
    unit_mirror_natural_diagram, unit_natural_diagram, verify_c2_uniqueness,
};
use slimrect_core::enumerate::oracle_join_irreducibles_two_chains;
use slimrect_core::fork::{cells4, decompose_steps, delete_fork, find_covering_s7, insert_fork, ranks_over_all_choices, replay, undo_fork};
use slimrect_core::lattice::{m3, s7};
use slimrect_core::rect::{corners, verify_corollaries, verify_main_theorem};
use slimrect_core::{canonical_code, grid, validate, Limits, LeveledLattice, RawLattice, SlopeClass, Universe, VerificationReport, Q};

struct Outcome {
    checked: usize,
    failed: usize,
    note: String,
}

impl Outcome {
    fn from_report(r: &VerificationReport) -> Self {
        Outcome { checked: r.tallies.values().sum::<u64>() as usize, failed: r.failures.len(), note: first_failure(r) }
    }
}

fn first_failure(r: &VerificationReport) -> String {
    r.failures.first().map(|f| format!("first failure: {} {}: {}", f.check, f.subject, f.message)).unwrap_or_default()
}

fn merged(parts: Vec<VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport::new();
    for p in parts {
        out.merge(p);
    }
    out
}

fn members(u: &Universe) -> Vec<&LeveledLattice> {
    u.iter().map(|(_, m)| &m.lattice).collect()
}

fn tally(results: Vec<Result<(), String>>) -> Outcome {
    let failed: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    Outcome { checked: results.len(), failed: failed.len(), note: failed.first().map(|m| format!("first failure: {m}")).unwrap_or_default() }
}

fn criterion_1(u: &Universe) -> Outcome {
    let mut results = Vec::new();
    let mut via_undo = 0;
    for (k, l) in members(u).into_iter().enumerate() {
        let code = canonical_code(l);
        for cell in cells4(l) {
            let r = (|| {
                let (bigger, trace) = insert_fork(l, &cell).map_err(|e| e.to_string())?;
                let s = find_covering_s7(&bigger, false)
                    .into_iter()
                    .find(|s| s.m == trace.m)
                    .ok_or("no covering S7 at the new middle element")?;
                let back = match delete_fork(&bigger, &s) {
                    Ok((back, _)) => back,
                    Err(_) => {
                        via_undo += 1;
                        undo_fork(&bigger, &s).map_err(|e| e.to_string())?.0
                    }
                };
                if canonical_code(&back) == code {
                    Ok(())
                } else {
                    Err("canonical codes differ".to_string())
                }
            })();
            results.push(r.map_err(|e| format!("member #{k} cell {}: {e}", cell.reference(l))));
        }
    }
    let mut out = tally(results);
    out.note = format!("{} inserted forks sat above older ones and were removed without the minimality gate {}", via_undo, out.note);
    out
}

fn criterion_2(u: &Universe) -> Outcome {
    tally(
        members(u)
            .par_iter()
            .enumerate()
            .map(|(k, l)| {
                let dec = decompose_steps(l).map_err(|e| format!("member #{k}: {e}"))?;
                for (j, st) in dec.steps.iter().enumerate() {
                    if !st.before.is_distributive_ideal(st.cell.c) || !st.before.is_distributive_ideal(st.cell.d) {
                        return Err(format!("member #{k} step {j}: ideal not distributive"));
                    }
                }
                let again = replay(&dec.script).map_err(|e| format!("member #{k}: {e}"))?;
                if canonical_code(&again) == canonical_code(l) {
                    Ok(())
                } else {
                    Err(format!("member #{k}: replay differs"))
                }
            })
            .collect(),
    )
}

fn criterion_3(u: &Universe) -> Outcome {
    tally(
        u.iter()
            .map(|(_, m)| m)
            .filter(|m| m.rank <= 3)
            .collect::<Vec<_>>()
            .par_iter()
            .enumerate()
            .map(|(k, m)| {
                let set = ranks_over_all_choices(&m.lattice).map_err(|e| format!("member #{k}: {e}"))?;
                if set.len() == 1 && set.contains(&m.rank) {
                    Ok(())
                } else {
                    Err(format!("member #{k}: ranks {set:?}, built with {}", m.rank))
                }
            })
            .collect(),
    )
}

fn criterion_4(u: &Universe) -> Outcome {
    let r = merged(members(u).par_iter().map(|l| verify_main_theorem(l)).collect());
    let mut out = Outcome::from_report(&r);
    let bad_members = members(u).par_iter().filter(|l| !verify_main_theorem(l).passed()).count();
    out.note = format!("{bad_members} of {} members affected; {}", u.len(), out.note);
    out
}

/// The fork of `grid(3,3)` in its top cell.
fn fourteen_element_example() -> LeveledLattice {
    let g = grid(3, 3).unwrap();
    let cell = cells4(&g).into_iter().find(|c| c.i == g.top()).unwrap();
    insert_fork(&g, &cell).unwrap().0
}

fn criterion_5(u: &Universe) -> Outcome {
    let mut parts: Vec<VerificationReport> = members(u).par_iter().map(|l| verify_corollaries(l)).collect();
    let extra = fourteen_element_example();
    assert_eq!(extra.len(), 14);
    parts.push(verify_corollaries(&grid(4, 4).unwrap()));
    parts.push(verify_corollaries(&extra));
    Outcome::from_report(&merged(parts))
}

fn criterion_6(u: &Universe) -> Outcome {
    Outcome::from_report(&merged(members(u).par_iter().map(|l| check_psi_embedding(l)).collect()))
}

fn criterion_7(u: &Universe) -> Outcome {
    let natural = merged(
        members(u)
            .par_iter()
            .map(|l| match unit_natural_diagram(l) {
                Ok(d) => check_c1(l, &d),
                Err(e) => {
                    let mut r = VerificationReport::new();
                    r.fail(slimrect_core::Check::NaturalIsC1, "L", &[], e.to_string());
                    r
                }
            })
            .collect(),
    );
    let replayed = tally(
        u.iter()
            .collect::<Vec<_>>()
            .par_iter()
            .enumerate()
            .map(|(k, (_, m))| {
                let (p, q) = m.script.grid;
                let ones = |n: usize| vec![Q::from_integer(1); n - 1];
                let (built, d) = replay_diagram(&m.script, &ones(p), &ones(q)).map_err(|e| format!("member #{k}: {e}"))?;
                let report = check_c1(&built, &d);
                if !report.passed() {
                    return Err(format!("member #{k}: replayed drawing is not C1 ({})", first_failure(&report)));
                }
                let coords = coordinates_of(&d).map_err(|e| format!("member #{k}: {e}"))?;
                let (a, b) = (psi(&built).unwrap(), psi_mirror(&built).unwrap());
                if coords == a || coords == b {
                    Ok(())
                } else {
                    Err(format!("member #{k}: coordinates differ from both psi and its mirror"))
                }
            })
            .collect(),
    );
    let mut out = Outcome::from_report(&natural);
    out.checked += replayed.checked;
    out.failed += replayed.failed;
    if out.note.is_empty() {
        out.note = replayed.note;
    }
    out
}

fn criterion_8(u: &Universe) -> Outcome {
    let r = merged(
        members(u)
            .par_iter()
            .map(|l| {
                let (a, b) = (unit_natural_diagram(l).unwrap(), unit_mirror_natural_diagram(l).unwrap());
                let mut r = check_c2(l, &a);
                r.merge(verify_c2_uniqueness(l, &a, &b));
                r
            })
            .collect(),
    );
    Outcome::from_report(&r)
}

fn negative_controls() -> Vec<LeveledLattice> {
    let glued = RawLattice::new(
        vec![vec![0], vec![1], vec![2, 3, 4], vec![5], vec![6]],
        vec![(0, 1), (1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5), (5, 6)],
    );
    let grid_cell = RawLattice::new(
        vec![vec![0], vec![1, 2, 3], vec![4, 5], vec![6]],
        vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6)],
    );
    vec![m3(), validate(&glued).unwrap(), validate(&grid_cell).unwrap()]
}

fn criterion_9(u: &Universe) -> Outcome {
    let mut lattices: Vec<LeveledLattice> = Vec::new();
    for l in members(u) {
        lattices.push(l.clone());
        for x in l.elements() {
            lattices.push(l.interval(l.bottom(), x).unwrap().0);
            lattices.push(l.interval(x, l.top()).unwrap().0);
        }
    }
    let controls = negative_controls();
    let mut results: Vec<Result<(), String>> = lattices
        .par_iter()
        .enumerate()
        .map(|(k, l)| {
            if l.is_slim() == oracle_join_irreducibles_two_chains(l) {
                Ok(())
            } else {
                Err(format!("lattice #{k}: slimness tests disagree"))
            }
        })
        .collect();
    for (k, l) in controls.iter().enumerate() {
        let ok = !l.is_slim() && !oracle_join_irreducibles_two_chains(l);
        results.push(if ok { Ok(()) } else { Err(format!("control #{k} reported slim")) });
    }
    tally(results)
}

fn criterion_10() -> Outcome {
    let l = s7();
    let d = unit_natural_diagram(&l).unwrap();
    let classes = classify_edges(&d).unwrap();
    let steep: Vec<_> = classes.iter().filter(|e| e.class == SlopeClass::Steep).map(|e| e.edge).collect();
    let normal = classes.iter().filter(|e| e.class.is_normal()).count();
    let (m, t) = (l.find("m").unwrap(), l.find("t").unwrap());
    let svg = render_svg(&l, &d).unwrap();
    let svg_steep = svg.matches(r#"class="edge steep""#).count();
    let svg_normal = svg.matches(r#"class="edge normal-"#).count();
    let results = vec![
        if steep == [(m, t)] { Ok(()) } else { Err(format!("steep edges {steep:?}")) },
        if normal == 8 && classes.len() == 9 { Ok(()) } else { Err(format!("{normal} normal edges")) },
        if svg_steep == 1 && svg_normal == 8 { Ok(()) } else { Err(format!("svg has {svg_steep} steep, {svg_normal} normal")) },
        if corners(&l).is_ok() && check_c1(&l, &d).passed() { Ok(()) } else { Err("drawing is not C1".into()) },
    ];
    tally(results)
}

fn main() -> ExitCode {
    let t = Instant::now();
    let small = par_enumerate_sr(3, 3, 2, Limits::default()).expect("enumerate (3,3,2)");
    let universe = par_enumerate_sr(3, 3, 3, Limits::default()).expect("enumerate (3,3,3)");
    println!(
        "universes: (3,3,2) has {} members, (3,3,3) has {} members, built in {:.1?}",
        small.len(),
        universe.len(),
        t.elapsed()
    );

    let criteria: Vec<(&str, u64, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("1 fork round-trip over (3,3,2)", 60, Box::new(|| criterion_1(&small))),
        ("2 decompose then replay", 60, Box::new(|| criterion_2(&universe))),
        ("3 rank well-definedness", 300, Box::new(|| criterion_3(&universe))),
        ("4 rectangular intervals are slim rectangular", 120, Box::new(|| criterion_4(&universe))),
        ("5 corollaries", 120, Box::new(|| criterion_5(&universe))),
        ("6 psi meet-embedding", 30, Box::new(|| criterion_6(&universe))),
        ("7 natural diagrams are C1", 60, Box::new(|| criterion_7(&universe))),
        ("8 C2 and its uniqueness", 30, Box::new(|| criterion_8(&universe))),
        ("9 slimness oracle agreement", 30, Box::new(|| criterion_9(&universe))),
        ("10 S7 drawing", 30, Box::new(criterion_10)),
    ];

    let mut all = true;
    for (name, budget, run) in &criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let ok = out.failed == 0 && out.checked > 0 && took <= Duration::from_secs(*budget);
        all &= ok;
        println!(
            "{} criterion {name}: {} checked, {} failed, {:.2?} (budget {budget} s) {}",
            if ok { "PASS" } else { "FAIL" },
            out.checked,
            out.failed,
            took,
            out.note.trim()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
