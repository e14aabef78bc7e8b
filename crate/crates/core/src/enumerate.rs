//! Canonical codes of planar diagrams, breadth-first generation of slim
//! rectangular lattices by fork insertion, and universe-wide verification.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{
    check_c1, check_c2, check_psi_embedding, replay_diagram, unit_mirror_natural_diagram, unit_natural_diagram,
    verify_c1_equals_natural, verify_c2_uniqueness, Q,
};
use crate::fork::{cells4, decompose_steps, find_covering_s7, insert_fork, undo_fork, ranks_over_all_choices, replay, ForkError, ForkScript};
use crate::lattice::LeveledLattice;
use crate::rect::{corners, grid, verify_corollaries, verify_main_theorem};
use crate::report::{Check, VerificationReport};

/// Level sizes followed by each element's upper covers as positions in the
/// next level, in left-to-right order; minimised over the diagram and its
/// mirror image.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

fn push_u16(out: &mut Vec<u8>, v: usize) {
    let v = u16::try_from(v).expect("diagram too large for a canonical code");
    out.extend_from_slice(&v.to_be_bytes());
}

fn raw_code(l: &LeveledLattice, mirrored: bool) -> Vec<u8> {
    let levels = l.levels();
    let pos = |x: usize| {
        let p = l.position(x);
        if mirrored {
            levels[l.height(x)].len() - 1 - p
        } else {
            p
        }
    };
    let mut out = Vec::new();
    push_u16(&mut out, levels.len());
    for level in levels {
        push_u16(&mut out, level.len());
    }
    for level in levels {
        let ordered: Vec<usize> = if mirrored { level.iter().rev().copied().collect() } else { level.clone() };
        for x in ordered {
            let mut ups: Vec<usize> = l.up_covers(x).iter().map(|&y| pos(y)).collect();
            ups.sort_unstable();
            push_u16(&mut out, ups.len());
            for p in ups {
                push_u16(&mut out, p);
            }
        }
    }
    out
}

pub fn canonical_code(l: &LeveledLattice) -> CanonicalCode {
    CanonicalCode(raw_code(l, false).min(raw_code(l, true)))
}

/// Independent slimness test: the join-irreducible elements contain no
/// three-element antichain, i.e. they are covered by two chains.
pub fn oracle_join_irreducibles_two_chains(l: &LeveledLattice) -> bool {
    let ji: Vec<usize> = l.elements().filter(|&x| l.is_join_irreducible(x)).collect();
    for (i, &a) in ji.iter().enumerate() {
        for (j, &b) in ji.iter().enumerate().skip(i + 1) {
            if l.comparable(a, b) {
                continue;
            }
            if ji[j + 1..].iter().any(|&c| !l.comparable(a, c) && !l.comparable(b, c)) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct Member {
    pub lattice: LeveledLattice,
    /// A script whose replay is exactly `lattice`.
    pub script: ForkScript,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_elements: usize,
    pub max_codes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 60, max_codes: 100_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Universe {
    pub max_p: usize,
    pub max_q: usize,
    pub max_rank: usize,
    pub members: BTreeMap<CanonicalCode, Member>,
}

impl Universe {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonicalCode, &Member)> {
        self.members.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateError {
    BadDims(usize, usize),
    TooManyElements { limit: usize },
    TooManyCodes { limit: usize },
    Fork(ForkError),
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::BadDims(p, q) => write!(f, "grid bounds ({p}, {q}) must both be at least 2"),
            EnumerateError::TooManyElements { limit } => write!(f, "a generated lattice exceeds {limit} elements"),
            EnumerateError::TooManyCodes { limit } => write!(f, "universe exceeds {limit} lattices"),
            EnumerateError::Fork(e) => write!(f, "{e}"),
        }
    }
}

/// Every lattice one fork insertion away from `parent`, in cell order.
pub fn children(parent: &Member) -> Result<Vec<Member>, EnumerateError> {
    cells4(&parent.lattice)
        .into_iter()
        .map(|cell| {
            let (child, _) = insert_fork(&parent.lattice, &cell).map_err(EnumerateError::Fork)?;
            let mut script = parent.script.clone();
            script.steps.push(cell.reference(&parent.lattice));
            Ok(Member { lattice: child, script, rank: parent.rank + 1 })
        })
        .collect()
}

/// Breadth-first over grids `grid(p, q)` with `p ≤ max_p`, `q ≤ max_q`,
/// inserting a fork at every 4-cell, up to `max_rank` insertions, keeping
/// one representative per canonical code.
pub fn enumerate_sr(max_p: usize, max_q: usize, max_rank: usize, limits: Limits) -> Result<Universe, EnumerateError> {
    enumerate_sr_with(max_p, max_q, max_rank, limits, |frontier| frontier.iter().map(children).collect())
}

/// [`enumerate_sr`] with a caller-supplied frontier expansion. `expand`
/// must return the [`children`] of each frontier member, in frontier order;
/// merging is sequential, so the result does not depend on how `expand`
/// schedules its work.
pub fn enumerate_sr_with<F>(max_p: usize, max_q: usize, max_rank: usize, limits: Limits, mut expand: F) -> Result<Universe, EnumerateError>
where
    F: FnMut(&[Member]) -> Vec<Result<Vec<Member>, EnumerateError>>,
{
    if max_p < 2 || max_q < 2 {
        return Err(EnumerateError::BadDims(max_p, max_q));
    }
    let mut members: BTreeMap<CanonicalCode, Member> = BTreeMap::new();
    let mut frontier: Vec<CanonicalCode> = Vec::new();
    let admit = |members: &mut BTreeMap<CanonicalCode, Member>, frontier: &mut Vec<CanonicalCode>, m: Member| {
        if m.lattice.len() > limits.max_elements {
            return Err(EnumerateError::TooManyElements { limit: limits.max_elements });
        }
        let code = canonical_code(&m.lattice);
        if !members.contains_key(&code) {
            if members.len() >= limits.max_codes {
                return Err(EnumerateError::TooManyCodes { limit: limits.max_codes });
            }
            members.insert(code.clone(), m);
            frontier.push(code);
        }
        Ok(())
    };
    for p in 2..=max_p {
        for q in 2..=max_q {
            let g = grid(p, q).map_err(|_| EnumerateError::BadDims(p, q))?;
            let script = ForkScript { grid: (p, q), steps: Vec::new() };
            admit(&mut members, &mut frontier, Member { lattice: g, script, rank: 0 })?;
        }
    }
    for _ in 1..=max_rank {
        let parents: Vec<Member> = core::mem::take(&mut frontier).iter().map(|c| members[c].clone()).collect();
        for batch in expand(&parents) {
            for child in batch? {
                admit(&mut members, &mut frontier, child)?;
            }
        }
    }
    Ok(Universe { max_p, max_q, max_rank, members })
}

/// Which groups of checks [`verify_member`] runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Suites {
    pub main: bool,
    pub corollaries: bool,
    pub diagrams: bool,
    pub forks: bool,
    /// Rank invariance branches over every deletion order; skipped above this rank.
    pub max_branching_rank: usize,
}

impl Suites {
    pub const ALL: Suites = Suites { main: true, corollaries: true, diagrams: true, forks: true, max_branching_rank: 3 };
}

/// Runs the selected checks on one lattice. Semimodularity, slimness and
/// rectangularity are always checked first; later groups need them.
pub fn verify_member(l: &LeveledLattice, subject: &str, suites: Suites) -> VerificationReport {
    let mut report = VerificationReport::new();
    let semimodular = l.semimodularity_witness();
    report.record(
        Check::Semimodular,
        semimodular.is_none(),
        subject,
        &semimodular.map(|(a, b)| alloc::vec![a, b]).unwrap_or_default(),
        "a ∧ b ≺ a but b does not cover a ∨ b",
    );
    let m3 = l.m3_witness();
    report.record(Check::Slim, m3.is_none(), subject, &m3.map(|w| w.to_vec()).unwrap_or_default(), "contains an M3 sublattice");
    report.record(
        Check::SlimOracle,
        m3.is_none() == oracle_join_irreducibles_two_chains(l),
        subject,
        &[],
        "slimness disagrees with the two-chain join-irreducible test",
    );
    let frame = corners(l);
    report.record(
        Check::Rectangular,
        frame.is_ok(),
        subject,
        &[],
        frame.as_ref().err().map(|e| format!("{e}")).unwrap_or_default(),
    );
    if semimodular.is_some() || m3.is_some() {
        return tagged(report, subject);
    }
    if suites.main {
        report.merge(verify_main_theorem(l));
    }
    if suites.corollaries {
        report.merge(verify_corollaries(l));
    }
    if frame.is_err() {
        return tagged(report, subject);
    }
    if suites.diagrams {
        report.merge(check_diagrams(l, subject));
    }
    if suites.forks {
        report.merge(check_forks(l, subject, suites.max_branching_rank));
    }
    tagged(report, subject)
}

fn tagged(mut report: VerificationReport, subject: &str) -> VerificationReport {
    for f in &mut report.failures {
        if !f.subject.starts_with(subject) {
            f.subject = format!("{subject} {}", f.subject);
        }
    }
    report
}

fn check_diagrams(l: &LeveledLattice, subject: &str) -> VerificationReport {
    let mut report = check_psi_embedding(l);
    let (natural, mirror) = match (unit_natural_diagram(l), unit_mirror_natural_diagram(l)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            report.fail(Check::NaturalIsC1, subject, &[], format!("{e}"));
            return report;
        }
    };
    report.merge(check_c2(l, &natural));
    report.merge(check_c1(l, &mirror));
    report.merge(verify_c1_equals_natural(l, &natural));
    let mut m = verify_c1_equals_natural(l, &mirror);
    m.mirrored = false;
    report.merge(m);
    let mut u = verify_c2_uniqueness(l, &natural, &mirror);
    u.mirrored = false;
    report.merge(u);

    match decompose_steps(l) {
        Ok(dec) => {
            let (p, q) = dec.script.grid;
            let ones = |n: usize| alloc::vec![Q::from_integer(1); n - 1];
            match replay_diagram(&dec.script, &ones(p), &ones(q)) {
                Ok((built, d)) if built.same_diagram(l) => {
                    report.record(Check::NaturalIsC1, d.is_planar_drawing(), subject, &[], "fork drawing is not planar");
                    report.merge(check_c1(l, &d));
                    let mut r = verify_c1_equals_natural(l, &d);
                    r.mirrored = false;
                    report.merge(r);
                }
                Ok(_) => report.fail(Check::C1IsNatural, subject, &[], "replayed drawing is of a different lattice"),
                Err(e) => report.fail(Check::C1IsNatural, subject, &[], format!("{e}")),
            }
        }
        Err(e) => report.fail(Check::C1IsNatural, subject, &[], format!("{e}")),
    }
    report
}

fn check_forks(l: &LeveledLattice, subject: &str, max_branching_rank: usize) -> VerificationReport {
    let mut report = VerificationReport::new();
    let code = canonical_code(l);
    for cell in cells4(l) {
        let ok = insert_fork(l, &cell)
            .ok()
            .and_then(|(bigger, trace)| {
                let s = find_covering_s7(&bigger, false).into_iter().find(|s| s.m == trace.m)?;
                undo_fork(&bigger, &s).ok()
            })
            .map(|(back, c)| canonical_code(&back) == code && back == *l && c == cell)
            .unwrap_or(false);
        report.record(Check::ForkRoundTrip, ok, subject, &cell.elements(), "deleting the inserted fork does not restore the lattice");
    }
    let rank = match decompose_steps(l) {
        Ok(dec) => {
            let ok = replay(&dec.script).map(|r| canonical_code(&r) == code).unwrap_or(false);
            report.record(Check::StructureTheorem, ok, subject, &[], "replaying the decomposition does not reproduce the lattice");
            Some(dec.script.steps.len())
        }
        Err(e) => {
            report.fail(Check::StructureTheorem, subject, &[], format!("{e}"));
            None
        }
    };
    if let Some(rank) = rank.filter(|&r| r <= max_branching_rank) {
        match ranks_over_all_choices(l) {
            Ok(set) => {
                let ok = set.len() == 1 && set.contains(&rank);
                report.record(Check::RankInvariance, ok, subject, &[], format!("deletion orders give ranks {set:?}"));
            }
            Err(e) => report.fail(Check::RankInvariance, subject, &[], format!("{e}")),
        }
    }
    report
}

/// Printable name for a member: enumeration index, rank and size.
pub fn member_subject(index: usize, m: &Member) -> String {
    format!("#{index} (rank {}, {} elements)", m.rank, m.lattice.len())
}

/// [`verify_member`] with every suite on every member.
pub fn verify_universe(u: &Universe) -> VerificationReport {
    let mut report = VerificationReport::new();
    for (k, (_, m)) in u.iter().enumerate() {
        report.merge(verify_member(&m.lattice, &member_subject(k, m), Suites::ALL));
    }
    report.normalize();
    report
}

impl core::error::Error for EnumerateError {}
