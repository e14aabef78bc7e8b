//! Text and JSON forms of verification reports.

use std::fmt::Write;

use serde::Serialize;
use slimrect_core::{LeveledLattice, VerificationReport};

#[derive(Serialize)]
struct Tally<'a> {
    check: &'a str,
    checked: u64,
    failed: usize,
}

#[derive(Serialize)]
struct FailureJson<'a> {
    check: &'a str,
    subject: &'a str,
    witness: Vec<String>,
    message: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    passed: bool,
    checks: Vec<Tally<'a>>,
    failures: Vec<FailureJson<'a>>,
    mirrored: bool,
}

fn witness_names(l: Option<&LeveledLattice>, ids: &[usize]) -> Vec<String> {
    ids.iter()
        .map(|&x| match l {
            Some(l) if x < l.len() => l.label(x).to_string(),
            _ => x.to_string(),
        })
        .collect()
}

/// Witnesses are printed by label when `l` is the lattice they refer to.
pub fn report_text(r: &VerificationReport, l: Option<&LeveledLattice>) -> String {
    let mut out = String::new();
    for (check, n) in &r.tallies {
        let bad = r.failures_of(*check).count();
        let status = if bad == 0 { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {check}: {n} checked, {bad} failed").unwrap();
    }
    for f in &r.failures {
        let w = witness_names(l, &f.witness).join(", ");
        writeln!(out, "  {} {}: {} [{w}]", f.check, f.subject, f.message).unwrap();
    }
    if r.mirrored {
        out.push_str("note: matched after left-right reflection\n");
    }
    out
}

pub fn report_json(r: &VerificationReport, l: Option<&LeveledLattice>) -> String {
    let json = ReportJson {
        passed: r.passed(),
        checks: r
            .tallies
            .iter()
            .map(|(c, &n)| Tally { check: c.name(), checked: n, failed: r.failures_of(*c).count() })
            .collect(),
        failures: r
            .failures
            .iter()
            .map(|f| FailureJson { check: f.check.name(), subject: &f.subject, witness: witness_names(l, &f.witness), message: &f.message })
            .collect(),
        mirrored: r.mirrored,
    };
    let mut out = serde_json::to_string_pretty(&json).expect("plain data serializes");
    out.push('\n');
    out
}
