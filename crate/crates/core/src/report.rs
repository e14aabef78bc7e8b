//! Structured pass/fail evidence collected by the verification operations.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::ElementId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Semimodular,
    Slim,
    Rectangular,
    IntervalIsSlimRectangular,
    LowerBoundary,
    MeetDecomposition,
    LeftMiddleRight,
    PsiEmbedding,
    NaturalIsC1,
    C2,
    C1IsNatural,
    C2Uniqueness,
    ForkRoundTrip,
    StructureTheorem,
    RankInvariance,
    SlimOracle,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Semimodular => "semimodular",
            Check::Slim => "slim",
            Check::Rectangular => "rectangular",
            Check::IntervalIsSlimRectangular => "interval-is-slim-rectangular",
            Check::LowerBoundary => "lower-boundary",
            Check::MeetDecomposition => "meet-decomposition",
            Check::LeftMiddleRight => "left-middle-right",
            Check::PsiEmbedding => "psi-meet-embedding",
            Check::NaturalIsC1 => "natural-is-c1",
            Check::C2 => "c2",
            Check::C1IsNatural => "c1-is-natural",
            Check::C2Uniqueness => "c2-uniqueness",
            Check::ForkRoundTrip => "fork-round-trip",
            Check::StructureTheorem => "structure-theorem",
            Check::RankInvariance => "rank-invariance",
            Check::SlimOracle => "slim-oracle",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub check: Check,
    /// Which lattice or interval the failure belongs to.
    pub subject: String,
    pub witness: Vec<ElementId>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    /// Number of instances examined per check.
    pub tallies: BTreeMap<Check, u64>,
    pub failures: Vec<Failure>,
    /// Set by diagram equivalence checks when the match needed a reflection.
    pub mirrored: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn count(&mut self, check: Check) {
        *self.tallies.entry(check).or_insert(0) += 1;
    }

    /// Records one instance of `check`, failing it when `ok` is false.
    pub fn record(&mut self, check: Check, ok: bool, subject: &str, witness: &[ElementId], message: impl Into<String>) {
        self.count(check);
        if !ok {
            self.fail(check, subject, witness, message);
        }
    }

    pub fn fail(&mut self, check: Check, subject: &str, witness: &[ElementId], message: impl Into<String>) {
        self.failures.push(Failure {
            check,
            subject: subject.into(),
            witness: witness.to_vec(),
            message: message.into(),
        });
    }

    pub fn failures_of(&self, check: Check) -> impl Iterator<Item = &Failure> {
        self.failures.iter().filter(move |f| f.check == check)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for (check, n) in other.tallies {
            *self.tallies.entry(check).or_insert(0) += n;
        }
        self.failures.extend(other.failures);
        self.mirrored |= other.mirrored;
    }

    /// Sorts failures so that output is independent of evaluation order.
    pub fn normalize(&mut self) {
        self.failures.sort();
        self.failures.dedup();
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (check, n) in &self.tallies {
            let bad = self.failures_of(*check).count();
            let status = if bad == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {check}: {n} checked, {bad} failed")?;
        }
        for fl in &self.failures {
            writeln!(f, "  {} [{}] {} witness={:?}", fl.check, fl.subject, fl.message, fl.witness)?;
        }
        if self.mirrored {
            writeln!(f, "note: matched after left-right reflection")?;
        }
        Ok(())
    }
}
