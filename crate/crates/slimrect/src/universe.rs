//! A universe on disk: `index.json` plus one lattice file per member under
//! `lattices/`, named by the SHA-256 of the member's canonical code.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};
use slimrect_core::enumerate::{children, enumerate_sr_with, member_subject, verify_member, EnumerateError, Member, Suites};
use slimrect_core::{canonical_code, CanonicalCode, Limits, Universe, VerificationReport};

use crate::format::{load_lattice, save_lattice, ScriptFileV1, VERSION};

pub fn code_hash(code: &CanonicalCode) -> String {
    hex::encode(Sha256::digest(code.as_bytes()))
}

/// [`slimrect_core::enumerate_sr`] with each frontier expanded in parallel.
pub fn par_enumerate_sr(max_p: usize, max_q: usize, max_rank: usize, limits: Limits) -> Result<Universe, EnumerateError> {
    enumerate_sr_with(max_p, max_q, max_rank, limits, |frontier| frontier.par_iter().map(children).collect())
}

/// Every suite on every member, members checked in parallel. Output equals
/// [`slimrect_core::enumerate::verify_universe`].
pub fn par_verify_universe(u: &Universe) -> VerificationReport {
    let members: Vec<&Member> = u.iter().map(|(_, m)| m).collect();
    let parts: Vec<VerificationReport> = members
        .par_iter()
        .enumerate()
        .map(|(k, m)| verify_member(&m.lattice, &member_subject(k, m), Suites::ALL))
        .collect();
    let mut report = VerificationReport::new();
    for part in parts {
        report.merge(part);
    }
    report.normalize();
    report
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexEntry {
    hash: String,
    file: String,
    rank: usize,
    elements: usize,
    script: ScriptFileV1,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct IndexV1 {
    version: u32,
    max_grid: (usize, usize),
    max_rank: usize,
    members: Vec<IndexEntry>,
}

pub fn save_universe(u: &Universe, dir: &Path) -> Result<()> {
    let sub = dir.join("lattices");
    fs::create_dir_all(&sub).with_context(|| format!("creating {}", sub.display()))?;
    let mut entries = Vec::with_capacity(u.len());
    for (code, m) in u.iter() {
        let hash = code_hash(code);
        let file = format!("lattices/{hash}.json");
        let mut meta = Map::new();
        meta.insert("rank".into(), Value::from(m.rank));
        meta.insert("code_sha256".into(), Value::from(hash.clone()));
        let text = save_lattice(&m.lattice, meta)?;
        fs::write(dir.join(&file), text).with_context(|| format!("writing {file}"))?;
        let script = ScriptFileV1::from(&m.script);
        entries.push(IndexEntry { hash, file, rank: m.rank, elements: m.lattice.len(), script });
    }
    let index = IndexV1 { version: VERSION, max_grid: (u.max_p, u.max_q), max_rank: u.max_rank, members: entries };
    let mut text = serde_json::to_string_pretty(&index)?;
    text.push('\n');
    fs::write(dir.join("index.json"), text).context("writing index.json")?;
    Ok(())
}

pub fn load_universe(dir: &Path) -> Result<Universe> {
    let text = fs::read_to_string(dir.join("index.json")).with_context(|| format!("reading {}/index.json", dir.display()))?;
    let index: IndexV1 = serde_json::from_str(&text).context("parsing index.json")?;
    if index.version != VERSION {
        bail!("unsupported index version {}", index.version);
    }
    let mut members = BTreeMap::new();
    for (k, e) in index.members.iter().enumerate() {
        let text = fs::read_to_string(dir.join(&e.file)).with_context(|| format!("reading {}", e.file))?;
        let (lattice, _) = load_lattice(&text).with_context(|| format!("loading {}", e.file))?;
        let code = canonical_code(&lattice);
        if code_hash(&code) != e.hash {
            bail!("members[{k}]: {} does not match its hash", e.file);
        }
        let script = e.script.to_script().with_context(|| format!("members[{k}].script"))?;
        members.insert(code, Member { lattice, script, rank: e.rank });
    }
    Ok(Universe { max_p: index.max_grid.0, max_q: index.max_grid.1, max_rank: index.max_rank, members })
}
