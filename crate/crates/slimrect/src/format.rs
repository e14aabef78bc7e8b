//! Versioned JSON interchange for lattices, fork scripts and diagrams.

use std::collections::HashMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::{Map, Value};
use slimrect_core::diagram::classify_edges;
use slimrect_core::{validate, CellRef, Diagram, ForkScript, LatticeError, LeveledLattice, Point, RawLattice, Q};

pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unsupported version {0}, expected {VERSION}")]
    Version(u32),
    #[error("duplicate element name {name:?} at {path}")]
    DuplicateName { name: String, path: String },
    #[error("unknown element name {name:?} at {path}")]
    UnknownName { name: String, path: String },
    #[error("bad rational {text:?} at {path}")]
    Rational { text: String, path: String },
    #[error("{0}")]
    Lattice(#[from] LatticeError),
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        FormatError::Schema { path: if path == "." { "(root)".into() } else { path }, message: e.into_inner().to_string() }
    })
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFileV1 {
    pub version: u32,
    pub levels: Vec<Vec<String>>,
    pub covers: Vec<(String, String)>,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

impl LatticeFileV1 {
    pub fn from_lattice(l: &LeveledLattice, meta: Map<String, Value>) -> Self {
        LatticeFileV1 {
            version: VERSION,
            levels: l.levels().iter().map(|lv| lv.iter().map(|&x| l.label(x).to_string()).collect()).collect(),
            covers: l.cover_pairs().into_iter().map(|(u, v)| (l.label(u).to_string(), l.label(v).to_string())).collect(),
            meta,
        }
    }

    pub fn to_lattice(&self) -> Result<LeveledLattice, FormatError> {
        if self.version != VERSION {
            return Err(FormatError::Version(self.version));
        }
        let mut ids: HashMap<&str, usize> = HashMap::new();
        let mut labels = Vec::new();
        let mut levels = Vec::with_capacity(self.levels.len());
        for (h, level) in self.levels.iter().enumerate() {
            let mut row = Vec::with_capacity(level.len());
            for (k, name) in level.iter().enumerate() {
                if ids.insert(name, labels.len()).is_some() {
                    return Err(FormatError::DuplicateName { name: name.clone(), path: format!("levels[{h}][{k}]") });
                }
                row.push(labels.len());
                labels.push(Some(name.clone()));
            }
            levels.push(row);
        }
        let lookup = |name: &String, path: String| ids.get(name.as_str()).copied().ok_or_else(|| FormatError::UnknownName { name: name.clone(), path });
        let covers = self
            .covers
            .iter()
            .enumerate()
            .map(|(k, (u, v))| Ok((lookup(u, format!("covers[{k}][0]"))?, lookup(v, format!("covers[{k}][1]"))?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(validate(&RawLattice::new(levels, covers).with_labels(labels))?)
    }
}

/// Serializes `l`; fails if two elements share a label.
pub fn save_lattice(l: &LeveledLattice, meta: Map<String, Value>) -> Result<String, FormatError> {
    let file = LatticeFileV1::from_lattice(l, meta);
    file.to_lattice()?;
    Ok(to_text(&file))
}

pub fn load_lattice(text: &str) -> Result<(LeveledLattice, Map<String, Value>), FormatError> {
    let file: LatticeFileV1 = parse(text)?;
    let l = file.to_lattice()?;
    Ok((l, file.meta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepV1 {
    pub o_height: usize,
    pub o_index: usize,
    pub c_index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptFileV1 {
    pub version: u32,
    pub grid: (usize, usize),
    pub steps: Vec<StepV1>,
}

impl From<&ForkScript> for ScriptFileV1 {
    fn from(s: &ForkScript) -> Self {
        ScriptFileV1 {
            version: VERSION,
            grid: s.grid,
            steps: s.steps.iter().map(|c| StepV1 { o_height: c.o_height, o_index: c.o_index, c_index: c.c_index }).collect(),
        }
    }
}

pub fn save_script(s: &ForkScript) -> String {
    to_text(&ScriptFileV1::from(s))
}

impl ScriptFileV1 {
    pub fn to_script(&self) -> Result<ForkScript, FormatError> {
        if self.version != VERSION {
            return Err(FormatError::Version(self.version));
        }
        Ok(ForkScript {
            grid: self.grid,
            steps: self.steps.iter().map(|s| CellRef { o_height: s.o_height, o_index: s.o_index, c_index: s.c_index }).collect(),
        })
    }
}

pub fn load_script(text: &str) -> Result<ForkScript, FormatError> {
    parse::<ScriptFileV1>(text)?.to_script()
}

/// Exact `num/den` text, denominator always present.
pub fn rational_text(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(text: &str) -> Option<Q> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (text.trim().parse().ok()?, 1),
    };
    (d != 0).then(|| Q::new(n, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeV1 {
    pub name: String,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeV1 {
    pub lower: String,
    pub upper: String,
    pub class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFileV1 {
    pub version: u32,
    pub nodes: Vec<NodeV1>,
    pub edges: Vec<EdgeV1>,
    pub left_units: Vec<String>,
    pub right_units: Vec<String>,
}

pub fn edge_class_name(class: slimrect_core::SlopeClass) -> &'static str {
    use slimrect_core::SlopeClass::*;
    match class {
        NormalLeft => "normal-left",
        NormalRight => "normal-right",
        Steep => "steep",
        Other => "other",
    }
}

pub fn save_diagram(l: &LeveledLattice, d: &Diagram) -> Result<String, slimrect_core::diagram::DiagramError> {
    let classes = classify_edges(d)?;
    let file = DiagramFileV1 {
        version: VERSION,
        nodes: l
            .elements()
            .map(|x| NodeV1 { name: l.label(x).into(), x: rational_text(d.coords[x].x), y: rational_text(d.coords[x].y) })
            .collect(),
        edges: classes
            .iter()
            .map(|e| EdgeV1 {
                lower: l.label(e.edge.0).into(),
                upper: l.label(e.edge.1).into(),
                class: edge_class_name(e.class).into(),
            })
            .collect(),
        left_units: d.left_units.iter().map(|&q| rational_text(q)).collect(),
        right_units: d.right_units.iter().map(|&q| rational_text(q)).collect(),
    };
    Ok(to_text(&file))
}

/// Reads a diagram of `l`; nodes and edges are matched to `l` by name.
pub fn load_diagram(l: &LeveledLattice, text: &str) -> Result<Diagram, FormatError> {
    let file: DiagramFileV1 = parse(text)?;
    if file.version != VERSION {
        return Err(FormatError::Version(file.version));
    }
    let rat = |text: &String, path: String| parse_rational(text).ok_or_else(|| FormatError::Rational { text: text.clone(), path });
    let id = |name: &String, path: String| l.find(name).ok_or_else(|| FormatError::UnknownName { name: name.clone(), path });
    let mut coords: Vec<Option<Point>> = vec![None; l.len()];
    for (k, n) in file.nodes.iter().enumerate() {
        let x = id(&n.name, format!("nodes[{k}].name"))?;
        if coords[x].is_some() {
            return Err(FormatError::DuplicateName { name: n.name.clone(), path: format!("nodes[{k}].name") });
        }
        coords[x] = Some(Point::new(rat(&n.x, format!("nodes[{k}].x"))?, rat(&n.y, format!("nodes[{k}].y"))?));
    }
    let coords = coords
        .into_iter()
        .enumerate()
        .map(|(x, p)| p.ok_or_else(|| FormatError::Schema { path: "nodes".into(), message: format!("missing node {:?}", l.label(x)) }))
        .collect::<Result<Vec<_>, _>>()?;
    let edges = file
        .edges
        .iter()
        .enumerate()
        .map(|(k, e)| Ok((id(&e.lower, format!("edges[{k}].lower"))?, id(&e.upper, format!("edges[{k}].upper"))?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    let units = |v: &[String], field: &str| {
        v.iter().enumerate().map(|(k, t)| rat(t, format!("{field}[{k}]"))).collect::<Result<Vec<_>, _>>()
    };
    Ok(Diagram { coords, edges, left_units: units(&file.left_units, "left_units")?, right_units: units(&file.right_units, "right_units")? })
}
