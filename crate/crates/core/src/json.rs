//! File formats for lattices, frames, spaces, maps and valuations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{FrameError, ModalFrame};
use crate::lattice::{Elem, FiniteLattice, LatticeError};
use crate::space::{Point, RelationalSpace, SpaceError};

/// Schema version written into emitted documents.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{table} has no entry for `{key}`")]
    MissingEntry { table: &'static str, key: String },
    #[error("{table} mentions unknown `{key}`")]
    UnknownKey { table: &'static str, key: String },
    #[error("expected a {expected} document, found a {found} document")]
    WrongKind { expected: &'static str, found: &'static str },
}

fn check_version(v: Option<u32>) -> Result<(), JsonError> {
    match v {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(JsonError::Version(other)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub elements: Vec<String>,
    /// Any generating set of the order; reflexive-transitive closure is taken on load.
    pub leq: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub lattice: LatticeJson,
    #[serde(rename = "box")]
    pub box_table: BTreeMap<String, String>,
    #[serde(rename = "dia")]
    pub dia_table: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
    pub relation: Vec<(String, String)>,
}

/// A frame or space morphism: source name to target name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub map: BTreeMap<String, String>,
}

/// Variable to the points where it holds.
pub type ValuationJson = BTreeMap<String, Vec<String>>;

/// Valuations on both ends of a morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationPairJson {
    pub source: ValuationJson,
    pub target: ValuationJson,
}

/// Any input document, recognised by its keys.
#[derive(Debug, Clone)]
pub enum Document {
    Lattice(LatticeJson),
    Frame(FrameJson),
    Space(SpaceJson),
    Map(MapJson),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Frame(_) => "frame",
            Document::Space(_) => "space",
            Document::Map(_) => "map",
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document, JsonError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let has = |k: &str| value.get(k).is_some();
    Ok(if has("points") {
        Document::Space(serde_json::from_value(value)?)
    } else if has("lattice") {
        Document::Frame(serde_json::from_value(value)?)
    } else if has("elements") {
        Document::Lattice(serde_json::from_value(value)?)
    } else {
        Document::Map(serde_json::from_value(value)?)
    })
}

impl LatticeJson {
    pub fn to_lattice(&self) -> Result<FiniteLattice, JsonError> {
        check_version(self.version)?;
        Ok(FiniteLattice::new(&self.elements, &self.leq)?)
    }

    /// Elements with their covering pairs.
    pub fn from_lattice(l: &FiniteLattice) -> Self {
        let covers = l
            .elements()
            .flat_map(|a| l.elements().map(move |b| (a, b)))
            .filter(|&(a, b)| {
                a != b && l.leq(a, b) && !l.elements().any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b))
            })
            .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
            .collect();
        LatticeJson { version: Some(SCHEMA_VERSION), elements: l.names().to_vec(), leq: covers }
    }
}

fn table(
    l: &FiniteLattice,
    entries: &BTreeMap<String, String>,
    name: &'static str,
) -> Result<Vec<Elem>, JsonError> {
    for k in entries.keys() {
        l.index_of(k).map_err(|_| JsonError::UnknownKey { table: name, key: k.clone() })?;
    }
    l.elements()
        .map(|a| {
            let v = entries
                .get(l.name(a))
                .ok_or_else(|| JsonError::MissingEntry { table: name, key: l.name(a).to_string() })?;
            l.index_of(v).map_err(|_| JsonError::UnknownKey { table: name, key: v.clone() })
        })
        .collect()
}

fn table_json(l: &FiniteLattice, t: &[Elem]) -> BTreeMap<String, String> {
    l.elements().map(|a| (l.name(a).to_string(), l.name(t[a]).to_string())).collect()
}

impl FrameJson {
    pub fn to_frame(&self) -> Result<ModalFrame, JsonError> {
        check_version(self.version)?;
        let l = self.lattice.to_lattice()?;
        let b = table(&l, &self.box_table, "box")?;
        let d = table(&l, &self.dia_table, "dia")?;
        Ok(ModalFrame::new(l, b, d)?)
    }

    pub fn from_frame(f: &ModalFrame) -> Self {
        FrameJson {
            version: Some(SCHEMA_VERSION),
            lattice: LatticeJson { version: None, ..LatticeJson::from_lattice(&f.lattice) },
            box_table: table_json(&f.lattice, f.box_table()),
            dia_table: table_json(&f.lattice, f.dia_table()),
        }
    }
}

impl SpaceJson {
    pub fn to_space(&self) -> Result<RelationalSpace, JsonError> {
        check_version(self.version)?;
        Ok(RelationalSpace::new(&self.points, &self.opens, &self.relation)?)
    }

    pub fn from_space(x: &RelationalSpace) -> Self {
        SpaceJson {
            version: Some(SCHEMA_VERSION),
            points: x.names().to_vec(),
            opens: x.opens().iter().map(|o| x.set_names(o)).collect(),
            relation: x
                .relation_pairs()
                .map(|(a, b)| (x.name(a).to_string(), x.name(b).to_string()))
                .collect(),
        }
    }
}

impl MapJson {
    pub fn frame_map(&self, source: &FiniteLattice, target: &FiniteLattice) -> Result<Vec<Elem>, JsonError> {
        check_version(self.version)?;
        for k in self.map.keys() {
            source.index_of(k).map_err(|_| JsonError::UnknownKey { table: "map", key: k.clone() })?;
        }
        source
            .elements()
            .map(|a| {
                let v = self
                    .map
                    .get(source.name(a))
                    .ok_or_else(|| JsonError::MissingEntry { table: "map", key: source.name(a).to_string() })?;
                target.index_of(v).map_err(|_| JsonError::UnknownKey { table: "map", key: v.clone() })
            })
            .collect()
    }

    pub fn space_map(&self, source: &RelationalSpace, target: &RelationalSpace) -> Result<Vec<Point>, JsonError> {
        check_version(self.version)?;
        for k in self.map.keys() {
            source.point_index(k).map_err(|_| JsonError::UnknownKey { table: "map", key: k.clone() })?;
        }
        source
            .points()
            .map(|x| {
                let v = self
                    .map
                    .get(source.name(x))
                    .ok_or_else(|| JsonError::MissingEntry { table: "map", key: source.name(x).to_string() })?;
                target.point_index(v).map_err(|_| JsonError::UnknownKey { table: "map", key: v.clone() })
            })
            .collect()
    }

    pub fn from_space_map(source: &RelationalSpace, target: &RelationalSpace, map: &[Point]) -> Self {
        MapJson {
            version: Some(SCHEMA_VERSION),
            map: source.points().map(|x| (source.name(x).to_string(), target.name(map[x]).to_string())).collect(),
        }
    }
}

pub fn load_lattice(text: &str) -> Result<FiniteLattice, JsonError> {
    match parse_document(text)? {
        Document::Lattice(l) => l.to_lattice(),
        other => Err(JsonError::WrongKind { expected: "lattice", found: other.kind() }),
    }
}

pub fn load_frame(text: &str) -> Result<ModalFrame, JsonError> {
    match parse_document(text)? {
        Document::Frame(f) => f.to_frame(),
        other => Err(JsonError::WrongKind { expected: "frame", found: other.kind() }),
    }
}

pub fn load_space(text: &str) -> Result<RelationalSpace, JsonError> {
    match parse_document(text)? {
        Document::Space(s) => s.to_space(),
        other => Err(JsonError::WrongKind { expected: "space", found: other.kind() }),
    }
}

pub fn load_map(text: &str) -> Result<MapJson, JsonError> {
    match parse_document(text)? {
        Document::Map(m) => Ok(m),
        other => Err(JsonError::WrongKind { expected: "map", found: other.kind() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::omega_space;

    #[test]
    fn frame_round_trip() {
        let f = ModalFrame::new(FiniteLattice::chain(3), vec![0, 2, 2], vec![0, 2, 2]).unwrap();
        let j = FrameJson::from_frame(&f);
        assert_eq!(j.lattice.leq, vec![("0".into(), "1".into()), ("1".into(), "2".into())]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(load_frame(&text).unwrap(), f);
        let omega = omega_space(&RelationalSpace::new(&["x"], &[vec![], vec!["x"]], &[("x", "x")]).unwrap());
        let text = serde_json::to_string(&FrameJson::from_frame(&omega)).unwrap();
        assert_eq!(load_frame(&text).unwrap(), omega);
    }

    #[test]
    fn space_round_trip() {
        let text = r#"{"points": ["x", "y"], "opens": [[], ["y"], ["x", "y"]], "relation": [["x", "y"], ["y", "y"]]}"#;
        let x = load_space(text).unwrap();
        let again = serde_json::to_string(&SpaceJson::from_space(&x)).unwrap();
        let y = load_space(&again).unwrap();
        assert_eq!(SpaceJson::from_space(&x), SpaceJson::from_space(&y));
    }

    #[test]
    fn errors() {
        assert!(matches!(load_space("{"), Err(JsonError::Parse(_))));
        let frame = r#"{"lattice": {"elements": ["0", "1"], "leq": [["0", "1"]]}, "box": {"0": "0"}, "dia": {"0": "0", "1": "1"}}"#;
        assert!(matches!(load_frame(frame), Err(JsonError::MissingEntry { table: "box", .. })));
        let space = r#"{"points": ["x"], "opens": [[], ["x"]], "relation": []}"#;
        assert!(matches!(load_frame(space), Err(JsonError::WrongKind { .. })));
        let v = r#"{"version": 7, "points": [], "opens": [[]], "relation": []}"#;
        assert!(matches!(load_space(v), Err(JsonError::Version(7))));
        let m3 = r#"{"elements": ["0", "a", "b", "c", "1"], "leq": [["0","a"],["0","b"],["0","c"],["a","1"],["b","1"],["c","1"]]}"#;
        assert!(matches!(load_lattice(m3), Err(JsonError::Lattice(LatticeError::NotDistributive { .. }))));
    }
}
