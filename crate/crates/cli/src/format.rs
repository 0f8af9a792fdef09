//! Instance files and the JSON shapes shared by every report.

use std::collections::BTreeMap;
use std::fmt;

use colorcut_core::{Coloring, Hyperplane, Partition, Point, PointConfig, PointId, Rat};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub dim: usize,
    pub points: Vec<PointEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub id: u32,
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

/// A parsed instance. Color `i` of the configuration is named
/// `color_names[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub config: PointConfig,
    pub color_names: Vec<String>,
}

impl Instance {
    /// Names colors `c0, c1, ...` after their dense ids.
    pub fn from_config(config: PointConfig) -> Instance {
        let color_names = match config.coloring() {
            Some(c) => c.colors().iter().map(|id| format!("c{}", id.0)).collect(),
            None => Vec::new(),
        };
        Instance { config, color_names }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    /// Location of the problem: `line L, column C` for syntax errors, a field
    /// path like `points[2].coords[0]` otherwise.
    pub at: String,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

impl std::error::Error for FormatError {}

fn field_err(at: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError {
        at: at.into(),
        message: message.into(),
    }
}

fn parse_rational(text: &str, at: &str) -> Result<Rat, FormatError> {
    text.parse().map_err(|_| {
        if text.contains('.') || text.contains('e') || text.contains('E') {
            field_err(at, format!("decimal literal {text:?}; write exact rationals as \"p/q\""))
        } else {
            field_err(at, format!("malformed rational {text:?}"))
        }
    })
}

pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)
        .map_err(|e| field_err(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    instance_from_file(&file)
}

pub fn instance_from_file(file: &InstanceFile) -> Result<Instance, FormatError> {
    if file.dim == 0 {
        return Err(field_err("dim", "dimension must be positive"));
    }
    if file.points.is_empty() {
        return Err(field_err("points", "no points"));
    }
    let mut points = Vec::with_capacity(file.points.len());
    let mut at_of: BTreeMap<PointId, usize> = BTreeMap::new();
    for (i, entry) in file.points.iter().enumerate() {
        if entry.coords.len() != file.dim {
            return Err(field_err(
                format!("points[{i}].coords"),
                format!("dimension mismatch: expected {}, found {}", file.dim, entry.coords.len()),
            ));
        }
        let coords = entry
            .coords
            .iter()
            .enumerate()
            .map(|(j, c)| parse_rational(c, &format!("points[{i}].coords[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let id = PointId(entry.id);
        if at_of.insert(id, i).is_some() {
            return Err(field_err(format!("points[{i}].id"), format!("duplicate point id {id}")));
        }
        points.push(Point::new(id, coords));
    }
    let config = PointConfig::new(file.dim, points).map_err(|e| match e {
        colorcut_core::Error::DuplicatePoint(a, b) => field_err(
            format!("points[{}]", at_of[&b]),
            format!("duplicate point: same coordinates as points[{}]", at_of[&a]),
        ),
        other => field_err("points", other.to_string()),
    })?;

    let colored = file.points.iter().filter(|p| p.color.is_some()).count();
    if colored == 0 {
        return Ok(Instance {
            config,
            color_names: Vec::new(),
        });
    }
    let mut names: Vec<String> = Vec::new();
    let mut colors = Vec::with_capacity(file.points.len());
    for (i, entry) in file.points.iter().enumerate() {
        let Some(name) = &entry.color else {
            return Err(field_err(
                format!("points[{i}].color"),
                "missing color; either every point has one or none does",
            ));
        };
        let c = match names.iter().position(|n| n == name) {
            Some(c) => c,
            None => {
                names.push(name.clone());
                names.len() - 1
            }
        };
        colors.push(c as u32);
    }
    let coloring = Coloring::from_parts(file.points.iter().map(|p| PointId(p.id)), colors);
    let config = config
        .with_coloring(coloring)
        .map_err(|e| field_err("points", e.to_string()))?;
    Ok(Instance {
        config,
        color_names: names,
    })
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    let coloring = inst.config.coloring();
    InstanceFile {
        dim: inst.config.dim(),
        points: inst
            .config
            .points()
            .iter()
            .map(|p| PointEntry {
                id: p.id().0,
                coords: p.coords().iter().map(Rat::to_string).collect(),
                color: coloring
                    .and_then(|c| c.color(p.id()))
                    .map(|c| inst.color_names[c.0 as usize].clone()),
            })
            .collect(),
    }
}

pub fn emit_instance(inst: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(&instance_to_file(inst)).expect("instance serializes");
    s.push('\n');
    s
}

pub fn instance_json(config: &PointConfig) -> Value {
    serde_json::to_value(instance_to_file(&Instance::from_config(config.clone()))).expect("instance serializes")
}

pub fn rats(v: &[Rat]) -> Value {
    Value::from(v.iter().map(Rat::to_string).collect::<Vec<_>>())
}

pub fn hyperplane_json(h: &Hyperplane) -> Value {
    json!({ "normal": rats(h.normal()), "offset": h.offset().to_string() })
}

pub fn ids_json(ids: &[PointId]) -> Value {
    Value::from(ids.iter().map(|id| id.0).collect::<Vec<_>>())
}

pub fn blocks_json(p: &Partition) -> Value {
    Value::from(p.blocks().iter().map(|b| ids_json(b)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_instance() {
        let inst = parse_instance(r#"{"dim":1,"points":[{"id":0,"coords":["0"]},{"id":1,"coords":["1"]}]}"#).unwrap();
        assert_eq!(inst.config.len(), 2);
        assert!(inst.config.coloring().is_none());
    }

    #[test]
    fn exact_rationals() {
        let inst = parse_instance(r#"{"dim":2,"points":[{"id":4,"coords":["1/3","2/5"]}]}"#).unwrap();
        let p = inst.config.point(PointId(4)).unwrap();
        assert_eq!(p.coords(), &[Rat::new(1, 3).unwrap(), Rat::new(2, 5).unwrap()]);
    }

    #[test]
    fn rejects_duplicates_and_decimals() {
        let dup = parse_instance(r#"{"dim":1,"points":[{"id":0,"coords":["1"]},{"id":1,"coords":["2/2"]}]}"#);
        let e = dup.unwrap_err();
        assert!(e.message.contains("duplicate point"), "{e}");
        assert_eq!(e.at, "points[1]");

        let dec = parse_instance(r#"{"dim":1,"points":[{"id":0,"coords":["0.5"]}]}"#).unwrap_err();
        assert_eq!(dec.at, "points[0].coords[0]");
        assert!(dec.message.contains("decimal"));

        let dim = parse_instance(r#"{"dim":2,"points":[{"id":0,"coords":["1"]}]}"#).unwrap_err();
        assert!(dim.message.contains("dimension mismatch"));

        let syntax = parse_instance("{\"dim\":1,\n\"points\":[}").unwrap_err();
        assert!(syntax.at.starts_with("line 2"), "{syntax}");
    }

    #[test]
    fn numbers_are_not_rationals() {
        assert!(parse_instance(r#"{"dim":1,"points":[{"id":0,"coords":[1]}]}"#).is_err());
    }

    #[test]
    fn colors_are_dense_in_first_appearance_order() {
        let inst = parse_instance(
            r#"{"dim":1,"points":[
                {"id":0,"coords":["0"],"color":"red"},
                {"id":1,"coords":["1"],"color":"blue"},
                {"id":2,"coords":["2"],"color":"red"}]}"#,
        )
        .unwrap();
        assert_eq!(inst.color_names, ["red", "blue"]);
        let c = inst.config.coloring().unwrap();
        assert_eq!(c.color(PointId(1)).unwrap().0, 1);
        assert_eq!(c.color(PointId(2)).unwrap().0, 0);
        assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn partial_coloring_is_rejected() {
        let e = parse_instance(r#"{"dim":1,"points":[{"id":0,"coords":["0"],"color":"r"},{"id":1,"coords":["1"]}]}"#)
            .unwrap_err();
        assert_eq!(e.at, "points[1].color");
    }
}
