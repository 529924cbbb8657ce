//! Deterministic JSON and DOT encodings for fixtures and diagrams.
//!
//! Complexes serialize as nested `{"0": …, "1": …}` objects with `"F"`
//! and `"E"` leaves; schedules as a list of `{"target", "r"}` or
//! `{"stem"}` objects; traces as `{"a", "b", "mid", "branch"}` rows.
//! Byte-identical output for identical values is part of the contract.

use crate::bisect::{BisectionStep, Branch};
use crate::construct::{DeletionSchedule, ScheduleEntry};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::pointed::PointedSet;
use crate::trie::{CylinderComplex, CylinderWord};
use serde_json::{json, Map, Value};
use std::fmt::Write as _;

pub fn complex_to_json(c: &CylinderComplex) -> Value {
    match c {
        CylinderComplex::Empty => Value::String("E".into()),
        CylinderComplex::Full => Value::String("F".into()),
        CylinderComplex::Split { zero, one } => {
            let mut m = Map::new();
            m.insert("0".into(), complex_to_json(zero));
            m.insert("1".into(), complex_to_json(one));
            Value::Object(m)
        }
    }
}

pub fn complex_from_json(v: &Value) -> Result<CylinderComplex> {
    match v {
        Value::String(s) if s == "E" => Ok(CylinderComplex::Empty),
        Value::String(s) if s == "F" => Ok(CylinderComplex::Full),
        Value::Object(m) => {
            let zero = m
                .get("0")
                .ok_or_else(|| Error::Malformed("complex node missing \"0\"".into()))?;
            let one = m
                .get("1")
                .ok_or_else(|| Error::Malformed("complex node missing \"1\"".into()))?;
            Ok(CylinderComplex::split(
                complex_from_json(zero)?,
                complex_from_json(one)?,
            ))
        }
        other => Err(Error::Malformed(format!(
            "expected \"E\", \"F\" or a node object, got {other}"
        ))),
    }
}

pub fn pointed_to_json(s: &PointedSet) -> Value {
    json!({
        "body": complex_to_json(s.body()),
        "extras": s.extras().map(|p| p.to_string()).collect::<Vec<_>>(),
        "holes": s.holes().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

pub fn pointed_from_json(v: &Value) -> Result<PointedSet> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Malformed("expected a pointed-set object".into()))?;
    let body = complex_from_json(
        obj.get("body")
            .ok_or_else(|| Error::Malformed("pointed set missing \"body\"".into()))?,
    )?;
    let parse_points = |key: &str| -> Result<Vec<Point>> {
        match obj.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(items)) => items
                .iter()
                .map(|item| {
                    item.as_str()
                        .ok_or_else(|| {
                            Error::Malformed(format!("{key} entries must be strings"))
                        })
                        .and_then(Point::parse)
                })
                .collect(),
            Some(other) => Err(Error::Malformed(format!(
                "{key} must be an array, got {other}"
            ))),
        }
    };
    PointedSet::new(body, parse_points("extras")?, parse_points("holes")?)
}

pub fn schedule_to_json(s: &DeletionSchedule) -> Value {
    Value::Array(
        s.entries
            .iter()
            .map(|e| match e {
                ScheduleEntry::Target { target, offset } => json!({
                    "target": target.to_string(),
                    "r": offset,
                }),
                ScheduleEntry::Stem(w) => json!({ "stem": w.stem().to_string() }),
            })
            .collect(),
    )
}

pub fn schedule_from_json(v: &Value) -> Result<DeletionSchedule> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Malformed("a schedule is a JSON array".into()))?;
    let mut entries = Vec::new();
    for (i, item) in items.iter().enumerate() {
        let obj = item.as_object().ok_or_else(|| {
            Error::Malformed(format!("schedule entry {i} is not an object"))
        })?;
        if let Some(stem) = obj.get("stem") {
            let stem = stem.as_str().ok_or_else(|| {
                Error::Malformed(format!("schedule entry {i}: stem must be a string"))
            })?;
            entries.push(ScheduleEntry::Stem(CylinderWord::parse(stem)?));
        } else {
            let target = obj
                .get("target")
                .and_then(Value::as_str)
                .ok_or_else(|| {
                    Error::Malformed(format!(
                        "schedule entry {i} needs a \"target\" string or a \"stem\""
                    ))
                })?;
            let r = obj.get("r").and_then(Value::as_u64).ok_or_else(|| {
                Error::Malformed(format!(
                    "schedule entry {i} needs a positive integer \"r\""
                ))
            })?;
            entries.push(ScheduleEntry::Target {
                target: Point::parse(target)?,
                offset: r,
            });
        }
    }
    Ok(DeletionSchedule::new(entries))
}

/// Parse a schedule from raw JSON text, reporting line and column on
/// syntax errors.
pub fn schedule_from_str(text: &str) -> Result<DeletionSchedule> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::Malformed(format!(
            "schedule parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    schedule_from_json(&value)
}

/// Render a complex as a DOT digraph: FULL leaves are filled boxes,
/// EMPTY leaves dashed boxes, interior nodes points. Node ids follow
/// preorder, so equal complexes produce identical bytes.
pub fn complex_to_dot(c: &CylinderComplex) -> String {
    fn walk(node: &CylinderComplex, id: &mut usize, out: &mut String) -> usize {
        let me = *id;
        *id += 1;
        match node {
            CylinderComplex::Full => {
                let _ = writeln!(
                    out,
                    "  n{me} [shape=box, style=filled, fillcolor=black, label=\"\"];"
                );
            }
            CylinderComplex::Empty => {
                let _ = writeln!(out, "  n{me} [shape=box, style=dashed, label=\"\"];");
            }
            CylinderComplex::Split { zero, one } => {
                let _ = writeln!(out, "  n{me} [shape=point];");
                let z = walk(zero, id, out);
                let _ = writeln!(out, "  n{me} -> n{z} [label=\"0\"];");
                let o = walk(one, id, out);
                let _ = writeln!(out, "  n{me} -> n{o} [label=\"1\"];");
            }
        }
        me
    }
    let mut out = String::from("digraph complex {\n  node [fontsize=10];\n");
    let mut id = 0;
    walk(c, &mut id, &mut out);
    out.push_str("}\n");
    out
}

/// Render a bisection trace as a chain of nested intervals.
pub fn trace_to_dot(trace: &[BisectionStep]) -> String {
    let mut out = String::from("digraph bisection {\n  node [shape=box, fontsize=10];\n");
    for (i, step) in trace.iter().enumerate() {
        let _ = writeln!(
            out,
            "  s{i} [label=\"[{}, {}] mid {}\"];",
            step.low, step.high, step.mid
        );
        if i > 0 {
            let prev = &trace[i - 1];
            let _ = writeln!(out, "  s{} -> s{i} [label=\"{}\"];", i - 1, prev.branch);
        }
    }
    if let Some((i, last)) = trace.iter().enumerate().next_back() {
        if matches!(last.branch, Branch::Hit) {
            let _ = writeln!(out, "  hit [shape=ellipse, label=\"{}\"];", last.mid);
            let _ = writeln!(out, "  s{i} -> hit [label=\"HIT\"];");
        }
    }
    out.push_str("}\n");
    out
}

pub fn trace_to_json(trace: &[BisectionStep]) -> Value {
    Value::Array(
        trace
            .iter()
            .map(|s| {
                json!({
                    "a": s.low.to_string(),
                    "b": s.high.to_string(),
                    "mid": s.mid.to_string(),
                    "branch": s.branch.to_string(),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CylinderWord {
        CylinderWord::parse(s).unwrap()
    }

    #[test]
    fn complex_json_round_trip() {
        let c = CylinderComplex::from_cylinders([w("01"), w("1")].iter());
        let v = complex_to_json(&c);
        assert_eq!(v.to_string(), r#"{"0":{"0":"E","1":"F"},"1":"F"}"#);
        assert_eq!(complex_from_json(&v).unwrap(), c);
        assert_eq!(
            complex_from_json(&complex_to_json(&CylinderComplex::Full)).unwrap(),
            CylinderComplex::Full
        );
    }

    #[test]
    fn complex_json_rejects_junk() {
        assert!(complex_from_json(&serde_json::json!("X")).is_err());
        assert!(complex_from_json(&serde_json::json!({"0": "F"})).is_err());
    }

    #[test]
    fn pointed_set_json_round_trip() {
        let text = r#"{"body": {"0": "F", "1": "E"}, "extras": [":1"], "holes": ["00:0"]}"#;
        let value: Value = serde_json::from_str(text).unwrap();
        let s = pointed_from_json(&value).unwrap();
        assert_eq!(pointed_from_json(&pointed_to_json(&s)).unwrap(), s);
        assert!(pointed_from_json(&serde_json::json!({"extras": []})).is_err());
    }

    #[test]
    fn schedule_json_round_trip() {
        let text = r#"[{"target": "0:1", "r": 2}, {"stem": "010"}]"#;
        let schedule = schedule_from_str(text).unwrap();
        assert_eq!(schedule.len(), 2);
        let v = schedule_to_json(&schedule);
        assert_eq!(schedule_from_json(&v).unwrap(), schedule);
    }

    #[test]
    fn schedule_parse_error_carries_position() {
        let err = schedule_from_str("[{\"target\": }]").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn full_complex_is_one_filled_box() {
        let dot = complex_to_dot(&CylinderComplex::Full);
        assert_eq!(dot.matches("shape=box").count(), 1);
        assert!(dot.contains("fillcolor=black"));
    }

    #[test]
    fn dot_is_deterministic() {
        let c = CylinderComplex::from_cylinders([w("01"), w("1")].iter());
        assert_eq!(complex_to_dot(&c), complex_to_dot(&c.clone()));
    }
}
