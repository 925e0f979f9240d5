//! Family JSON format:
//!
//! ```json
//! {"ground_size": 3, "sets": [[0], [0, 1]], "labels": ["a", "b", "c"],
//!  "metadata": {"generator": "...", "params": {...}, "groups": [[0, 1]]}}
//! ```
//!
//! `labels` and `metadata` are optional. Sets are written ascending and the
//! family in canonical order.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::family::{FamilyMeta, MemberSet, SetFamily, MAX_GROUND};

pub fn family_to_json(f: &SetFamily, with_meta: bool) -> Value {
    let mut o = Map::new();
    o.insert("ground_size".into(), json!(f.ground_size()));
    o.insert("sets".into(), json!(f.to_lists()));
    let meta = f.meta();
    if let Some(labels) = &meta.labels {
        o.insert("labels".into(), json!(labels));
    }
    if with_meta && (meta.generator.is_some() || !meta.params.is_empty() || meta.groups.is_some()) {
        let mut m = Map::new();
        if let Some(g) = &meta.generator {
            m.insert("generator".into(), json!(g));
        }
        m.insert(
            "params".into(),
            Value::Object(meta.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
        );
        if let Some(groups) = &meta.groups {
            m.insert("groups".into(), json!(groups));
        }
        o.insert("metadata".into(), Value::Object(m));
    }
    Value::Object(o)
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedJson(msg.into())
}

pub fn family_from_json(v: &Value) -> Result<SetFamily> {
    let o = v.as_object().ok_or_else(|| malformed("expected an object"))?;
    let ground = o
        .get("ground_size")
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed("missing or non-integer \"ground_size\""))? as usize;
    if ground > MAX_GROUND {
        return Err(Error::GroundTooLarge(ground));
    }
    let sets = o
        .get("sets")
        .and_then(Value::as_array)
        .ok_or_else(|| malformed("missing \"sets\" array"))?;
    let mut members = Vec::with_capacity(sets.len());
    for s in sets {
        let arr = s.as_array().ok_or_else(|| malformed("each set must be an array"))?;
        let mut bits = 0u128;
        for e in arr {
            let e = e
                .as_u64()
                .ok_or_else(|| malformed("set elements must be non-negative integers"))?
                as usize;
            if e >= ground {
                return Err(Error::ElementOutOfRange { element: e, ground });
            }
            if bits >> e & 1 == 1 {
                return Err(malformed(format!("element {e} repeated within a set")));
            }
            bits |= 1 << e;
        }
        members.push(MemberSet::from_bits(bits));
    }
    let mut meta = FamilyMeta::default();
    if let Some(l) = o.get("labels") {
        let labels = l
            .as_array()
            .ok_or_else(|| malformed("\"labels\" must be an array"))?
            .iter()
            .map(|x| x.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| malformed("labels must be strings"))?;
        if labels.len() != ground {
            return Err(malformed("\"labels\" length must equal ground_size"));
        }
        meta.labels = Some(labels);
    }
    if let Some(m) = o.get("metadata").and_then(Value::as_object) {
        meta.generator = m.get("generator").and_then(Value::as_str).map(str::to_string);
        if let Some(p) = m.get("params").and_then(Value::as_object) {
            meta.params = p.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        }
        if let Some(g) = m.get("groups") {
            meta.groups = Some(
                serde_json::from_value(g.clone()).map_err(|e| malformed(format!("groups: {e}")))?,
            );
        }
    }
    Ok(SetFamily::new(ground, members)?.with_meta(meta))
}

pub fn parse_family_str(s: &str) -> Result<SetFamily> {
    let v: Value = serde_json::from_str(s).map_err(|e| malformed(e.to_string()))?;
    family_from_json(&v)
}

pub fn parse_family_file(path: &Path) -> Result<SetFamily> {
    let s = std::fs::read_to_string(path)?;
    parse_family_str(&s)
}

pub fn family_to_string(f: &SetFamily) -> String {
    let mut s = serde_json::to_string(&family_to_json(f, true)).expect("json");
    s.push('\n');
    s
}

pub fn write_family_file(f: &SetFamily, path: &Path) -> Result<()> {
    std::fs::write(path, family_to_string(f))?;
    Ok(())
}
