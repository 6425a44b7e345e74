//! JSON instance files and the canonical writer used for every artifact.
//!
//! An instance lists the non-identity arrows only; ids `0..units` are the
//! identities. `inv` covers every id. `comp` may omit any triple with an
//! identity factor.
//!
//! ```json
//! {
//!   "arrows": [{"id":2,"rng":0,"src":1}, {"id":3,"rng":1,"src":0}],
//!   "comp": [[2,3,0], [3,2,1]],
//!   "inv": [0,1,3,2],
//!   "units": 2
//! }
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, RawGroupoid};
use crate::sets::ArrowSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub id: u32,
    pub src: u32,
    pub rng: u32,
}

/// On-disk form of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub units: usize,
    pub arrows: Vec<ArrowEntry>,
    pub inv: Vec<u32>,
    pub comp: Vec<[u32; 3]>,
    /// Symmetric generating set used by `ball:r` specs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graphing: Option<Vec<u32>>,
}

/// A loaded instance: the groupoid and its declared graphing, if any.
#[derive(Clone, Debug)]
pub struct Instance {
    pub groupoid: Groupoid,
    pub graphing: Option<ArrowSet>,
}

impl Instance {
    pub fn new(groupoid: Groupoid) -> Self {
        Self { groupoid, graphing: None }
    }

    pub fn with_graphing(groupoid: Groupoid, graphing: ArrowSet) -> Self {
        Self { groupoid, graphing: Some(graphing) }
    }

    pub fn to_file(&self) -> InstanceFile {
        let g = &self.groupoid;
        let n = g.n_units() as u32;
        let raw = g.to_raw();
        InstanceFile {
            units: g.n_units(),
            arrows: (n..g.n_arrows() as u32).map(|id| ArrowEntry { id, src: g.src(id), rng: g.rng(id) }).collect(),
            inv: raw.inv,
            comp: raw.comp.into_iter().filter(|t| t[0] >= n && t[1] >= n).collect(),
            graphing: self.graphing.as_ref().map(ArrowSet::to_vec),
        }
    }

    /// Schema checks, then the axioms; axiom failures carry the full report.
    pub fn from_file(file: &InstanceFile) -> Result<Self> {
        let n = file.units;
        let m = n + file.arrows.len();
        if m > u32::MAX as usize {
            return Err(Error::Schema("too many arrows".into()));
        }
        let mut src: Vec<u32> = (0..n as u32).collect();
        let mut rng = src.clone();
        src.resize(m, u32::MAX);
        rng.resize(m, u32::MAX);
        for e in &file.arrows {
            let i = e.id as usize;
            if i < n || i >= m {
                return Err(Error::Schema(format!("arrow id {} outside {n}..{m}", e.id)));
            }
            if src[i] != u32::MAX {
                return Err(Error::Schema(format!("arrow id {} listed twice", e.id)));
            }
            src[i] = e.src;
            rng[i] = e.rng;
        }
        if file.inv.len() != m {
            return Err(Error::Schema(format!("inv has {} entries, expected {m}", file.inv.len())));
        }
        let mut comp = Vec::with_capacity(file.comp.len() + 2 * m);
        for a in 0..m as u32 {
            let (s, r) = (src[a as usize], rng[a as usize]);
            if (s as usize) < n {
                comp.push([a, s, a]);
            }
            if (r as usize) < n && r != a {
                comp.push([r, a, a]);
            }
        }
        comp.extend_from_slice(&file.comp);
        let groupoid = Groupoid::from_raw(RawGroupoid { n_units: n, src, rng, inv: file.inv.clone(), comp })?;
        let graphing = match &file.graphing {
            None => None,
            Some(ids) => {
                if let Some(&a) = ids.iter().find(|&&a| a as usize >= m) {
                    return Err(Error::Schema(format!("graphing arrow {a} out of range")));
                }
                Some(groupoid.arrow_set(ids.iter().copied()))
            }
        };
        Ok(Self { groupoid, graphing })
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    Instance::from_file(&serde_json::from_str(text)?)
}

pub fn instance_json(instance: &Instance) -> String {
    to_canonical(&instance.to_file())
}

pub fn load(path: impl AsRef<Path>) -> Result<Instance> {
    parse_instance(&fs::read_to_string(path)?)
}

pub fn save(path: impl AsRef<Path>, instance: &Instance) -> Result<()> {
    fs::write(path, instance_json(instance))?;
    Ok(())
}

/// Sorted keys, two-space indent, scalar-only arrays and objects on one line.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

/// Canonical JSON written to `path`.
pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    fs::write(path, to_canonical(value))?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: impl AsRef<Path>) -> Result<T> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(xs) => xs.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.values().all(|x| !x.is_array() && !x.is_object()),
        _ => true,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    match v {
        Value::Array(xs) if !is_flat(v) => {
            out.push('[');
            for (i, x) in xs.iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                indent(out, depth + 1);
                write_value(out, x, depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push(']');
        }
        Value::Object(m) if !is_flat(v) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                out.push_str(if i == 0 { "\n" } else { ",\n" });
                indent(out, depth + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, &m[k], depth + 1);
            }
            out.push('\n');
            indent(out, depth);
            out.push('}');
        }
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                out.push_str(&m[k].to_string());
            }
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}
