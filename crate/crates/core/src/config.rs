//! JSON configuration documents.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "vertices": [["0","0","1"], ["4","0","1"], ["5","3","1"], ["1","4","1"]],
//!   "g": ["0","1","1"]
//! }
//! ```
//!
//! Every number is a rational string. The optional `derived` map holds
//! constructed objects under stable keys such as `"U.13"`, `"M.12^3"`,
//! `"G.12"`, `"k.12"`, `"O"` or `"Phi"`. Derived entries present on load
//! must agree with a fresh construction; absent ones are recomputed by
//! [`ConfigDocument::construct`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::projective::{HLine, HPoint};
use crate::sharygin::{
    aux_points, centers, g_point, homologies, make_qlpair, nine_point_conic, nine_point_pole,
    others, sharygin_curve, Index, IndexSelection, QlError, QlPair, PAIRS,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("schema error at '{path}': {message}")]
    Schema { path: String, message: String },
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error("invalid configuration: {0}")]
    Invalid(#[from] QlError),
    #[error("derived entry '{0}' does not match the construction")]
    DerivedMismatch(String),
    #[error("unknown derived key '{0}'")]
    UnknownKey(String),
    #[error("invalid selection '{0}'")]
    Selection(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    pub format_version: u32,
    pub vertices: [HPoint; 4],
    pub g: HLine,
    /// Index selection `ijks` used for I, J, O, Phi and their relatives.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived: BTreeMap<String, Value>,
}

pub fn parse_selection(text: &str) -> Result<IndexSelection, ConfigError> {
    let digits: Vec<Index> = text.bytes().map(|b| b.wrapping_sub(b'0')).collect();
    match digits.as_slice() {
        &[i, j, k, s] => IndexSelection::new(i, j, k, s).map_err(|_| ConfigError::Selection(text.into())),
        _ => Err(ConfigError::Selection(text.into())),
    }
}

/// A vertex pair written as two digits, e.g. `"13"`.
pub fn parse_pair(text: &str) -> Option<(Index, Index)> {
    let b = text.as_bytes();
    if b.len() != 2 {
        return None;
    }
    let (x, y) = (b[0].wrapping_sub(b'0'), b[1].wrapping_sub(b'0'));
    let key = (x.min(y), x.max(y));
    PAIRS.contains(&key).then_some(key)
}

fn entry<T: Serialize>(r: Result<T, QlError>) -> Value {
    match r {
        Ok(v) => json!(v),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

impl ConfigDocument {
    pub fn from_qlpair(ql: &QlPair) -> Self {
        ConfigDocument {
            format_version: FORMAT_VERSION,
            vertices: ql.quad().vertices().clone(),
            g: ql.g().clone(),
            selection: None,
            derived: BTreeMap::new(),
        }
    }

    /// Parse and validate. Schema errors name the offending path.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: ConfigDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            ConfigError::Schema { path, message: e.into_inner().to_string() }
        })?;
        if doc.format_version != FORMAT_VERSION {
            return Err(ConfigError::Version(doc.format_version));
        }
        let ql = doc.qlpair()?;
        if !doc.derived.is_empty() {
            let fresh = derive(&ql, &PAIRS, doc.selection()?);
            for (key, value) in &doc.derived {
                match fresh.get(key) {
                    None => return Err(ConfigError::UnknownKey(key.clone())),
                    Some(v) if v != value => return Err(ConfigError::DerivedMismatch(key.clone())),
                    Some(_) => {}
                }
            }
        }
        Ok(doc)
    }

    /// One top-level field per line, one derived entry per line.
    pub fn to_json(&self) -> String {
        let Value::Object(map) = serde_json::to_value(self).expect("serializable") else {
            unreachable!("documents serialize to objects")
        };
        let mut fields = Vec::new();
        let order = ["format_version", "vertices", "g", "selection", "derived"];
        for (key, value) in order.iter().filter_map(|k| map.get(*k).map(|v| (k, v))) {
            let text = match value {
                Value::Object(derived) if !derived.is_empty() => {
                    let lines: Vec<String> =
                        derived.iter().map(|(k, v)| format!("    {}: {}", json!(k), v)).collect();
                    format!("{{\n{}\n  }}", lines.join(",\n"))
                }
                other => other.to_string(),
            };
            fields.push(format!("  {}: {}", json!(key), text));
        }
        format!("{{\n{}\n}}\n", fields.join(",\n"))
    }

    pub fn qlpair(&self) -> Result<QlPair, QlError> {
        make_qlpair(self.vertices.clone(), self.g.clone())
    }

    pub fn selection(&self) -> Result<IndexSelection, ConfigError> {
        match &self.selection {
            Some(s) => parse_selection(s),
            None => Ok(IndexSelection { i: 1, j: 2, k: 3, s: 4 }),
        }
    }

    /// Attach the derived bundle for the given vertex pairs and selection.
    pub fn construct(&self, pairs: &[(Index, Index)], sel: IndexSelection) -> Result<Self, ConfigError> {
        let ql = self.qlpair()?;
        let mut out = self.clone();
        out.selection = Some(sel.to_string());
        out.derived = derive(&ql, pairs, sel);
        Ok(out)
    }
}

/// Derived objects under their stable keys. Constructions that hit a
/// special position are stored as `{"error": ...}` rather than failing the
/// whole bundle.
pub fn derive(ql: &QlPair, pairs: &[(Index, Index)], sel: IndexSelection) -> BTreeMap<String, Value> {
    let mut d = BTreeMap::new();
    for (a, b) in PAIRS {
        d.insert(format!("U.{a}{b}"), json!(ql.u(a, b)));
    }
    for &(a, b) in pairs {
        let (c, e) = others(a, b);
        for (x, y) in [(a, b), (b, a)] {
            for z in [c, e] {
                d.insert(format!("M.{x}{y}^{z}"), json!(ql.m(x, y, z)));
            }
        }
        d.insert(format!("G.{a}{b}"), entry(g_point(ql, a, b)));
        d.insert(format!("k.{a}{b}"), entry(sharygin_curve(ql, a, b)));
    }
    match aux_points(ql, sel) {
        Ok(aux) => {
            for (key, p) in [
                ("I", &aux.i),
                ("Iprime", &aux.i_prime),
                ("Ibar", &aux.i_bar),
                ("J", &aux.j),
                ("Jprime", &aux.j_prime),
                ("Jbar", &aux.j_bar),
                ("Jcheck", &aux.j_check),
                ("L", &aux.l),
                ("Lprime", &aux.l_prime),
            ] {
                d.insert(key.to_string(), json!(p));
            }
        }
        Err(e) => {
            d.insert("I".to_string(), json!({ "error": e.to_string() }));
        }
    }
    let c = centers(ql, sel);
    d.insert("O".into(), entry(c.clone().map(|c| c.0)));
    d.insert("Oprime".into(), entry(c.map(|c| c.1)));
    let h = homologies(ql, sel);
    d.insert("Phi".into(), entry(h.clone().map(|h| h.phi)));
    d.insert("PhiPrime".into(), entry(h.map(|h| h.phi_prime)));
    d.insert("k9".into(), entry(nine_point_conic(ql)));
    d.insert("G".into(), entry(nine_point_pole(ql)));
    d
}
