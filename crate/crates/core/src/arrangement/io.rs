//! JSON file formats: arrangements, flat families and multinet specs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Arrangement, FlatFamily, Hyperplane, MultinetSpec};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub name: String,
    pub ambient_dim: usize,
    pub hyperplanes: Vec<HyperplaneEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HyperplaneEntry {
    pub label: String,
    /// `"p/q"` strings; bare JSON integers are accepted on input.
    pub coeffs: Vec<Value>,
}

impl ArrangementFile {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        Self {
            name: a.name().to_string(),
            ambient_dim: a.ambient_dim(),
            hyperplanes: a
                .hyperplanes()
                .iter()
                .map(|h| HyperplaneEntry {
                    label: h.label.clone(),
                    coeffs: h.coeffs.iter().map(|c| Value::String(format_rational(c))).collect(),
                })
                .collect(),
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement> {
        let hs = self
            .hyperplanes
            .iter()
            .map(|e| {
                let coeffs = e
                    .coeffs
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
                        other => Err(Error::Parse(format!("coefficient {other} of `{}` is not a rational", e.label))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Hyperplane::new(e.label.clone(), coeffs))
            })
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(self.name.clone(), self.ambient_dim, hs)
    }
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let f: ArrangementFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_arrangement()
}

/// Canonical serialization: two-space indented JSON, rationals as reduced strings, final newline.
pub fn write_arrangement(a: &Arrangement) -> String {
    let mut s = serde_json::to_string_pretty(&ArrangementFile::from_arrangement(a)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FamilyFile {
    Bare(Vec<Vec<String>>),
    Wrapped { flats: Vec<Vec<String>> },
}

/// Accepts `[["a1","a3"], ...]` or `{"flats": [...]}`.
pub fn parse_family(a: &Arrangement, text: &str) -> Result<FlatFamily> {
    let f: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let sets = match f {
        FamilyFile::Bare(s) | FamilyFile::Wrapped { flats: s } => s,
    };
    FlatFamily::from_labels(a, &sets)
}

#[derive(Deserialize)]
struct MultinetFile {
    blocks: Vec<Vec<String>>,
    #[serde(default)]
    multiplicity: BTreeMap<String, u64>,
}

/// `{"blocks": [["H12","H34"], ...], "multiplicity": {"H12": 2}}`; unlisted hyperplanes get 1.
pub fn parse_multinet(a: &Arrangement, text: &str) -> Result<MultinetSpec> {
    let f: MultinetFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    MultinetSpec::from_labels(a, &f.blocks, &f.multiplicity)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "name": "pair",
  "ambient_dim": 2,
  "hyperplanes": [
    {
      "label": "a",
      "coeffs": [
        "0",
        "1",
        "0"
      ]
    },
    {
      "label": "b",
      "coeffs": [
        "-1/2",
        "0",
        "3"
      ]
    }
  ]
}
"#;

    #[test]
    fn canonical_round_trip() {
        let a = parse_arrangement(SAMPLE).unwrap();
        assert_eq!(write_arrangement(&a), SAMPLE);
    }

    #[test]
    fn integers_accepted() {
        let a = parse_arrangement(r#"{"name":"x","ambient_dim":1,"hyperplanes":[{"label":"p","coeffs":[2,"4/2"]}]}"#).unwrap();
        assert!(write_arrangement(&a).contains("\"2\""));
        assert!(parse_arrangement(r#"{"name":"x","ambient_dim":1,"hyperplanes":[{"label":"p","coeffs":[0.5,1]}]}"#).is_err());
    }

    #[test]
    fn family_forms() {
        let a = parse_arrangement(SAMPLE).unwrap();
        let f = parse_family(&a, r#"[["a","b"]]"#).unwrap();
        assert_eq!(f.len(), 1);
        assert!(parse_family(&a, r#"{"flats":[["a","zz"]]}"#).is_err());
    }
}
