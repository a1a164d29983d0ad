//! JSON file formats.
//!
//! Join-semilattice:
//!
//! ```json
//! {"labels": ["a", "b", "c", "d", "1"], "covers": [[0, 1], [1, 2], [2, 4], [3, 4]]}
//! ```
//!
//! Cover endpoints may be indices into `labels` or the labels themselves. The
//! loader takes the reflexive-transitive closure and computes the join table.
//! An optional `code` string (the canonical code) is accepted and ignored.
//!
//! Partial binary algebra:
//!
//! ```json
//! {"n": 9, "joins": [[0, 1, 6], [2, 3, 7], [4, 5, 8]]}
//! ```
//!
//! Each `[i, j, k]` defines `i ∨ j = k`. An optional `labels` array of length
//! `n` names the elements and allows labels in place of indices.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::order::JoinSemilattice;
use crate::subuniverse::{PartialBinaryAlgebra, Structure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemilatticeFile {
    pub labels: Vec<String>,
    pub covers: Vec<[ElementRef; 2]>,
    /// Canonical code, written by enumeration; ignored on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialAlgebraFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub joins: Vec<[ElementRef; 3]>,
}

/// A loaded structure with its element names.
#[derive(Clone, Debug)]
pub struct LoadedStructure {
    pub labels: Vec<String>,
    pub structure: Structure,
}

fn resolve(labels: &[String], r: &ElementRef, field: &str) -> Result<usize> {
    match r {
        ElementRef::Index(i) if *i < labels.len() => Ok(*i),
        ElementRef::Index(i) => Err(Error::Parse(format!(
            "`{field}`: index {i} out of range for {} elements",
            labels.len()
        ))),
        ElementRef::Label(name) => labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| Error::Parse(format!("`{field}`: unknown label `{name}`"))),
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::Parse(format!("`labels`: duplicate label `{l}`")));
        }
    }
    Ok(())
}

impl SemilatticeFile {
    pub fn into_structure(self) -> Result<LoadedStructure> {
        check_labels(&self.labels)?;
        let covers = self
            .covers
            .iter()
            .map(|[lo, hi]| {
                Ok((
                    resolve(&self.labels, lo, "covers")?,
                    resolve(&self.labels, hi, "covers")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let l = JoinSemilattice::from_covers(self.labels.len(), &covers)?;
        Ok(LoadedStructure {
            labels: self.labels,
            structure: Structure::Total(l),
        })
    }

    pub fn from_semilattice(l: &JoinSemilattice, labels: &[String]) -> Self {
        SemilatticeFile {
            labels: labels.to_vec(),
            covers: l
                .poset()
                .covers()
                .into_iter()
                .map(|(i, j)| [ElementRef::Index(i), ElementRef::Index(j)])
                .collect(),
            code: None,
        }
    }
}

impl PartialAlgebraFile {
    pub fn into_structure(self) -> Result<LoadedStructure> {
        let labels = match self.labels {
            Some(l) if l.len() != self.n => {
                return Err(Error::Parse(format!(
                    "`labels`: expected {} labels, got {}",
                    self.n,
                    l.len()
                )))
            }
            Some(l) => l,
            None => (0..self.n).map(|i| i.to_string()).collect(),
        };
        check_labels(&labels)?;
        let joins = self
            .joins
            .iter()
            .map(|[i, j, k]| {
                Ok((
                    resolve(&labels, i, "joins")?,
                    resolve(&labels, j, "joins")?,
                    resolve(&labels, k, "joins")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let a = PartialBinaryAlgebra::new(self.n, &joins)?;
        Ok(LoadedStructure {
            labels,
            structure: Structure::Partial(a),
        })
    }

    pub fn from_algebra(a: &PartialBinaryAlgebra, labels: Option<&[String]>) -> Self {
        PartialAlgebraFile {
            n: a.len(),
            labels: labels.map(<[String]>::to_vec),
            joins: a
                .joins()
                .map(|(i, j, k)| [ElementRef::Index(i), ElementRef::Index(j), ElementRef::Index(k)])
                .collect(),
        }
    }
}

/// Parses either format, chosen by the presence of `covers` or `joins`.
pub fn parse_structure(text: &str) -> Result<LoadedStructure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let Value::Object(map) = &value else {
        return Err(Error::Parse("expected a JSON object".into()));
    };
    let field_error = |e: serde_json::Error| Error::Parse(e.to_string());
    if map.contains_key("covers") {
        serde_json::from_value::<SemilatticeFile>(value)
            .map_err(field_error)?
            .into_structure()
    } else if map.contains_key("joins") {
        serde_json::from_value::<PartialAlgebraFile>(value)
            .map_err(field_error)?
            .into_structure()
    } else {
        Err(Error::Parse(
            "expected a `covers` field (semilattice) or a `joins` field (partial algebra)".into(),
        ))
    }
}

pub fn load_structure(path: &Path) -> Result<LoadedStructure> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_structure(&text)
}

/// Serialises a structure in the format matching its kind.
pub fn structure_to_json(structure: &Structure, labels: &[String]) -> Value {
    match structure {
        Structure::Total(l) => serde_json::to_value(SemilatticeFile::from_semilattice(l, labels)),
        Structure::Partial(a) => serde_json::to_value(PartialAlgebraFile::from_algebra(a, Some(labels))),
    }
    .expect("plain data serialises")
}
