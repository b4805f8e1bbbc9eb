//! JSON document format for truncated simplicial sets.
//!
//! ```json
//! {
//!   "trunc_level": 1,
//!   "simplices": [["0", "1"], ["00", "01", "11"]],
//!   "faces": [{}, {"00": ["0", "0"], "01": ["1", "0"], "11": ["1", "1"]}],
//!   "degeneracies": [{"0": ["00"], "1": ["11"]}, {"00": null, "01": null, "11": null}],
//!   "nondegenerate": [["0", "1"], ["01"]]
//! }
//! ```
//!
//! Every field is indexed by dimension because names are only unique within a
//! dimension. Face lists run `∂_0 .. ∂_n`; degeneracy lists `ε_0 .. ε_n`, or
//! `null` at the truncation level. Vertices have no face entry.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{SimplicialError, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialSetDoc {
    pub trunc_level: usize,
    pub simplices: Vec<Vec<String>>,
    pub faces: Vec<BTreeMap<String, Vec<String>>>,
    pub degeneracies: Vec<BTreeMap<String, Option<Vec<String>>>>,
    pub nondegenerate: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("field `{field}`: expected {expected} dimension entries, found {found}")]
    DimensionCount { field: &'static str, expected: usize, found: usize },
    #[error("simplex {name:?} (dim {dim}): missing face ∂_{index}")]
    MissingFace { dim: usize, name: String, index: usize },
    #[error("simplex {name:?} (dim {dim}): face ∂_{index} = {target:?} is not a simplex of dimension {}", dim - 1)]
    UnknownFace { dim: usize, name: String, index: usize, target: String },
    #[error("simplex {name:?} (dim {dim}): missing degeneracy ε_{index}")]
    MissingDegeneracy { dim: usize, name: String, index: usize },
    #[error("simplex {name:?} (dim {dim}): degeneracy ε_{index} = {target:?} is not a simplex of dimension {}", dim + 1)]
    UnknownDegeneracy { dim: usize, name: String, index: usize, target: String },
    #[error("field `{field}`, dim {dim}: unknown simplex {name:?}")]
    UnknownName { field: &'static str, dim: usize, name: String },
    #[error(transparent)]
    Structure(#[from] SimplicialError),
}

impl SimplicialSetDoc {
    pub fn from_set(k: &SimplicialSet) -> Self {
        let top = k.trunc_level();
        let mut doc = SimplicialSetDoc {
            trunc_level: top,
            simplices: Vec::new(),
            faces: Vec::new(),
            degeneracies: Vec::new(),
            nondegenerate: Vec::new(),
        };
        for n in 0..=top {
            doc.simplices.push(k.names(n).to_vec());
            doc.nondegenerate.push(k.nondegenerate(n).map(|x| k.name(x).to_owned()).collect());
            let mut faces = BTreeMap::new();
            let mut degs = BTreeMap::new();
            for x in k.simplices(n) {
                if n > 0 {
                    faces.insert(k.name(x).to_owned(), (0..=n).map(|i| k.name(k.face(x, i)).to_owned()).collect());
                }
                let d = (n < top).then(|| (0..=n).map(|i| k.name(k.degeneracy(x, i).unwrap()).to_owned()).collect());
                degs.insert(k.name(x).to_owned(), d);
            }
            doc.faces.push(faces);
            doc.degeneracies.push(degs);
        }
        doc
    }

    pub fn into_set(self) -> Result<SimplicialSet, ParseError> {
        let levels = self.trunc_level + 1;
        for (field, found) in [
            ("simplices", self.simplices.len()),
            ("faces", self.faces.len()),
            ("degeneracies", self.degeneracies.len()),
            ("nondegenerate", self.nondegenerate.len()),
        ] {
            if found != levels {
                return Err(ParseError::DimensionCount { field, expected: levels, found });
            }
        }
        let index: Vec<BTreeMap<&str, usize>> = self
            .simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect())
            .collect();
        let mut faces = Vec::with_capacity(levels);
        let mut degeneracies = Vec::with_capacity(levels);
        let mut degenerate = Vec::with_capacity(levels);
        for n in 0..levels {
            for (field, map_keys) in [
                ("faces", self.faces[n].keys().collect::<Vec<_>>()),
                ("degeneracies", self.degeneracies[n].keys().collect()),
            ] {
                if let Some(name) = map_keys.into_iter().find(|k| !index[n].contains_key(k.as_str())) {
                    return Err(ParseError::UnknownName { field, dim: n, name: name.clone() });
                }
            }
            let mut level_faces = Vec::new();
            let mut level_degs = Vec::new();
            for name in &self.simplices[n] {
                let mut fx = Vec::new();
                if n > 0 {
                    let listed = self.faces[n].get(name).map(Vec::as_slice).unwrap_or(&[]);
                    for i in 0..=n {
                        let target = listed
                            .get(i)
                            .ok_or_else(|| ParseError::MissingFace { dim: n, name: name.clone(), index: i })?;
                        let &j = index[n - 1].get(target.as_str()).ok_or_else(|| ParseError::UnknownFace {
                            dim: n,
                            name: name.clone(),
                            index: i,
                            target: target.clone(),
                        })?;
                        fx.push(j);
                    }
                }
                level_faces.push(fx);
                let dx = match self.degeneracies[n].get(name) {
                    Some(Some(list)) if n + 1 < levels => {
                        let mut dx = Vec::new();
                        for i in 0..=n {
                            let target = list
                                .get(i)
                                .ok_or_else(|| ParseError::MissingDegeneracy { dim: n, name: name.clone(), index: i })?;
                            let &j = index[n + 1].get(target.as_str()).ok_or_else(|| ParseError::UnknownDegeneracy {
                                dim: n,
                                name: name.clone(),
                                index: i,
                                target: target.clone(),
                            })?;
                            dx.push(j);
                        }
                        Some(dx)
                    }
                    _ if n + 1 >= levels => None,
                    _ => return Err(ParseError::MissingDegeneracy { dim: n, name: name.clone(), index: 0 }),
                };
                level_degs.push(dx);
            }
            let nondeg: HashSet<&str> = self.nondegenerate[n].iter().map(String::as_str).collect();
            if let Some(bad) = nondeg.iter().find(|s| !index[n].contains_key(*s)) {
                return Err(ParseError::UnknownName { field: "nondegenerate", dim: n, name: bad.to_string() });
            }
            degenerate.push(self.simplices[n].iter().map(|s| !nondeg.contains(s.as_str())).collect());
            faces.push(level_faces);
            degeneracies.push(level_degs);
        }
        Ok(SimplicialSet::from_parts(self.trunc_level, self.simplices, faces, degeneracies, degenerate)?)
    }
}

/// Parse a JSON document. Simplicial identities are not checked here.
pub fn parse(text: &str) -> Result<SimplicialSet, ParseError> {
    let doc: SimplicialSetDoc = serde_json::from_str(text).map_err(|e| ParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.into_set()
}

pub fn serialize(k: &SimplicialSet) -> String {
    serde_json::to_string_pretty(&SimplicialSetDoc::from_set(k)).expect("document serializes")
}
