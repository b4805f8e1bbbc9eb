//! Finite truncations of simplicial sets.
//!
//! A [`SimplicialSet`] stores every simplex up to its truncation level `N`,
//! degenerate ones included, together with the face maps `∂_i` and (below the
//! top dimension) the degeneracy maps `ε_i`.

mod builders;
mod codec;
mod validate;

pub use builders::{boundary_simplex, nerve_of_group, standard_simplex, GroupTable, GroupTableError};
pub use codec::{parse, serialize, ParseError, SimplicialSetDoc};
pub use validate::{validate, IdentityRule, ValidationReport, Violation};

use std::collections::HashMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("simplex {name:?} of dimension {dim}: {reason}")]
    Malformed { dim: usize, name: String, reason: String },
    #[error("duplicate simplex name {name:?} in dimension {dim}")]
    DuplicateName { dim: usize, name: String },
}

/// Handle on a simplex: its dimension and position within that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub fn new(dim: usize, index: usize) -> Self {
        SimplexId { dim, index }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialSet {
    trunc_level: usize,
    names: Vec<Vec<String>>,
    /// `faces[n][x][i]` is the index of `∂_i x` in dimension `n - 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][x][i]` is the index of `ε_i x` in dimension `n + 1`;
    /// `None` at the truncation level.
    degeneracies: Vec<Vec<Option<Vec<usize>>>>,
    degenerate: Vec<Vec<bool>>,
    lookup: Vec<HashMap<String, usize>>,
}

impl SimplicialSet {
    /// Assemble a simplicial set from raw tables.
    ///
    /// Checks shapes and index ranges only; the simplicial identities are the
    /// business of [`validate`].
    pub fn from_parts(
        trunc_level: usize,
        names: Vec<Vec<String>>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Option<Vec<usize>>>>,
        degenerate: Vec<Vec<bool>>,
    ) -> Result<Self, SimplicialError> {
        let levels = trunc_level + 1;
        if names.len() != levels || faces.len() != levels || degeneracies.len() != levels || degenerate.len() != levels
        {
            return Err(SimplicialError::InvalidArguments(format!(
                "expected {levels} dimension levels for truncation {trunc_level}"
            )));
        }
        let mut lookup = Vec::with_capacity(levels);
        for (n, level) in names.iter().enumerate() {
            let mut map = HashMap::with_capacity(level.len());
            for (i, name) in level.iter().enumerate() {
                if map.insert(name.clone(), i).is_some() {
                    return Err(SimplicialError::DuplicateName { dim: n, name: name.clone() });
                }
            }
            lookup.push(map);
        }
        let malformed = |n: usize, x: usize, reason: String| SimplicialError::Malformed {
            dim: n,
            name: names[n][x].clone(),
            reason,
        };
        for n in 0..levels {
            let count = names[n].len();
            if faces[n].len() != count || degeneracies[n].len() != count || degenerate[n].len() != count {
                return Err(SimplicialError::InvalidArguments(format!(
                    "dimension {n}: tables disagree on the number of simplices"
                )));
            }
            for x in 0..count {
                let fx = &faces[n][x];
                let expected = if n == 0 { 0 } else { n + 1 };
                if fx.len() != expected {
                    return Err(malformed(n, x, format!("has {} faces, expected {expected}", fx.len())));
                }
                if let Some(&bad) = fx.iter().find(|&&f| f >= names[n - 1].len()) {
                    return Err(malformed(n, x, format!("face index {bad} out of range")));
                }
                match (&degeneracies[n][x], n < trunc_level) {
                    (Some(d), true) => {
                        if d.len() != n + 1 {
                            return Err(malformed(n, x, format!("has {} degeneracies, expected {}", d.len(), n + 1)));
                        }
                        if let Some(&bad) = d.iter().find(|&&y| y >= names[n + 1].len()) {
                            return Err(malformed(n, x, format!("degeneracy index {bad} out of range")));
                        }
                    }
                    (None, false) => {}
                    (Some(_), false) => {
                        return Err(malformed(n, x, "degeneracies recorded above the truncation level".into()))
                    }
                    (None, true) => return Err(malformed(n, x, "missing degeneracies".into())),
                }
            }
        }
        Ok(SimplicialSet { trunc_level, names, faces, degeneracies, degenerate, lookup })
    }

    pub fn trunc_level(&self) -> usize {
        self.trunc_level
    }

    pub fn count(&self, dim: usize) -> usize {
        self.names.get(dim).map_or(0, Vec::len)
    }

    pub fn simplices(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.count(dim)).map(move |i| SimplexId::new(dim, i))
    }

    pub fn name(&self, x: SimplexId) -> &str {
        &self.names[x.dim][x.index]
    }

    pub fn names(&self, dim: usize) -> &[String] {
        &self.names[dim]
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<SimplexId> {
        self.lookup.get(dim)?.get(name).map(|&i| SimplexId::new(dim, i))
    }

    /// `∂_i x`. Panics if `x` is a vertex or `i > dim x`.
    pub fn face(&self, x: SimplexId, i: usize) -> SimplexId {
        assert!(x.dim > 0 && i <= x.dim, "face ∂_{i} undefined in dimension {}", x.dim);
        SimplexId::new(x.dim - 1, self.faces[x.dim][x.index][i])
    }

    /// `∂_0^k x`.
    pub fn iterated_first_face(&self, x: SimplexId, k: usize) -> SimplexId {
        (0..k).fold(x, |y, _| self.face(y, 0))
    }

    /// The final vertex `∂_0^n x`, which serves as base point.
    pub fn base_vertex(&self, x: SimplexId) -> SimplexId {
        self.iterated_first_face(x, x.dim)
    }

    /// `ε_i x`, or `None` above the truncation level.
    pub fn degeneracy(&self, x: SimplexId, i: usize) -> Option<SimplexId> {
        assert!(i <= x.dim, "degeneracy ε_{i} undefined in dimension {}", x.dim);
        self.degeneracies[x.dim][x.index].as_ref().map(|d| SimplexId::new(x.dim + 1, d[i]))
    }

    pub fn is_degenerate(&self, x: SimplexId) -> bool {
        self.degenerate[x.dim][x.index]
    }

    pub fn nondegenerate(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices(dim).filter(move |&x| !self.is_degenerate(x))
    }

    /// Is `x = ε_0 y` for some `y`? Relies on `∂_0 ε_0 = id`.
    pub fn is_first_degeneracy(&self, x: SimplexId) -> bool {
        self.first_degeneracy_source(x).is_some()
    }

    /// The `y` with `ε_0 y = x`, if any.
    pub fn first_degeneracy_source(&self, x: SimplexId) -> Option<SimplexId> {
        if x.dim == 0 {
            return None;
        }
        let y = self.face(x, 0);
        (self.degeneracy(y, 0) == Some(x)).then_some(y)
    }

    /// Every pair `(i, y)` with `ε_i y = x`. Relies on `∂_i ε_i = id`.
    pub fn degeneracy_sources(&self, x: SimplexId) -> Vec<(usize, SimplexId)> {
        if x.dim == 0 {
            return Vec::new();
        }
        (0..x.dim)
            .filter_map(|i| {
                let y = self.face(x, i);
                (self.degeneracy(y, i) == Some(x)).then_some((i, y))
            })
            .collect()
    }

    /// Restrict to simplices of dimension at most `level`.
    pub fn truncate(&self, level: usize) -> Result<SimplicialSet, SimplicialError> {
        if level > self.trunc_level {
            return Err(SimplicialError::InvalidArguments(format!(
                "cannot raise truncation from {} to {level}",
                self.trunc_level
            )));
        }
        let keep = level + 1;
        let mut degeneracies: Vec<_> = self.degeneracies[..keep].to_vec();
        for d in degeneracies[level].iter_mut() {
            *d = None;
        }
        SimplicialSet::from_parts(
            level,
            self.names[..keep].to_vec(),
            self.faces[..keep].to_vec(),
            degeneracies,
            self.degenerate[..keep].to_vec(),
        )
    }

    /// Is `self` a sub-simplicial set of `other`, matching simplices by name?
    pub fn is_subobject_of(&self, other: &SimplicialSet) -> bool {
        if self.trunc_level > other.trunc_level {
            return false;
        }
        for n in 0..=self.trunc_level {
            for x in self.simplices(n) {
                let Some(ox) = other.find(n, self.name(x)) else { return false };
                if n > 0 {
                    for i in 0..=n {
                        if other.name(other.face(ox, i)) != self.name(self.face(x, i)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
