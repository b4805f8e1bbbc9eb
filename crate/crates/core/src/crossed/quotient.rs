use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use super::{BasisTable, CrossedError, Element, FreeCrossedComplex, Morphism, NormalizerChoice};
use crate::groupoid::Word;

/// Basis elements to kill, per dimension. Objects cannot be killed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KillSet {
    pub sets: Vec<BTreeSet<usize>>,
}

impl KillSet {
    pub fn new() -> Self {
        KillSet::default()
    }

    pub fn insert(&mut self, dim: usize, i: usize) {
        if self.sets.len() <= dim {
            self.sets.resize(dim + 1, BTreeSet::new());
        }
        self.sets[dim].insert(i);
    }

    pub fn contains(&self, dim: usize, i: usize) -> bool {
        self.sets.get(dim).is_some_and(|s| s.contains(&i))
    }

    pub fn len(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KillError {
    #[error("objects cannot be killed")]
    Object,
    #[error("edge {0:?} is not a loop and cannot be killed")]
    NotLoop(String),
    #[error("cannot kill {generator:?} in dimension {dim}: its boundary projects to {residue}")]
    NotNormal { dim: usize, generator: String, residue: String },
    #[error(transparent)]
    Crossed(#[from] CrossedError),
}

/// The quotient of a free crossed complex by a set of basis elements whose
/// boundaries die with them.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub complex: Arc<FreeCrossedComplex>,
    pub projection: Morphism,
    /// `survivors[n]` lists the old indices kept in dimension `n`.
    pub survivors: Vec<Vec<usize>>,
    /// `new_index[n][i]` is the index of old element `i` in the quotient.
    pub new_index: Vec<Vec<Option<usize>>>,
}

impl Quotient {
    /// Image of the old basis element `(dim, i)`.
    pub fn image(&self, dim: usize, i: usize) -> Element {
        self.projection.table().image(dim, i)
    }
}

/// Kill the given basis elements, keeping the names of the rest.
pub fn kill_basis(c: &Arc<FreeCrossedComplex>, kill: &KillSet, choice: NormalizerChoice) -> Result<Quotient, KillError> {
    if kill.sets.first().is_some_and(|s| !s.is_empty()) {
        return Err(KillError::Object);
    }
    let trunc = c.trunc_level();
    for n in 1..kill.sets.len() {
        if let Some(&i) = kill.sets[n].iter().find(|&&i| n > trunc || i >= c.basis_count(n)) {
            return Err(CrossedError::Unknown { kind: "basis element", name: format!("#{i} in dimension {n}") }.into());
        }
    }
    let mut survivors = vec![(0..c.num_objects()).collect::<Vec<_>>()];
    let mut new_index = vec![(0..c.num_objects()).map(Some).collect::<Vec<_>>()];
    let mut q = FreeCrossedComplex::new(trunc, c.object_names().to_vec())?;
    let mut table =
        BasisTable { top: trunc.min(1), objects: (0..c.num_objects()).collect(), edges: Vec::new(), higher: Vec::new() };

    if trunc >= 1 {
        let (mut kept, mut index) = (Vec::new(), Vec::new());
        for (e, &(s, t)) in c.graph().edges().iter().enumerate() {
            if kill.contains(1, e) {
                if s != t {
                    return Err(KillError::NotLoop(c.basis_name(1, e).to_owned()));
                }
                index.push(None);
            } else {
                index.push(Some(q.add_edge(c.basis_name(1, e), s, t)?));
                kept.push(e);
            }
        }
        // the killed edges are loops, so the images below are well formed
        table.edges = index
            .iter()
            .enumerate()
            .map(|(e, k)| match k {
                Some(j) => Word::generator(q.graph(), *j),
                None => Word::identity(c.graph().source(e)),
            })
            .collect();
        survivors.push(kept);
        new_index.push(index);
    }

    for n in 2..=trunc {
        let (mut kept, mut index, mut values) = (Vec::new(), Vec::new(), Vec::new());
        if n == 2 {
            for (i, g) in c.level(2).iter().enumerate() {
                let w = table.word(g.boundary().as_word().expect("2-cell boundary is a word"));
                if kill.contains(2, i) {
                    if !w.is_identity() {
                        return Err(not_normal(c, 2, i, q.show_word(&w)));
                    }
                    index.push(None);
                    values.push(Element::zero(2, g.base()));
                } else {
                    let j = q.add_generator(2, g.name(), Element::Word(w))?;
                    index.push(Some(j));
                    kept.push(i);
                    values.push(q.basis_element(2, j));
                }
            }
            q.set_normalizer(choice)?;
        } else {
            for (i, g) in c.level(n).iter().enumerate() {
                let d = table.apply(&q, g.boundary());
                if kill.contains(n, i) {
                    if !q.is_trivial(&d) {
                        return Err(not_normal(c, n, i, q.show(&d)));
                    }
                    index.push(None);
                    values.push(Element::zero(n, g.base()));
                } else {
                    let j = q.add_generator(n, g.name(), d)?;
                    index.push(Some(j));
                    kept.push(i);
                    values.push(q.basis_element(n, j));
                }
            }
        }
        table.higher.push(values);
        table.top = n;
        survivors.push(kept);
        new_index.push(index);
    }
    if trunc < 2 {
        q.set_normalizer(choice)?;
    }
    let q = Arc::new(q);
    let projection = Morphism::new_unchecked(c.clone(), q.clone(), table);
    Ok(Quotient { complex: q, projection, survivors, new_index })
}

fn not_normal(c: &FreeCrossedComplex, dim: usize, i: usize, residue: String) -> KillError {
    KillError::NotNormal { dim, generator: c.basis_name(dim, i).to_owned(), residue }
}
