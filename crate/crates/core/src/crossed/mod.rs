//! Free crossed complexes of groupoids, truncated at a finite dimension.
//!
//! Dimension 0 is a set of objects, dimension 1 the free groupoid on a graph,
//! dimension 2 a free crossed module and dimensions ≥ 3 free modules over the
//! fundamental groupoid. Operators act on the right: `x^a`.

mod coset;
mod element;
mod extension;
mod morphism;
mod normalizer;
mod quotient;
pub mod text;

pub use coset::{BudgetExceeded, FiniteGroup};
pub use element::{Cell2, Chain, Element, Term};
pub use extension::{apply_derivation, DerivationTable};
pub use morphism::{BasisTable, Condition, Morphism, MorphismViolation};
pub use normalizer::{
    ComponentGroup, FreeNormalizer, NormalizerChoice, NormalizerError, Pi1Normalizer, Presented, SimplyConnected,
    SpanningForest, DEFAULT_COSET_BUDGET,
};
pub use quotient::{kill_basis, KillError, KillSet, Quotient};

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::groupoid::{EdgeId, Graph, ObjectId, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossedError {
    #[error("dimension {dim} is outside the truncation 0..={trunc}")]
    DimensionOutOfRange { dim: usize, trunc: usize },
    #[error("expected an element of dimension {expected}, found dimension {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("unknown {kind} {name:?}")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate name {name:?} in dimension {dim}")]
    Duplicate { dim: usize, name: String },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Normalizer(#[from] NormalizerError),
    #[error("{0}")]
    NormalizerState(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct Generator {
    name: String,
    base: ObjectId,
    boundary: Element,
}

impl Generator {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn boundary(&self) -> &Element {
        &self.boundary
    }
}

/// A generator whose boundary does not vanish under `δδ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditFailure {
    pub dim: usize,
    pub generator: String,
    pub residue: String,
}

#[derive(Debug, Clone)]
pub struct FreeCrossedComplex {
    trunc: usize,
    objects: Vec<String>,
    edge_names: Vec<String>,
    graph: Graph,
    /// `levels[n - 2]` holds the basis in dimension `n`.
    levels: Vec<Vec<Generator>>,
    lookup: Vec<HashMap<String, usize>>,
    normalizer: Option<Arc<dyn Pi1Normalizer>>,
}

impl FreeCrossedComplex {
    /// An empty complex on the given objects. Add edges and 2-cells, choose a
    /// normalizer, then add the higher cells.
    pub fn new(trunc: usize, objects: Vec<String>) -> Result<Self, CrossedError> {
        let mut lookup = vec![HashMap::new(); trunc + 1];
        for (i, name) in objects.iter().enumerate() {
            if lookup[0].insert(name.clone(), i).is_some() {
                return Err(CrossedError::Duplicate { dim: 0, name: name.clone() });
            }
        }
        Ok(FreeCrossedComplex {
            trunc,
            graph: Graph::new(objects.len()),
            objects,
            edge_names: Vec::new(),
            levels: vec![Vec::new(); trunc.saturating_sub(1)],
            lookup,
            normalizer: None,
        })
    }

    fn frozen_check(&self) -> Result<(), CrossedError> {
        if self.normalizer.is_some() {
            return Err(CrossedError::NormalizerState("dimensions 0-2 are fixed once the normalizer is chosen"));
        }
        Ok(())
    }

    fn register(&mut self, dim: usize, name: &str, index: usize) -> Result<(), CrossedError> {
        if dim > self.trunc {
            return Err(CrossedError::DimensionOutOfRange { dim, trunc: self.trunc });
        }
        if self.lookup[dim].contains_key(name) {
            return Err(CrossedError::Duplicate { dim, name: name.to_owned() });
        }
        self.lookup[dim].insert(name.to_owned(), index);
        Ok(())
    }

    pub fn add_object(&mut self, name: &str) -> Result<ObjectId, CrossedError> {
        self.frozen_check()?;
        let p = self.objects.len();
        self.register(0, name, p)?;
        self.objects.push(name.to_owned());
        self.graph = Graph::with_edges(self.objects.len(), self.graph.edges().to_vec())?;
        Ok(p)
    }

    pub fn add_edge(&mut self, name: &str, source: ObjectId, target: ObjectId) -> Result<EdgeId, CrossedError> {
        self.frozen_check()?;
        self.register(1, name, self.graph.num_edges())?;
        let e = self.graph.add_edge(source, target)?;
        self.edge_names.push(name.to_owned());
        Ok(e)
    }

    /// Add a generator of dimension `dim ≥ 2` with the given boundary. Its base
    /// point is the base point of the boundary.
    pub fn add_generator(&mut self, dim: usize, name: &str, boundary: Element) -> Result<usize, CrossedError> {
        if dim < 2 || dim > self.trunc {
            return Err(CrossedError::DimensionOutOfRange { dim, trunc: self.trunc });
        }
        if boundary.dim() != dim - 1 {
            return Err(CrossedError::DimensionMismatch { expected: dim - 1, found: boundary.dim() });
        }
        let boundary = match (dim, boundary) {
            (2, Element::Word(w)) => {
                self.frozen_check()?;
                if !w.is_loop() {
                    return Err(CrossedError::Endpoint(format!("boundary of 2-cell {name:?} is not a loop")));
                }
                Element::Word(w)
            }
            (_, b) => {
                if self.normalizer.is_none() {
                    return Err(CrossedError::NormalizerState("choose a normalizer before adding cells of dimension ≥ 3"));
                }
                self.check_element(&b)?;
                self.canonical(&b)
            }
        };
        let base = boundary.base();
        let index = self.levels[dim - 2].len();
        self.register(dim, name, index)?;
        self.levels[dim - 2].push(Generator { name: name.to_owned(), base, boundary });
        Ok(index)
    }

    /// Fix the `π₁` strategy from the graph and the 2-cell boundaries.
    pub fn set_normalizer(&mut self, choice: NormalizerChoice) -> Result<(), CrossedError> {
        let n = choice.build(&self.graph, &self.relators())?;
        self.normalizer = Some(n);
        Ok(())
    }

    /// The `δ₂` words of all 2-cells.
    pub fn relators(&self) -> Vec<Word> {
        self.level(2).iter().map(|g| g.boundary.as_word().expect("2-cell boundary is a word").clone()).collect()
    }

    pub fn trunc_level(&self) -> usize {
        self.trunc
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn edge_names(&self) -> &[String] {
        &self.edge_names
    }

    pub fn level(&self, dim: usize) -> &[Generator] {
        if dim < 2 {
            return &[];
        }
        self.levels.get(dim - 2).map_or(&[], Vec::as_slice)
    }

    /// Number of basis elements in dimension `dim` (objects in dimension 0).
    pub fn basis_count(&self, dim: usize) -> usize {
        match dim {
            0 => self.objects.len(),
            1 => self.graph.num_edges(),
            _ => self.level(dim).len(),
        }
    }

    pub fn basis_name(&self, dim: usize, i: usize) -> &str {
        match dim {
            0 => &self.objects[i],
            1 => &self.edge_names[i],
            _ => &self.level(dim)[i].name,
        }
    }

    pub fn find(&self, dim: usize, name: &str) -> Option<usize> {
        self.lookup.get(dim)?.get(name).copied()
    }

    /// `t x` for a basis element: the object itself, the target of an edge,
    /// the base point of a higher generator.
    pub fn basis_base(&self, dim: usize, i: usize) -> ObjectId {
        match dim {
            0 => i,
            1 => self.graph.target(i),
            _ => self.level(dim)[i].base,
        }
    }

    pub fn generator(&self, dim: usize, i: usize) -> &Generator {
        &self.level(dim)[i]
    }

    pub fn normalizer(&self) -> &Arc<dyn Pi1Normalizer> {
        self.normalizer.as_ref().expect("normalizer not chosen yet")
    }

    pub fn has_normalizer(&self) -> bool {
        self.normalizer.is_some()
    }

    pub fn canon(&self, w: &Word) -> Word {
        self.normalizer().canon(w)
    }

    pub fn edge(&self, e: EdgeId) -> Word {
        Word::generator(&self.graph, e)
    }

    /// The basis element `i` of dimension `dim` as an element.
    pub fn basis_element(&self, dim: usize, i: usize) -> Element {
        match dim {
            0 => Element::Object(i),
            1 => Element::Word(self.edge(i)),
            2 => Element::Cell2(Cell2::term(true, i, Word::identity(self.level(2)[i].base))),
            _ => {
                let base = self.level(dim)[i].base;
                let mut c = Chain::zero(dim, base);
                c.add_term(i, Word::identity(base), 1);
                Element::Chain(c)
            }
        }
    }

    /// Check that an element only mentions existing generators with
    /// composable operators.
    pub fn check_element(&self, x: &Element) -> Result<(), CrossedError> {
        let dim = x.dim();
        if dim > self.trunc {
            return Err(CrossedError::DimensionOutOfRange { dim, trunc: self.trunc });
        }
        let check_term = |g: usize, w: &Word| -> Result<(), CrossedError> {
            let Some(gen) = self.level(dim).get(g) else {
                return Err(CrossedError::Unknown { kind: "generator", name: format!("#{g} in dimension {dim}") });
            };
            if w.start() != gen.base || w.end() != x.base() {
                return Err(CrossedError::Endpoint(format!(
                    "operator on {:?} must run from {} to {}",
                    gen.name,
                    self.objects[gen.base],
                    self.objects[x.base()]
                )));
            }
            Ok(())
        };
        match x {
            Element::Object(p) if *p >= self.objects.len() => {
                Err(CrossedError::Unknown { kind: "object", name: format!("#{p}") })
            }
            Element::Object(_) | Element::Word(_) => Ok(()),
            Element::Cell2(c) => c.terms().iter().try_for_each(|t| check_term(t.generator, &t.operator)),
            Element::Chain(c) => c.coefficients().keys().try_for_each(|(g, w)| check_term(*g, w)),
        }
    }

    /// Re-canonicalize the operators of a module element.
    fn canonical(&self, x: &Element) -> Element {
        match x {
            Element::Chain(c) => {
                let mut out = Chain::zero(c.dim(), c.base());
                for ((g, w), &k) in c.coefficients() {
                    out.add_term(*g, self.canon(w), k);
                }
                Element::Chain(out)
            }
            _ => x.clone(),
        }
    }

    /// `δ x` for `dim x ≥ 2`.
    pub fn boundary(&self, x: &Element) -> Result<Element, CrossedError> {
        if x.dim() < 2 {
            return Err(CrossedError::DimensionMismatch { expected: 2, found: x.dim() });
        }
        Ok(self.boundary_of(x))
    }

    pub(crate) fn boundary_of(&self, x: &Element) -> Element {
        match x {
            Element::Cell2(c) => Element::Word(self.boundary2(c)),
            Element::Chain(c) if c.dim() == 3 => {
                let mut out = Cell2::zero(c.base());
                for ((g, w), &k) in c.coefficients() {
                    let d = self.level(3)[*g].boundary.as_cell2().expect("3-cell boundary is 2-dimensional");
                    out = out.plus(&d.acted(w).times(k));
                }
                Element::Cell2(out)
            }
            Element::Chain(c) => {
                let n = c.dim();
                let mut out = Chain::zero(n - 1, c.base());
                for ((g, w), &k) in c.coefficients() {
                    let d = self.level(n)[*g].boundary.as_chain().expect("boundary is a chain");
                    out = out.plus(&d.acted(w, |v| self.canon(v)).scaled(k));
                }
                Element::Chain(out)
            }
            _ => unreachable!("boundary below dimension 2"),
        }
    }

    /// `δ₂` of a 2-dimensional element: `δ₂(±g^w) = -w ± δ₂g + w`.
    pub fn boundary2(&self, c: &Cell2) -> Word {
        let mut acc = Word::identity(c.base());
        for t in c.terms() {
            let d = self.level(2)[t.generator].boundary.as_word().expect("2-cell boundary is a word");
            let d = if t.positive { d.clone() } else { d.invert() };
            acc = acc.then(&t.operator.invert().then(&d).then(&t.operator));
        }
        acc
    }

    /// `x^a`.
    pub fn act(&self, x: &Element, a: &Word) -> Result<Element, CrossedError> {
        if x.dim() < 2 {
            return Err(CrossedError::DimensionMismatch { expected: 2, found: x.dim() });
        }
        if a.start() != x.base() {
            return Err(CrossedError::Endpoint(format!(
                "operator starts at {} but the element lives at {}",
                self.objects[a.start()],
                self.objects[x.base()]
            )));
        }
        Ok(self.act_on(x, a))
    }

    pub(crate) fn act_on(&self, x: &Element, a: &Word) -> Element {
        match x {
            Element::Cell2(c) => Element::Cell2(c.acted(a)),
            Element::Chain(c) => Element::Chain(c.acted(a, |v| self.canon(v))),
            _ => unreachable!("action below dimension 2"),
        }
    }

    /// `x + y`: composition in dimension 1, the group law above.
    pub fn add(&self, x: &Element, y: &Element) -> Result<Element, CrossedError> {
        if x.dim() != y.dim() {
            return Err(CrossedError::DimensionMismatch { expected: x.dim(), found: y.dim() });
        }
        match (x, y) {
            (Element::Object(_), _) => Err(CrossedError::Invalid("objects cannot be added".into())),
            (Element::Word(u), Element::Word(v)) => Ok(Element::Word(u.compose(v)?)),
            _ if x.base() != y.base() => Err(CrossedError::Endpoint(format!(
                "summands live at {} and {}",
                self.objects[x.base()],
                self.objects[y.base()]
            ))),
            _ => Ok(self.sum(x, y)),
        }
    }

    pub(crate) fn sum(&self, x: &Element, y: &Element) -> Element {
        match (x, y) {
            (Element::Word(u), Element::Word(v)) => Element::Word(u.then(v)),
            (Element::Cell2(a), Element::Cell2(b)) => Element::Cell2(a.plus(b)),
            (Element::Chain(a), Element::Chain(b)) => Element::Chain(a.plus(b)),
            _ => unreachable!("sum of mismatched elements"),
        }
    }

    /// `-x`.
    pub fn neg(&self, x: &Element) -> Element {
        match x {
            Element::Object(p) => Element::Object(*p),
            Element::Word(w) => Element::Word(w.invert()),
            Element::Cell2(c) => Element::Cell2(c.neg()),
            Element::Chain(c) => Element::Chain(c.neg()),
        }
    }

    /// The image of a 2-dimensional element in the free `π₁`-module `C₂^ab`.
    pub fn abelianize(&self, c: &Cell2) -> Chain {
        let mut out = Chain::zero(2, c.base());
        for t in c.terms() {
            out.add_term(t.generator, self.canon(&t.operator), if t.positive { 1 } else { -1 });
        }
        out
    }

    /// Equality of elements. In dimension 2 two elements agree when their
    /// `δ₂` words and their abelianizations agree; `C₁` is free, so this
    /// pair is injective.
    pub fn equal(&self, x: &Element, y: &Element) -> Result<bool, CrossedError> {
        if x.dim() != y.dim() {
            return Err(CrossedError::DimensionMismatch { expected: x.dim(), found: y.dim() });
        }
        Ok(self.same(x, y))
    }

    pub(crate) fn same(&self, x: &Element, y: &Element) -> bool {
        match (x, y) {
            (Element::Cell2(a), Element::Cell2(b)) => {
                a.base() == b.base() && self.boundary2(a) == self.boundary2(b) && self.abelianize(a) == self.abelianize(b)
            }
            (Element::Chain(_), Element::Chain(_)) => self.canonical(x) == self.canonical(y),
            _ => x == y,
        }
    }

    /// Is `x` the identity/zero at its base?
    pub fn is_trivial(&self, x: &Element) -> bool {
        self.same(x, &Element::zero(x.dim(), x.base()))
    }

    /// Check `δδ = 0` on every generator of dimension ≥ 3.
    pub fn audit(&self) -> Vec<AuditFailure> {
        let mut failures = Vec::new();
        for dim in 3..=self.trunc {
            for (i, g) in self.level(dim).iter().enumerate() {
                let dd = self.boundary_of(&g.boundary);
                if !self.is_trivial(&dd) {
                    failures.push(AuditFailure { dim, generator: g.name.clone(), residue: self.show(&dd) });
                }
                debug_assert_eq!(self.basis_base(dim, i), g.boundary.base());
            }
        }
        failures
    }

    /// Restrict to dimensions ≤ `level`.
    pub fn truncate(&self, level: usize) -> Result<FreeCrossedComplex, CrossedError> {
        if level > self.trunc {
            return Err(CrossedError::DimensionOutOfRange { dim: level, trunc: self.trunc });
        }
        let mut out = self.clone();
        out.trunc = level;
        out.levels.truncate(level.saturating_sub(1));
        out.lookup.truncate(level + 1);
        if level == 0 {
            out.graph = Graph::new(self.objects.len());
            out.edge_names.clear();
        }
        if level < 2 {
            out.normalizer = Some(Arc::new(FreeNormalizer));
        }
        Ok(out)
    }

    pub fn show_word(&self, w: &Word) -> String {
        w.display(&self.edge_names, &self.objects).to_string()
    }

    /// Render an element in the text grammar.
    pub fn show(&self, x: &Element) -> String {
        let mut s = String::new();
        match x {
            Element::Object(p) => s.push_str(&self.objects[*p]),
            Element::Word(w) => s.push_str(&self.show_word(w)),
            Element::Cell2(c) => {
                if c.is_empty() {
                    return "0".into();
                }
                for (i, t) in c.terms().iter().enumerate() {
                    match (i, t.positive) {
                        (0, true) => {}
                        (0, false) => s.push('-'),
                        (_, true) => s.push_str(" + "),
                        (_, false) => s.push_str(" - "),
                    }
                    self.write_term(&mut s, 2, t.generator, &t.operator);
                }
            }
            Element::Chain(c) => {
                if c.is_zero() {
                    return "0".into();
                }
                for (i, ((g, w), &k)) in c.coefficients().iter().enumerate() {
                    match (i, k > 0) {
                        (0, true) => {}
                        (0, false) => s.push('-'),
                        (_, true) => s.push_str(" + "),
                        (_, false) => s.push_str(" - "),
                    }
                    if k.abs() != 1 {
                        let _ = write!(s, "{}*", k.abs());
                    }
                    self.write_term(&mut s, c.dim(), *g, w);
                }
            }
        }
        s
    }

    fn write_term(&self, s: &mut String, dim: usize, g: usize, w: &Word) {
        s.push_str(self.basis_name(dim, g));
        if !w.is_identity() {
            let _ = write!(s, "^[{}]", self.show_word(w));
        }
    }
}
