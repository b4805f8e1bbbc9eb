use std::fmt;
use std::sync::Arc;

use super::{Cell2, Chain, CrossedError, Element, FreeCrossedComplex};
use crate::groupoid::{ObjectId, Word};

/// Images of the basis elements of a free crossed complex, through dimension
/// `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisTable {
    pub top: usize,
    pub objects: Vec<ObjectId>,
    pub edges: Vec<Word>,
    /// `higher[n - 2][g]` is the image of the `n`-dimensional generator `g`.
    pub higher: Vec<Vec<Element>>,
}

impl BasisTable {
    pub fn identity(c: &FreeCrossedComplex) -> Self {
        let top = c.trunc_level();
        BasisTable {
            top,
            objects: (0..c.num_objects()).collect(),
            edges: (0..c.basis_count(1)).map(|e| c.edge(e)).collect(),
            higher: (2..=top).map(|n| (0..c.basis_count(n)).map(|g| c.basis_element(n, g)).collect()).collect(),
        }
    }

    /// The image of basis element `i` in dimension `dim`.
    pub fn image(&self, dim: usize, i: usize) -> Element {
        match dim {
            0 => Element::Object(self.objects[i]),
            1 => Element::Word(self.edges[i].clone()),
            _ => self.higher[dim - 2][i].clone(),
        }
    }

    pub(crate) fn word(&self, w: &Word) -> Word {
        let mut acc = Word::identity(self.objects[w.start()]);
        for l in w.letters() {
            let img = &self.edges[l.edge];
            acc = acc.then(&if l.inverse { img.invert() } else { img.clone() });
        }
        acc
    }

    /// Extend the table to a morphism and apply it. `x` must lie in dimension
    /// at most `top`.
    pub fn apply(&self, target: &FreeCrossedComplex, x: &Element) -> Element {
        assert!(x.dim() <= self.top, "morphism defined through dimension {}, got {}", self.top, x.dim());
        match x {
            Element::Object(p) => Element::Object(self.objects[*p]),
            Element::Word(w) => Element::Word(self.word(w)),
            Element::Cell2(c) => {
                let mut out = Cell2::zero(self.objects[c.base()]);
                for t in c.terms() {
                    let img = self.higher[0][t.generator].as_cell2().expect("2-dimensional image");
                    let img = img.acted(&self.word(&t.operator));
                    out = out.plus(&if t.positive { img } else { img.neg() });
                }
                Element::Cell2(out)
            }
            Element::Chain(c) => {
                let n = c.dim();
                let mut out = Chain::zero(n, self.objects[c.base()]);
                for ((g, w), &k) in c.coefficients() {
                    let img = self.higher[n - 2][*g].as_chain().expect("chain image");
                    out = out.plus(&img.acted(&self.word(w), |v| target.canon(v)).scaled(k));
                }
                Element::Chain(out)
            }
        }
    }
}

/// Which defining condition of a morphism failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// The table does not cover the source basis, or a value is malformed.
    Shape,
    /// `s f x = f s x`
    Source,
    /// `t f x = f t x`
    Target,
    /// `δ f x = f δ x`
    Boundary,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Shape => "table shape",
            Condition::Source => "sfx = fsx",
            Condition::Target => "tfx = ftx",
            Condition::Boundary => "δfx = fδx",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismViolation {
    pub dim: usize,
    pub generator: String,
    pub condition: Condition,
    pub detail: String,
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {:?} (dim {}): {}", self.condition, self.generator, self.dim, self.detail)
    }
}

/// A morphism of free crossed complexes given by its values on the source
/// basis, defined through dimension `table.top`.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: Arc<FreeCrossedComplex>,
    target: Arc<FreeCrossedComplex>,
    table: BasisTable,
}

impl Morphism {
    /// Check the table against the geometric conditions and wrap it.
    pub fn build(
        source: Arc<FreeCrossedComplex>,
        target: Arc<FreeCrossedComplex>,
        table: BasisTable,
    ) -> Result<Morphism, Vec<MorphismViolation>> {
        let violations = check_table(&source, &target, &table);
        if violations.is_empty() {
            Ok(Morphism { source, target, table })
        } else {
            Err(violations)
        }
    }

    /// Wrap a table the caller has already checked.
    pub(crate) fn new_unchecked(source: Arc<FreeCrossedComplex>, target: Arc<FreeCrossedComplex>, table: BasisTable) -> Self {
        Morphism { source, target, table }
    }

    pub fn identity(c: Arc<FreeCrossedComplex>) -> Morphism {
        let table = BasisTable::identity(&c);
        Morphism { source: c.clone(), target: c, table }
    }

    pub fn source(&self) -> &Arc<FreeCrossedComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeCrossedComplex> {
        &self.target
    }

    pub fn table(&self) -> &BasisTable {
        &self.table
    }

    pub fn top(&self) -> usize {
        self.table.top
    }

    pub fn apply(&self, x: &Element) -> Result<Element, CrossedError> {
        if x.dim() > self.table.top {
            return Err(CrossedError::DimensionOutOfRange { dim: x.dim(), trunc: self.table.top });
        }
        self.source.check_element(x)?;
        Ok(self.table.apply(&self.target, x))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism, CrossedError> {
        if !Arc::ptr_eq(&self.target, &next.source) {
            return Err(CrossedError::Invalid("composing morphisms whose ends do not match".into()));
        }
        let top = self.table.top.min(next.table.top);
        let table = BasisTable {
            top,
            objects: self.table.objects.iter().map(|&p| next.table.objects[p]).collect(),
            edges: if top >= 1 { self.table.edges.iter().map(|w| next.table.word(w)).collect() } else { Vec::new() },
            higher: (2..=top)
                .map(|n| self.table.higher[n - 2].iter().map(|x| next.table.apply(&next.target, x)).collect())
                .collect(),
        };
        Ok(Morphism { source: self.source.clone(), target: next.target.clone(), table })
    }

    /// Do two morphisms with the same ends agree on every basis element?
    pub fn agrees_with(&self, other: &Morphism) -> bool {
        let top = self.table.top.min(other.table.top);
        (0..=top).all(|n| {
            (0..self.source.basis_count(n))
                .all(|g| self.target.same(&self.table.image(n, g), &other.table.image(n, g)))
        })
    }
}

pub(crate) fn check_table(source: &FreeCrossedComplex, target: &FreeCrossedComplex, t: &BasisTable) -> Vec<MorphismViolation> {
    let violation = |dim: usize, g: usize, condition, detail: String| MorphismViolation {
        dim,
        generator: source.basis_name(dim, g).to_owned(),
        condition,
        detail,
    };
    let shape = |detail: String| {
        vec![MorphismViolation { dim: 0, generator: String::new(), condition: Condition::Shape, detail }]
    };
    if t.top > source.trunc_level() || t.top > target.trunc_level() {
        return shape(format!("table reaches dimension {} beyond a truncation", t.top));
    }
    let shape_ok = t.objects.len() == source.num_objects()
        && t.edges.len() == if t.top >= 1 { source.basis_count(1) } else { 0 }
        && t.higher.len() == t.top.saturating_sub(1)
        && (2..=t.top).all(|n| t.higher[n - 2].len() == source.basis_count(n));
    if !shape_ok {
        return shape("table does not cover the source basis".into());
    }
    if let Some(&q) = t.objects.iter().find(|&&q| q >= target.num_objects()) {
        return shape(format!("object #{q} does not exist"));
    }
    let mut out = Vec::new();
    for (e, w) in t.edges.iter().enumerate() {
        if w.letters().iter().any(|l| l.edge >= target.basis_count(1)) {
            out.push(violation(1, e, Condition::Shape, "value mentions an unknown edge".into()));
            continue;
        }
        let (s, tt) = source.graph().edges()[e];
        if w.start() != t.objects[s] {
            let detail = format!("{} starts at {}", target.show_word(w), target.object_names()[w.start()]);
            out.push(violation(1, e, Condition::Source, detail));
        }
        if w.end() != t.objects[tt] {
            let detail = format!("{} ends at {}", target.show_word(w), target.object_names()[w.end()]);
            out.push(violation(1, e, Condition::Target, detail));
        }
    }
    if !out.is_empty() {
        return out;
    }
    // higher values can only be compared once everything below is sound
    for n in 2..=t.top {
        for (g, v) in t.higher[n - 2].iter().enumerate() {
            if v.dim() != n || target.check_element(v).is_err() {
                let detail = format!("value is not a well-formed element of dimension {n}");
                out.push(violation(n, g, Condition::Shape, detail));
                continue;
            }
            let want = t.objects[source.basis_base(n, g)];
            if v.base() != want {
                let names = target.object_names();
                let detail = format!("value lives at {}, expected {}", names[v.base()], names[want]);
                out.push(violation(n, g, Condition::Target, detail));
                continue;
            }
            let lhs = target.boundary_of(v);
            let rhs = t.apply(target, source.generator(n, g).boundary());
            if !target.same(&lhs, &rhs) {
                let detail = format!("δfx = {} but fδx = {}", target.show(&lhs), target.show(&rhs));
                out.push(violation(n, g, Condition::Boundary, detail));
            }
        }
        if !out.is_empty() {
            break;
        }
    }
    out
}
