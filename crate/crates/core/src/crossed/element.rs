use std::collections::BTreeMap;

use crate::groupoid::{ObjectId, Word};

/// One factor `±g^w` of a 2-dimensional element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub positive: bool,
    pub generator: usize,
    pub operator: Word,
}

impl Term {
    pub fn new(positive: bool, generator: usize, operator: Word) -> Self {
        Term { positive, generator, operator }
    }

    fn cancels(&self, other: &Term) -> bool {
        self.positive != other.positive && self.generator == other.generator && self.operator == other.operator
    }
}

/// An element of the free crossed module in dimension 2, kept as the ordered
/// sum of its terms. Only adjacent `x - x` pairs are cancelled; everything
/// else is decided by equality in the complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell2 {
    base: ObjectId,
    terms: Vec<Term>,
}

impl Cell2 {
    pub fn zero(base: ObjectId) -> Self {
        Cell2 { base, terms: Vec::new() }
    }

    /// `±g^w`, based at the end of `w`.
    pub fn term(positive: bool, generator: usize, operator: Word) -> Self {
        Cell2 { base: operator.end(), terms: vec![Term::new(positive, generator, operator)] }
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn push(&mut self, t: Term) {
        debug_assert_eq!(t.operator.end(), self.base);
        if self.terms.last().is_some_and(|last| last.cancels(&t)) {
            self.terms.pop();
        } else {
            self.terms.push(t);
        }
    }

    /// `self + other`; both must share a base.
    pub fn plus(&self, other: &Cell2) -> Cell2 {
        debug_assert_eq!(self.base, other.base);
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn neg(&self) -> Cell2 {
        Cell2 {
            base: self.base,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|t| Term::new(!t.positive, t.generator, t.operator.clone()))
                .collect(),
        }
    }

    /// `self^a`; `a` must start at the base.
    pub(crate) fn acted(&self, a: &Word) -> Cell2 {
        debug_assert_eq!(a.start(), self.base);
        Cell2 {
            base: a.end(),
            terms: self.terms.iter().map(|t| Term::new(t.positive, t.generator, t.operator.then(a))).collect(),
        }
    }

    /// `k·self` for an integer `k`.
    pub fn times(&self, k: i64) -> Cell2 {
        let unit = if k < 0 { self.neg() } else { self.clone() };
        let mut out = Cell2::zero(self.base);
        for _ in 0..k.unsigned_abs() {
            out = out.plus(&unit);
        }
        out
    }
}

/// An element of a free module over `π₁` (dimensions ≥ 3, and abelianized
/// dimension 2): integer coefficients on `(generator, operator)` pairs, with
/// operators in normalizer-canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    dim: usize,
    base: ObjectId,
    coeffs: BTreeMap<(usize, Word), i64>,
}

impl Chain {
    pub fn zero(dim: usize, base: ObjectId) -> Self {
        Chain { dim, base, coeffs: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> ObjectId {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, Word), i64> {
        &self.coeffs
    }

    pub fn coefficient(&self, generator: usize, operator: &Word) -> i64 {
        // BTreeMap lookups need an owned key; elements are small
        self.coeffs.get(&(generator, operator.clone())).copied().unwrap_or(0)
    }

    /// Add `k·g^w`, where `w` is already canonical and ends at the base.
    pub(crate) fn add_term(&mut self, generator: usize, operator: Word, k: i64) {
        debug_assert_eq!(operator.end(), self.base);
        if k == 0 {
            return;
        }
        let key = (generator, operator);
        let v = self.coeffs.entry(key.clone()).or_insert(0);
        *v += k;
        if *v == 0 {
            self.coeffs.remove(&key);
        }
    }

    pub fn plus(&self, other: &Chain) -> Chain {
        debug_assert_eq!((self.dim, self.base), (other.dim, other.base));
        let mut out = self.clone();
        for ((g, w), &k) in &other.coeffs {
            out.add_term(*g, w.clone(), k);
        }
        out
    }

    pub fn scaled(&self, k: i64) -> Chain {
        if k == 0 {
            return Chain::zero(self.dim, self.base);
        }
        Chain { dim: self.dim, base: self.base, coeffs: self.coeffs.iter().map(|(key, v)| (key.clone(), v * k)).collect() }
    }

    pub fn neg(&self) -> Chain {
        self.scaled(-1)
    }

    /// `self^a`, canonicalizing operators with `canon`.
    pub(crate) fn acted(&self, a: &Word, canon: impl Fn(&Word) -> Word) -> Chain {
        debug_assert_eq!(a.start(), self.base);
        let mut out = Chain::zero(self.dim, a.end());
        for ((g, w), &k) in &self.coeffs {
            out.add_term(*g, canon(&w.then(a)), k);
        }
        out
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

/// A graded element of a free crossed complex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    Object(ObjectId),
    Word(Word),
    Cell2(Cell2),
    Chain(Chain),
}

impl Element {
    pub fn dim(&self) -> usize {
        match self {
            Element::Object(_) => 0,
            Element::Word(_) => 1,
            Element::Cell2(_) => 2,
            Element::Chain(c) => c.dim,
        }
    }

    /// The object `t x`: the end of a word, the base of a higher element.
    pub fn base(&self) -> ObjectId {
        match self {
            Element::Object(p) => *p,
            Element::Word(w) => w.end(),
            Element::Cell2(c) => c.base,
            Element::Chain(c) => c.base,
        }
    }

    pub fn as_object(&self) -> Option<&ObjectId> {
        match self {
            Element::Object(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Element::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_cell2(&self) -> Option<&Cell2> {
        match self {
            Element::Cell2(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_chain(&self) -> Option<&Chain> {
        match self {
            Element::Chain(c) => Some(c),
            _ => None,
        }
    }

    /// The identity / zero of dimension `dim` at `base`.
    pub fn zero(dim: usize, base: ObjectId) -> Element {
        match dim {
            0 => Element::Object(base),
            1 => Element::Word(Word::identity(base)),
            2 => Element::Cell2(Cell2::zero(base)),
            _ => Element::Chain(Chain::zero(dim, base)),
        }
    }

    /// Syntactically trivial. Use the complex's equality for the semantic test.
    pub fn is_zero(&self) -> bool {
        match self {
            Element::Object(_) => true,
            Element::Word(w) => w.is_identity(),
            Element::Cell2(c) => c.is_empty(),
            Element::Chain(c) => c.is_zero(),
        }
    }
}

impl From<Word> for Element {
    fn from(w: Word) -> Self {
        Element::Word(w)
    }
}

impl From<Cell2> for Element {
    fn from(c: Cell2) -> Self {
        Element::Cell2(c)
    }
}

impl From<Chain> for Element {
    fn from(c: Chain) -> Self {
        Element::Chain(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{Graph, Letter};

    fn loop_graph() -> Graph {
        Graph::with_edges(1, vec![(0, 0)]).unwrap()
    }

    #[test]
    fn adjacent_inverse_terms_cancel() {
        let g = loop_graph();
        let x = Word::generator(&g, 0);
        let a = Cell2::term(true, 0, x.clone());
        let sum = a.plus(&a.neg());
        assert!(sum.is_empty());
        // non-adjacent terms stay
        let b = Cell2::term(true, 1, Word::identity(0));
        assert_eq!(a.plus(&b).plus(&a.neg()).terms().len(), 3);
    }

    #[test]
    fn neg_reverses_order() {
        let id = Word::identity(0);
        let c = Cell2::term(true, 0, id.clone()).plus(&Cell2::term(false, 1, id.clone()));
        let n = c.neg();
        assert_eq!(n.terms()[0], Term::new(true, 1, id.clone()));
        assert_eq!(n.terms()[1], Term::new(false, 0, id));
    }

    #[test]
    fn times_matches_repeated_sum() {
        let g = loop_graph();
        let c = Cell2::term(true, 0, Word::from_letters(&g, 0, &[Letter::forward(0)]).unwrap());
        assert_eq!(c.times(3), c.plus(&c).plus(&c));
        assert!(c.times(2).plus(&c.times(-2)).is_empty());
        assert!(c.times(0).is_empty());
    }

    #[test]
    fn chain_arithmetic() {
        let id = Word::identity(0);
        let mut a = Chain::zero(3, 0);
        a.add_term(0, id.clone(), 2);
        let mut b = Chain::zero(3, 0);
        b.add_term(1, id.clone(), -1);
        assert_eq!(a.plus(&b), b.plus(&a));
        assert!(a.plus(&a.neg()).is_zero());
        assert_eq!(a.scaled(3).coefficient(0, &id), 6);
        assert_eq!(a.plus(&b).augmentation(), 1);
    }
}
