use super::{BasisTable, Cell2, Chain, Element, FreeCrossedComplex};
use crate::groupoid::Word;

/// Values of an `f`-derivation (a homotopy) on a basis: `objects[p]` is the
/// path `h₀ p`, `higher[n - 1][g]` the element `h g` of dimension `n + 1` for
/// a generator `g` of dimension `n`. Defined on dimensions `1..=top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTable {
    pub top: usize,
    pub objects: Vec<Word>,
    pub higher: Vec<Vec<Element>>,
}

impl DerivationTable {
    pub fn value(&self, dim: usize, g: usize) -> Element {
        if dim == 0 {
            Element::Word(self.objects[g].clone())
        } else {
            self.higher[dim - 1][g].clone()
        }
    }
}

/// Extend `h` over the crossed complex structure and evaluate it on `x`,
/// where `1 ≤ dim x ≤ top` and `base` is the morphism `h` is a derivation over.
pub fn apply_derivation(h: &DerivationTable, base: &BasisTable, target: &FreeCrossedComplex, x: &Element) -> Element {
    assert!(
        (1..=h.top).contains(&x.dim()),
        "derivation defined on dimensions 1..={}, got {}",
        h.top,
        x.dim()
    );
    match x {
        Element::Word(w) => {
            // h(u + l) = h(u)^{f l} + h(l)
            let mut acc = Cell2::zero(base.objects[w.start()]);
            for l in w.letters() {
                let img = base.edges[l.edge].clone();
                let value = h.higher[0][l.edge].as_cell2().expect("h on edges is 2-dimensional");
                // h(-e) = -(h e)^{f(-e)}
                let (step, hl) = if l.inverse {
                    let back = img.invert();
                    (back.clone(), value.acted(&back).neg())
                } else {
                    (img, value.clone())
                };
                acc = acc.acted(&step).plus(&hl);
            }
            Element::Cell2(acc)
        }
        Element::Cell2(c) => {
            let mut out = Chain::zero(3, base.objects[c.base()]);
            for t in c.terms() {
                let v = h.higher[1][t.generator].as_chain().expect("h on 2-cells is a chain");
                let v = v.acted(&base.word(&t.operator), |w| target.canon(w));
                out = out.plus(&if t.positive { v } else { v.neg() });
            }
            Element::Chain(out)
        }
        Element::Chain(c) => {
            let n = c.dim();
            let mut out = Chain::zero(n + 1, base.objects[c.base()]);
            for ((g, w), &k) in c.coefficients() {
                let v = h.higher[n - 1][*g].as_chain().expect("h on chains is a chain");
                out = out.plus(&v.acted(&base.word(w), |u| target.canon(u)).scaled(k));
            }
            Element::Chain(out)
        }
        Element::Object(_) => unreachable!(),
    }
}
