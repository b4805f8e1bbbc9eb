//! Homotopies `(h, f)` between morphisms out of a free crossed complex,
//! specified by their values on a basis, and the morphism `f⁰` they produce.

use std::fmt;
use std::sync::Arc;

use crate::crossed::{
    apply_derivation, BasisTable, DerivationTable, Element, FreeCrossedComplex, Morphism, MorphismViolation,
};
use crate::tensor::{Cylinder, Tag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyViolation {
    pub dim: usize,
    pub generator: String,
    pub detail: String,
}

impl fmt::Display for HomotopyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h on {:?} (dim {}): {}", self.generator, self.dim, self.detail)
    }
}

/// A homotopy `h: f⁰ ≃ f` given by `f` and the values of `h` on the basis.
/// `f⁰` is derived, never given.
#[derive(Debug, Clone)]
pub struct Homotopy {
    base: Morphism,
    table: DerivationTable,
}

/// Check `t h x = t f x` on every basis element and wrap.
pub fn build_homotopy(base: Morphism, table: DerivationTable) -> Result<Homotopy, Vec<HomotopyViolation>> {
    let src = base.source().clone();
    let dst = base.target().clone();
    let f = base.table();
    let mut out = Vec::new();
    let mut fail = |dim: usize, g: usize, detail: String| {
        let generator = if dim == 0 { src.object_names()[g].clone() } else { src.basis_name(dim, g).to_owned() };
        out.push(HomotopyViolation { dim, generator, detail });
    };
    if table.top > f.top || table.top + 1 > dst.trunc_level() {
        fail(0, 0, format!("values reach dimension {} past the morphism or target", table.top + 1));
        return Err(out);
    }
    if table.objects.len() != src.num_objects()
        || table.higher.len() != table.top
        || (1..=table.top).any(|n| table.higher[n - 1].len() != src.basis_count(n))
    {
        fail(0, 0, "table does not cover the source basis".into());
        return Err(out);
    }
    for (p, w) in table.objects.iter().enumerate() {
        if w.letters().iter().any(|l| l.edge >= dst.basis_count(1)) {
            fail(0, p, "path mentions an unknown edge".into());
        } else if w.end() != f.objects[p] {
            let names = dst.object_names();
            fail(0, p, format!("h₀ ends at {}, but f sends it to {}", names[w.end()], names[f.objects[p]]));
        }
    }
    for n in 1..=table.top {
        for (g, v) in table.higher[n - 1].iter().enumerate() {
            if v.dim() != n + 1 || dst.check_element(v).is_err() {
                fail(n, g, format!("value is not an element of dimension {}", n + 1));
                continue;
            }
            let want = f.objects[src.basis_base(n, g)];
            if v.base() != want {
                let names = dst.object_names();
                fail(n, g, format!("value lives at {}, expected t f x = {}", names[v.base()], names[want]));
            }
        }
    }
    if out.is_empty() {
        Ok(Homotopy { base, table })
    } else {
        Err(out)
    }
}

impl Homotopy {
    pub fn source(&self) -> &Arc<FreeCrossedComplex> {
        self.base.source()
    }

    pub fn target(&self) -> &Arc<FreeCrossedComplex> {
        self.base.target()
    }

    /// The morphism `f` the homotopy ends at.
    pub fn base(&self) -> &Morphism {
        &self.base
    }

    pub fn table(&self) -> &DerivationTable {
        &self.table
    }

    /// `h x` for `1 ≤ dim x ≤ top`, extended as a derivation over `f`.
    pub fn apply(&self, x: &Element) -> Element {
        apply_derivation(&self.table, self.base.table(), self.target(), x)
    }

    /// The basis table of `f⁰` through dimension `top`.
    pub fn derived_table(&self) -> BasisTable {
        let src = self.source();
        let d = self.target();
        let f = self.base.table();
        let h = &self.table;
        let top = h.top;
        let objects: Vec<usize> = h.objects.iter().map(|w| w.start()).collect();
        let mut edges = Vec::new();
        if top >= 1 {
            for (e, &(s, t)) in src.graph().edges().iter().enumerate() {
                // h₀se + fe + δ₂h₁e - h₀te
                let h1 = h.higher[0][e].as_cell2().expect("h on edges is 2-dimensional");
                let w = h.objects[s].then(&f.edges[e]).then(&d.boundary2(h1)).then(&h.objects[t].invert());
                edges.push(w);
            }
        }
        let mut higher = Vec::new();
        for n in 2..=top {
            let mut level = Vec::new();
            for g in 0..src.basis_count(n) {
                // {fx + h δx + δ h x}^{-h₀tx}
                let x = src.basis_element(n, g);
                let fx = f.apply(d, &x);
                let hdx = self.apply(src.generator(n, g).boundary());
                let dhx = d.boundary_of(&h.higher[n - 1][g]);
                let sum = d.sum(&d.sum(&fx, &hdx), &dhx);
                let tx = src.basis_base(n, g);
                level.push(d.act_on(&sum, &h.objects[tx].invert()));
            }
            higher.push(level);
        }
        BasisTable { top, objects, edges, higher }
    }

    /// `f⁰`, checked against the morphism conditions.
    pub fn derived_morphism(&self) -> Result<Morphism, Vec<MorphismViolation>> {
        Morphism::build(self.source().clone(), self.target().clone(), self.derived_table())
    }

    /// The morphism `ℐ ⊗ C → D` sending `0⊗r ↦ f⁰r`, `1⊗r ↦ fr`,
    /// `ι⊗r ↦ hr`, through dimension `top`.
    pub fn cylinder_morphism(&self, cyl: &Cylinder) -> Result<Morphism, Vec<MorphismViolation>> {
        assert!(Arc::ptr_eq(&cyl.source, self.source()), "cylinder on a different complex");
        let f = self.base.table();
        let f0 = self.derived_table();
        let h = &self.table;
        let top = h.top;
        let image = |n: usize, tag: Tag| -> Element {
            match tag {
                Tag::Zero(r) => f0.image(n, r),
                Tag::One(r) => f.image(n, r),
                Tag::Iota(r) => h.value(n - 1, r),
                Tag::Vertex => unreachable!("cylinders have no vertex"),
            }
        };
        let objects =
            cyl.tags[0].iter().map(|&t| *image(0, t).as_object().expect("object image")).collect::<Vec<usize>>();
        let edges = if top >= 1 {
            cyl.tags[1].iter().map(|&t| image(1, t).as_word().expect("word image").clone()).collect()
        } else {
            Vec::new()
        };
        let higher = (2..=top).map(|n| cyl.tags[n].iter().map(|&t| image(n, t)).collect()).collect();
        Morphism::build(cyl.complex.clone(), self.target().clone(), BasisTable { top, objects, edges, higher })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossed::text::parse_complex;
    use crate::pi_functor::fundamental_crossed_complex;
    use crate::simplicial::standard_simplex;
    use crate::crossed::kill_basis;
    use crate::tensor::cylinder;

    fn zero_homotopy(f: &Morphism, top: usize) -> DerivationTable {
        let src = f.source();
        DerivationTable {
            top,
            objects: f.table().objects.iter().map(|&q| crate::groupoid::Word::identity(q)).collect(),
            higher: (1..=top)
                .map(|n| {
                    (0..src.basis_count(n))
                        .map(|g| Element::zero(n + 1, f.table().objects[src.basis_base(n, g)]))
                        .collect()
                })
                .collect(),
        }
    }

    #[test]
    fn zero_homotopy_derives_f() {
        let c = Arc::new(fundamental_crossed_complex(&standard_simplex(2, 3).unwrap()).unwrap());
        let id = Morphism::identity(c.clone());
        let h = build_homotopy(id.clone(), zero_homotopy(&id, 2)).unwrap();
        let f0 = h.derived_morphism().unwrap();
        assert!(f0.agrees_with(&id));
    }

    #[test]
    fn wrong_endpoint_rejected() {
        let c = Arc::new(parse_complex("trunc 2\nobjects: p q\nedge a : p -> q\n").unwrap());
        let id = Morphism::identity(c.clone());
        let mut t = zero_homotopy(&id, 1);
        t.objects[0] = c.edge(0);
        let v = build_homotopy(id, t).unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].generator, "p");
    }

    #[test]
    fn contraction_of_an_interval() {
        // slide q back onto p along a: h₀p = id, h₀q = a
        let c = Arc::new(parse_complex("trunc 2\nobjects: p q\nedge a : p -> q\n").unwrap());
        let id = Morphism::identity(c.clone());
        let mut t = zero_homotopy(&id, 1);
        t.objects[1] = c.edge(0);
        let h = build_homotopy(id, t).unwrap();
        let f0 = h.derived_morphism().unwrap();
        // f⁰ collapses everything onto p
        assert_eq!(f0.table().objects, vec![0, 0]);
        assert!(f0.table().edges[0].is_identity());
        let cyl = cylinder(h.source()).unwrap();
        let m = h.cylinder_morphism(&cyl).unwrap();
        assert!(cyl.top.then(&m).unwrap().agrees_with(h.base()));
        assert!(cyl.bottom.then(&m).unwrap().agrees_with(&f0));
    }

    #[test]
    fn first_degeneracy_homotopy_in_dimension_one() {
        // h₀ = ε₀, h₁ = -ε₀ gives f⁰x = x - ε₀∂₀x on edges exactly; h₁ = ±ε₁
        // agrees with it once the ε₀ images are killed
        let k = standard_simplex(2, 3).unwrap();
        let c = Arc::new(fundamental_crossed_complex(&k).unwrap());
        let id = Morphism::identity(c.clone());
        let eps = |x: crate::simplicial::SimplexId, i| k.degeneracy(x, i).unwrap();
        let q = kill_basis(&c, &crate::normalization::first_degeneracies(&k), Default::default()).unwrap();
        let p0 = |w: &crate::groupoid::Word| q.projection.apply(&Element::Word(w.clone())).unwrap();
        for (i, sign) in [(0, -1), (1, 1), (1, -1)] {
            let table = DerivationTable {
                top: 1,
                objects: k.simplices(0).map(|v| c.edge(eps(v, 0).index)).collect(),
                higher: vec![k
                    .simplices(1)
                    .map(|x| {
                        let e = c.basis_element(2, eps(x, i).index);
                        if sign < 0 { c.neg(&e) } else { e }
                    })
                    .collect()],
            };
            let f0 = build_homotopy(id.clone(), table).unwrap().derived_morphism().unwrap();
            for x in k.simplices(1) {
                let got = &f0.table().edges[x.index];
                let want = c.edge(x.index).then(&c.edge(eps(k.face(x, 0), 0).index).invert());
                if i == 0 {
                    assert_eq!(got.reduce(), want.reduce(), "{}", k.name(x));
                }
                assert_eq!(p0(got), p0(&want), "ε{i}, sign {sign}, {}", k.name(x));
            }
        }
    }
}
