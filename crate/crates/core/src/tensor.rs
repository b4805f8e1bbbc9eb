//! Cylinder `ℐ ⊗ F` and cone on a free crossed complex, and the algebraic
//! simplex `aΔⁿ` as an iterated cone.
//!
//! In both constructions `ι ⊗ −` is a derivation: over `1 ⊗ −` for the
//! cylinder, over the constant map to the vertex for the cone.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::crossed::{
    apply_derivation, BasisTable, CrossedError, DerivationTable, Element, FreeCrossedComplex, Morphism,
    NormalizerChoice,
};
use crate::groupoid::Word;
use crate::pi_functor::hal_from_faces;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error("end map is not a morphism: {0}")]
    Morphism(String),
    #[error("{0}")]
    Invalid(String),
}

/// Which factor a generator of a cylinder or cone came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    /// `0 ⊗ r`
    Zero(usize),
    /// `1 ⊗ r` (cylinder only)
    One(usize),
    /// `ι ⊗ r`, one dimension up from `r`
    Iota(usize),
    /// the cone vertex
    Vertex,
}

/// A cylinder `ℐ ⊗ F` with its two end inclusions.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub source: Arc<FreeCrossedComplex>,
    pub complex: Arc<FreeCrossedComplex>,
    /// `0 ⊗ −`
    pub bottom: Morphism,
    /// `1 ⊗ −`
    pub top: Morphism,
    /// `ι ⊗ −` on the basis of `F`, a derivation over `1 ⊗ −`.
    pub iota: DerivationTable,
    /// `tags[n][i]` describes generator `i` of dimension `n`.
    pub tags: Vec<Vec<Tag>>,
}

/// A cone on `F`, with the inclusion `0 ⊗ −`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub source: Arc<FreeCrossedComplex>,
    pub complex: Arc<FreeCrossedComplex>,
    pub embedding: Morphism,
    /// `ι ⊗ −`, a derivation over the constant map to the vertex.
    pub iota: DerivationTable,
    /// The constant map itself, through the source truncation.
    pub constant: BasisTable,
    pub vertex: usize,
    pub tags: Vec<Vec<Tag>>,
}

struct Builder {
    out: FreeCrossedComplex,
    tags: Vec<Vec<Tag>>,
}

impl Builder {
    fn add(&mut self, dim: usize, name: String, tag: Tag, boundary: Element) -> Result<Element, TensorError> {
        let i = self.out.add_generator(dim, &name, boundary)?;
        self.tags[dim].push(tag);
        Ok(self.out.basis_element(dim, i))
    }
}

fn check(source: &Arc<FreeCrossedComplex>, target: &Arc<FreeCrossedComplex>, t: BasisTable) -> Result<Morphism, TensorError> {
    Morphism::build(source.clone(), target.clone(), t)
        .map_err(|v| TensorError::Morphism(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")))
}

fn empty_table(top: usize, objects: Vec<usize>) -> BasisTable {
    BasisTable { top, objects, edges: Vec::new(), higher: Vec::new() }
}

/// The cylinder, truncated like `F`.
pub fn cylinder(f: &Arc<FreeCrossedComplex>) -> Result<Cylinder, TensorError> {
    let src = f.as_ref();
    let trunc = src.trunc_level();
    let objs = src.num_objects();
    let names = src.object_names();
    let objects: Vec<String> = names.iter().map(|p| format!("0.{p}")).chain(names.iter().map(|p| format!("1.{p}"))).collect();
    let mut b = Builder { out: FreeCrossedComplex::new(trunc, objects)?, tags: vec![Vec::new(); trunc + 1] };
    b.tags[0] = (0..objs).map(Tag::Zero).chain((0..objs).map(Tag::One)).collect();
    let mut t0 = empty_table(0, (0..objs).collect());
    let mut t1 = empty_table(0, (objs..2 * objs).collect());
    let mut h = DerivationTable { top: 0, objects: Vec::new(), higher: Vec::new() };

    if trunc >= 1 {
        for (a, shift) in [(0, 0), (1, objs)] {
            for (e, &(s, t)) in src.graph().edges().iter().enumerate() {
                let name = format!("{a}.{}", src.basis_name(1, e));
                let id = b.out.add_edge(&name, s + shift, t + shift)?;
                b.tags[1].push(if a == 0 { Tag::Zero(e) } else { Tag::One(e) });
                let w = b.out.edge(id);
                if a == 0 { t0.edges.push(w) } else { t1.edges.push(w) }
            }
        }
        for (p, name) in names.iter().enumerate() {
            let id = b.out.add_edge(&format!("i.{name}"), p, p + objs)?;
            b.tags[1].push(Tag::Iota(p));
            h.objects.push(b.out.edge(id));
        }
        t0.top = 1;
        t1.top = 1;
    }
    for n in 2..=trunc {
        let mut v0 = Vec::new();
        let mut v1 = Vec::new();
        for g in 0..src.basis_count(n) {
            let d = src.generator(n, g).boundary();
            let name = src.basis_name(n, g);
            let d0 = t0.apply(&b.out, d);
            v0.push(b.add(n, format!("0.{name}"), Tag::Zero(g), d0)?);
        }
        for g in 0..src.basis_count(n) {
            let d = src.generator(n, g).boundary();
            let name = src.basis_name(n, g);
            let d1 = t1.apply(&b.out, d);
            v1.push(b.add(n, format!("1.{name}"), Tag::One(g), d1)?);
        }
        let mut iota = Vec::new();
        for r in 0..src.basis_count(n - 1) {
            let name = format!("i.{}", src.basis_name(n - 1, r));
            let d = if n == 2 {
                // -1⊗e - ι⊗se + 0⊗e + ι⊗te
                let (s, t) = src.graph().edges()[r];
                let w = t1.edges[r].invert().then(&h.objects[s].invert()).then(&t0.edges[r]).then(&h.objects[t]);
                Element::Word(w)
            } else {
                // -(ι⊗δr) - 1⊗r + (0⊗r)^{ι⊗tr}
                let dr = src.generator(n - 1, r).boundary();
                let hd = apply_derivation(&h, &t1, &b.out, dr);
                let tr = src.basis_base(n - 1, r);
                let zero = b.out.act_on(&t0.higher[n - 3][r], &h.objects[tr]);
                let one = b.out.neg(&t1.higher[n - 3][r]);
                b.out.sum(&b.out.sum(&b.out.neg(&hd), &one), &zero)
            };
            iota.push(b.add(n, name, Tag::Iota(r), d)?);
        }
        if n == 2 {
            b.out.set_normalizer(NormalizerChoice::default())?;
        }
        t0.higher.push(v0);
        t1.higher.push(v1);
        t0.top = n;
        t1.top = n;
        h.higher.push(iota);
        h.top = n - 1;
    }
    if trunc < 2 {
        b.out.set_normalizer(NormalizerChoice::default())?;
    }
    let tags = b.tags;
    let complex = Arc::new(b.out);
    let bottom = check(f, &complex, t0)?;
    let top = check(f, &complex, t1)?;
    Ok(Cylinder { source: f.clone(), complex, bottom, top, iota: h, tags })
}

/// Names for the generators of a cone.
pub trait ConeNaming {
    fn name(&self, source: &FreeCrossedComplex, dim: usize, tag: Tag) -> String;
}

/// `o.x`, `i.x` and `v`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DefaultConeNames;

impl ConeNaming for DefaultConeNames {
    fn name(&self, source: &FreeCrossedComplex, dim: usize, tag: Tag) -> String {
        match tag {
            Tag::Zero(r) | Tag::One(r) => format!("o.{}", source.basis_name(dim, r)),
            Tag::Iota(r) => format!("i.{}", source.basis_name(dim - 1, r)),
            Tag::Vertex => "v".into(),
        }
    }
}

/// The cone, one dimension taller than `F`.
pub fn cone(f: &Arc<FreeCrossedComplex>) -> Result<Cone, TensorError> {
    cone_named(f, &DefaultConeNames)
}

pub fn cone_named(f: &Arc<FreeCrossedComplex>, naming: &dyn ConeNaming) -> Result<Cone, TensorError> {
    let src = f.as_ref();
    let trunc = src.trunc_level() + 1;
    let objs = src.num_objects();
    let mut objects: Vec<String> = (0..objs).map(|p| naming.name(src, 0, Tag::Zero(p))).collect();
    objects.push(naming.name(src, 0, Tag::Vertex));
    let v = objs;
    let mut b = Builder { out: FreeCrossedComplex::new(trunc, objects)?, tags: vec![Vec::new(); trunc + 1] };
    b.tags[0] = (0..objs).map(Tag::Zero).chain([Tag::Vertex]).collect();
    let mut t0 = empty_table(0, (0..objs).collect());
    let mut h = DerivationTable { top: 0, objects: Vec::new(), higher: Vec::new() };
    // the constant map, one dimension at a time
    let mut k = empty_table(0, vec![v; objs]);

    for (e, &(s, t)) in src.graph().edges().iter().enumerate() {
        let id = b.out.add_edge(&naming.name(src, 1, Tag::Zero(e)), s, t)?;
        b.tags[1].push(Tag::Zero(e));
        t0.edges.push(b.out.edge(id));
    }
    for p in 0..objs {
        let id = b.out.add_edge(&naming.name(src, 1, Tag::Iota(p)), p, v)?;
        b.tags[1].push(Tag::Iota(p));
        h.objects.push(b.out.edge(id));
    }
    if src.trunc_level() >= 1 {
        t0.top = 1;
        k.top = 1;
        k.edges = vec![Word::identity(v); src.basis_count(1)];
    }
    for n in 2..=trunc {
        let mut v0 = Vec::new();
        if n <= src.trunc_level() {
            for g in 0..src.basis_count(n) {
                let d = t0.apply(&b.out, src.generator(n, g).boundary());
                v0.push(b.add(n, naming.name(src, n, Tag::Zero(g)), Tag::Zero(g), d)?);
            }
        }
        let mut iota = Vec::new();
        for r in 0..src.basis_count(n - 1) {
            let name = naming.name(src, n, Tag::Iota(r));
            let d = if n == 2 {
                // -ι⊗se + 0⊗e + ι⊗te
                let (s, t) = src.graph().edges()[r];
                Element::Word(h.objects[s].invert().then(&t0.edges[r]).then(&h.objects[t]))
            } else {
                // -(ι⊗δr) + (0⊗r)^{ι⊗tr}
                let hd = apply_derivation(&h, &k, &b.out, src.generator(n - 1, r).boundary());
                let tr = src.basis_base(n - 1, r);
                let zero = b.out.act_on(&t0.higher[n - 3][r], &h.objects[tr]);
                b.out.sum(&b.out.neg(&hd), &zero)
            };
            iota.push(b.add(n, name, Tag::Iota(r), d)?);
        }
        if n == 2 {
            b.out.set_normalizer(NormalizerChoice::SimplyConnected)?;
        }
        if n <= src.trunc_level() {
            t0.higher.push(v0);
            t0.top = n;
            k.higher.push((0..src.basis_count(n)).map(|_| Element::zero(n, v)).collect());
            k.top = n;
        }
        h.higher.push(iota);
        h.top = n - 1;
    }
    if trunc < 2 {
        b.out.set_normalizer(NormalizerChoice::SimplyConnected)?;
    }
    let tags = b.tags;
    let complex = Arc::new(b.out);
    let embedding = check(f, &complex, t0)?;
    Ok(Cone { source: f.clone(), complex, embedding, iota: h, constant: k, vertex: v, tags })
}

/// Digit string of a vertex set, comma separated past 9.
pub fn subset_name(set: &[usize]) -> String {
    if set.iter().all(|&v| v <= 9) {
        set.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        set.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

fn parse_subset(name: &str) -> Vec<usize> {
    if name.contains(',') {
        name.split(',').map(|s| s.parse().expect("subset name")).collect()
    } else {
        name.bytes().map(|b| usize::from(b - b'0')).collect()
    }
}

/// Names `0 ⊗ S ↦ S`, `ι ⊗ S ↦ S ∪ {n}`, `v ↦ {n}`.
struct SimplexNames(usize);

impl ConeNaming for SimplexNames {
    fn name(&self, source: &FreeCrossedComplex, dim: usize, tag: Tag) -> String {
        match tag {
            Tag::Zero(r) | Tag::One(r) => source.basis_name(dim, r).to_owned(),
            Tag::Iota(r) => {
                let mut s = parse_subset(source.basis_name(dim - 1, r));
                s.push(self.0);
                subset_name(&s)
            }
            Tag::Vertex => subset_name(&[self.0]),
        }
    }
}

/// `aΔⁿ` as a cone on `aΔⁿ⁻¹`: generators are the nonempty subsets of
/// `{0..n}`, named by their elements.
#[derive(Debug, Clone)]
pub struct AlgebraicSimplex {
    pub n: usize,
    pub complex: Arc<FreeCrossedComplex>,
    /// The cone structure over `aΔⁿ⁻¹`, absent for `n = 0`.
    pub cone: Option<Cone>,
}

impl AlgebraicSimplex {
    /// The generator for a vertex set.
    pub fn generator(&self, set: &[usize]) -> Option<usize> {
        self.complex.find(set.len().checked_sub(1)?, &subset_name(set))
    }

    /// The top generator `σⁿ`.
    pub fn sigma(&self) -> usize {
        self.generator(&(0..=self.n).collect::<Vec<_>>()).expect("top generator")
    }
}

/// `aΔ⁰, aΔ¹, …, aΔⁿ`.
pub fn algebraic_simplices(n: usize) -> Result<Vec<AlgebraicSimplex>, TensorError> {
    let mut base = FreeCrossedComplex::new(0, vec!["0".into()])?;
    base.set_normalizer(NormalizerChoice::SimplyConnected)?;
    let mut out = vec![AlgebraicSimplex { n: 0, complex: Arc::new(base), cone: None }];
    for m in 1..=n {
        let c = cone_named(&out[m - 1].complex, &SimplexNames(m))?;
        out.push(AlgebraicSimplex { n: m, complex: c.complex.clone(), cone: Some(c) });
    }
    Ok(out)
}

pub fn algebraic_simplex(n: usize) -> Result<AlgebraicSimplex, TensorError> {
    Ok(algebraic_simplices(n)?.pop().expect("at least aΔ⁰"))
}

/// Outcome of comparing the cone boundary of `σⁿ` with the HAL formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalCheck {
    pub n: usize,
    /// `δσⁿ` as produced by the cone construction.
    pub cone_boundary: String,
    /// The HAL formula evaluated on the faces of `σⁿ`.
    pub hal_formula: String,
    pub hal_ok: bool,
    /// `δσⁿ⁺¹ = (0⊗σⁿ)^{ι⊗vₙ} − ι⊗δσⁿ`, recomputed.
    pub step: String,
    pub step_ok: bool,
    /// `δδ = 0` in `aΔⁿ⁺¹`.
    pub audit_ok: bool,
}

impl HalCheck {
    pub fn passed(&self) -> bool {
        self.hal_ok && self.step_ok && self.audit_ok
    }
}

impl fmt::Display for HalCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "n = {}", self.n)?;
        writeln!(f, "  cone: δσ = {}", self.cone_boundary)?;
        writeln!(f, "  HAL:  δσ = {}  [{}]", self.hal_formula, mark(self.hal_ok))?;
        writeln!(f, "  step: δσ' = {}  [{}]", self.step, mark(self.step_ok))?;
        write!(f, "  audit of the next simplex [{}]", mark(self.audit_ok))
    }
}

/// For each `2 ≤ n ≤ max_dim`, compare the cone boundary of `σⁿ` with the HAL
/// formula, and the boundary of `σⁿ⁺¹` with the inductive cone formula.
pub fn hal_consistency_check(max_dim: usize) -> Result<Vec<HalCheck>, TensorError> {
    if max_dim < 2 {
        return Err(TensorError::Invalid("hal-check needs a maximum dimension of at least 2".into()));
    }
    let simplices = algebraic_simplices(max_dim + 1)?;
    let mut out = Vec::new();
    for n in 2..=max_dim {
        let a = &simplices[n];
        let c = a.complex.as_ref();
        let all: Vec<usize> = (0..=n).collect();
        let faces: Vec<usize> = (0..=n)
            .map(|i| {
                let mut f = all.clone();
                f.remove(i);
                a.generator(&f).expect("face generator")
            })
            .collect();
        let u = a.generator(&[n - 1, n]).expect("last edge");
        let hal = hal_from_faces(c, &faces, u);
        let stored = c.generator(n, a.sigma()).boundary();
        let hal_ok = c.same(&hal, stored);

        // inductive step inside aΔⁿ⁺¹ = Cone(aΔⁿ)
        let next = &simplices[n + 1];
        let cone = next.cone.as_ref().expect("cone structure");
        let d = next.complex.as_ref();
        let sigma_src = a.sigma();
        let zero = cone.embedding.table().image(n, sigma_src);
        let v_n = cone.iota.objects[a.generator(&[n]).expect("vertex")].clone();
        let h_d = apply_derivation(&cone.iota, &cone.constant, d, stored);
        let step = d.sum(&d.act_on(&zero, &v_n), &d.neg(&h_d));
        let step_ok = d.same(&step, d.generator(n + 1, next.sigma()).boundary());
        out.push(HalCheck {
            n,
            cone_boundary: c.show(stored),
            hal_formula: c.show(&hal),
            hal_ok,
            step: d.show(&step),
            step_ok,
            audit_ok: d.audit().is_empty(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi_functor::fundamental_crossed_complex;
    use crate::simplicial::{boundary_simplex, nerve_of_group, standard_simplex, GroupTable};

    fn pi(k: crate::simplicial::SimplicialSet) -> Arc<FreeCrossedComplex> {
        Arc::new(fundamental_crossed_complex(&k).unwrap())
    }

    #[test]
    fn cone_on_a_point() {
        let mut p = FreeCrossedComplex::new(0, vec!["p".into()]).unwrap();
        p.set_normalizer(NormalizerChoice::default()).unwrap();
        let c = cone(&Arc::new(p)).unwrap();
        assert_eq!(c.complex.num_objects(), 2);
        assert_eq!(c.complex.basis_count(1), 1);
        assert_eq!(c.complex.trunc_level(), 1);
    }

    #[test]
    fn cone_basis_counts_and_audit() {
        for f in [pi(standard_simplex(2, 3).unwrap()), pi(boundary_simplex(2, 2).unwrap())] {
            let c = cone(&f).unwrap();
            assert_eq!(c.complex.num_objects(), f.num_objects() + 1);
            assert_eq!(c.complex.basis_count(1), f.basis_count(1) + f.num_objects());
            for n in 2..=f.trunc_level() {
                assert_eq!(c.complex.basis_count(n), f.basis_count(n) + f.basis_count(n - 1));
            }
            assert!(c.complex.audit().is_empty());
        }
    }

    #[test]
    fn cone_edge_rule() {
        let f = pi(standard_simplex(1, 1).unwrap());
        let c = cone(&f).unwrap();
        let e = f.find(1, "01").unwrap();
        let g = c.complex.find(2, "i.01").unwrap();
        assert_eq!(c.complex.show(c.complex.generator(2, g).boundary()), "-i.0 + o.01 + i.1");
        assert_eq!(c.iota.higher[0][e], c.complex.basis_element(2, g));
    }

    #[test]
    fn cone_ignores_operators() {
        // a ⊗ x^c = a ⊗ x in dimension 2
        let f = pi(standard_simplex(2, 2).unwrap());
        let c = cone(&f).unwrap();
        let x = f.basis_element(2, f.find(2, "012").unwrap());
        let w = f.edge(f.find(1, "22").unwrap());
        let lhs = apply_derivation(&c.iota, &c.constant, &c.complex, &f.act_on(&x, &w));
        let rhs = apply_derivation(&c.iota, &c.constant, &c.complex, &x);
        assert!(c.complex.same(&lhs, &rhs));
    }

    #[test]
    fn cylinder_rules() {
        let f = pi(standard_simplex(1, 2).unwrap());
        let cyl = cylinder(&f).unwrap();
        let c = &cyl.complex;
        let g = c.find(2, "i.01").unwrap();
        assert_eq!(c.show(c.generator(2, g).boundary()), "-1.01 - i.0 + 0.01 + i.1");
        assert!(c.audit().is_empty());
        assert_eq!(c.num_objects(), 2 * f.num_objects());
        assert_eq!(c.basis_count(2), 2 * f.basis_count(2) + f.basis_count(1));
    }

    #[test]
    fn cylinders_audit() {
        let z2 = GroupTable::cyclic(2).unwrap();
        for f in [pi(standard_simplex(2, 3).unwrap()), pi(nerve_of_group(&z2, 3).unwrap())] {
            let cyl = cylinder(&f).unwrap();
            assert!(cyl.complex.audit().is_empty());
        }
    }

    #[test]
    fn algebraic_simplex_shapes() {
        let a1 = algebraic_simplex(1).unwrap();
        assert_eq!(a1.complex.num_objects(), 2);
        assert_eq!(a1.complex.basis_count(1), 1);
        assert_eq!(a1.complex.basis_name(1, 0), "01");
        let a2 = algebraic_simplex(2).unwrap();
        assert_eq!((a2.complex.num_objects(), a2.complex.basis_count(1), a2.complex.basis_count(2)), (3, 3, 1));
        assert_eq!(a2.complex.object_names(), &["0", "1", "2"]);
        let a4 = algebraic_simplex(4).unwrap();
        // one generator per nonempty subset of {0..4}
        for (n, count) in [5, 10, 10, 5, 1].into_iter().enumerate() {
            assert_eq!(a4.complex.basis_count(n), count);
        }
    }

    #[test]
    fn hal_holds_through_five() {
        let checks = hal_consistency_check(5).unwrap();
        assert_eq!(checks.len(), 4);
        for c in &checks {
            assert!(c.passed(), "{c}");
        }
        assert_eq!(checks[0].hal_formula, "-02 + 01 + 12");
        assert_eq!(checks[1].hal_formula, "012^[23] - 123 - 013 + 023");
    }
}
