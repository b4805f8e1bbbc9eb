//! The fundamental crossed complex of a simplicial set: one free generator per
//! simplex (degenerate ones included), with boundaries from the homotopy
//! addition lemma.

use std::sync::Arc;

use thiserror::Error;

use crate::crossed::{
    BasisTable, Cell2, Chain, ComponentGroup, CrossedError, Element, FreeCrossedComplex, Morphism, MorphismViolation,
    NormalizerChoice, NormalizerError, Presented, DEFAULT_COSET_BUDGET,
};
use crate::groupoid::{Graph, Word};
use crate::simplicial::{validate, SimplexId, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PiError {
    #[error("simplicial set is invalid: {0}")]
    InvalidSet(String),
    #[error("HAL boundaries start in dimension 2, got {0}")]
    LowDimension(usize),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error(transparent)]
    Normalizer(#[from] NormalizerError),
    #[error("simplex {0:?} has no counterpart in the larger set")]
    NotSubobject(String),
    #[error("induced table is not a morphism: {0}")]
    NotMorphism(String),
}

/// `u_n x = ∂₀^{n-1} x`, the last edge of `x`.
pub fn last_edge(k: &SimplicialSet, x: SimplexId) -> SimplexId {
    k.iterated_first_face(x, x.dim - 1)
}

/// HAL boundary of the generator for `x` inside `c`, whose basis in each
/// dimension is indexed like the simplices of `k`. Needs `c`'s normalizer from
/// dimension 4 on.
pub fn hal_boundary(c: &FreeCrossedComplex, k: &SimplicialSet, x: SimplexId) -> Result<Element, PiError> {
    let n = x.dim;
    if n < 2 {
        return Err(PiError::LowDimension(n));
    }
    if n > c.trunc_level() || k.count(n) != c.basis_count(n) || k.count(n - 1) != c.basis_count(n - 1) {
        return Err(CrossedError::Invalid("complex does not match the simplicial set".into()).into());
    }
    if n >= 4 && !c.has_normalizer() {
        return Err(CrossedError::NormalizerState("HAL in dimension ≥ 4 needs the normalizer").into());
    }
    Ok(hal(c, k, x))
}

fn hal(c: &FreeCrossedComplex, k: &SimplicialSet, x: SimplexId) -> Element {
    let faces: Vec<usize> = (0..=x.dim).map(|i| k.face(x, i).index).collect();
    let u = if x.dim >= 3 { last_edge(k, x).index } else { 0 };
    hal_from_faces(c, &faces, u)
}

/// The HAL formula from the face generators `∂_0 x .. ∂_n x` and, for
/// `n ≥ 3`, the edge `u_n x`.
pub(crate) fn hal_from_faces(c: &FreeCrossedComplex, faces: &[usize], u: usize) -> Element {
    let n = faces.len() - 1;
    match n {
        2 => {
            // -∂₁x + ∂₂x + ∂₀x
            let w = c.edge(faces[1]).invert().then(&c.edge(faces[2])).then(&c.edge(faces[0]));
            Element::Word(w)
        }
        3 => {
            // (∂₃x)^{u₃x} - ∂₀x - ∂₂x + ∂₁x
            let u = c.edge(u);
            let at = |i: usize| Cell2::term(true, faces[i], Word::identity(c.basis_base(2, faces[i])));
            let out = at(3).acted(&u).plus(&at(0).neg()).plus(&at(2).neg()).plus(&at(1));
            Element::Cell2(out)
        }
        _ => {
            // (∂_n x)^{u_n x} + Σ_{i<n} (-1)^{n-i} ∂_i x
            let u = c.edge(u);
            let base = u.end();
            let mut top = Chain::zero(n - 1, u.start());
            top.add_term(faces[n], Word::identity(u.start()), 1);
            let mut out = top.acted(&u, |w| c.canon(w));
            for (i, &f) in faces.iter().enumerate().take(n) {
                let mut t = Chain::zero(n - 1, base);
                t.add_term(f, Word::identity(base), if (n - i) % 2 == 0 { 1 } else { -1 });
                out = out.plus(&t);
            }
            Element::Chain(out)
        }
    }
}

/// `Π^Υ K` with the automatic normalizer.
pub fn fundamental_crossed_complex(k: &SimplicialSet) -> Result<FreeCrossedComplex, PiError> {
    fundamental_crossed_complex_with(k, NormalizerChoice::default())
}

pub fn fundamental_crossed_complex_with(k: &SimplicialSet, choice: NormalizerChoice) -> Result<FreeCrossedComplex, PiError> {
    let report = validate(k);
    if let Some(v) = report.violations.first() {
        return Err(PiError::InvalidSet(format!("{v} ({} violations)", report.violations.len())));
    }
    let trunc = k.trunc_level();
    let mut c = FreeCrossedComplex::new(trunc, k.names(0).to_vec())?;
    if trunc >= 1 {
        for e in k.simplices(1) {
            c.add_edge(k.name(e), k.face(e, 1).index, k.face(e, 0).index)?;
        }
    }
    if trunc >= 2 {
        for x in k.simplices(2) {
            c.add_generator(2, k.name(x), hal(&c, k, x))?;
        }
    }
    c.set_normalizer(choice)?;
    for n in 3..=trunc {
        for x in k.simplices(n) {
            let d = hal(&c, k, x);
            c.add_generator(n, k.name(x), d)?;
        }
    }
    Ok(c)
}

/// The data of `π₁ K`: generating graph `K₁` and relators `δ₂ x`, `x ∈ K₂`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub object_names: Vec<String>,
    pub edge_names: Vec<String>,
    pub graph: Graph,
    pub relators: Vec<Word>,
    /// One entry per connected component.
    pub groups: Vec<ComponentGroup>,
}

pub fn pi1_presentation(k: &SimplicialSet) -> Result<Presentation, PiError> {
    pi1_presentation_with_budget(k, DEFAULT_COSET_BUDGET)
}

pub fn pi1_presentation_with_budget(k: &SimplicialSet, budget: usize) -> Result<Presentation, PiError> {
    let c = fundamental_crossed_complex_with(&k.truncate(k.trunc_level().min(2)).map_err(invalid)?, NormalizerChoice::Free)?;
    let relators = c.relators();
    let groups = Presented::new(c.graph(), &relators, budget)?.groups();
    Ok(Presentation {
        object_names: c.object_names().to_vec(),
        edge_names: c.edge_names().to_vec(),
        graph: c.graph().clone(),
        relators,
        groups,
    })
}

fn invalid(e: impl std::fmt::Display) -> PiError {
    PiError::InvalidSet(e.to_string())
}

/// The morphism `Π^Υ L → Π^Υ K` induced by an inclusion `L ⊆ K`, matching
/// simplices by name, checked against the morphism conditions.
pub fn inclusion_morphism(
    sub: &SimplicialSet,
    sup: &SimplicialSet,
    pi_sub: Arc<FreeCrossedComplex>,
    pi_sup: Arc<FreeCrossedComplex>,
) -> Result<Morphism, PiError> {
    if !sub.is_subobject_of(sup) {
        return Err(PiError::NotSubobject(String::from("(faces or names differ)")));
    }
    let top = pi_sub.trunc_level().min(pi_sup.trunc_level());
    let index = |x: SimplexId| -> Result<usize, PiError> {
        sup.find(x.dim, sub.name(x)).map(|y| y.index).ok_or_else(|| PiError::NotSubobject(sub.name(x).to_owned()))
    };
    let objects = sub.simplices(0).map(index).collect::<Result<Vec<_>, _>>()?;
    let edges = if top >= 1 {
        sub.simplices(1).map(|e| index(e).map(|i| pi_sup.edge(i))).collect::<Result<Vec<_>, _>>()?
    } else {
        Vec::new()
    };
    let higher = (2..=top)
        .map(|n| sub.simplices(n).map(|x| index(x).map(|i| pi_sup.basis_element(n, i))).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    let table = BasisTable { top, objects, edges, higher };
    Morphism::build(pi_sub, pi_sup, table).map_err(|v: Vec<MorphismViolation>| {
        PiError::NotMorphism(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_simplex, nerve_of_group, standard_simplex, GroupTable};

    #[test]
    fn delta2_boundary_word() {
        let k = standard_simplex(2, 2).unwrap();
        let c = fundamental_crossed_complex(&k).unwrap();
        let x = k.find(2, "012").unwrap();
        let d = hal_boundary(&c, &k, x).unwrap();
        assert_eq!(c.show(&d), "-02 + 01 + 12");
    }

    #[test]
    fn delta3_boundary_shape() {
        let k = standard_simplex(3, 3).unwrap();
        let c = fundamental_crossed_complex(&k).unwrap();
        let x = k.find(3, "0123").unwrap();
        assert_eq!(c.show(&hal_boundary(&c, &k, x).unwrap()), "012^[23] - 123 - 013 + 023");
    }

    #[test]
    fn base_points_are_last_vertices() {
        let k = standard_simplex(3, 4).unwrap();
        let c = fundamental_crossed_complex(&k).unwrap();
        for n in 2..=4 {
            for x in k.simplices(n) {
                let d = hal_boundary(&c, &k, x).unwrap();
                assert_eq!(d.base(), k.base_vertex(x).index, "{}", k.name(x));
                assert_eq!(c.basis_base(n, x.index), k.base_vertex(x).index);
            }
        }
    }

    #[test]
    fn audits_pass() {
        let z2 = GroupTable::cyclic(2).unwrap();
        for k in [
            standard_simplex(0, 3).unwrap(),
            standard_simplex(4, 4).unwrap(),
            boundary_simplex(3, 4).unwrap(),
            boundary_simplex(2, 3).unwrap(),
            nerve_of_group(&z2, 5).unwrap(),
        ] {
            let c = fundamental_crossed_complex(&k).unwrap();
            assert!(c.audit().is_empty(), "{:?}", c.audit());
        }
    }

    #[test]
    fn normalizer_selection() {
        let c = fundamental_crossed_complex(&standard_simplex(3, 3).unwrap()).unwrap();
        assert_eq!(c.normalizer().name(), "simply-connected");
        let c = fundamental_crossed_complex(&boundary_simplex(2, 2).unwrap()).unwrap();
        assert_eq!(c.normalizer().name(), "presented");
        let c = fundamental_crossed_complex(&boundary_simplex(2, 1).unwrap()).unwrap();
        assert_eq!(c.normalizer().name(), "free");
        let z2 = GroupTable::cyclic(2).unwrap();
        let c = fundamental_crossed_complex(&nerve_of_group(&z2, 3).unwrap()).unwrap();
        assert_eq!(c.normalizer().name(), "presented");
    }

    #[test]
    fn presentations() {
        let p = pi1_presentation(&standard_simplex(3, 3).unwrap()).unwrap();
        assert!(p.groups.iter().all(|g| *g == ComponentGroup::Trivial));
        let z2 = GroupTable::cyclic(2).unwrap();
        let p = pi1_presentation(&nerve_of_group(&z2, 2).unwrap()).unwrap();
        assert_eq!(p.groups, vec![ComponentGroup::Finite { order: 2 }]);
        // below dimension 2 the degenerate loops are free generators too
        let p = pi1_presentation(&boundary_simplex(2, 1).unwrap()).unwrap();
        assert_eq!(p.groups, vec![ComponentGroup::Free { rank: 4 }]);
        assert!(p.relators.is_empty());
        let p = pi1_presentation(&boundary_simplex(2, 2).unwrap()).unwrap();
        assert_eq!(p.groups, vec![ComponentGroup::Free { rank: 1 }]);
    }

    #[test]
    fn boundary_inclusion_is_a_morphism() {
        let sub = boundary_simplex(3, 3).unwrap();
        let sup = standard_simplex(3, 3).unwrap();
        let a = Arc::new(fundamental_crossed_complex(&sub).unwrap());
        let b = Arc::new(fundamental_crossed_complex(&sup).unwrap());
        assert!(inclusion_morphism(&sub, &sup, a, b).is_ok());
    }

    #[test]
    fn rejects_low_dimension() {
        let k = standard_simplex(1, 1).unwrap();
        let c = fundamental_crossed_complex(&k).unwrap();
        assert_eq!(hal_boundary(&c, &k, SimplexId::new(1, 0)), Err(PiError::LowDimension(1)));
    }
}
