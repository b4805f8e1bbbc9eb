//! Normalization of the fundamental crossed complex: first kill the
//! `ε₀`-degeneracies (`Π^Υ K → Π^{0N} K`), then every remaining degeneracy
//! (`Π^{0N} K → Π K`), checking each homotopy along the way.
//!
//! Homotopies raise dimension by one, so every derived morphism is defined
//! through `trunc - 1`; quotients and projections go all the way up.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::chains::{integer_homology, ChainError};
use crate::crossed::{
    apply_derivation, kill_basis, BasisTable, CrossedError, DerivationTable, Element, FreeCrossedComplex, KillError,
    KillSet, Morphism, MorphismViolation, NormalizerChoice, Quotient,
};
use crate::groupoid::Word;
use crate::homotopy::{build_homotopy, Homotopy, HomotopyViolation};
use crate::pi_functor::{fundamental_crossed_complex, PiError};
use crate::simplicial::{SimplexId, SimplicialSet};
use crate::tensor::{cylinder, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizationError {
    #[error("normalization needs truncation at least 1")]
    TooShallow,
    #[error(transparent)]
    Pi(#[from] PiError),
    #[error(transparent)]
    Crossed(#[from] CrossedError),
    #[error("quotient failed: {0}")]
    Kill(#[from] KillError),
    #[error("homotopy table rejected: {0}")]
    Homotopy(String),
    #[error("derived map is not a morphism: {0}")]
    Morphism(String),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Chains(#[from] ChainError),
}

fn homotopy_err(v: Vec<HomotopyViolation>) -> NormalizationError {
    NormalizationError::Homotopy(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
}

fn morphism_err(v: Vec<MorphismViolation>) -> NormalizationError {
    NormalizationError::Morphism(v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
}

/// One named family of symbolic identities with its failures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// Instances examined.
    pub count: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), count: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "{status}  {} ({} instances)", self.name, self.count)?;
        for line in self.failures.iter().take(5) {
            write!(f, "\n      {line}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n      … {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

fn basis(c: &FreeCrossedComplex, x: SimplexId) -> Element {
    c.basis_element(x.dim, x.index)
}

fn eps(k: &SimplicialSet, x: SimplexId, i: usize) -> SimplexId {
    k.degeneracy(x, i).expect("degeneracy below the truncation")
}

/// The result of killing the `ε₀`-degeneracies.
#[derive(Debug, Clone)]
pub struct ZeroNormalization {
    pub pi_upsilon: Arc<FreeCrossedComplex>,
    /// `h_n = (-1)ⁿ ε₀`, a homotopy `ψ ≃ 1`.
    pub homotopy: Homotopy,
    /// `ψ`, derived from `h`.
    pub psi: Morphism,
    /// `ψ` from its closed form.
    pub psi_closed: BasisTable,
    pub killed: KillSet,
    /// `Π^{0N} K` with the projection `p⁰`.
    pub quotient: Quotient,
    /// `ψ̄: Π^{0N} K → Π^Υ K`.
    pub psi_bar: Morphism,
}

impl ZeroNormalization {
    pub fn complex(&self) -> &Arc<FreeCrossedComplex> {
        &self.quotient.complex
    }

    pub fn projection(&self) -> &Morphism {
        &self.quotient.projection
    }
}

/// The `ε₀`-images, per dimension.
pub fn first_degeneracies(k: &SimplicialSet) -> KillSet {
    let mut kill = KillSet::new();
    for n in 1..=k.trunc_level() {
        for x in k.simplices(n) {
            if k.is_first_degeneracy(x) {
                kill.insert(n, x.index);
            }
        }
    }
    kill
}

/// Build `ψ`, `Π^{0N} K`, `p⁰` and `ψ̄`.
pub fn zero_normalize(k: &SimplicialSet, pi: &Arc<FreeCrossedComplex>) -> Result<ZeroNormalization, NormalizationError> {
    let n_top = k.trunc_level();
    if n_top < 1 {
        return Err(NormalizationError::TooShallow);
    }
    let top = n_top - 1;
    let sign = |n: usize| if n % 2 == 0 { 1 } else { -1 };
    let table = DerivationTable {
        top,
        objects: k.simplices(0).map(|v| pi.edge(eps(k, v, 0).index)).collect(),
        higher: (1..=top)
            .map(|n| k.simplices(n).map(|x| signed(pi, &basis(pi, eps(k, x, 0)), sign(n))).collect())
            .collect(),
    };
    let homotopy = build_homotopy(Morphism::identity(pi.clone()), table).map_err(homotopy_err)?;
    let psi = homotopy.derived_morphism().map_err(morphism_err)?;
    let psi_closed = closed_psi(k, pi, top);
    let killed = first_degeneracies(k);
    let quotient = kill_basis(pi, &killed, NormalizerChoice::default())?;
    // ψ̄ on the surviving generators
    let q = &quotient;
    let ptab = psi.table();
    let psi_bar_table = BasisTable {
        top,
        objects: ptab.objects.clone(),
        edges: if top >= 1 { q.survivors[1].iter().map(|&e| ptab.edges[e].clone()).collect() } else { Vec::new() },
        higher: (2..=top).map(|n| q.survivors[n].iter().map(|&g| ptab.image(n, g)).collect()).collect(),
    };
    let psi_bar = Morphism::build(q.complex.clone(), pi.clone(), psi_bar_table).map_err(morphism_err)?;
    Ok(ZeroNormalization { pi_upsilon: pi.clone(), homotopy, psi, psi_closed, killed, quotient, psi_bar })
}

fn signed(c: &FreeCrossedComplex, x: &Element, sign: i64) -> Element {
    if sign < 0 {
        c.neg(x)
    } else {
        x.clone()
    }
}

/// `ψ x = x`, `x - ε₀∂₀x`, `(x - ε₀∂₀x)^{-ε₀tx}` by dimension.
fn closed_psi(k: &SimplicialSet, pi: &FreeCrossedComplex, top: usize) -> BasisTable {
    let back = |x: SimplexId| pi.edge(eps(k, k.base_vertex(x), 0).index).invert();
    BasisTable {
        top,
        objects: (0..k.count(0)).collect(),
        edges: if top >= 1 {
            k.simplices(1).map(|x| pi.edge(x.index).then(&back(x))).collect()
        } else {
            Vec::new()
        },
        higher: (2..=top)
            .map(|n| {
                k.simplices(n)
                    .map(|x| {
                        let d = basis(pi, eps(k, k.face(x, 0), 0));
                        pi.act_on(&pi.sum(&basis(pi, x), &pi.neg(&d)), &back(x))
                    })
                    .collect()
            })
            .collect(),
    }
}

/// `ε̄_i` on `Π^Υ K`: the derivation over the identity with `ε_i` on the basis
/// (zero below dimension `i`).
fn eps_bar(k: &SimplicialSet, pi: &FreeCrossedComplex, i: usize) -> DerivationTable {
    let top = k.trunc_level() - 1;
    DerivationTable {
        top,
        objects: k.simplices(0).map(|v| if i == 0 { pi.edge(eps(k, v, 0).index) } else { Word::identity(v.index) }).collect(),
        higher: (1..=top)
            .map(|n| {
                k.simplices(n)
                    .map(|x| if n < i { Element::zero(n + 1, k.base_vertex(x).index) } else { basis(pi, eps(k, x, i)) })
                    .collect()
            })
            .collect(),
    }
}

/// Every symbolic identity around the `ε₀` stage.
pub fn verify_zero_normalization(k: &SimplicialSet, z: &ZeroNormalization) -> Vec<Check> {
    let pi = z.pi_upsilon.as_ref();
    let n_top = k.trunc_level();
    let top = n_top - 1;
    let id = BasisTable::identity(pi);
    let mut checks = Vec::new();

    let mut c = Check::new("ψ from h_n = (-1)ⁿε₀ matches its closed form");
    for n in 0..=top {
        for x in k.simplices(n) {
            let (a, b) = (z.psi.table().image(n, x.index), z.psi_closed.image(n, x.index));
            c.record(pi.same(&a, &b), || format!("{}: derived {} vs closed {}", k.name(x), pi.show(&a), pi.show(&b)));
        }
    }
    checks.push(c);

    let mut c = Check::new("ψ(ε₀x) is trivial");
    for n in 1..=top {
        for x in k.simplices(n).filter(|&x| k.is_first_degeneracy(x)) {
            let y = z.psi.table().image(n, x.index);
            c.record(pi.is_trivial(&y), || format!("ψ({}) = {}", k.name(x), pi.show(&y)));
        }
    }
    checks.push(c);

    let e0 = eps_bar(k, pi, 0);
    let mut c1 = Check::new("δ₃ε₀x = (-ε₀∂₁x)^{δ₂x} + (ε₀∂₂x)^{∂₀x}");
    let mut c2 = Check::new("-δ₃ε₀x + ε̄₀δ₂x = ε₀∂₀x");
    if n_top >= 3 {
        for x in k.simplices(2) {
            let d3 = pi.boundary_of(&basis(pi, eps(k, x, 0)));
            let d2 = pi.generator(2, x.index).boundary().as_word().unwrap().clone();
            let a = pi.act_on(&pi.neg(&basis(pi, eps(k, k.face(x, 1), 0))), &d2);
            let b = pi.act_on(&basis(pi, eps(k, k.face(x, 2), 0)), &pi.edge(k.face(x, 0).index));
            let rhs = pi.sum(&a, &b);
            c1.record(pi.same(&d3, &rhs), || format!("{}: {} vs {}", k.name(x), pi.show(&d3), pi.show(&rhs)));
            let lhs = pi.sum(&pi.neg(&d3), &apply_derivation(&e0, &id, pi, &Element::Word(d2)));
            let want = basis(pi, eps(k, k.face(x, 0), 0));
            c2.record(pi.same(&lhs, &want), || format!("{}: residue {}", k.name(x), pi.show(&lhs)));
        }
    }
    checks.push(c1);
    checks.push(c2);

    let mut c = Check::new("ε̄₀δ_nx - δ_{n+1}ε₀x = (-1)ⁿε₀∂₀x, n ≥ 3");
    for n in 3..n_top {
        for x in k.simplices(n) {
            let a = apply_derivation(&e0, &id, pi, pi.generator(n, x.index).boundary());
            let b = pi.boundary_of(&basis(pi, eps(k, x, 0)));
            let lhs = pi.sum(&a, &pi.neg(&b));
            let want = signed(pi, &basis(pi, eps(k, k.face(x, 0), 0)), if n % 2 == 0 { 1 } else { -1 });
            c.record(pi.same(&lhs, &want), || format!("{}: residue {}", k.name(x), pi.show(&lhs)));
        }
    }
    checks.push(c);

    // ψ̄ and p⁰
    let q = &z.quotient;
    let qc = q.complex.as_ref();
    let p0 = z.projection().table();
    let mut c = Check::new("p⁰ψ̄ = 1 on the Π^{0N}K basis");
    for n in 0..=top {
        for j in 0..q.survivors[n].len() {
            let img = p0.apply(qc, &z.psi_bar.table().image(n, j));
            let want = qc.basis_element(n, j);
            c.record(qc.same(&img, &want), || format!("{}: {}", nk_name(qc, n, j), qc.show(&img)));
        }
    }
    checks.push(c);
    let mut c = Check::new("ψ = ψ̄p⁰ on the Π^ΥK basis");
    for n in 0..=top {
        for x in k.simplices(n) {
            let lhs = z.psi.table().image(n, x.index);
            let rhs = z.psi_bar.table().apply(pi, &p0.image(n, x.index));
            c.record(pi.same(&lhs, &rhs), || format!("{}: {} vs {}", k.name(x), pi.show(&lhs), pi.show(&rhs)));
        }
    }
    checks.push(c);
    checks
}

/// `h₁δ₂x = -(h₁∂₁x)^{δ₂x} + (h₁∂₂x)^{∂₀x} + h₁∂₀x` for the derivations
/// `ε̄₀`, `ε̄₁` and every `x ∈ K₂`.
pub fn lemma_deriv_check(k: &SimplicialSet, pi: &FreeCrossedComplex) -> Check {
    let mut c = Check::new("h₁δ₂x = -(h₁∂₁x)^{δ₂x} + (h₁∂₂x)^{∂₀x} + h₁∂₀x");
    if k.trunc_level() < 2 {
        return c;
    }
    let id = BasisTable::identity(pi);
    for i in 0..=1 {
        let h = eps_bar(k, pi, i);
        let on = |x: SimplexId| apply_derivation(&h, &id, pi, &Element::Word(pi.edge(x.index)));
        for x in k.simplices(2) {
            let d2 = pi.generator(2, x.index).boundary().as_word().unwrap().clone();
            let lhs = apply_derivation(&h, &id, pi, &Element::Word(d2.clone()));
            let a = pi.neg(&pi.act_on(&on(k.face(x, 1)), &d2));
            let b = pi.act_on(&on(k.face(x, 2)), &pi.edge(k.face(x, 0).index));
            let rhs = pi.sum(&pi.sum(&a, &b), &on(k.face(x, 0)));
            c.record(pi.same(&lhs, &rhs), || format!("ε̄{i}, {}: {} vs {}", k.name(x), pi.show(&lhs), pi.show(&rhs)));
        }
    }
    c
}

/// `δ₂ε₀²v = ε₀v`; `δ_nε₀ⁿv` is 0 for odd `n ≥ 3` and `ε₀ⁿ⁻¹v` for even `n`.
pub fn vertex_ladder_check(k: &SimplicialSet, pi: &FreeCrossedComplex) -> Check {
    let mut c = Check::new("degenerate vertex ladder δ_nε₀ⁿv");
    for v in k.simplices(0) {
        let mut ladder = vec![v];
        for n in 1..=k.trunc_level() {
            ladder.push(eps(k, ladder[n - 1], 0));
        }
        for n in 2..=k.trunc_level() {
            let d = pi.boundary_of(&basis(pi, ladder[n]));
            let want = if n == 2 || n % 2 == 0 {
                basis(pi, ladder[n - 1])
            } else {
                Element::zero(n - 1, v.index)
            };
            c.record(pi.same(&d, &want), || format!("n = {n} at {}: {}", k.name(v), pi.show(&d)));
        }
    }
    c
}

/// One stage `(τ^k, 1)` on `Π^{0N} K`.
#[derive(Debug, Clone)]
pub struct NormalizationStage {
    pub k: usize,
    pub tau: Homotopy,
    /// `φ^k` derived from `τ^k`.
    pub phi: Morphism,
    /// `φ^k` from the closed formula.
    pub phi_closed: BasisTable,
}

/// Where each `Π^{0N}K` generator came from.
fn simplex_of(z: &ZeroNormalization, n: usize, j: usize) -> SimplexId {
    SimplexId::new(n, z.quotient.survivors[n][j])
}

/// `p⁰(ε_i x)` for a generator `x` of `Π^{0N}K`.
fn eps_q(k: &SimplicialSet, z: &ZeroNormalization, x: SimplexId, i: usize) -> Element {
    z.quotient.image(x.dim + 1, eps(k, x, i).index)
}

/// The generators `ε_i y` of `D_j K` (`i ≤ j`, dimension ≥ 2) in `Π^{0N}K`
/// indices.
pub fn degeneracy_generators(k: &SimplicialSet, z: &ZeroNormalization, j: usize) -> KillSet {
    let mut set = KillSet::new();
    for n in 2..=k.trunc_level() {
        for (idx, &g) in z.quotient.survivors[n].iter().enumerate() {
            if k.degeneracy_sources(SimplexId::new(n, g)).iter().any(|&(i, _)| i <= j) {
                set.insert(n, idx);
            }
        }
    }
    set
}

/// Every degenerate generator left in `Π^{0N}K`.
pub fn all_degenerate(k: &SimplicialSet, z: &ZeroNormalization) -> KillSet {
    degeneracy_generators(k, z, k.trunc_level())
}

/// `τ^k`, `φ^k` derived and `φ^k` closed.
pub fn phi_stage(k: &SimplicialSet, z: &ZeroNormalization, stage: usize) -> Result<NormalizationStage, NormalizationError> {
    let q = z.complex();
    let top = k.trunc_level() - 1;
    let sign = |n: usize| if (n + stage) % 2 == 0 { 1 } else { -1 };
    let zero_at = |n: usize, j: usize| Element::zero(n + 1, q.basis_base(n, j));
    let tau = DerivationTable {
        top,
        objects: (0..q.num_objects())
            .map(|p| {
                if stage == 0 {
                    z.quotient.image(1, eps(k, SimplexId::new(0, p), 0).index).as_word().unwrap().clone()
                } else {
                    Word::identity(p)
                }
            })
            .collect(),
        higher: (1..=top)
            .map(|n| {
                (0..q.basis_count(n))
                    .map(|j| {
                        if n < stage {
                            zero_at(n, j)
                        } else {
                            signed(q, &eps_q(k, z, simplex_of(z, n, j), stage), sign(n))
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    let tau = build_homotopy(Morphism::identity(q.clone()), tau).map_err(homotopy_err)?;
    let phi = tau.derived_morphism().map_err(morphism_err)?;

    // closed form: x + (-1)^{k+n-1} ε̄_k δ_n x + (-1)^{k+n} δ_{n+1} ε_k x
    let bar = DerivationTable {
        top,
        objects: tau.table().objects.clone(),
        higher: (1..=top)
            .map(|n| {
                (0..q.basis_count(n))
                    .map(|j| if n < stage { zero_at(n, j) } else { eps_q(k, z, simplex_of(z, n, j), stage) })
                    .collect()
            })
            .collect(),
    };
    let id = BasisTable::identity(q);
    let mut closed = BasisTable { top, objects: (0..q.num_objects()).collect(), edges: Vec::new(), higher: Vec::new() };
    if top >= 1 {
        for j in 0..q.basis_count(1) {
            let x = q.edge(j);
            closed.edges.push(if stage > 1 {
                x
            } else {
                let d = q.boundary_of(&eps_q(k, z, simplex_of(z, 1, j), stage));
                let d = signed(q, &d, sign(1));
                x.then(d.as_word().unwrap())
            });
        }
    }
    for n in 2..=top {
        let mut level = Vec::new();
        for j in 0..q.basis_count(n) {
            let x = q.basis_element(n, j);
            if n < stage {
                level.push(x);
                continue;
            }
            let a = apply_derivation(&bar, &id, q, q.generator(n, j).boundary());
            let a = signed(q, &a, -sign(n));
            let b = signed(q, &q.boundary_of(&eps_q(k, z, simplex_of(z, n, j), stage)), sign(n));
            level.push(q.sum(&q.sum(&x, &a), &b));
        }
        closed.higher.push(level);
    }
    Ok(NormalizationStage { k: stage, tau, phi, phi_closed: closed })
}

/// The full normalization `Π^Υ K → Π^{0N} K → Π K` with all stages.
#[derive(Debug, Clone)]
pub struct FullNormalization {
    pub zero: ZeroNormalization,
    pub stages: Vec<NormalizationStage>,
    /// `φ = φ⁰φ¹⋯` with the highest stage applied first.
    pub phi: Morphism,
    pub degenerate: KillSet,
    /// `Π K` and `p: Π^{0N} K → Π K`.
    pub quotient: Quotient,
    /// The section `q: Π K → Π^{0N} K`.
    pub section: Morphism,
}

impl FullNormalization {
    pub fn normalized(&self) -> &Arc<FreeCrossedComplex> {
        &self.quotient.complex
    }
}

pub fn full_normalize(k: &SimplicialSet) -> Result<FullNormalization, NormalizationError> {
    let pi = Arc::new(fundamental_crossed_complex(k)?);
    full_normalize_from(k, &pi)
}

pub fn full_normalize_from(k: &SimplicialSet, pi: &Arc<FreeCrossedComplex>) -> Result<FullNormalization, NormalizationError> {
    let zero = zero_normalize(k, pi)?;
    let top = k.trunc_level() - 1;
    let stages = (0..=top).map(|s| phi_stage(k, &zero, s)).collect::<Result<Vec<_>, _>>()?;
    let mut phi = stages[top].phi.clone();
    for s in stages[..top].iter().rev() {
        phi = phi.then(&s.phi)?;
    }
    let degenerate = all_degenerate(k, &zero);
    let quotient = kill_basis(zero.complex(), &degenerate, NormalizerChoice::default())?;
    let section_table = BasisTable {
        top,
        objects: (0..quotient.complex.num_objects()).collect(),
        edges: if top >= 1 {
            quotient.survivors[1].iter().map(|&e| phi.table().edges[e].clone()).collect()
        } else {
            Vec::new()
        },
        higher: (2..=top).map(|n| quotient.survivors[n].iter().map(|&g| phi.table().image(n, g)).collect()).collect(),
    };
    let section =
        Morphism::build(quotient.complex.clone(), zero.complex().clone(), section_table).map_err(morphism_err)?;
    Ok(FullNormalization { zero, stages, phi, degenerate, quotient, section })
}

/// All checks of the normalization, stage by stage.
#[derive(Debug, Clone)]
pub struct NormalizationReport {
    pub checks: Vec<Check>,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

impl fmt::Display for NormalizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Stage checks on an already computed normalization.
pub fn verify_full(k: &SimplicialSet, fnz: &FullNormalization) -> Result<Vec<Check>, NormalizationError> {
    let z = &fnz.zero;
    let q = z.complex().as_ref();
    let top = k.trunc_level() - 1;
    let mut checks = Vec::new();

    let mut c = Check::new("τ^k endpoints and φ^k a morphism");
    for s in &fnz.stages {
        let again = build_homotopy(s.tau.base().clone(), s.tau.table().clone());
        c.record(again.is_ok(), || format!("τ^{} rejected", s.k));
        let phi = Morphism::build(q_arc(z), q_arc(z), s.phi.table().clone());
        c.record(phi.is_ok(), || format!("φ^{} is not a morphism", s.k));
    }
    checks.push(c);

    let mut c = Check::new("φ^k from τ^k matches the closed formula");
    for s in &fnz.stages {
        for n in 0..=top {
            for j in 0..q.basis_count(n) {
                let (a, b) = (s.phi.table().image(n, j), s.phi_closed.image(n, j));
                c.record(q.same(&a, &b), || {
                    format!("k = {}, {}: derived {} vs closed {}", s.k, nk_name(q, n, j), q.show(&a), q.show(&b))
                });
            }
        }
    }
    checks.push(c);

    let mut c = Check::new("φ^k fixes generators below dimension k");
    for s in &fnz.stages {
        for n in 0..s.k.min(top + 1) {
            for j in 0..q.basis_count(n) {
                let a = s.phi.table().image(n, j);
                c.record(q.same(&a, &q.basis_element(n, j)), || format!("k = {}, {}", s.k, nk_name(q, n, j)));
            }
        }
    }
    checks.push(c);

    // stage monotonicity through the quotients by D_j
    let d_sets: Vec<KillSet> = (0..=top).map(|j| degeneracy_generators(k, z, j)).collect();
    let d_quot =
        d_sets.iter().map(|s| kill_basis(z.complex(), s, NormalizerChoice::default())).collect::<Result<Vec<_>, _>>()?;
    let mut mono = Check::new("φ^k D_j ⊆ D_j (j < k) and φ^k D_k ⊆ D_{k-1}");
    for s in fnz.stages.iter().filter(|s| s.k >= 1) {
        for j in 0..=s.k.min(top) {
            let into = if j < s.k { j } else { j - 1 };
            let pj = &d_quot[into];
            for n in 2..=top {
                for &g in &d_sets[j].sets.get(n).cloned().unwrap_or_default() {
                    let img = pj.projection.table().apply(&pj.complex, &s.phi.table().image(n, g));
                    mono.record(pj.complex.is_trivial(&img), || {
                        format!("φ^{}({}) ∉ D_{}: {}", s.k, q.basis_name(n, g), into, pj.complex.show(&img))
                    });
                }
            }
        }
    }
    checks.push(mono);

    let mut c = Check::new("φ kills every DK generator");
    for n in 2..=top {
        for &g in &fnz.degenerate.sets.get(n).cloned().unwrap_or_default() {
            let img = fnz.phi.table().image(n, g);
            c.record(q.is_trivial(&img), || format!("φ({}) = {}", q.basis_name(n, g), q.show(&img)));
        }
    }
    checks.push(c);

    let nk = fnz.normalized().as_ref();
    let p = fnz.quotient.projection.table();
    let mut c = Check::new("pq = 1 on the ΠK basis");
    for n in 0..=top {
        for j in 0..nk.basis_count(n) {
            let img = p.apply(nk, &fnz.section.table().image(n, j));
            c.record(nk.same(&img, &nk.basis_element(n, j)), || format!("{}: {}", nk_name(nk, n, j), nk.show(&img)));
        }
    }
    checks.push(c);

    let mut c = Check::new("ΠK basis = nondegenerate simplices");
    for n in 0..=k.trunc_level() {
        let want: Vec<&str> = k.nondegenerate(n).map(|x| k.name(x)).collect();
        let have: Vec<&str> = (0..nk.basis_count(n)).map(|j| nk_name(nk, n, j)).collect();
        c.record(want == have, || format!("dimension {n}: {have:?} vs {want:?}"));
    }
    checks.push(c);

    let mut c = Check::new("stage homotopies realized on the cylinder");
    let cyl = cylinder(&q_arc(z))?;
    for s in &fnz.stages {
        let ok = s.tau.cylinder_morphism(&cyl).is_ok_and(|m| {
            cyl.top.then(&m).is_ok_and(|t| t.agrees_with(s.tau.base()))
                && cyl.bottom.then(&m).is_ok_and(|b| b.agrees_with(&s.phi))
        });
        c.record(ok, || format!("τ^{}", s.k));
    }
    let zc = cylinder(&z.pi_upsilon)?;
    let ok = z.homotopy.cylinder_morphism(&zc).is_ok_and(|m| zc.bottom.then(&m).is_ok_and(|b| b.agrees_with(&z.psi)));
    c.record(ok, || "h: ψ ≃ 1".into());
    checks.push(c);
    Ok(checks)
}

fn q_arc(z: &ZeroNormalization) -> Arc<FreeCrossedComplex> {
    z.complex().clone()
}

fn nk_name(c: &FreeCrossedComplex, n: usize, j: usize) -> &str {
    if n == 0 {
        &c.object_names()[j]
    } else {
        c.basis_name(n, j)
    }
}

/// Run every check: the `ε₀` stage, the lemma and vertex identities, the
/// `D` stages and homology agreement through `trunc - 1`.
pub fn verify_normalization(k: &SimplicialSet) -> Result<(FullNormalization, NormalizationReport), NormalizationError> {
    let pi = Arc::new(fundamental_crossed_complex(k)?);
    let fnz = full_normalize_from(k, &pi)?;
    let mut checks = verify_zero_normalization(k, &fnz.zero);
    checks.push(lemma_deriv_check(k, &pi));
    checks.push(vertex_ladder_check(k, &pi));
    checks.extend(verify_full(k, &fnz)?);
    let mut c = Check::new("homology of Π^ΥK, Π^{0N}K and ΠK agree");
    let top = k.trunc_level() - 1;
    let a = integer_homology(&pi, top)?;
    let b = integer_homology(fnz.zero.complex(), top)?;
    let d = integer_homology(fnz.normalized(), top)?;
    for n in 0..=top {
        c.record(a[n] == b[n] && b[n] == d[n], || format!("H_{n}: {} / {} / {}", a[n], b[n], d[n]));
    }
    checks.push(c);
    Ok((fnz, NormalizationReport { checks }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{boundary_simplex, nerve_of_group, standard_simplex, GroupTable};

    #[test]
    fn delta2_normalizes() {
        let k = standard_simplex(2, 3).unwrap();
        let (fnz, report) = verify_normalization(&k).unwrap();
        assert!(report.passed(), "{report}");
        let nk = fnz.normalized();
        assert_eq!((nk.num_objects(), nk.basis_count(1), nk.basis_count(2)), (3, 3, 1));
    }

    #[test]
    fn circle_normalizes() {
        let k = boundary_simplex(2, 3).unwrap();
        let (_, report) = verify_normalization(&k).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn first_degeneracies_of_a_point() {
        let k = standard_simplex(0, 3).unwrap();
        let kill = first_degeneracies(&k);
        assert_eq!(kill.len(), 3);
        let pi = Arc::new(fundamental_crossed_complex(&k).unwrap());
        let z = zero_normalize(&k, &pi).unwrap();
        assert_eq!(z.complex().basis_count(1), 0);
        assert!(vertex_ladder_check(&k, &pi).passed());
    }

    #[test]
    fn phi_one_on_two_simplices() {
        // φ¹x = x - (ε₁∂₁x)^{δ₂x} + ε₁∂₀x once ε₀ is killed
        for k in [standard_simplex(2, 3).unwrap(), nerve_of_group(&GroupTable::cyclic(2).unwrap(), 3).unwrap()] {
            let pi = Arc::new(fundamental_crossed_complex(&k).unwrap());
            let z = zero_normalize(&k, &pi).unwrap();
            let stage = phi_stage(&k, &z, 1).unwrap();
            let q = z.complex();
            for j in 0..q.basis_count(2) {
                let x = simplex_of(&z, 2, j);
                let d2 = q.generator(2, j).boundary().as_word().unwrap().clone();
                let a = q.neg(&q.act_on(&eps_q(&k, &z, k.face(x, 1), 1), &d2));
                let want = q.sum(&q.sum(&q.basis_element(2, j), &a), &eps_q(&k, &z, k.face(x, 0), 1));
                assert!(q.same(&stage.phi.table().image(2, j), &want), "{}", k.name(x));
            }
        }
    }

    #[test]
    fn degenerate_three_simplices_of_the_z2_nerve() {
        // 8 triples, one nondegenerate, four of the form ε₀y (y ∈ K₂)
        let k = nerve_of_group(&GroupTable::cyclic(2).unwrap(), 4).unwrap();
        let pi = Arc::new(fundamental_crossed_complex(&k).unwrap());
        let z = zero_normalize(&k, &pi).unwrap();
        let dk = all_degenerate(&k, &z);
        assert_eq!(dk.sets[3].len(), 8 - 1 - 4);
        // D_0 is empty once ε₀ is killed, and D_j grows with j
        assert!(degeneracy_generators(&k, &z, 0).is_empty());
        for j in 0..3 {
            let (a, b) = (degeneracy_generators(&k, &z, j), degeneracy_generators(&k, &z, j + 1));
            assert!(a.sets.iter().enumerate().all(|(n, s)| s.iter().all(|&g| b.contains(n, g))));
        }
    }
}
