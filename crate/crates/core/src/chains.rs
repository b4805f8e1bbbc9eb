//! The chain complex of modules over `π₁` attached to a free crossed complex,
//! its augmentation to integer chains, and integer homology.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::crossed::{Chain, Element, FreeCrossedComplex};
use crate::groupoid::Word;
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("homology in degree {requested} needs boundaries up to degree {needed}, only {available} available")]
    Degree { requested: usize, needed: usize, available: usize },
    #[error("∂∂ ≠ 0: {0}")]
    NotComplex(String),
}

/// A module element: integer combination of `(generator, operator)` pairs.
/// In degree 0 the generators are objects.
pub type ModuleElement = Chain;

/// `∇C`: free modules over `π₁C` with boundaries given on the bases.
#[derive(Debug, Clone)]
pub struct ChainComplexOverGroupoid<'a> {
    pub complex: &'a FreeCrossedComplex,
    /// `boundaries[n - 1][g]` is `∂_n` of basis element `g` in degree `n`.
    pub boundaries: Vec<Vec<ModuleElement>>,
}

/// The universal derivation on a word: `α(u + v) = α(u)^{φv} + α(v)`.
pub fn fox_derivative(c: &FreeCrossedComplex, w: &Word) -> ModuleElement {
    let mut acc = Chain::zero(1, w.start());
    for l in w.letters() {
        let (s, t) = c.graph().edges()[l.edge];
        let step = if l.inverse {
            // α(-e) = -(e, φ(-e))
            let back = c.edge(l.edge).invert();
            let mut term = Chain::zero(1, s);
            term.add_term(l.edge, c.canon(&back), -1);
            (back, term)
        } else {
            let mut term = Chain::zero(1, t);
            term.add_term(l.edge, Word::identity(t), 1);
            (c.edge(l.edge), term)
        };
        acc = acc.acted(&step.0, |u| c.canon(u)).plus(&step.1);
    }
    acc
}

fn boundary_in_module(c: &FreeCrossedComplex, n: usize, g: usize) -> ModuleElement {
    match n {
        1 => {
            let (p, q) = c.graph().edges()[g];
            let mut out = Chain::zero(0, q);
            out.add_term(p, c.canon(&c.edge(g)), 1);
            out.add_term(q, Word::identity(q), -1);
            out
        }
        2 => fox_derivative(c, c.generator(2, g).boundary().as_word().expect("2-cells bound words")),
        _ => match c.generator(n, g).boundary() {
            Element::Cell2(x) => c.abelianize(x),
            Element::Chain(x) => {
                let mut out = Chain::zero(x.dim(), x.base());
                for ((h, w), &k) in x.coefficients() {
                    out.add_term(*h, c.canon(w), k);
                }
                out
            }
            _ => unreachable!("boundary of a generator of dimension ≥ 3"),
        },
    }
}

/// Build `∇C` through the truncation level.
pub fn nabla(c: &FreeCrossedComplex) -> ChainComplexOverGroupoid<'_> {
    let boundaries =
        (1..=c.trunc_level()).map(|n| (0..c.basis_count(n)).map(|g| boundary_in_module(c, n, g)).collect()).collect();
    ChainComplexOverGroupoid { complex: c, boundaries }
}

impl ChainComplexOverGroupoid<'_> {
    pub fn top(&self) -> usize {
        self.boundaries.len()
    }

    pub fn rank(&self, n: usize) -> usize {
        if n == 0 {
            self.complex.num_objects()
        } else {
            self.boundaries[n - 1].len()
        }
    }

    /// `∂_n` extended linearly and equivariantly.
    pub fn boundary(&self, x: &ModuleElement) -> ModuleElement {
        let n = x.dim();
        assert!(n >= 1, "∂₀ is zero");
        let c = self.complex;
        let mut out = Chain::zero(n - 1, x.base());
        for ((g, w), &k) in x.coefficients() {
            out = out.plus(&self.boundaries[n - 1][*g].acted(w, |u| c.canon(u)).scaled(k));
        }
        out
    }

    /// `∂∂ = 0` on every basis element and `ε∂₁ = 0`.
    pub fn audit(&self) -> Result<(), ChainError> {
        for b in self.boundaries.first().into_iter().flatten() {
            if b.augmentation() != 0 {
                return Err(ChainError::NotComplex(format!("ε∂₁ = {}", b.augmentation())));
            }
        }
        for n in 2..=self.top() {
            for (g, b) in self.boundaries[n - 1].iter().enumerate() {
                let dd = self.boundary(b);
                if !dd.is_zero() {
                    return Err(ChainError::NotComplex(format!(
                        "degree {n}, {}: {:?}",
                        self.complex.basis_name(n, g),
                        dd.coefficients()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Integer chains with labeled bases; `boundaries[n - 1]` is `∂_n` with
/// columns indexed by degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntChainComplex {
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix>,
}

impl IntChainComplex {
    pub fn top(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Send every operator to 1.
pub fn augment(x: &ChainComplexOverGroupoid<'_>) -> IntChainComplex {
    let c = x.complex;
    let mut bases = vec![c.object_names().to_vec()];
    bases.extend((1..=x.top()).map(|n| (0..c.basis_count(n)).map(|g| c.basis_name(n, g).to_string()).collect()));
    let boundaries = (1..=x.top())
        .map(|n| {
            let mut m = IntMatrix::zeros(x.rank(n - 1), x.rank(n));
            for (g, b) in x.boundaries[n - 1].iter().enumerate() {
                for ((h, _), &k) in b.coefficients() {
                    let v = m[(*h, g)].clone() + BigInt::from(k);
                    m[(*h, g)] = v;
                }
            }
            m
        })
        .collect();
    IntChainComplex { bases, boundaries }
}

/// `ℤ^rank ⊕ ⊕ ℤ/d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub rank: usize,
    /// Invariant factors greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `H_0 … H_{max_degree}`; degree `n` uses `∂_{n+1}`.
pub fn homology(x: &IntChainComplex, max_degree: usize) -> Result<Vec<HomologyGroup>, ChainError> {
    if max_degree + 1 > x.top() {
        return Err(ChainError::Degree { requested: max_degree, needed: max_degree + 1, available: x.top() });
    }
    let snf: Vec<_> = x.boundaries.iter().map(IntMatrix::smith).collect();
    Ok((0..=max_degree)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { snf[n - 1].factors.len() };
            let incoming = &snf[n].factors;
            HomologyGroup {
                rank: x.bases[n].len() - out_rank - incoming.len(),
                torsion: incoming.iter().filter(|d| !d.is_one()).cloned().collect(),
            }
        })
        .collect())
}

/// Homology of the augmented `∇C` through `max_degree`.
pub fn integer_homology(c: &FreeCrossedComplex, max_degree: usize) -> Result<Vec<HomologyGroup>, ChainError> {
    homology(&augment(&nabla(c)), max_degree)
}
