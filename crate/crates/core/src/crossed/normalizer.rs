//! Canonical forms for groupoid words modulo the image of `δ₂`.
//!
//! Operators on elements of dimension ≥ 3 live in the fundamental groupoid
//! `π₁C = C₁/δ₂C₂`; a [`Pi1Normalizer`] picks one representative word per
//! element.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::coset::FiniteGroup;
use crate::groupoid::{EdgeId, Graph, Letter, ObjectId, Word};

/// Default cap on cosets defined while enumerating a finite `π₁`.
pub const DEFAULT_COSET_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizerError {
    #[error("π₁ at object {object} could not be enumerated within {budget} cosets; it may be infinite")]
    Capacity { object: ObjectId, budget: usize },
}

pub trait Pi1Normalizer: Send + Sync + fmt::Debug {
    /// Canonical representative of `w` modulo `δ₂C₂`, with the endpoints of `w`.
    fn canon(&self, w: &Word) -> Word;

    fn name(&self) -> &'static str;
}

/// Which strategy a complex should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizerChoice {
    /// Free if every 2-cell has trivial boundary, otherwise simplify the presentation and
    /// enumerate whatever relators survive.
    Auto { budget: usize },
    SimplyConnected,
    Free,
    Presented { budget: usize },
}

impl Default for NormalizerChoice {
    fn default() -> Self {
        NormalizerChoice::Auto { budget: DEFAULT_COSET_BUDGET }
    }
}

impl NormalizerChoice {
    pub fn build(self, graph: &Graph, relators: &[Word]) -> Result<Arc<dyn Pi1Normalizer>, NormalizerError> {
        Ok(match self {
            NormalizerChoice::SimplyConnected => Arc::new(SimplyConnected::new(graph)),
            NormalizerChoice::Free => Arc::new(FreeNormalizer),
            NormalizerChoice::Presented { budget } => Arc::new(Presented::new(graph, relators, budget)?),
            NormalizerChoice::Auto { budget } => {
                let forest = SpanningForest::new(graph);
                if graph.num_edges() + forest.num_components() == graph.num_objects() {
                    // a forest: nothing to normalize beyond the tree paths
                    Arc::new(SimplyConnected::new(graph))
                } else if relators.iter().all(Word::is_identity) {
                    Arc::new(FreeNormalizer)
                } else {
                    let p = Presented::new(graph, relators, budget)?;
                    if p.groups().iter().all(|g| *g == ComponentGroup::Trivial) {
                        Arc::new(SimplyConnected::new(graph))
                    } else {
                        Arc::new(p)
                    }
                }
            }
        })
    }
}

/// A spanning tree per connected component, rooted at its least object.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    component: Vec<usize>,
    roots: Vec<ObjectId>,
    paths: Vec<Word>,
    tree_edge: Vec<bool>,
}

impl SpanningForest {
    pub fn new(graph: &Graph) -> Self {
        let n = graph.num_objects();
        let mut adjacent: Vec<Vec<Letter>> = vec![Vec::new(); n];
        for (e, &(s, t)) in graph.edges().iter().enumerate() {
            adjacent[s].push(Letter::forward(e));
            adjacent[t].push(Letter::backward(e));
        }
        let mut component = vec![usize::MAX; n];
        let mut paths: Vec<Option<Word>> = vec![None; n];
        let mut tree_edge = vec![false; graph.num_edges()];
        let mut roots = Vec::new();
        for root in 0..n {
            if component[root] != usize::MAX {
                continue;
            }
            let c = roots.len();
            roots.push(root);
            component[root] = c;
            paths[root] = Some(Word::identity(root));
            let mut queue = VecDeque::from([root]);
            while let Some(p) = queue.pop_front() {
                for &l in &adjacent[p] {
                    let q = graph.letter_target(l);
                    if component[q] == usize::MAX {
                        component[q] = c;
                        tree_edge[l.edge] = true;
                        paths[q] = Some(paths[p].as_ref().unwrap().then(&Word::letter(graph, l)));
                        queue.push_back(q);
                    }
                }
            }
        }
        SpanningForest { component, roots, paths: paths.into_iter().map(Option::unwrap).collect(), tree_edge }
    }

    pub fn num_components(&self) -> usize {
        self.roots.len()
    }

    pub fn component(&self, p: ObjectId) -> usize {
        self.component[p]
    }

    pub fn root(&self, component: usize) -> ObjectId {
        self.roots[component]
    }

    /// The tree path from the root of `p`'s component to `p`.
    pub fn path(&self, p: ObjectId) -> &Word {
        &self.paths[p]
    }

    pub fn is_tree_edge(&self, e: EdgeId) -> bool {
        self.tree_edge[e]
    }

    /// `-T(p) + T(q)`, the tree path from `p` to `q`.
    fn tree_word(&self, p: ObjectId, q: ObjectId) -> Word {
        self.paths[p].invert().then(&self.paths[q])
    }
}

/// Every word goes to the tree path between its endpoints. Valid only when
/// each component has trivial `π₁`.
#[derive(Debug, Clone)]
pub struct SimplyConnected {
    forest: SpanningForest,
}

impl SimplyConnected {
    pub fn new(graph: &Graph) -> Self {
        SimplyConnected { forest: SpanningForest::new(graph) }
    }
}

impl Pi1Normalizer for SimplyConnected {
    fn canon(&self, w: &Word) -> Word {
        self.forest.tree_word(w.start(), w.end())
    }

    fn name(&self) -> &'static str {
        "simply-connected"
    }
}

/// `canon` is free reduction. Valid when `δ₂` is trivial.
#[derive(Debug, Clone, Copy)]
pub struct FreeNormalizer;

impl Pi1Normalizer for FreeNormalizer {
    fn canon(&self, w: &Word) -> Word {
        w.clone()
    }

    fn name(&self) -> &'static str {
        "free"
    }
}

/// The group of one component, as far as the normalizer determined it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentGroup {
    Trivial,
    Free { rank: usize },
    Finite { order: usize },
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentGroup::Trivial => f.write_str("trivial"),
            ComponentGroup::Free { rank } => write!(f, "free of rank {rank}"),
            ComponentGroup::Finite { order } => write!(f, "finite of order {order}"),
        }
    }
}

pub(crate) fn reduce_group_word(word: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclically_reduce(mut w: Vec<i32>) -> Vec<i32> {
    w = reduce_group_word(w);
    let mut a = 0;
    let mut b = w.len();
    while b - a >= 2 && w[a] == -w[b - 1] {
        a += 1;
        b -= 1;
    }
    w[a..b].to_vec()
}

fn invert_group_word(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|l| -l).collect()
}

fn substitute(w: &[i32], image: &[Option<Vec<i32>>]) -> Vec<i32> {
    let mut out = Vec::with_capacity(w.len());
    for &l in w {
        let g = (l.unsigned_abs() - 1) as usize;
        match &image[g] {
            Some(e) if l > 0 => out.extend_from_slice(e),
            Some(e) => out.extend(invert_group_word(e)),
            None => out.push(l),
        }
    }
    reduce_group_word(out)
}

/// Result of eliminating generators that occur exactly once in a relator.
#[derive(Debug, Clone)]
pub(crate) struct Simplified {
    /// Original indices of the surviving generators.
    pub survivors: Vec<usize>,
    /// Every original generator as a reduced word in the survivors
    /// (survivor indices, 1-based signed).
    pub resolved: Vec<Vec<i32>>,
    /// Remaining relators in survivor indices.
    pub relators: Vec<Vec<i32>>,
}

pub(crate) fn tietze_simplify(generators: usize, relators: Vec<Vec<i32>>) -> Simplified {
    let mut relators: Vec<Vec<i32>> =
        relators.into_iter().map(cyclically_reduce).filter(|r| !r.is_empty()).collect();
    let mut expression: Vec<Option<Vec<i32>>> = vec![None; generators];
    let mut order = Vec::new();
    loop {
        relators.sort_by_key(Vec::len);
        let mut found = None;
        'search: for (ri, r) in relators.iter().enumerate() {
            let mut count = vec![0usize; generators];
            for &l in r {
                count[(l.unsigned_abs() - 1) as usize] += 1;
            }
            for (pos, &l) in r.iter().enumerate() {
                if count[(l.unsigned_abs() - 1) as usize] == 1 {
                    found = Some((ri, pos));
                    break 'search;
                }
            }
        }
        let Some((ri, pos)) = found else { break };
        let r = relators.remove(ri);
        let l = r[pos];
        let g = (l.unsigned_abs() - 1) as usize;
        // g^ε · rest = 1 after rotating g^ε to the front
        let rest: Vec<i32> = r[pos + 1..].iter().chain(r[..pos].iter()).copied().collect();
        let expr = if l > 0 { invert_group_word(&rest) } else { reduce_group_word(rest) };
        let mut image: Vec<Option<Vec<i32>>> = vec![None; generators];
        image[g] = Some(expr.clone());
        relators = relators
            .iter()
            .map(|r| cyclically_reduce(substitute(r, &image)))
            .filter(|r| !r.is_empty())
            .collect();
        expression[g] = Some(expr);
        order.push(g);
    }
    let survivors: Vec<usize> = (0..generators).filter(|g| expression[*g].is_none()).collect();
    let mut local = vec![0i32; generators];
    for (i, &g) in survivors.iter().enumerate() {
        local[g] = i as i32 + 1;
    }
    // resolve in reverse elimination order; later eliminations only mention survivors
    let mut resolved: Vec<Option<Vec<i32>>> = vec![None; generators];
    for &g in order.iter().rev() {
        let expr = expression[g].as_ref().unwrap();
        resolved[g] = Some(substitute(expr, &resolved));
    }
    let to_local = |w: &[i32]| -> Vec<i32> {
        w.iter().map(|&l| l.signum() * local[(l.unsigned_abs() - 1) as usize]).collect()
    };
    let resolved = (0..generators)
        .map(|g| match &resolved[g] {
            Some(w) => to_local(w),
            None => vec![local[g]],
        })
        .collect();
    let relators = relators.iter().map(|r| to_local(r)).collect();
    Simplified { survivors, resolved, relators }
}

#[derive(Debug, Clone)]
struct ComponentData {
    /// Surviving generators as edges.
    survivors: Vec<EdgeId>,
    resolved: Vec<Vec<i32>>,
    /// `None` when no relators survive and the group is free on the survivors.
    group: Option<FiniteGroup>,
}

/// Normalizer from the presentation (non-tree edges, `δ₂` words): generators
/// occurring once in a relator are eliminated, a free group is left as is,
/// and any remaining relators are coset-enumerated.
#[derive(Debug, Clone)]
pub struct Presented {
    graph: Graph,
    forest: SpanningForest,
    local: Vec<Option<usize>>,
    components: Vec<ComponentData>,
}

impl Presented {
    pub fn new(graph: &Graph, relators: &[Word], budget: usize) -> Result<Self, NormalizerError> {
        let forest = SpanningForest::new(graph);
        let mut local = vec![None; graph.num_edges()];
        let mut edges_of: Vec<Vec<EdgeId>> = vec![Vec::new(); forest.num_components()];
        for e in 0..graph.num_edges() {
            if !forest.is_tree_edge(e) {
                let c = forest.component(graph.source(e));
                local[e] = Some(edges_of[c].len());
                edges_of[c].push(e);
            }
        }
        let mut rels_of: Vec<Vec<Vec<i32>>> = vec![Vec::new(); forest.num_components()];
        for r in relators {
            let c = forest.component(r.start());
            let w: Vec<i32> = r
                .letters()
                .iter()
                .filter_map(|l| local[l.edge].map(|g| if l.inverse { -(g as i32 + 1) } else { g as i32 + 1 }))
                .collect();
            rels_of[c].push(w);
        }
        let mut components = Vec::with_capacity(forest.num_components());
        for (c, (edges, rels)) in edges_of.into_iter().zip(rels_of).enumerate() {
            let s = tietze_simplify(edges.len(), rels);
            let group = if s.relators.is_empty() {
                None
            } else {
                Some(
                    FiniteGroup::enumerate(s.survivors.len(), &s.relators, budget)
                        .map_err(|e| NormalizerError::Capacity { object: forest.root(c), budget: e.budget })?,
                )
            };
            components.push(ComponentData {
                survivors: s.survivors.iter().map(|&i| edges[i]).collect(),
                resolved: s.resolved,
                group,
            });
        }
        Ok(Presented { graph: graph.clone(), forest, local, components })
    }

    pub fn groups(&self) -> Vec<ComponentGroup> {
        self.components
            .iter()
            .map(|c| match &c.group {
                Some(g) if g.order() == 1 => ComponentGroup::Trivial,
                Some(g) => ComponentGroup::Finite { order: g.order() },
                None if c.survivors.is_empty() => ComponentGroup::Trivial,
                None => ComponentGroup::Free { rank: c.survivors.len() },
            })
            .collect()
    }

    pub fn forest(&self) -> &SpanningForest {
        &self.forest
    }

    fn loop_letters(&self, e: EdgeId, inverse: bool, out: &mut Vec<Letter>) {
        let (s, t) = self.graph.edges()[e];
        let forward = self.forest.path(s).letters().iter().copied().chain([Letter::forward(e)]).chain(
            self.forest.path(t).letters().iter().rev().map(|l| l.inv()),
        );
        if inverse {
            let v: Vec<Letter> = forward.collect();
            out.extend(v.iter().rev().map(|l| l.inv()));
        } else {
            out.extend(forward);
        }
    }
}

impl Pi1Normalizer for Presented {
    fn canon(&self, w: &Word) -> Word {
        let c = self.forest.component(w.start());
        let comp = &self.components[c];
        let mut group_word = Vec::new();
        for l in w.letters() {
            if let Some(g) = self.local[l.edge] {
                let r = &comp.resolved[g];
                if l.inverse {
                    group_word.extend(invert_group_word(r));
                } else {
                    group_word.extend_from_slice(r);
                }
            }
        }
        let mut group_word = reduce_group_word(group_word);
        if let Some(g) = &comp.group {
            group_word = g.normal_form(&group_word).to_vec();
        }
        let mut letters: Vec<Letter> = self.forest.path(w.start()).letters().iter().rev().map(|l| l.inv()).collect();
        for l in group_word {
            let e = comp.survivors[(l.unsigned_abs() - 1) as usize];
            self.loop_letters(e, l < 0, &mut letters);
        }
        letters.extend_from_slice(self.forest.path(w.end()).letters());
        Word::from_raw(w.start(), w.end(), letters)
    }

    fn name(&self) -> &'static str {
        "presented"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(g: &Graph, start: ObjectId, letters: &[i32]) -> Word {
        let ls: Vec<Letter> = letters
            .iter()
            .map(|&l| if l > 0 { Letter::forward(l as usize - 1) } else { Letter::backward((-l) as usize - 1) })
            .collect();
        Word::from_letters(g, start, &ls).unwrap()
    }

    #[test]
    fn tietze_eliminates_to_free() {
        // ⟨a, b, c | a b c^-1⟩: c = ab, survivors a, b
        let s = tietze_simplify(3, vec![vec![1, 2, -3]]);
        assert!(s.relators.is_empty());
        assert_eq!(s.survivors.len(), 2);
        // exactly one generator was rewritten as a product of the other two
        assert_eq!(s.resolved.iter().filter(|w| w.len() == 2).count(), 1);
    }

    #[test]
    fn tietze_keeps_power_relator() {
        let s = tietze_simplify(2, vec![vec![1], vec![2, 2]]);
        assert_eq!(s.survivors, vec![1]);
        assert_eq!(s.relators, vec![vec![1, 1]]);
        assert_eq!(s.resolved[0], Vec::<i32>::new());
    }

    #[test]
    fn circle_with_one_triangle_is_simply_connected() {
        // triangle 0->1->2, plus 0->2, filled: relator -02 + 01 + 12
        let g = Graph::with_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let rel = word(&g, 2, &[-3, 1, 2]);
        let p = Presented::new(&g, &[rel], 100).unwrap();
        assert_eq!(p.groups(), vec![ComponentGroup::Trivial]);
        let w = word(&g, 0, &[3, -2]);
        assert_eq!(p.canon(&w), SimplyConnected::new(&g).canon(&w));
    }

    #[test]
    fn hollow_triangle_is_free() {
        let g = Graph::with_edges(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = Presented::new(&g, &[], 100).unwrap();
        assert_eq!(p.groups(), vec![ComponentGroup::Free { rank: 1 }]);
        let w = word(&g, 0, &[1, 2, -3, 1, 2, -3]);
        assert_eq!(p.canon(&w).len(), 6);
        assert_eq!(p.canon(&w.then(&w.invert())), Word::identity(0));
    }

    #[test]
    fn finite_loop_canon() {
        // one object, loops e, g; relators e and g g
        let gr = Graph::with_edges(1, vec![(0, 0), (0, 0)]).unwrap();
        let p = Presented::new(&gr, &[word(&gr, 0, &[1]), word(&gr, 0, &[2, 2])], 100).unwrap();
        assert_eq!(p.groups(), vec![ComponentGroup::Finite { order: 2 }]);
        let g3 = word(&gr, 0, &[2, 1, 2, 2]);
        assert_eq!(p.canon(&g3), word(&gr, 0, &[2]));
        assert_eq!(p.canon(&word(&gr, 0, &[-2])), word(&gr, 0, &[2]));
        assert!(p.canon(&word(&gr, 0, &[2, -1, 2])).is_identity());
    }

    #[test]
    fn canon_laws_on_finite_presentation() {
        let gr = Graph::with_edges(2, vec![(0, 1), (1, 0), (0, 0)]).unwrap();
        // a: 0->1, b: 1->0, c: loop at 0; relators (a+b)^3, c - a - b
        let rels = [word(&gr, 0, &[1, 2, 1, 2, 1, 2]), word(&gr, 0, &[3, -2, -1])];
        let p = Presented::new(&gr, &rels, 1000).unwrap();
        assert_eq!(p.groups(), vec![ComponentGroup::Finite { order: 3 }]);
        let samples = [word(&gr, 0, &[1, 2, 3]), word(&gr, 1, &[2, 3, 3, 1]), word(&gr, 0, &[-3, 1])];
        for u in &samples {
            assert_eq!(p.canon(&p.canon(u)), p.canon(u));
            assert_eq!((p.canon(u).start(), p.canon(u).end()), (u.start(), u.end()));
            for v in &samples {
                if u.end() == v.start() {
                    assert_eq!(p.canon(&u.then(v)), p.canon(&p.canon(u).then(&p.canon(v))));
                }
            }
        }
    }

    #[test]
    fn infinite_presentation_fails_loudly() {
        let gr = Graph::with_edges(1, vec![(0, 0), (0, 0)]).unwrap();
        let comm = word(&gr, 0, &[1, 2, -1, -2]);
        let err = Presented::new(&gr, &[comm], 200).unwrap_err();
        assert_eq!(err, NormalizerError::Capacity { object: 0, budget: 200 });
    }
}
