//! Free groupoids on finite directed graphs.
//!
//! Words are written additively: `a + b` means "first `a`, then `b`", and a
//! letter `-e` traverses the edge `e` backwards. Every [`Word`] is kept freely
//! reduced, so equality of groupoid elements is equality of words.

use std::fmt;

use thiserror::Error;

/// Object (vertex) identifier inside a [`Graph`].
pub type ObjectId = usize;
/// Edge identifier inside a [`Graph`].
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("edge {edge} does not exist (graph has {count} edges)")]
    UnknownEdge { edge: EdgeId, count: usize },
    #[error("object {object} does not exist (graph has {count} objects)")]
    UnknownObject { object: ObjectId, count: usize },
    #[error("letter {position} starts at object {found}, expected object {expected}")]
    NotComposable { position: usize, expected: ObjectId, found: ObjectId },
    #[error("cannot compose a word ending at {end} with a word starting at {start}")]
    EndpointMismatch { end: ObjectId, start: ObjectId },
}

/// A finite directed multigraph: the free basis of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    num_objects: usize,
    edges: Vec<(ObjectId, ObjectId)>,
}

impl Graph {
    pub fn new(num_objects: usize) -> Self {
        Graph { num_objects, edges: Vec::new() }
    }

    pub fn with_edges(num_objects: usize, edges: Vec<(ObjectId, ObjectId)>) -> Result<Self, WordError> {
        let mut g = Graph::new(num_objects);
        for (s, t) in edges {
            g.add_edge(s, t)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, source: ObjectId, target: ObjectId) -> Result<EdgeId, WordError> {
        for o in [source, target] {
            if o >= self.num_objects {
                return Err(WordError::UnknownObject { object: o, count: self.num_objects });
            }
        }
        self.edges.push((source, target));
        Ok(self.edges.len() - 1)
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self, e: EdgeId) -> ObjectId {
        self.edges[e].0
    }

    pub fn target(&self, e: EdgeId) -> ObjectId {
        self.edges[e].1
    }

    pub fn edges(&self) -> &[(ObjectId, ObjectId)] {
        &self.edges
    }

    /// Where a letter starts.
    pub fn letter_source(&self, l: Letter) -> ObjectId {
        if l.inverse {
            self.target(l.edge)
        } else {
            self.source(l.edge)
        }
    }

    /// Where a letter ends.
    pub fn letter_target(&self, l: Letter) -> ObjectId {
        if l.inverse {
            self.source(l.edge)
        } else {
            self.target(l.edge)
        }
    }
}

/// An edge traversed forwards (`+e`) or backwards (`-e`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: EdgeId,
    pub inverse: bool,
}

impl Letter {
    pub fn forward(edge: EdgeId) -> Self {
        Letter { edge, inverse: false }
    }

    pub fn backward(edge: EdgeId) -> Self {
        Letter { edge, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { edge: self.edge, inverse: !self.inverse }
    }
}

/// A freely reduced word in a free groupoid, with explicit endpoints.
///
/// The empty word at `p` is the identity `0_p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    start: ObjectId,
    end: ObjectId,
    letters: Vec<Letter>,
}

/// Cancel adjacent `+e,-e` / `-e,+e` pairs with a stack.
fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        match out.last() {
            Some(&last) if last == l.inv() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl Word {
    pub fn identity(object: ObjectId) -> Self {
        Word { start: object, end: object, letters: Vec::new() }
    }

    pub fn generator(graph: &Graph, edge: EdgeId) -> Self {
        Word { start: graph.source(edge), end: graph.target(edge), letters: vec![Letter::forward(edge)] }
    }

    pub fn letter(graph: &Graph, l: Letter) -> Self {
        Word { start: graph.letter_source(l), end: graph.letter_target(l), letters: vec![l] }
    }

    /// Build a word from letters, checking composability, and reduce it.
    ///
    /// `start` is only consulted for the empty word.
    pub fn from_letters(graph: &Graph, start: ObjectId, letters: &[Letter]) -> Result<Self, WordError> {
        if start >= graph.num_objects() {
            return Err(WordError::UnknownObject { object: start, count: graph.num_objects() });
        }
        let start = match letters.first() {
            Some(&l) => {
                if l.edge >= graph.num_edges() {
                    return Err(WordError::UnknownEdge { edge: l.edge, count: graph.num_edges() });
                }
                graph.letter_source(l)
            }
            None => start,
        };
        let mut at = start;
        for (i, &l) in letters.iter().enumerate() {
            if l.edge >= graph.num_edges() {
                return Err(WordError::UnknownEdge { edge: l.edge, count: graph.num_edges() });
            }
            let s = graph.letter_source(l);
            if s != at {
                return Err(WordError::NotComposable { position: i, expected: at, found: s });
            }
            at = graph.letter_target(l);
        }
        Ok(Word { start, end: at, letters: free_reduce(letters.iter().copied()) })
    }

    /// Assemble a word whose composability the caller has already checked.
    pub(crate) fn from_raw(start: ObjectId, end: ObjectId, letters: impl IntoIterator<Item = Letter>) -> Self {
        Word { start, end, letters: free_reduce(letters) }
    }

    /// Reduce an arbitrary (possibly unreduced) word. Words constructed through
    /// this API are already reduced, so this is the identity on them.
    pub fn reduce(&self) -> Word {
        Word { start: self.start, end: self.end, letters: free_reduce(self.letters.iter().copied()) }
    }

    pub fn start(&self) -> ObjectId {
        self.start
    }

    pub fn end(&self) -> ObjectId {
        self.end
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }

    /// `self + other`, reduced.
    pub fn compose(&self, other: &Word) -> Result<Word, WordError> {
        if self.end != other.start {
            return Err(WordError::EndpointMismatch { end: self.end, start: other.start });
        }
        Ok(Word {
            start: self.start,
            end: other.end,
            letters: free_reduce(self.letters.iter().chain(other.letters.iter()).copied()),
        })
    }

    /// Composition for callers that have already established composability.
    pub(crate) fn then(&self, other: &Word) -> Word {
        debug_assert_eq!(self.end, other.start, "composing non-composable words");
        Word {
            start: self.start,
            end: other.end,
            letters: free_reduce(self.letters.iter().chain(other.letters.iter()).copied()),
        }
    }

    /// `-self`.
    pub fn invert(&self) -> Word {
        Word { start: self.end, end: self.start, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// Image of the word under a map sending each letter to a word.
    pub fn substitute<F>(&self, start: ObjectId, mut image: F) -> Word
    where
        F: FnMut(Letter) -> Word,
    {
        let mut acc = Word::identity(start);
        for &l in &self.letters {
            acc = acc.then(&image(l));
        }
        acc
    }

    /// Render with edge names, e.g. `-02 + 01 + 12`, or `id(p)` for an identity.
    pub fn display<'a>(&'a self, edge_names: &'a [String], object_names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, edge_names, object_names }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    edge_names: &'a [String],
    object_names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.letters.is_empty() {
            return write!(f, "id({})", self.object_names[self.word.start]);
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            let name = &self.edge_names[l.edge];
            match (i, l.inverse) {
                (0, false) => write!(f, "{name}")?,
                (0, true) => write!(f, "-{name}")?,
                (_, false) => write!(f, " + {name}")?,
                (_, true) => write!(f, " - {name}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // a: 0->1, b: 1->2, c: 1->2, d: 2->0
    fn graph() -> Graph {
        Graph::with_edges(3, vec![(0, 1), (1, 2), (1, 2), (2, 0)]).unwrap()
    }

    fn w(g: &Graph, start: ObjectId, letters: &[(EdgeId, bool)]) -> Word {
        let ls: Vec<Letter> = letters.iter().map(|&(e, inv)| Letter { edge: e, inverse: inv }).collect();
        Word::from_letters(g, start, &ls).unwrap()
    }

    #[test]
    fn cancellation_gives_identity() {
        let g = graph();
        let u = w(&g, 0, &[(0, false), (0, true)]);
        assert_eq!(u, Word::identity(0));
    }

    #[test]
    fn inner_cancellation() {
        let g = graph();
        let u = w(&g, 0, &[(0, false), (1, false), (1, true), (2, false)]);
        assert_eq!(u.letters(), &[Letter::forward(0), Letter::forward(2)]);
        assert_eq!(u.start(), 0);
        assert_eq!(u.end(), 2);
    }

    #[test]
    fn non_composable_rejected() {
        let g = graph();
        // a then d: a ends at 1, d starts at 2
        let err = Word::from_letters(&g, 0, &[Letter::forward(0), Letter::forward(3)]).unwrap_err();
        assert!(matches!(err, WordError::NotComposable { position: 1, expected: 1, found: 2 }));
    }

    #[test]
    fn compose_endpoint_mismatch() {
        let g = graph();
        let a = Word::generator(&g, 0);
        assert!(matches!(a.compose(&a), Err(WordError::EndpointMismatch { end: 1, start: 0 })));
    }

    #[test]
    fn invert_examples() {
        let g = graph();
        assert_eq!(Word::identity(2).invert(), Word::identity(2));
        let ab = w(&g, 0, &[(0, false), (1, false)]);
        assert_eq!(ab.invert().letters(), &[Letter::backward(1), Letter::backward(0)]);
        assert_eq!(ab.invert().compose(&ab).unwrap(), Word::identity(2));
        assert_eq!(ab.compose(&ab.invert()).unwrap(), Word::identity(0));
    }

    #[test]
    fn display_uses_additive_notation() {
        let g = graph();
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let objs: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
        let u = w(&g, 0, &[(0, false), (2, false), (1, true)]);
        assert_eq!(u.display(&names, &objs).to_string(), "a + c - b");
        assert_eq!(Word::identity(1).display(&names, &objs).to_string(), "id(q)");
    }

    /// Random walk in `graph()` of the given shape: each step picks a letter
    /// leaving the current object.
    fn random_walk(g: &Graph, start: ObjectId, choices: &[usize]) -> Vec<Letter> {
        let mut at = start;
        let mut out = Vec::new();
        for &c in choices {
            let options: Vec<Letter> = (0..g.num_edges())
                .flat_map(|e| [Letter::forward(e), Letter::backward(e)])
                .filter(|&l| g.letter_source(l) == at)
                .collect();
            let l = options[c % options.len()];
            out.push(l);
            at = g.letter_target(l);
        }
        out
    }

    /// Oracle: image of a word in the finite groupoid of permutations of
    /// {0,1,2} (every object group is S3 via a fixed assignment).
    fn perm_image(g: &Graph, w: &Word) -> [usize; 3] {
        let perms: [[usize; 3]; 4] = [[1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0]];
        let mut acc = [0, 1, 2];
        for l in w.letters() {
            let p = perms[l.edge];
            let p = if l.inverse {
                let mut inv = [0; 3];
                for i in 0..3 {
                    inv[p[i]] = i;
                }
                inv
            } else {
                p
            };
            acc = [p[acc[0]], p[acc[1]], p[acc[2]]];
        }
        let _ = g;
        acc
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(start in 0usize..3, choices in prop::collection::vec(0usize..8, 0..20)) {
            let g = graph();
            let letters = random_walk(&g, start, &choices);
            let u = Word::from_letters(&g, start, &letters).unwrap();
            prop_assert_eq!(u.reduce(), u.clone());
            prop_assert!(u.letters().windows(2).all(|p| p[0] != p[1].inv()));
            prop_assert_eq!(u.start(), start);
        }

        #[test]
        fn reduction_preserves_finite_image(start in 0usize..3, choices in prop::collection::vec(0usize..8, 0..20)) {
            let g = graph();
            let letters = random_walk(&g, start, &choices);
            let raw = Word { start, end: 0, letters: letters.clone() };
            let red = Word::from_letters(&g, start, &letters).unwrap();
            prop_assert_eq!(perm_image(&g, &raw), perm_image(&g, &red));
        }

        #[test]
        fn composition_is_associative(
            start in 0usize..3,
            c1 in prop::collection::vec(0usize..8, 0..8),
            c2 in prop::collection::vec(0usize..8, 0..8),
            c3 in prop::collection::vec(0usize..8, 0..8),
        ) {
            let g = graph();
            let a = Word::from_letters(&g, start, &random_walk(&g, start, &c1)).unwrap();
            let b = Word::from_letters(&g, a.end(), &random_walk(&g, a.end(), &c2)).unwrap();
            let c = Word::from_letters(&g, b.end(), &random_walk(&g, b.end(), &c3)).unwrap();
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            prop_assert_eq!(Word::identity(a.start()).compose(&a).unwrap(), a.clone());
            prop_assert_eq!(a.invert().invert(), a.clone());
            prop_assert_eq!(a.compose(&a.invert()).unwrap(), Word::identity(a.start()));
        }
    }
}
