//! Coset enumeration (HLT strategy with coincidences) over the trivial
//! subgroup, for finite groups given by a presentation.
//!
//! Group words are `Vec<i32>`: generator `k` is `k + 1`, its inverse `-(k + 1)`.

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coset enumeration exceeded its budget of {budget} cosets")]
pub struct BudgetExceeded {
    pub budget: usize,
}

fn column(letter: i32) -> usize {
    let g = (letter.unsigned_abs() - 1) as usize;
    2 * g + usize::from(letter < 0)
}

fn inverse_column(col: usize) -> usize {
    col ^ 1
}

fn column_letter(col: usize) -> i32 {
    let g = (col / 2) as i32 + 1;
    if col % 2 == 0 {
        g
    } else {
        -g
    }
}

struct Enumeration {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    columns: usize,
    budget: usize,
}

impl Enumeration {
    fn new(generators: usize, budget: usize) -> Self {
        Enumeration {
            table: vec![vec![None; 2 * generators]],
            parent: vec![0],
            queue: Vec::new(),
            columns: 2 * generators,
            budget,
        }
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), BudgetExceeded> {
        if self.table.len() >= self.budget {
            return Err(BudgetExceeded { budget: self.budget });
        }
        let n = self.table.len();
        self.table.push(vec![None; self.columns]);
        self.parent.push(n);
        self.table[c][col] = Some(n);
        self.table[n][inverse_column(col)] = Some(c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = c;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop] = keep;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.columns {
                let Some(f) = self.table[e][col] else { continue };
                let icol = inverse_column(col);
                self.table[f][icol] = None;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(g) = self.table[e1][col] {
                    self.merge(f1, g);
                } else if let Some(g) = self.table[f1][icol] {
                    self.merge(e1, g);
                } else {
                    self.table[e1][col] = Some(f1);
                    self.table[f1][icol] = Some(e1);
                }
            }
        }
        self.queue.clear();
    }

    fn scan_and_fill(&mut self, c: usize, word: &[i32]) -> Result<(), BudgetExceeded> {
        if word.is_empty() {
            return Ok(());
        }
        let cols: Vec<usize> = word.iter().map(|&l| column(l)).collect();
        let mut f = c;
        let mut b = c;
        let mut i = 0isize;
        let mut j = cols.len() as isize - 1;
        loop {
            while i <= j {
                match self.table[f][cols[i as usize]] {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                match self.table[b][inverse_column(cols[j as usize])] {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = cols[i as usize];
                self.table[f][col] = Some(b);
                self.table[b][inverse_column(col)] = Some(f);
                return Ok(());
            }
            self.define(f, cols[i as usize])?;
        }
    }
}

/// A finite group as a complete coset table over the trivial subgroup, with a
/// shortest word for every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    generators: usize,
    table: Vec<Vec<usize>>,
    words: Vec<Vec<i32>>,
}

impl FiniteGroup {
    /// Enumerate `⟨x_1..x_m | relators⟩`, giving up after `budget` cosets.
    pub fn enumerate(generators: usize, relators: &[Vec<i32>], budget: usize) -> Result<Self, BudgetExceeded> {
        let mut en = Enumeration::new(generators, budget.max(1));
        let mut c = 0;
        while c < en.table.len() {
            for r in relators {
                if !en.live(c) {
                    break;
                }
                en.scan_and_fill(c, r)?;
            }
            if en.live(c) {
                for col in 0..en.columns {
                    if en.table[c][col].is_none() {
                        en.define(c, col)?;
                    }
                }
            }
            c += 1;
        }
        // compact live cosets, keeping coset 0 first
        let mut index = vec![usize::MAX; en.table.len()];
        let mut live = Vec::new();
        for c in 0..en.table.len() {
            if en.live(c) {
                index[c] = live.len();
                live.push(c);
            }
        }
        let mut table = Vec::with_capacity(live.len());
        for &c in &live {
            let mut row = Vec::with_capacity(en.columns);
            for col in 0..en.columns {
                let target = en.table[c][col].expect("complete table");
                let target = en.rep(target);
                row.push(index[target]);
            }
            table.push(row);
        }
        // shortest words by breadth-first search in column order
        let mut words: Vec<Option<Vec<i32>>> = vec![None; table.len()];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for col in 0..en.columns {
                let d = table[c][col];
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap();
                    w.push(column_letter(col));
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
        let words = words.into_iter().map(|w| w.expect("coset table is connected")).collect();
        Ok(FiniteGroup { generators, table, words })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// The element represented by a word, as an index into the coset table.
    pub fn element(&self, word: &[i32]) -> usize {
        word.iter().fold(0, |c, &l| self.table[c][column(l)])
    }

    /// The shortest-word representative of the element of `word`.
    pub fn normal_form(&self, word: &[i32]) -> &[i32] {
        &self.words[self.element(word)]
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |c, &l| self.table[c][column(l)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        for n in 1..8 {
            let g = FiniteGroup::enumerate(1, &[vec![1; n]], 1000).unwrap();
            assert_eq!(g.order(), n);
            assert_eq!(g.normal_form(&vec![1; n + 1]), &[1][..(n > 1) as usize]);
        }
    }

    #[test]
    fn symmetric_group_s3() {
        // ⟨a, b | a^2, b^3, (ab)^2⟩
        let rels = vec![vec![1, 1], vec![2, 2, 2], vec![1, 2, 1, 2]];
        let g = FiniteGroup::enumerate(2, &rels, 1000).unwrap();
        assert_eq!(g.order(), 6);
        // brute-force associativity and the relators on the table
        for a in 0..6 {
            for b in 0..6 {
                for c in 0..6 {
                    assert_eq!(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
                }
            }
        }
        for r in &rels {
            assert_eq!(g.element(r), 0);
        }
    }

    #[test]
    fn quaternion_group() {
        // ⟨i, j | i^4, i^2 j^-2, j^-1 i j i⟩
        let rels = vec![vec![1, 1, 1, 1], vec![1, 1, -2, -2], vec![-2, 1, 2, 1]];
        assert_eq!(FiniteGroup::enumerate(2, &rels, 10_000).unwrap().order(), 8);
    }

    #[test]
    fn trivial_from_redundant_relators() {
        // ⟨a, b | ab^-1, a^2 b^-3⟩ is trivial
        let g = FiniteGroup::enumerate(2, &[vec![1, -2], vec![1, 1, -2, -2, -2]], 1000).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn infinite_group_hits_budget() {
        // ⟨a, b | [a, b]⟩ = Z^2
        let err = FiniteGroup::enumerate(2, &[vec![1, 2, -1, -2]], 500).unwrap_err();
        assert_eq!(err.budget, 500);
    }
}
