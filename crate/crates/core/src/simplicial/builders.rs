use std::collections::HashMap;

use thiserror::Error;

use super::{SimplicialError, SimplicialSet};

/// Name for a nondecreasing vertex sequence: digits run together when every
/// vertex is a single digit, comma separated otherwise.
fn sequence_name(seq: &[usize], n: usize) -> String {
    if n <= 9 {
        seq.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        seq.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

/// All nondecreasing sequences of length `len` with values in `0..=n`, in
/// lexicographic order.
fn monotone_sequences(len: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        out.push(cur.clone());
        // advance like an odometer keeping the sequence nondecreasing
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < n {
                cur[pos] += 1;
                let v = cur[pos];
                for c in cur.iter_mut().skip(pos + 1) {
                    *c = v;
                }
                break;
            }
        }
    }
}

/// Build a simplicial set whose m-simplices are the given sequences, with
/// faces deleting and degeneracies repeating an entry.
fn from_sequences(levels: Vec<Vec<Vec<usize>>>, n: usize) -> Result<SimplicialSet, SimplicialError> {
    let trunc = levels.len() - 1;
    let index: Vec<HashMap<&[usize], usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
    let mut names = Vec::new();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut degenerate = Vec::new();
    for (m, level) in levels.iter().enumerate() {
        names.push(level.iter().map(|s| sequence_name(s, n)).collect());
        degenerate.push(level.iter().map(|s| s.windows(2).any(|w| w[0] == w[1])).collect());
        faces.push(
            level
                .iter()
                .map(|s| {
                    if m == 0 {
                        return vec![];
                    }
                    (0..=m)
                        .map(|i| {
                            let mut f = s.clone();
                            f.remove(i);
                            index[m - 1][f.as_slice()]
                        })
                        .collect()
                })
                .collect(),
        );
        degeneracies.push(
            level
                .iter()
                .map(|s| {
                    (m < trunc).then(|| {
                        (0..=m)
                            .map(|i| {
                                let mut d = s.clone();
                                d.insert(i, s[i]);
                                index[m + 1][d.as_slice()]
                            })
                            .collect()
                    })
                })
                .collect(),
        );
    }
    SimplicialSet::from_parts(trunc, names, faces, degeneracies, degenerate)
}

/// The standard simplex `Δ[n]` truncated at level `trunc`: m-simplices are the
/// nondecreasing sequences of length m + 1 in `0..=n`.
pub fn standard_simplex(n: usize, trunc: usize) -> Result<SimplicialSet, SimplicialError> {
    if trunc < n {
        return Err(SimplicialError::InvalidArguments(format!("truncation {trunc} below simplex dimension {n}")));
    }
    from_sequences((0..=trunc).map(|m| monotone_sequences(m + 1, n)).collect(), n)
}

/// The boundary `∂Δ[n]`: sequences missing at least one vertex of `0..=n`.
pub fn boundary_simplex(n: usize, trunc: usize) -> Result<SimplicialSet, SimplicialError> {
    if n < 1 {
        return Err(SimplicialError::InvalidArguments("∂Δ[n] needs n >= 1".into()));
    }
    if trunc + 1 < n {
        return Err(SimplicialError::InvalidArguments(format!("truncation {trunc} below {}", n - 1)));
    }
    let levels = (0..=trunc)
        .map(|m| {
            monotone_sequences(m + 1, n)
                .into_iter()
                .filter(|s| {
                    let mut seen = vec![false; n + 1];
                    for &v in s {
                        seen[v] = true;
                    }
                    seen.iter().any(|b| !b)
                })
                .collect()
        })
        .collect();
    from_sequences(levels, n)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupTableError {
    #[error("multiplication table is not square with one row per element")]
    Shape,
    #[error("product {a}·{b} = {value} is not an element")]
    OutOfRange { a: usize, b: usize, value: usize },
    #[error("associativity fails: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("element names must be nonempty, unique, and free of '|', whitespace and reserved symbols")]
    BadNames,
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Check the group axioms, reporting the first failing instance.
    pub fn new(names: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self, GroupTableError> {
        let n = names.len();
        if n == 0 || mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(GroupTableError::Shape);
        }
        let reserved = |c: char| c.is_whitespace() || "|+-*^[]()@:#".contains(c);
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n || names.iter().any(|s| s.is_empty() || s.chars().any(reserved) || s == "pt") {
            return Err(GroupTableError::BadNames);
        }
        for a in 0..n {
            for b in 0..n {
                if mul[a][b] >= n {
                    return Err(GroupTableError::OutOfRange { a, b, value: mul[a][b] });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupTableError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a)).ok_or(GroupTableError::NoIdentity)?;
        for a in 0..n {
            if !(0..n).any(|b| mul[a][b] == identity && mul[b][a] == identity) {
                return Err(GroupTableError::NoInverse(a));
            }
        }
        Ok(GroupTable { names, mul, identity })
    }

    /// The cyclic group of order `n`, elements named `e, g, g2, ...`.
    pub fn cyclic(n: usize) -> Result<Self, GroupTableError> {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(names, mul)
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// The nerve of a finite group, truncated at `trunc`.
///
/// n-simplices are n-tuples of group elements; `∂_0` drops the first entry,
/// `∂_n` the last, and `∂_i` multiplies entries `i` and `i + 1` (1-based).
/// `ε_i` inserts the identity at position `i`. The single vertex is named `pt`.
pub fn nerve_of_group(group: &GroupTable, trunc: usize) -> Result<SimplicialSet, SimplicialError> {
    let g = group.order();
    let e = group.identity();
    // index of a tuple = base-g digits, first entry most significant
    let encode = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * g + x);
    let decode = |mut code: usize, len: usize| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = code % g;
            code /= g;
        }
        t
    };
    let mut names = Vec::new();
    let mut faces = Vec::new();
    let mut degeneracies = Vec::new();
    let mut degenerate = Vec::new();
    for m in 0..=trunc {
        let count = g.checked_pow(m as u32).ok_or_else(|| SimplicialError::InvalidArguments("nerve too large".into()))?;
        let tuples: Vec<Vec<usize>> = (0..count).map(|c| decode(c, m)).collect();
        names.push(
            tuples
                .iter()
                .map(|t| {
                    if t.is_empty() {
                        "pt".to_string()
                    } else {
                        t.iter().map(|&x| group.names()[x].as_str()).collect::<Vec<_>>().join("|")
                    }
                })
                .collect(),
        );
        degenerate.push(tuples.iter().map(|t| t.contains(&e)).collect());
        faces.push(
            tuples
                .iter()
                .map(|t| {
                    if m == 0 {
                        return vec![];
                    }
                    (0..=m)
                        .map(|i| {
                            let f: Vec<usize> = if i == 0 {
                                t[1..].to_vec()
                            } else if i == m {
                                t[..m - 1].to_vec()
                            } else {
                                let mut f = t[..i - 1].to_vec();
                                f.push(group.mul(t[i - 1], t[i]));
                                f.extend_from_slice(&t[i + 1..]);
                                f
                            };
                            encode(&f)
                        })
                        .collect()
                })
                .collect(),
        );
        degeneracies.push(
            tuples
                .iter()
                .map(|t| {
                    (m < trunc).then(|| {
                        (0..=m)
                            .map(|i| {
                                let mut d = t.clone();
                                d.insert(i, e);
                                encode(&d)
                            })
                            .collect()
                    })
                })
                .collect(),
        );
    }
    SimplicialSet::from_parts(trunc, names, faces, degeneracies, degenerate)
}

#[cfg(test)]
mod tests {
    use super::super::validate;
    use super::*;
    use crate::simplicial::SimplexId;

    /// Brute-force count of monotone maps [m] -> [n], independent of the odometer.
    fn count_monotone(m: usize, n: usize) -> (usize, usize) {
        let len = m + 1;
        let mut total = 0;
        let mut nondeg = 0;
        let combos = (n + 1).pow(len as u32);
        for code in 0..combos {
            let mut c = code;
            let mut seq = Vec::with_capacity(len);
            for _ in 0..len {
                seq.push(c % (n + 1));
                c /= n + 1;
            }
            if seq.windows(2).all(|w| w[0] <= w[1]) {
                total += 1;
                if seq.windows(2).all(|w| w[0] < w[1]) {
                    nondeg += 1;
                }
            }
        }
        (total, nondeg)
    }

    #[test]
    fn point_has_one_simplex_per_dimension() {
        let k = standard_simplex(0, 3).unwrap();
        for m in 0..=3 {
            assert_eq!(k.count(m), 1);
            assert_eq!(k.nondegenerate(m).count(), usize::from(m == 0));
        }
    }

    #[test]
    fn two_simplex_counts_match_enumeration() {
        let k = standard_simplex(2, 2).unwrap();
        for m in 0..=2 {
            let (total, nondeg) = count_monotone(m, 2);
            assert_eq!(k.count(m), total);
            assert_eq!(k.nondegenerate(m).count(), nondeg);
        }
        assert_eq!((k.count(0), k.count(1), k.count(2)), (3, 6, 10));
        assert_eq!(k.nondegenerate(1).count(), 3);
        assert_eq!(k.nondegenerate(2).count(), 1);
    }

    #[test]
    fn face_deletes_position() {
        let k = standard_simplex(2, 2).unwrap();
        let x = k.find(2, "012").unwrap();
        assert_eq!(k.name(k.face(x, 1)), "02");
        assert_eq!(k.name(k.face(x, 0)), "12");
        assert_eq!(k.name(k.degeneracy(k.find(1, "01").unwrap(), 1).unwrap()), "011");
    }

    #[test]
    fn builders_are_valid() {
        for n in 0..=4 {
            let k = standard_simplex(n, 4).unwrap();
            assert!(validate(&k).is_valid(), "Δ[{n}]: {:?}", validate(&k).violations);
        }
        for n in 1..=4 {
            let k = boundary_simplex(n, 4).unwrap();
            assert!(validate(&k).is_valid(), "∂Δ[{n}]");
        }
        let k = nerve_of_group(&GroupTable::cyclic(2).unwrap(), 5).unwrap();
        assert!(validate(&k).is_valid());
        let k = nerve_of_group(&GroupTable::cyclic(3).unwrap(), 4).unwrap();
        assert!(validate(&k).is_valid());
    }

    #[test]
    fn boundary_of_interval_is_two_points() {
        let k = boundary_simplex(1, 1).unwrap();
        assert_eq!(k.count(0), 2);
        assert_eq!(k.nondegenerate(1).count(), 0);
        let names: Vec<&str> = k.simplices(1).map(|x| k.name(x)).collect();
        assert_eq!(names, vec!["00", "11"]);
    }

    #[test]
    fn boundary_of_tetrahedron_counts() {
        let k = boundary_simplex(3, 3).unwrap();
        // brute force over Δ[3] sequences: omit at least one vertex
        let full = standard_simplex(3, 3).unwrap();
        for m in 0..=3 {
            let expected = full
                .nondegenerate(m)
                .filter(|&x| full.name(x).len() < 4)
                .count();
            assert_eq!(k.nondegenerate(m).count(), expected);
        }
        assert_eq!(k.nondegenerate(2).count(), 4);
        assert_eq!(k.nondegenerate(3).count(), 0);
        assert!(k.is_subobject_of(&full));
    }

    #[test]
    fn z2_nerve_counts() {
        let k = nerve_of_group(&GroupTable::cyclic(2).unwrap(), 3).unwrap();
        for m in 0..=3 {
            assert_eq!(k.count(m), 1 << m);
            assert_eq!(k.nondegenerate(m).count(), 1);
        }
        let gh = k.find(2, "g|g").unwrap();
        assert_eq!(k.name(k.face(gh, 1)), "e");
        assert_eq!(k.name(k.face(gh, 0)), "g");
        assert_eq!(k.face(SimplexId::new(1, 0), 0).dim, 0);
    }

    #[test]
    fn trivial_group_nerve() {
        let k = nerve_of_group(&GroupTable::cyclic(1).unwrap(), 3).unwrap();
        for m in 0..=3 {
            assert_eq!(k.count(m), 1);
            assert_eq!(k.nondegenerate(m).count(), usize::from(m == 0));
        }
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert_eq!(
            GroupTable::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).unwrap_err(),
            GroupTableError::NoIdentity
        );
        // identity a, but b·b = b: b has no inverse
        assert_eq!(GroupTable::new(names.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap_err(), GroupTableError::NoInverse(1));
        assert!(matches!(
            GroupTable::new(names, vec![vec![0, 1], vec![1, 2]]).unwrap_err(),
            GroupTableError::OutOfRange { a: 1, b: 1, value: 2 }
        ));
        let names3: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        // x identity; y·y = z, y·z = z ... not associative
        let t = vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 0]];
        assert!(matches!(GroupTable::new(names3, t).unwrap_err(), GroupTableError::NotAssociative { .. }));
    }

    #[test]
    fn truncation_arguments_checked() {
        assert!(standard_simplex(3, 2).is_err());
        assert!(boundary_simplex(0, 2).is_err());
        assert!(boundary_simplex(4, 2).is_err());
        assert!(boundary_simplex(3, 2).is_ok());
    }
}
