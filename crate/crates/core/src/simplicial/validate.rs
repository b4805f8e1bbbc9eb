use std::fmt;

use super::{SimplexId, SimplicialSet};

/// The families of simplicial identities, plus consistency of the degeneracy flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdentityRule {
    /// `∂_i ∂_j = ∂_{j-1} ∂_i` for `i < j`.
    FaceFace,
    /// `∂_i ε_j = ε_{j-1} ∂_i` for `i < j`.
    FaceDegeneracyBelow,
    /// `∂_j ε_j = ∂_{j+1} ε_j = id`.
    FaceDegeneracyIdentity,
    /// `∂_i ε_j = ε_j ∂_{i-1}` for `i > j + 1`.
    FaceDegeneracyAbove,
    /// `ε_i ε_j = ε_{j+1} ε_i` for `i <= j`.
    DegeneracyDegeneracy,
    /// The flag is set exactly on images of degeneracies.
    DegeneracyFlag,
}

impl fmt::Display for IdentityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentityRule::FaceFace => "∂_i∂_j = ∂_{j-1}∂_i",
            IdentityRule::FaceDegeneracyBelow => "∂_iε_j = ε_{j-1}∂_i",
            IdentityRule::FaceDegeneracyIdentity => "∂_jε_j = id",
            IdentityRule::FaceDegeneracyAbove => "∂_iε_j = ε_j∂_{i-1}",
            IdentityRule::DegeneracyDegeneracy => "ε_iε_j = ε_{j+1}ε_i",
            IdentityRule::DegeneracyFlag => "degeneracy flag",
        })
    }
}

/// One violated identity instance: rule, operator indices and simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: IdentityRule,
    pub i: usize,
    pub j: usize,
    pub simplex: SimplexId,
    pub name: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.rule {
            IdentityRule::DegeneracyFlag => write!(f, "{} fails on {:?} (dim {})", self.rule, self.name, self.simplex.dim),
            _ => write!(
                f,
                "{} fails for i={}, j={} on {:?} (dim {})",
                self.rule, self.i, self.j, self.name, self.simplex.dim
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every simplicial identity instance that lies within the truncation.
pub fn validate(k: &SimplicialSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    let top = k.trunc_level();
    let mut fail = |rule, i, j, x: SimplexId| {
        report.violations.push(Violation { rule, i, j, simplex: x, name: k.name(x).to_owned() });
    };

    for n in 0..=top {
        for x in k.simplices(n) {
            // ∂_i∂_j = ∂_{j-1}∂_i on x of dimension n >= 2
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        if k.face(k.face(x, j), i) != k.face(k.face(x, i), j - 1) {
                            fail(IdentityRule::FaceFace, i, j, x);
                        }
                    }
                }
            }
            if n >= top {
                continue;
            }
            // identities involving ε_j x in dimension n + 1
            for j in 0..=n {
                let ej = k.degeneracy(x, j).expect("degeneracy below truncation");
                if k.face(ej, j) != x || k.face(ej, j + 1) != x {
                    fail(IdentityRule::FaceDegeneracyIdentity, j, j, x);
                }
                for i in 0..j {
                    let lhs = k.face(ej, i);
                    let rhs = k.degeneracy(k.face(x, i), j - 1);
                    if Some(lhs) != rhs {
                        fail(IdentityRule::FaceDegeneracyBelow, i, j, x);
                    }
                }
                for i in (j + 2)..=(n + 1) {
                    let lhs = k.face(ej, i);
                    let rhs = k.degeneracy(k.face(x, i - 1), j);
                    if Some(lhs) != rhs {
                        fail(IdentityRule::FaceDegeneracyAbove, i, j, x);
                    }
                }
                if n + 2 <= top {
                    for i in 0..=j {
                        let lhs = k.degeneracy(ej, i);
                        let rhs = k.degeneracy(k.degeneracy(x, i).expect("below truncation"), j + 1);
                        if lhs != rhs {
                            fail(IdentityRule::DegeneracyDegeneracy, i, j, x);
                        }
                    }
                }
            }
        }
    }

    // flag(x) iff x = ε_i y for some recorded pair; found by brute force.
    for n in 0..=top {
        let mut is_image = vec![false; k.count(n)];
        if n > 0 {
            for y in k.simplices(n - 1) {
                for i in 0..n {
                    if let Some(z) = k.degeneracy(y, i) {
                        is_image[z.index] = true;
                    }
                }
            }
        }
        for x in k.simplices(n) {
            if k.is_degenerate(x) != is_image[x.index] {
                fail(IdentityRule::DegeneracyFlag, 0, 0, x);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices `a`, `b`, truncated at 1, with `∂_0 ε_0 a` wrongly set to `b`.
    fn broken() -> SimplicialSet {
        SimplicialSet::from_parts(
            1,
            vec![vec!["a".into(), "b".into()], vec!["aa".into(), "bb".into()]],
            vec![vec![vec![], vec![]], vec![vec![1, 0], vec![1, 1]]],
            vec![vec![Some(vec![0]), Some(vec![1])], vec![None, None]],
            vec![vec![false, false], vec![true, true]],
        )
        .unwrap()
    }

    #[test]
    fn single_identity_violation_is_reported() {
        let report = validate(&broken());
        assert_eq!(report.violations.len(), 1, "{:?}", report.violations);
        let v = &report.violations[0];
        assert_eq!(v.rule, IdentityRule::FaceDegeneracyIdentity);
        assert_eq!(v.rule.to_string(), "∂_jε_j = id");
        assert_eq!(v.name, "a");
    }

    #[test]
    fn flag_inconsistency_is_reported() {
        let k = SimplicialSet::from_parts(
            1,
            vec![vec!["a".into()], vec!["aa".into()]],
            vec![vec![vec![]], vec![vec![0, 0]]],
            vec![vec![Some(vec![0])], vec![None]],
            vec![vec![false], vec![false]],
        )
        .unwrap();
        let report = validate(&k);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].rule, IdentityRule::DegeneracyFlag);
    }
}
