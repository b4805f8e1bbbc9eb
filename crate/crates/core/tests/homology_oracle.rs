mod common;

use common::{betti, classical_chains, invariant_factors, oracle_homology, test_complexes};
use crossed::chains::{augment, integer_homology, nabla};
use crossed::linalg::IntMatrix;
use crossed::normalization::full_normalize;
use crossed::pi_functor::fundamental_crossed_complex;
use crossed::simplicial::{nerve_of_group, GroupTable};

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[test]
fn normalized_homology_matches_classical_normalized_chains() {
    for (name, k) in test_complexes() {
        let top = k.trunc_level() - 1;
        let (dims, mats) = classical_chains(&k, true);
        let want = oracle_homology(&dims, &mats, top);
        let fnz = full_normalize(&k).unwrap();
        let got = strings(&integer_homology(fnz.normalized(), top).unwrap());
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn expected_groups() {
    let expect = [
        ("Δ[3] trunc 4", vec!["Z", "0", "0", "0"]),
        ("∂Δ[3] trunc 4", vec!["Z", "0", "Z", "0"]),
        ("nerve(Z/2) trunc 5", vec!["Z", "Z/2", "0", "Z/2", "0"]),
    ];
    for (name, k) in test_complexes() {
        let Some((_, want)) = expect.iter().find(|e| e.0 == name) else { continue };
        let (dims, mats) = classical_chains(&k, true);
        assert_eq!(oracle_homology(&dims, &mats, want.len() - 1), *want, "oracle on {name}");
    }
}

#[test]
fn unnormalized_homology_matches_classical_unnormalized_betti_numbers() {
    // the unnormalized matrices are too large for minors; compare Betti
    // numbers over Q and small primes, which pin down ranks and p-torsion counts
    for (name, k) in test_complexes() {
        let top = k.trunc_level() - 1;
        let (dims, mats) = classical_chains(&k, false);
        let pi = fundamental_crossed_complex(&k).unwrap();
        let got = integer_homology(&pi, top).unwrap();
        for p in [0, 2, 3, 5] {
            let want = betti(&dims, &mats, p, top);
            let from_groups: Vec<usize> = (0..=top)
                .map(|n| {
                    let count = |g: &crossed::chains::HomologyGroup| {
                        if p == 0 {
                            0
                        } else {
                            g.torsion.iter().filter(|d| (*d % p) == 0.into()).count()
                        }
                    };
                    got[n].rank + count(&got[n]) + if n == 0 { 0 } else { count(&got[n - 1]) }
                })
                .collect();
            assert_eq!(from_groups, want, "{name} over p = {p}");
        }
    }
}

#[test]
fn augmented_nabla_matches_classical_matrices_up_to_sign() {
    // ∇Π^ΥK augmented is the classical unnormalized complex, column by column
    // up to an overall sign
    for (name, k) in test_complexes() {
        let (_, mats) = classical_chains(&k, false);
        let pi = fundamental_crossed_complex(&k).unwrap();
        let x = augment(&nabla(&pi));
        for (n, (m, ours)) in mats.iter().zip(&x.boundaries).enumerate() {
            for j in 0..ours.cols() {
                let col: Vec<i64> = (0..ours.rows()).map(|i| i64::try_from(&ours[(i, j)]).unwrap()).collect();
                let theirs: Vec<i64> = m.iter().map(|r| r[j]).collect();
                let neg: Vec<i64> = theirs.iter().map(|v| -v).collect();
                assert!(col == theirs || col == neg, "{name}, degree {}, column {j}", n + 1);
            }
        }
    }
}

#[test]
fn smith_factors_match_determinantal_divisors() {
    let k = nerve_of_group(&GroupTable::cyclic(3).unwrap(), 4).unwrap();
    let (_, mats) = classical_chains(&k, true);
    for m in &mats {
        let ours = IntMatrix::from_i64(m);
        let got: Vec<i64> = ours.smith().factors.iter().map(|d| i64::try_from(d).unwrap()).collect();
        assert_eq!(got, invariant_factors(m));
    }
}
