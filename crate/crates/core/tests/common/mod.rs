//! Independent oracles: classical simplicial chains read straight off the
//! face maps, and integer homology by determinantal divisors and by ranks
//! over Q and F_p. Nothing here uses the crate's linear algebra.
#![allow(dead_code)]

use crossed::simplicial::{boundary_simplex, nerve_of_group, standard_simplex, GroupTable, SimplexId, SimplicialSet};

/// Integer matrix as rows.
pub type Mat = Vec<Vec<i64>>;

/// Boundary matrices `d_1 … d_top` of the classical chain complex, on all
/// simplices or on nondegenerate ones only (degenerate faces dropped).
pub fn classical_chains(k: &SimplicialSet, normalized: bool) -> (Vec<usize>, Vec<Mat>) {
    let top = k.trunc_level();
    let basis: Vec<Vec<SimplexId>> = (0..=top)
        .map(|n| if normalized { k.nondegenerate(n).collect() } else { k.simplices(n).collect() })
        .collect();
    let pos = |n: usize, x: SimplexId| basis[n].iter().position(|&y| y == x);
    let mut mats = Vec::new();
    for n in 1..=top {
        let mut m = vec![vec![0i64; basis[n].len()]; basis[n - 1].len()];
        for (j, &x) in basis[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(r) = pos(n - 1, k.face(x, i)) {
                    m[r][j] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        mats.push(m);
    }
    (basis.iter().map(Vec::len).collect(), mats)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by Bareiss elimination.
fn det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(s) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}` where `d_k` is the gcd of all k×k minors.
/// Exponential; only for small matrices.
pub fn invariant_factors(m: &Mat) -> Vec<i64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor = rs.iter().map(|&r| cs.iter().map(|&c| i128::from(m[r][c])).collect()).collect();
                g = gcd(g, det(minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(i64::try_from(g / prev).unwrap());
        prev = g;
    }
    out
}

/// Rank over F_p (p prime) or over Q (p = 0), by Gaussian elimination.
pub fn rank_mod(m: &Mat, p: i64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    if p == 0 {
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
        // fraction-free elimination over Z gives the rank over Q
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(rank, piv);
            for i in rank + 1..a.len() {
                if a[i][c] != 0 {
                    let (x, y) = (a[rank][c], a[i][c]);
                    for j in 0..cols {
                        a[i][j] = a[i][j] * x - a[rank][j] * y;
                    }
                    let g = a[i].iter().fold(0, |g, &v| gcd(g, v));
                    if g > 1 {
                        a[i].iter_mut().for_each(|v| *v /= g);
                    }
                }
            }
            rank += 1;
        }
        return rank;
    }
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let inv = |x: i64| (1..p).find(|&y| (x * y) % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let s = inv(a[rank][c]);
        a[rank].iter_mut().for_each(|v| *v = (*v * s) % p);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Homology as "Z", "0", "Z/2", "Z^2 + Z/3"... from invariant factors.
pub fn oracle_homology(dims: &[usize], mats: &[Mat], max_degree: usize) -> Vec<String> {
    let factors: Vec<Vec<i64>> = mats.iter().map(invariant_factors).collect();
    (0..=max_degree)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { factors[n - 1].len() };
            let rank = dims[n] - out_rank - factors[n].len();
            render(rank, factors[n].iter().copied().filter(|&d| d != 1).collect())
        })
        .collect()
}

/// Betti numbers over F_p (p prime) or Q (p = 0).
pub fn betti(dims: &[usize], mats: &[Mat], p: i64, max_degree: usize) -> Vec<usize> {
    (0..=max_degree)
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { rank_mod(&mats[n - 1], p) };
            dims[n] - out_rank - rank_mod(&mats[n], p)
        })
        .collect()
}

pub fn render(rank: usize, torsion: Vec<i64>) -> String {
    let mut parts = Vec::new();
    match rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// The shared test complexes with their names.
pub fn test_complexes() -> Vec<(&'static str, SimplicialSet)> {
    vec![
        ("Δ[2] trunc 3", standard_simplex(2, 3).unwrap()),
        ("Δ[3] trunc 4", standard_simplex(3, 4).unwrap()),
        ("∂Δ[2] trunc 3", boundary_simplex(2, 3).unwrap()),
        ("∂Δ[3] trunc 4", boundary_simplex(3, 4).unwrap()),
        ("nerve(Z/2) trunc 5", nerve_of_group(&GroupTable::cyclic(2).unwrap(), 5).unwrap()),
    ]
}
