//! Dense exact matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type SmallMatrix = Matrix<i64>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| T::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &T) {
        for j in 0..self.cols {
            let v = self[(dst, j)].clone() + k.clone() * self[(src, j)].clone();
            self[(dst, j)] = v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &T) {
        for i in 0..self.rows {
            let v = self[(i, dst)].clone() + k.clone() * self[(i, src)].clone();
            self[(i, dst)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    /// Smith normal form by min-absolute-value pivoting.
    pub fn smith(&self) -> Smith<T> {
        smith_impl(self, false)
    }

    /// Smith normal form together with unimodular `U`, `V` with `D = U M V`.
    pub fn smith_with_transforms(&self) -> Smith<T> {
        smith_impl(self, true)
    }

    pub fn rank(&self) -> usize {
        self.smith().factors.len()
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith<T: Scalar> {
    pub diagonal: Matrix<T>,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<T>,
    pub u: Option<Matrix<T>>,
    pub v: Option<Matrix<T>>,
}

fn smith_impl<T: Scalar>(m: &Matrix<T>, track: bool) -> Smith<T> {
    let mut d = m.clone();
    let (r, c) = (m.rows, m.cols);
    let mut u = track.then(|| Matrix::identity(r));
    let mut v = track.then(|| Matrix::identity(c));
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry in the lower right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !d[(i, j)].is_zero() && best.is_none_or(|(a, b)| d[(i, j)].abs() < d[(a, b)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        d.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        let mut dirty = false;
        for i in t + 1..r {
            if !d[(i, t)].is_zero() {
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &q);
                }
                dirty |= !d[(i, t)].is_zero();
            }
        }
        for j in t + 1..c {
            if !d[(t, j)].is_zero() {
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &q);
                }
                dirty |= !d[(t, j)].is_zero();
            }
        }
        if dirty {
            continue;
        }
        // divisibility: fold an offending row into row t and redo
        let pivot = d[(t, t)].clone();
        let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
        if let Some(i) = bad {
            d.add_row(t, i, &T::one());
            if let Some(u) = u.as_mut() {
                u.add_row(t, i, &T::one());
            }
            continue;
        }
        if pivot.is_negative() {
            d.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    let factors = (0..r.min(c)).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    Smith { diagonal: d, factors, u, v }
}
