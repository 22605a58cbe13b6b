//! Dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Q;

pub type QMat = Vec<Vec<Q>>;

pub fn zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn identity(n: usize) -> QMat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn transpose(m: &QMat, cols: usize) -> QMat {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &QMat, b: &QMat, inner: usize, cols: usize) -> QMat {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| {
                    let mut acc = Q::zero();
                    for k in 0..inner {
                        if !r[k].is_zero() && !b[k][j].is_zero() {
                            acc += &r[k] * &b[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Q], m: &QMat, cols: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut QMat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let s = &f * &m[r][j];
                    m[i][j] -= s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMat, cols: usize) -> usize {
    let mut w = m.clone();
    rref(&mut w, cols).len()
}

/// Basis of `{x : m x = 0}` (column vectors of length `cols`).
pub fn right_kernel(m: &QMat, cols: usize) -> Vec<Vec<Q>> {
    let mut w = m.clone();
    let pivots = rref(&mut w, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); cols];
            x[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -w[r][f].clone();
            }
            x
        })
        .collect()
}

/// Basis of `{x : x m = 0}` (row vectors of length `m.len()`).
pub fn left_kernel(m: &QMat, cols: usize) -> Vec<Vec<Q>> {
    right_kernel(&transpose(m, cols), m.len())
}

/// Unique `x` with `x · m = v`, if one exists; `m` must have independent rows.
pub fn solve_left(m: &QMat, cols: usize, v: &[Q]) -> Option<Vec<Q>> {
    let rows = m.len();
    // augmented system mᵀ x = v
    let mut aug: QMat = (0..cols)
        .map(|j| {
            let mut r: Vec<Q> = m.iter().map(|row| row[j].clone()).collect();
            r.push(v[j].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, rows + 1);
    if pivots.contains(&rows) {
        return None;
    }
    let mut x = vec![Q::zero(); rows];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][rows].clone();
    }
    Some(x)
}

pub fn inverse(m: &QMat) -> Option<QMat> {
    let n = m.len();
    let mut aug: QMat = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(m: &QMat) -> Q {
    let n = m.len();
    let mut w = m.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else { return Q::zero() };
        if p != c {
            w.swap(p, c);
            d = -d;
        }
        d *= &w[c][c];
        for i in c + 1..n {
            if !w[i][c].is_zero() {
                let f = &w[i][c] / &w[c][c];
                for j in c..n {
                    let s = &f * &w[c][j];
                    w[i][j] -= s;
                }
            }
        }
    }
    d
}
