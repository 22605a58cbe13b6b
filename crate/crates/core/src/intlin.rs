//! Integer matrix reduction: diagonal (Smith-style) form with unimodular
//! transforms, and integer kernels derived from it.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{lcm_denominators, Q, Z};

pub type ZMat = Vec<Vec<Z>>;

pub fn identity(n: usize) -> ZMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect()
}

/// Result of [`diagonalize`]: `u * m * v == d`, with `u`, `v` unimodular and
/// `d` diagonal. The first `rank` diagonal entries are positive.
#[derive(Debug, Clone)]
pub struct Diagonal {
    pub u: ZMat,
    pub v: ZMat,
    pub diag: Vec<Z>,
    pub rank: usize,
}

pub fn diagonalize(m: &ZMat, cols: usize) -> Diagonal {
    let rows = m.len();
    let mut a = m.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = a[i][t].div_floor(&a[t][t]);
                for j in 0..cols {
                    let s = &f * &a[t][j];
                    a[i][j] -= s;
                }
                for j in 0..rows {
                    let s = &f * &u[t][j];
                    u[i][j] -= s;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    u.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = a[t][j].div_floor(&a[t][t]);
                for i in 0..rows {
                    let s = &f * &a[i][t];
                    a[i][j] -= s;
                }
                for i in 0..cols {
                    let s = &f * &v[i][t];
                    v[i][j] -= s;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    for row in v.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    let diag = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    Diagonal { u, v, diag, rank: t }
}

/// A ℤ-basis of `{x ∈ ℤ^rows : x · m = 0}`.
pub fn left_kernel(m: &ZMat, cols: usize) -> ZMat {
    let d = diagonalize(m, cols);
    d.u[d.rank..].to_vec()
}

/// Scale each column of a rational matrix to integers (same kernel).
pub fn clear_column_denominators(m: &[Vec<Q>], cols: usize) -> ZMat {
    let scale: Vec<Z> = (0..cols)
        .map(|j| lcm_denominators(m.iter().map(|r| &r[j])))
        .collect();
    m.iter()
        .map(|r| {
            r.iter()
                .zip(&scale)
                .map(|(x, s)| (x * Q::from_integer(s.clone())).to_integer())
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &ZMat, b: &ZMat, inner: usize, cols: usize) -> ZMat {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).fold(Z::zero(), |acc, k| acc + &r[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: &[&[i64]]) -> ZMat {
        rows.iter().map(|r| r.iter().map(|&x| Z::from(x)).collect()).collect()
    }

    #[test]
    fn diagonal_form_reconstructs() {
        let m = z(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let d = diagonalize(&m, 3);
        let prod = mat_mul(&mat_mul(&d.u, &m, 3, 3), &d.v, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(prod[i][j].is_zero());
                }
            }
            assert_eq!(prod[i][i], d.diag[i]);
        }
        let det: Z = d.diag.iter().product();
        assert_eq!(det.abs(), Z::from(144));
    }

    #[test]
    fn kernel_of_dependent_rows() {
        let m = z(&[&[1, 2], &[2, 4], &[0, 1]]);
        let k = left_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let prod = mat_mul(&k, &m, 3, 2);
        assert!(prod[0].iter().all(Zero::is_zero));
    }

    #[test]
    fn empty_matrix() {
        let d = diagonalize(&vec![], 2);
        assert_eq!(d.rank, 0);
        assert_eq!(d.v.len(), 2);
    }
}
