//! Sparse rational elimination for large, very sparse homogeneous systems.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Incremental row echelon form; every stored row has leading coefficient 1.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored pivots; returns the remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((c, k)) = hit else { break };
            for (col, v) in &self.pivots[&c] {
                let e = row.entry(*col).or_insert_with(Q::zero);
                *e -= &k * v;
                if e.is_zero() {
                    row.remove(col);
                }
            }
            cursor = c + 1;
        }
        row
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((&lead, lv)) = row.iter().next() else { return false };
        let inv = Q::one() / lv;
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.pivots.insert(lead, row);
        true
    }

    /// Basis of `{x : row·x = 0 for every stored row}` in `ncols` unknowns.
    pub fn kernel(&self, ncols: usize) -> Vec<SparseRow> {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.into_iter()
            .map(|f| {
                let mut x = SparseRow::new();
                x.insert(f, Q::one());
                for (&pc, row) in self.pivots.iter().rev() {
                    let s = row
                        .iter()
                        .skip(1)
                        .filter_map(|(c, v)| x.get(c).map(|xv| xv * v))
                        .fold(Q::zero(), |a, b| a + b);
                    if !s.is_zero() {
                        x.insert(pc, -s);
                    }
                }
                x
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn row(e: &[(usize, i64)]) -> SparseRow {
        e.iter().map(|&(c, v)| (c, q(v))).collect()
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows = [row(&[(0, 1), (2, -1)]), row(&[(1, 2), (2, 2), (3, 1)]), row(&[(0, 2), (2, -2)])];
        let mut e = Echelon::new();
        for r in &rows {
            e.insert(r.clone());
        }
        assert_eq!(e.rank(), 2);
        let k = e.kernel(4);
        assert_eq!(k.len(), 2);
        for x in &k {
            for r in &rows {
                let dot = r.iter().filter_map(|(c, v)| x.get(c).map(|xv| xv * v)).fold(q(0), |a, b| a + b);
                assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let mut e = Echelon::new();
        e.insert(row(&[(1, 1)]));
        e.insert(row(&[(0, 3), (1, 1)]));
        assert!(e.kernel(2).is_empty());
        assert!(!e.insert(row(&[(0, 1)])));
    }
}
