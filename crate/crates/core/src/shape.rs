//! Index bookkeeping determined by `(ℓ₀, ℓ⃗)`.
//!
//! Indices are 1-based. `1..=ι₇` are the unbarred indices `I`, and the
//! barred partner of `p` is `p + ι₇`. Vectors over `J` are stored flat
//! (`v[p - 1]`); the interleaved order `(v₁, v_1̄, v₂, v_2̄, …)` is only used
//! when reading or writing files.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::scalar::Q;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DerivationType {
    /// both the grading part and the t-derivative are nonzero
    Mixed,
    /// grading operator only
    Grading,
    /// t-derivative only
    DownGrading,
}

impl DerivationType {
    pub fn letter(self) -> char {
        match self {
            DerivationType::Mixed => 'm',
            DerivationType::Grading => 'g',
            DerivationType::DownGrading => 'd',
        }
    }
}

/// Type table per block for the pair `(∂_p, ∂_p̄)`.
const TYPE_TABLE: [(DerivationType, DerivationType); 7] = {
    use DerivationType::*;
    [
        (Mixed, Grading),
        (Grading, Grading),
        (Mixed, Mixed),
        (Mixed, Mixed),
        (Grading, DownGrading),
        (Mixed, DownGrading),
        (DownGrading, DownGrading),
    ]
};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    l0: usize,
    l: [usize; 7],
    iota: [usize; 7],
}

impl Shape {
    pub fn new(l0: usize, l: [usize; 7]) -> Result<Shape> {
        if l0 > l[0] {
            return Err(Error::Parameter(format!("l0 = {l0} exceeds l1 = {}", l[0])));
        }
        let mut iota = [0; 7];
        let mut acc = 0;
        for i in 0..7 {
            acc += l[i];
            iota[i] = acc;
        }
        Ok(Shape { l0, l, iota })
    }

    pub fn l0(&self) -> usize {
        self.l0
    }

    pub fn l(&self) -> [usize; 7] {
        self.l
    }

    /// `ι_i` for `i ∈ 1..=7`, with `ι_0 = 0`.
    pub fn iota(&self, i: usize) -> usize {
        if i == 0 { 0 } else { self.iota[i - 1] }
    }

    pub fn iota7(&self) -> usize {
        self.iota[6]
    }

    /// Length of vectors over `J`.
    pub fn dim(&self) -> usize {
        2 * self.iota7()
    }

    /// `I_{i,j}` as a range of unbarred indices.
    pub fn range(&self, i: usize, j: usize) -> RangeInclusive<usize> {
        self.iota(i - 1) + 1..=self.iota(j)
    }

    pub fn index_set(&self, i: usize, j: usize) -> Vec<usize> {
        self.range(i, j).collect()
    }

    /// `J_{i,j} = I_{i,j} ∪ Ī_{i,j}`.
    pub fn j_set(&self, i: usize, j: usize) -> Vec<usize> {
        let mut v = self.index_set(i, j);
        v.extend(self.range(i, j).map(|p| self.bar(p)));
        v
    }

    pub fn all_indices(&self) -> RangeInclusive<usize> {
        1..=self.dim()
    }

    pub fn bar(&self, p: usize) -> usize {
        let n = self.iota7();
        if p <= n { p + n } else { p - n }
    }

    pub fn is_barred(&self, p: usize) -> bool {
        p > self.iota7()
    }

    /// Unbarred representative of `p` or `p̄`.
    pub fn base(&self, p: usize) -> usize {
        if self.is_barred(p) { p - self.iota7() } else { p }
    }

    pub fn check_index(&self, p: usize) -> Result<()> {
        if p == 0 || p > self.dim() {
            Err(Error::IndexOutOfRange(p))
        } else {
            Ok(())
        }
    }

    /// Block number `i` with `base(p) ∈ I_i`.
    pub fn block(&self, p: usize) -> usize {
        let b = self.base(p);
        (1..=7).find(|&i| b <= self.iota(i)).expect("index out of range")
    }

    /// `p ∈ I_{i,j}` (unbarred only).
    pub fn in_i(&self, p: usize, i: usize, j: usize) -> bool {
        !self.is_barred(p) && (i..=j).contains(&self.block(p))
    }

    /// `p ∈ Ī_{i,j}`.
    pub fn in_ibar(&self, p: usize, i: usize, j: usize) -> bool {
        self.is_barred(p) && (i..=j).contains(&self.block(p))
    }

    /// `p ∈ J_{i,j}`.
    pub fn in_j(&self, p: usize, i: usize, j: usize) -> bool {
        (i..=j).contains(&self.block(p))
    }

    /// Normalized `σ_p` as a flat vector over `J`.
    pub fn sigma(&self, p: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim()];
        match self.block(p) {
            1 if self.base(p) <= self.l0 => v[self.base(p) - 1] = Q::one(),
            1..=3 => {
                v[p - 1] = Q::one();
                v[self.bar(p) - 1] = Q::one();
            }
            _ => {}
        }
        v
    }

    pub fn derivation_type(&self, p: usize) -> Result<DerivationType> {
        self.check_index(p)?;
        let (a, b) = TYPE_TABLE[self.block(p) - 1];
        Ok(if self.is_barred(p) { b } else { a })
    }

    pub fn eps(&self, p: usize) -> i64 {
        if self.is_barred(p) { -1 } else { 1 }
    }

    /// `t_p` exists, i.e. `p ∉ I₂ ∪ I₅ ∪ Ī_{1,2}`.
    pub fn t_allowed(&self, p: usize) -> bool {
        !(self.in_i(p, 2, 2) || self.in_i(p, 5, 5) || self.in_ibar(p, 1, 2))
    }

    pub fn t_indices(&self) -> Vec<usize> {
        self.all_indices().filter(|&p| self.t_allowed(p)).collect()
    }

    /// Grade coordinates forced to vanish: `I₇ ∪ Ī_{5,7}`.
    pub fn grade_allowed(&self, p: usize) -> bool {
        !(self.in_i(p, 7, 7) || self.in_ibar(p, 5, 7))
    }

    pub fn monomial_index_valid(&self, i: &[u32]) -> Result<bool> {
        if i.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: i.len() });
        }
        Ok(i.iter().enumerate().all(|(k, &e)| e == 0 || self.t_allowed(k + 1)))
    }

    /// Position of flat index `p` in the interleaved file order.
    pub fn interleaved_position(&self, p: usize) -> usize {
        let b = self.base(p);
        2 * (b - 1) + usize::from(self.is_barred(p))
    }

    pub fn to_interleaved<T: Clone>(&self, flat: &[T]) -> Vec<T> {
        let mut out = flat.to_vec();
        for p in self.all_indices() {
            out[self.interleaved_position(p)] = flat[p - 1].clone();
        }
        out
    }

    pub fn from_interleaved<T: Clone>(&self, inter: &[T]) -> Vec<T> {
        self.all_indices()
            .map(|p| inter[self.interleaved_position(p)].clone())
            .collect()
    }

    /// `t1`, `t1b`, … as used by the text element format.
    pub fn t_label(&self, p: usize) -> String {
        if self.is_barred(p) {
            format!("t{}b", self.base(p))
        } else {
            format!("t{p}")
        }
    }

    pub fn parse_t_label(&self, s: &str) -> Option<usize> {
        let body = s.strip_prefix('t')?;
        let (num, barred) = match body.strip_suffix('b') {
            Some(n) => (n, true),
            None => (body, false),
        };
        let b: usize = num.parse().ok()?;
        if b == 0 || b > self.iota7() {
            return None;
        }
        Some(if barred { b + self.iota7() } else { b })
    }
}
