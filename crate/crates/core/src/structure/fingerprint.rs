use serde::Serialize;

use crate::algebra::Instance;
use crate::error::Result;
use crate::exec::{self, Mode};
use crate::lattice::GroupElement;

use super::center::grade_box;
use super::derivation::{ad_diagonalizable, ad_locally_finite_on_a0, ad_vanishes_on_a0, diagonalizable_on_blocks};
use super::normalizer::{claim3_rank, m_sets_membership, shift_rank, sigma_kills_n};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FingerprintBounds {
    /// Coordinate bound of the candidate grade box.
    pub coord: i64,
    /// Componentwise `t`-exponent bound of diagonalizability blocks.
    pub t_bound: u32,
}

impl Default for FingerprintBounds {
    fn default() -> Self {
        FingerprintBounds { coord: 2, t_bound: 2 }
    }
}

/// Invariants of one locally finite class `a = −σ_p`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassSignature {
    pub diagonalizable: bool,
    pub claim3_rank: usize,
    pub kills_n: bool,
    pub shift_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub n_lf: usize,
    pub n_diag: usize,
    pub n_nondiag: usize,
    pub rank0: usize,
    pub rank1: usize,
    pub rank2: usize,
    /// Sorted class signatures.
    pub classes: Vec<ClassSignature>,
    /// Reconstructed `(ℓ₄, ℓ₅, ℓ₆, ℓ₇)`.
    pub t_census: [usize; 4],
    pub l0: usize,
    pub l: [usize; 7],
    /// False when some count does not fit any shape.
    pub consistent: bool,
}

impl Fingerprint {
    pub fn matches(&self, inst: &Instance) -> bool {
        self.consistent && self.l0 == inst.shape().l0() && self.l == inst.shape().l()
    }
}

/// Locally finite nonzero classes found in the candidate box, in box order.
pub fn locally_finite_classes(inst: &Instance, coord: i64, mode: Mode) -> Vec<GroupElement> {
    let cands = grade_box(inst, coord);
    let keep = exec::map(mode, &cands, |a| ad_locally_finite_on_a0(inst, a) && !ad_vanishes_on_a0(inst, a));
    cands.into_iter().zip(keep).filter_map(|(a, k)| k.then_some(a)).collect()
}

fn class_index(inst: &Instance, a: &GroupElement) -> Option<usize> {
    let s = inst.shape();
    s.index_set(1, 3).into_iter().find(|&p| &inst.sigma(p).neg() == a)
}

#[derive(Debug, Clone, Copy, Default)]
struct VariableCensus {
    in_m0: usize,
    in_m_only: usize,
    lf_not_m: usize,
    lf_diag: usize,
}

fn variable_census(inst: &Instance, t_bound: u32, mode: Mode) -> Result<VariableCensus> {
    let mut c = VariableCensus::default();
    for q in inst.shape().t_indices() {
        let t = inst.t(q)?;
        let sets = m_sets_membership(inst, &t)?;
        if sets.in_m0 {
            c.in_m0 += 1;
        } else if sets.in_m {
            c.in_m_only += 1;
        } else if sets.in_m1 {
            c.lf_not_m += 1;
            if diagonalizable_on_blocks(inst, &t, t_bound, mode)? {
                c.lf_diag += 1;
            }
        }
    }
    Ok(c)
}

pub fn fingerprint(inst: &Instance, bounds: &FingerprintBounds, mode: Mode) -> Result<Fingerprint> {
    let mut classes = Vec::new();
    let mut consistent = true;
    for a in locally_finite_classes(inst, bounds.coord, mode) {
        let diagonalizable = ad_diagonalizable(inst, &a, bounds.t_bound, mode)?;
        let sigma = a.neg();
        let (rank, kills_n) = match class_index(inst, &a) {
            Some(p) => (claim3_rank(inst, p)?.rank, sigma_kills_n(inst, p)?),
            None => {
                consistent = false;
                (0, false)
            }
        };
        classes.push(ClassSignature { diagonalizable, claim3_rank: rank, kills_n, shift_rank: shift_rank(inst, &sigma) });
    }
    classes.sort();
    let count = |f: &dyn Fn(&ClassSignature) -> bool| classes.iter().filter(|c| f(c)).count();
    let n_diag = count(&|c| c.diagonalizable);
    let mut l = [0usize; 7];
    let l0 = count(&|c| c.diagonalizable && c.shift_rank == 1);
    l[1] = count(&|c| c.diagonalizable && c.shift_rank == 0);
    l[0] = l0 + count(&|c| !c.diagonalizable && c.shift_rank == 1);
    l[2] = count(&|c| !c.diagonalizable && c.shift_rank == 2);
    consistent &= l[0] + l[1] + l[2] == classes.len();

    let v = variable_census(inst, bounds.t_bound.min(1), mode)?;
    let l6 = v.in_m0;
    let l5 = v.lf_diag;
    consistent &= v.in_m_only % 2 == 0 && v.lf_not_m >= l5 + l6 && (v.lf_not_m - l5 - l6) % 2 == 0;
    let l7 = v.in_m_only / 2;
    let l4 = v.lf_not_m.saturating_sub(l5 + l6) / 2;
    l[3] = l4;
    l[4] = l5;
    l[5] = l6;
    l[6] = l7;
    Ok(Fingerprint {
        n_lf: classes.len(),
        n_diag,
        n_nondiag: classes.len() - n_diag,
        rank0: count(&|c| c.claim3_rank == 0),
        rank1: count(&|c| c.claim3_rank == 1),
        rank2: count(&|c| c.claim3_rank == 2),
        classes,
        t_census: [l4, l5, l6, l7],
        l0,
        l,
        consistent,
    })
}
