//! Lie-structure diagnostics of an instance.

mod axioms;
mod center;
mod derivation;
mod fingerprint;
mod normalizer;

pub use axioms::{check_axioms, check_axioms_with, AxiomCheck, AxiomReport, BracketFn, CHECK_NAMES};
pub use center::{algebra_generators, center_slice, grade_box, t_exponents, CenterSlice};
pub use derivation::{
    ad_diagonalizable, ad_locally_finite_on_a0, ad_vanishes_on_a0, block_diagonalizable, diagonalizable_on_blocks,
    sample_grades, Component, HomogeneousView,
};
pub use normalizer::{
    claim3_rank, closed, in_m0_normalizer, is_centralizer_a0, is_normalizer_a0, m_sets_membership,
    n_slice_sample, nilpotent_part_sample, shift_rank, sigma_kills_n, Claim3, MSets,
};
pub use fingerprint::{fingerprint, locally_finite_classes, ClassSignature, Fingerprint, FingerprintBounds};
