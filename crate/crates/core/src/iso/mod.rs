//! Isomorphisms between instances built from admissible group data.

mod character;
mod group;
pub(crate) mod tau;
mod theta;

pub use character::{extend_character, Character};

pub use group::{
    apply_g, assemble_f, conditions as g_conditions, f_positions, is_symplectic, psi_invariance_check, psi_matrix,
    random_f_params, random_g, random_symplectic, s_matrix, validate_f, validate_g, FLayout, FParams, GElement,
};
pub use tau::{build_tau, conditions as tau_conditions, TauMap};
pub use theta::{build_isomorphism, transported, check_necessary_invariants, verify_isomorphism, IsoCheck, IsoMap, IsoReport, VERIFY_CHECKS};
