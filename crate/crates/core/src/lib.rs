//! Exact arithmetic for normalized central simple Poisson algebras
//! `P(ℓ⃗, Γ, 𝒥, σ, φ)`.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod intlin;
pub mod iso;
pub mod lattice;
pub mod notation;
pub mod oracle;
pub mod poly;
pub mod qlin;
pub mod random;
pub mod scalar;
pub mod shape;
pub mod sparse;
pub mod structure;

pub use algebra::{Element, Instance, Monomial};
pub use error::{Error, Result};
pub use scalar::{Q, Z};
