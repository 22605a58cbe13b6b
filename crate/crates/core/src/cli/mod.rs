//! Batch front end shared by the `palg` binary and its tests.

mod commands;
mod config;
mod isodata;

pub use commands::{
    axioms, bracket, exit_code, fingerprint, iso_build, iso_verify, validate, Common, Format, Outcome, EXIT_FAIL,
    EXIT_MALFORMED, EXIT_PASS,
};
pub use config::{load_instance, InstanceConfig, RawInstance, ShapeConfig};
pub use isodata::{ChiOverride, IsoData};
