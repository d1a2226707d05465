//! Generators, evaluation and tensor modules, Gauss coordinates.

mod gauss;
mod gens;
mod module;
mod recipe;

pub use gauss::{decompose, gauss_decompose, schur_top_block, GaussFactors};
pub use gens::{zero_mode_l, GlnGenerators, Sign};
pub use module::{
    check_entry_commutativity, check_rll, check_twist_relation, embedded_module, evaluation_module,
    singular_scan, tensor_module, twist_relation_holds, Module, ScanResult, ZeroModes, FULL_PROBE_DIM,
};
pub use recipe::{build_module, Recipe};
