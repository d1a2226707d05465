//! Admissible matrices, typed variable sets, q-symmetrization and coefficient series.

mod admissible;
mod series;
mod sym;
mod variables;

pub use admissible::{enumerate_admissible, AdmissibleMatrix};
pub(crate) use series::x_product;
pub use series::{
    coeff_calz, coeff_calz_factored, coeff_eta, coeff_phi, coeff_x, coeff_y, coeff_y_alt, coeff_z,
    pullback_weight,
};
pub use sym::{perm_weight, phi, q_symmetrize, q_symmetrize_renorm, Accumulate};
pub use variables::{permutations, Item, TypedVariables};
