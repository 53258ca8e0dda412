//! Exact linear algebra over `Z` and `Z/n`.

mod form;
mod int_matrix;
mod mod_matrix;
mod snf;

pub use form::{is_unipotent_int, PolarizedForm, Symplectic};
pub use int_matrix::IntMatrix;
pub use mod_matrix::{bytes_per_entry, check_modulus, is_prime, reduce_mod, ModMatrix, MAX_MODULUS};
pub use snf::{smith_normal_form, SnfResult};

pub(crate) use mod_matrix::{decode_entries, encode_entries, inv_mod, mul_into};

use crate::error::Result;

/// `(g - I)^dim == 0` for a matrix over `Z`.
pub fn is_unipotent(g: &IntMatrix) -> Result<bool> {
    is_unipotent_int(g)
}

/// Least `k >= 1` with `g^k = I`, failing past `cap`.
pub fn element_order(g: &ModMatrix, cap: u64) -> Result<u64> {
    g.order(cap)
}
