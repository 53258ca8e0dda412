//! Enumeration of finite matrix groups over `Z/n`.
//!
//! All operations are single-threaded and deterministic: closures visit
//! elements in breadth-first order and every randomized search takes an
//! explicit seed.

mod closure;
mod context;
mod dihedral;
mod quotient;
mod random;
mod sylow;
mod table;

pub use closure::{center, closure, conjugate, extend, filter, is_normal, normal_closure, normality_witness};
pub use context::GroupContext;
pub use dihedral::{find_dihedral8, verify_dihedral8, Dihedral8, DEFAULT_DIHEDRAL_BUDGET};
pub use quotient::{
    abelian_invariants_from_orders, coset_space, quotient_structure, CosetSpace, QuotientReport,
    DEFAULT_QUOTIENT_CAP, EXPORTED_TABLE_LIMIT,
};
pub use random::{split_prime_part, ProductReplacement};
pub use sylow::{sylow_from_generators, sylow_subgroup, DEFAULT_SYLOW_BUDGET};
pub use table::ElementTable;

/// Default element cap for closures.
pub const DEFAULT_CLOSURE_CAP: usize = 20_000_000;
