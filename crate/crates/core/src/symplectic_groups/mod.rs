//! Congruence subgroups of `Sp(Λ, Z)`, embeddings, transvections, boundary
//! generators and group orders.

mod boundary;
mod embed;
mod order;
mod pattern;
mod presets;

pub use boundary::{
    boundary_center_generators, boundary_center_generators_with, center_directions, BoundaryKind,
    BoundarySpec, GeneratorSet, DEFAULT_SCALING_BOUND,
};
pub use embed::{embed_sl2, primitive_transvection_i64, transvection, transvection_direction, transvection_i64};
pub use order::{factorize, prime_part, sp_group_order, sp_order_finite_field};
pub use pattern::{pattern_member, CongruencePattern, GAMMA0_13_LEVEL2, UPSILON_13_LEVEL2};
pub use presets::{elementary_generators, preset_generators};
pub use presets::small_directions;
