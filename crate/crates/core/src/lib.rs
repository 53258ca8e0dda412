//! Finite-level certificates for fundamental groups of compactified
//! locally symmetric varieties.
//!
//! The fundamental group of a smooth compactification of `D/Γ` is a quotient
//! of `Π(Γ) = Γ/Υ`, where `Υ` is generated by the centres `U(F) ∩ Γ` of the
//! unipotent radicals of the boundary parabolics. This crate computes images
//! of `Π(Γ)` for congruence subgroups of `Sp(4)` by reducing modulo a working
//! level, and computes `π_1` of toric varieties from their fans.
//!
//! * [`exact_algebra`]: integer and modular matrices, symplectic forms, Smith
//!   normal form.
//! * [`symplectic_groups`]: congruence patterns, `SL(2)` embeddings,
//!   transvections, boundary generators, group orders.
//! * [`engine`]: enumeration of finite matrix groups (closure, normal
//!   closure, centre, Sylow subgroups, quotients).
//! * [`pipeline`]: `Π(Γ)` at finite level and the packaged verifications.
//! * [`toric`]: `π_1` of a toric variety from its fan.
//! * [`cli`]: JSON formats, report emission, and the command-line driver.

pub mod cli;
pub mod engine;
pub mod error;
pub mod exact_algebra;
pub mod pipeline;
pub mod symplectic_groups;
pub mod toric;

pub use error::{Error, Result};
