//! `Π(Γ)` at finite level and the packaged verifications.

mod extra_element;
mod finite_quotient;
mod gamma;
mod level_two_13;
mod report;

pub use extra_element::{extra_element, verify_thm33_witness};
pub use finite_quotient::{verify_thm31, Thm31Options, DEFAULT_UNIPOTENT_SAMPLES};
pub use gamma::{pi_quotient, GammaSpec, PiQuotient, BOUND_NOTE};
pub use level_two_13::{
    level_two_13_spec, proof_boundaries, torsion_elements, verify_thm34, ExternalMatrices, QuotientMap,
    DEFAULT_PATTERN_SAMPLES, QUOTIENT_MAPS,
};
pub use report::{Caps, Status, Step, VerificationReport};
