//! Γ/Υ at finite level for the (1,3) level-2 group and for Sp(4, Z) mod 3.

use symplectic_pi1::exact_algebra::PolarizedForm;
use symplectic_pi1::pipeline::{level_two_13_spec, pi_quotient, Caps, GammaSpec};
use symplectic_pi1::symplectic_groups::{BoundarySpec, CongruencePattern};

fn main() -> symplectic_pi1::Result<()> {
    let caps = Caps::default();
    let full = GammaSpec::new(
        CongruencePattern::full(PolarizedForm::standard(2)),
        vec![BoundarySpec::line(vec![1, 0, 0, 0])],
        3,
    );
    let r = pi_quotient(&full, &caps)?;
    println!("Sp(4,Z) mod 3: |Γ| = {}, |Υ| = {}, quotient {}", r.gamma_image.len(), r.upsilon_image.len(), r.quotient.order);

    let r = pi_quotient(&level_two_13_spec(), &caps)?;
    println!(
        "(1,3) level 2 mod 12: |Γ| = {}, |Υ| = {}, quotient {} with invariants {:?}",
        r.gamma_image.len(),
        r.upsilon_image.len(),
        r.quotient.order,
        r.quotient.invariants
    );
    Ok(())
}
