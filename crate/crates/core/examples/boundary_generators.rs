//! Generators of U(F) ∩ Γ for isotropic lines and planes.

use symplectic_pi1::exact_algebra::PolarizedForm;
use symplectic_pi1::symplectic_groups::{boundary_center_generators, BoundarySpec, CongruencePattern};

fn main() -> symplectic_pi1::Result<()> {
    let cases = [
        ("Γ(3)", CongruencePattern::principal(PolarizedForm::standard(2), 3)),
        ("Γ̃⁰ for (1,3)", CongruencePattern::gamma0_13_level2()),
    ];
    let boundaries = [
        BoundarySpec::line(vec![1, 0, 0, 0]),
        BoundarySpec::line(vec![0, 1, 0, 0]),
        BoundarySpec::plane(vec![0, 0, 1, 0], vec![0, 0, 0, 1]),
    ];
    for (name, pat) in &cases {
        println!("== {name}");
        for b in &boundaries {
            let set = boundary_center_generators(b, pat)?;
            println!("{} ({} generators)", set.label, set.len());
            for g in &set.elements {
                println!("{}", g.minus_identity());
            }
        }
    }
    Ok(())
}
