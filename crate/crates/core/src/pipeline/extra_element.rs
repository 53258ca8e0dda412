use serde_json::json;

use super::report::{Caps, Step, VerificationReport};
use crate::cli::formats::int_json;
use crate::error::{Error, Result};
use crate::exact_algebra::{is_prime, is_unipotent, IntMatrix, PolarizedForm, Symplectic};
use crate::symplectic_groups::{embed_sl2, CongruencePattern};

/// The displayed element `M0'`: identity with `p` at position (2,4).
pub fn extra_element(p: u64) -> IntMatrix {
    IntMatrix::elementary(4, 1, 3, p as i64)
}

/// Matrix-checkable part of the `(1,p)` witness: `M0' = j2([[1,1],[0,1]])`
/// is a unipotent element of `Sp(Λ, Z)` outside `Γ(p²)`.
pub fn verify_thm33_witness(p: u64) -> Result<VerificationReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    let mut report = VerificationReport::new(
        "thm33",
        &format!("the extra element M0' for polarisation type (1,{p})"),
        0,
        &Caps::default(),
    );
    report.param("p", p);
    report
        .notes
        .push("Only the matrix identities are checked; the normal-subgroup argument behind simple connectivity is not.".into());
    let form = PolarizedForm::one_p(p as i64);
    let m = extra_element(p);
    let j2 = embed_sl2(&IntMatrix::from_i64(2, &[1, 1, 0, 1]), 2, &form)?;
    report.push(
        Step::new(1, "M0' equals j2([[1,1],[0,1]]) for E = diag(1,p)", "M_0' = j_2(1 1; 0 1)")
            .with("M0_prime", int_json(&m))
            .with("j2_image", int_json(&j2))
            .pass_if(m == j2),
    );
    let unipotent = is_unipotent(&m)?;
    let nilpotency_ok = m.minus_identity().checked_mul(&m.minus_identity())?.is_zero();
    report.push(
        Step::new(2, "M0' is unipotent", "the extra element")
            .with("unipotent", unipotent)
            .with("square_of_nilpotent_part_zero", nilpotency_ok)
            .pass_if(unipotent && nilpotency_ok),
    );
    let symplectic = m.sp_check(&form)?;
    report.push(
        Step::new(3, "M0' preserves Λ = [[0,E],[-E,0]]", "polarisation of type (1,p)")
            .with("symplectic", symplectic)
            .with("E", json!([1, p]))
            .pass_if(symplectic),
    );
    let in_level_p = CongruencePattern::principal(form.clone(), p).is_member(&m)?;
    let in_level_p2 = CongruencePattern::principal(form, p * p).is_member(&m)?;
    report.push(
        Step::new(
            4,
            "M0' lies outside Γ(p²), so it is not accounted for by Γ(p²)",
            "not only M_0 and Γ(p^2) but also the extra element",
        )
        .with("in_gamma_p", in_level_p)
        .with("in_gamma_p2", in_level_p2)
        .pass_if(!in_level_p2),
    );
    Ok(report)
}
