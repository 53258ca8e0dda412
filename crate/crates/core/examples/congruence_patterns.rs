//! Pattern subgroups, SL(2) block embeddings and transvections.

use symplectic_pi1::exact_algebra::{IntMatrix, PolarizedForm};
use symplectic_pi1::symplectic_groups::{embed_sl2, transvection_i64, CongruencePattern};

fn main() -> symplectic_pi1::Result<()> {
    let gamma0 = CongruencePattern::gamma0_13_level2();
    let upsilon = CongruencePattern::upsilon_13_level2();
    let form = PolarizedForm::one_p(3);

    let shear = embed_sl2(&IntMatrix::from_i64(2, &[1, 2, 0, 1]), 1, &form)?;
    let lower = embed_sl2(&IntMatrix::from_i64(2, &[1, 0, -6, 1]), 2, &form)?;
    for (name, g) in [("j1([[1,2],[0,1]])", &shear), ("j2([[1,0],[-6,1]])", &lower)] {
        println!("{name}: in Γ̃⁰ {}, in Υ̃ {}", gamma0.is_member(g)?, upsilon.is_member(g)?);
    }

    // x -> x + c<v,x>v for v = e1 + e2
    let t = transvection_i64(&[1, 1, 0, 0], 2, &form)?;
    println!("T(e1+e2, 2) = {t}, in Γ̃⁰: {}", gamma0.is_member(&t)?);
    println!("pattern levels: Γ̃⁰ {}, Υ̃ {}", gamma0.level(), upsilon.level());

    let principal = CongruencePattern::principal(PolarizedForm::standard(2), 4);
    println!("I + 4 E13 in Γ(4): {}", principal.is_member(&IntMatrix::elementary(4, 0, 2, 4))?);
    Ok(())
}
