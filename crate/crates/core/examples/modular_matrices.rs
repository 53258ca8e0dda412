//! Arithmetic with integer and modular matrices.

use symplectic_pi1::exact_algebra::{reduce_mod, IntMatrix, PolarizedForm, Symplectic};

fn main() -> symplectic_pi1::Result<()> {
    let g = IntMatrix::from_i64(4, &[1, 0, 2, 0, 0, 1, 0, 6, 0, 0, 1, 0, 0, 0, 0, 1]);
    let form = PolarizedForm::one_p(3);
    println!("g = {g}");
    println!("symplectic for E = (1,3): {}", g.sp_check(&form)?);

    for n in [3, 4, 12] {
        let r = reduce_mod(&g, n)?;
        println!("mod {n:>2}: order {}", r.order(1000)?);
    }

    let h = reduce_mod(&IntMatrix::from_i64(2, &[2, 1, 1, 1]), 7)?;
    let h_inv = h.inverse()?;
    println!("[[2,1],[1,1]] mod 7 has inverse {h_inv} and order {}", h.order(1000)?);
    Ok(())
}
