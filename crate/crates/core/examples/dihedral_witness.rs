//! A dihedral subgroup of order 8 in Sp(4, F_7), found without enumerating the group.

use symplectic_pi1::engine::{find_dihedral8, verify_dihedral8, GroupContext, DEFAULT_DIHEDRAL_BUDGET};
use symplectic_pi1::symplectic_groups::elementary_generators;

fn main() -> symplectic_pi1::Result<()> {
    let ctx = GroupContext::standard(2, 7)?;
    let gens = ctx.reduce_all(&elementary_generators(5))?;
    let d = find_dihedral8(&ctx, &gens, 42, DEFAULT_DIHEDRAL_BUDGET)?;
    println!("found after {} draws", d.attempts);
    println!("a = {} (order {})", d.a, d.a.order(100)?);
    println!("b = {} (order {})", d.b, d.b.order(100)?);
    println!("table re-verified: {}", verify_dihedral8(&d.a, &d.b).is_some());
    Ok(())
}
