//! Sylow subgroups of Sp(4, F_3).

use symplectic_pi1::engine::{closure, sylow_subgroup, GroupContext, DEFAULT_CLOSURE_CAP, DEFAULT_SYLOW_BUDGET};
use symplectic_pi1::symplectic_groups::{elementary_generators, prime_part, sp_group_order};

fn main() -> symplectic_pi1::Result<()> {
    let ctx = GroupContext::standard(2, 3)?;
    let g = closure(&ctx, &ctx.reduce_all(&elementary_generators(1))?, DEFAULT_CLOSURE_CAP)?;
    let order = sp_group_order(2, 3);
    for q in [2, 3, 5] {
        let p = sylow_subgroup(&g, q, 7, DEFAULT_SYLOW_BUDGET)?;
        let gens = p.generators().map_or(0, <[_]>::len);
        println!("q = {q}: order {} (expected {}), {gens} generators", p.len(), prime_part(&order, q));
    }
    Ok(())
}
