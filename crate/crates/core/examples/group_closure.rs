//! Enumerate Sp(4, F_3) from the elementary generators.

use std::time::Instant;

use symplectic_pi1::engine::{center, closure, GroupContext, DEFAULT_CLOSURE_CAP};
use symplectic_pi1::symplectic_groups::{elementary_generators, sp_group_order};

fn main() -> symplectic_pi1::Result<()> {
    let ctx = GroupContext::standard(2, 3)?;
    let gens = ctx.reduce_all(&elementary_generators(1))?;
    let start = Instant::now();
    let g = closure(&ctx, &gens, DEFAULT_CLOSURE_CAP)?;
    println!("|<gens>| = {} in {:.2?}", g.len(), start.elapsed());
    println!("formula:   {}", sp_group_order(2, 3));
    let z = center(&g);
    println!("centre has {} elements:", z.len());
    for x in z.sorted_elements() {
        println!("{x}");
    }
    Ok(())
}
