//! Quotients by normal subgroups: Sp(4, F_3) / {±I} and SL(2, F_5) / {±I}.

use symplectic_pi1::engine::{center, closure, quotient_structure, GroupContext, DEFAULT_CLOSURE_CAP};
use symplectic_pi1::exact_algebra::ModMatrix;
use symplectic_pi1::symplectic_groups::elementary_generators;

fn main() -> symplectic_pi1::Result<()> {
    let sp = GroupContext::standard(2, 3)?;
    let g = closure(&sp, &sp.reduce_all(&elementary_generators(1))?, DEFAULT_CLOSURE_CAP)?;
    let q = quotient_structure(&g, &center(&g), 100_000)?;
    println!("Sp(4,3)/Z: order {}, abelian {}", q.order, q.abelian);

    let sl = GroupContext::standard(1, 5)?;
    let gens = [
        ModMatrix::from_i64(2, 5, &[1, 1, 0, 1]),
        ModMatrix::from_i64(2, 5, &[1, 0, 1, 1]),
    ];
    let g = closure(&sl, &gens, DEFAULT_CLOSURE_CAP)?;
    let q = quotient_structure(&g, &center(&g), 1000)?;
    println!("SL(2,5)/Z: order {}, abelian {}", q.order, q.abelian);

    // the cyclic quotient of a cyclic group
    let c = closure(&sl, &[ModMatrix::from_i64(2, 5, &[1, 1, 0, 1])], 100)?;
    let q = quotient_structure(&c, &symplectic_pi1::engine::ElementTable::trivial(&sl), 100)?;
    println!("<[[1,1],[0,1]]>: order {} invariants {:?}", q.order, q.invariants);
    Ok(())
}
