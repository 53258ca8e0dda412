//! Orders of Sp(2g, Z/n) from the closed formula.

use symplectic_pi1::symplectic_groups::{factorize, prime_part, sp_group_order};

fn main() {
    println!("{:>4} {:>22}  factorisation", "n", "|Sp(4, Z/n)|");
    for n in [2u64, 3, 4, 5, 6, 7, 12] {
        let order = sp_group_order(2, n);
        let small = u64::try_from(&order).ok();
        let fact = small.map_or_else(String::new, |o| {
            factorize(o).iter().map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(" ")
        });
        println!("{n:>4} {order:>22}  {fact}");
    }
    let o = sp_group_order(2, 5);
    println!("2-part of |Sp(4, F_5)| = {}", prime_part(&o, 2));
    println!("|SL(2, F_7)| = {}", sp_group_order(1, 7));
}
