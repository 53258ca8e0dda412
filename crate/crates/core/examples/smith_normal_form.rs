//! Smith normal form with its unimodular transforms.

use symplectic_pi1::exact_algebra::{smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_i64(3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    let snf = smith_normal_form(&a);
    println!("A = {a}");
    println!("D = {}", snf.d);
    let divisors: Vec<String> = snf.elementary_divisors().iter().map(ToString::to_string).collect();
    println!("elementary divisors: {}", divisors.join(", "));
    println!("U·A·V = D checks: {}", snf.verify(&a));
}
