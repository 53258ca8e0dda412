//! π₁ of toric varieties from their fans.

use symplectic_pi1::toric::{cone_lattice_generators, toric_pi1, Fan};

fn main() -> symplectic_pi1::Result<()> {
    let skew = vec![vec![1, 0], vec![1, 2]];
    println!("lattice generators of cone((1,0),(1,2)): {:?}", cone_lattice_generators(&skew, 2)?);

    let fans = [
        ("torus (zero cone)", Fan::new(2, vec![vec![]])?),
        ("one ray", Fan::new(2, vec![vec![vec![1, 1]]])?),
        ("full-dimensional cone", Fan::new(2, vec![skew.clone()])?),
        ("two rank-3 rays", Fan::new(3, vec![vec![vec![2, 0, 0]], vec![vec![0, 1, 1]]])?),
    ];
    for (name, fan) in &fans {
        println!("{name:<24} {}", toric_pi1(fan)?);
    }
    Ok(())
}
