//! `π_1` of a toric variety: the lattice `N` modulo the subgroup generated
//! by the lattice points of all cones of the fan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::{smith_normal_form, IntMatrix};

/// Bound on the number of parallelepiped points enumerated per cone.
pub const DEFAULT_PARALLELEPIPED_CAP: usize = 1_000_000;

/// Cones in `Z^rank`, each given by ray generators. The zero cone is `[]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub rank: usize,
    pub cones: Vec<Vec<Vec<i64>>>,
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let fan = Fan { rank, cones };
        fan.validate()?;
        Ok(fan)
    }

    pub fn validate(&self) -> Result<()> {
        for cone in &self.cones {
            check_cone(cone, self.rank)?;
        }
        Ok(())
    }
}

fn check_cone(cone: &[Vec<i64>], rank: usize) -> Result<()> {
    for v in cone {
        if v.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: v.len(),
            });
        }
        if v.iter().all(|&x| x == 0) {
            return Err(Error::Input("cone generators must be nonzero".into()));
        }
    }
    Ok(())
}

/// Abelian group `Z^free_rank ⊕ ⊕ Z/t_i` with `t_1 | t_2 | ...`, all `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> u64 {
        self.torsion.iter().product()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" x "))
    }
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    v.iter().map(|&x| x / g).collect()
}

fn columns(vectors: &[Vec<i64>], rank: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(rank, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            a.set(i, j, x);
        }
    }
    a
}

fn column_rank(vectors: &[Vec<i64>], rank: usize) -> usize {
    if vectors.is_empty() {
        0
    } else {
        smith_normal_form(&columns(vectors, rank)).rank()
    }
}

/// Greedy maximal linearly independent subset.
fn independent_subset(vectors: &[Vec<i64>], rank: usize) -> Vec<Vec<i64>> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for v in vectors {
        basis.push(v.clone());
        if column_rank(&basis, rank) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// Lattice points of `{ Σ t_i v_i : 0 <= t_i < 1 }` for independent `v_i`.
///
/// With `U A V = D`, a lattice point of the span is `x = A t` with
/// `V^{-1} t = (z_i / d_i)`, so the points are indexed by `0 <= z_i < d_i`.
pub fn parallelepiped_points(basis: &[Vec<i64>], rank: usize, cap: usize) -> Result<Vec<Vec<i64>>> {
    check_cone(basis, rank)?;
    let k = basis.len();
    if k == 0 {
        return Ok(vec![vec![0; rank]]);
    }
    let a = columns(basis, rank);
    let snf = smith_normal_form(&a);
    let d: Vec<BigInt> = (0..k).map(|i| snf.d.get(i, i).clone()).collect();
    if d.iter().any(Zero::is_zero) {
        return Err(Error::Input("parallelepiped generators are linearly dependent".into()));
    }
    let volume = d.iter().fold(BigInt::one(), |acc, x| acc * x);
    if volume > BigInt::from(cap) {
        return Err(Error::EnumerationCap {
            points: volume.to_string(),
            cap,
        });
    }
    let big_d = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let mut z = vec![BigInt::zero(); k];
    let mut out = Vec::new();
    loop {
        // t = V s with s_i = z_i / d_i, scaled by big_d
        let s: Vec<BigInt> = (0..k).map(|i| &z[i] * (&big_d / &d[i])).collect();
        let mut x = vec![BigInt::zero(); rank];
        for j in 0..k {
            let tj: BigInt = (0..k).map(|i| snf.v.get(j, i) * &s[i]).sum();
            let frac = tj.mod_floor(&big_d);
            for (r, xr) in x.iter_mut().enumerate() {
                *xr += &frac * a.get(r, j);
            }
        }
        let point = x
            .iter()
            .map(|c| {
                debug_assert!((c % &big_d).is_zero());
                (c / &big_d).to_i64()
            })
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| Error::Input("parallelepiped point exceeds 64-bit range".into()))?;
        out.push(point);
        // odometer over 0 <= z_i < d_i
        let mut i = 0;
        loop {
            if i == k {
                out.sort();
                return Ok(out);
            }
            z[i] += 1;
            if z[i] < d[i] {
                break;
            }
            z[i] = BigInt::zero();
            i += 1;
        }
    }
}

/// Finite generating set of the subgroup spanned by all lattice points of
/// the real cone: primitive ray generators plus the lattice points of the
/// half-open parallelepiped on a maximal independent subset.
pub fn cone_lattice_generators(cone: &[Vec<i64>], rank: usize) -> Result<Vec<Vec<i64>>> {
    cone_lattice_generators_with_cap(cone, rank, DEFAULT_PARALLELEPIPED_CAP)
}

pub fn cone_lattice_generators_with_cap(cone: &[Vec<i64>], rank: usize, cap: usize) -> Result<Vec<Vec<i64>>> {
    check_cone(cone, rank)?;
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for v in cone {
        let p = primitive(v);
        if !gens.contains(&p) {
            gens.push(p);
        }
    }
    let basis = independent_subset(&gens, rank);
    for p in parallelepiped_points(&basis, rank, cap)? {
        if p.iter().any(|&x| x != 0) && !gens.contains(&p) {
            gens.push(p);
        }
    }
    Ok(gens)
}

/// Invariants of `Z^r / ⟨N ∩ σ : σ in the fan⟩`.
pub fn toric_pi1(fan: &Fan) -> Result<AbelianGroup> {
    fan.validate()?;
    let mut all = Vec::new();
    for cone in &fan.cones {
        all.extend(cone_lattice_generators(cone, fan.rank)?);
    }
    lattice_quotient(&all, fan.rank)
}

/// `Z^rank` modulo the span of `vectors`.
pub fn lattice_quotient(vectors: &[Vec<i64>], rank: usize) -> Result<AbelianGroup> {
    if vectors.is_empty() {
        return Ok(AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        });
    }
    let divisors = smith_normal_form(&columns(vectors, rank)).elementary_divisors();
    let torsion = divisors
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| d.to_u64().ok_or_else(|| Error::Input(format!("torsion coefficient {d} exceeds 64 bits"))))
        .collect::<Result<Vec<u64>>>()?;
    Ok(AbelianGroup {
        free_rank: rank - divisors.len(),
        torsion,
    })
}
