use super::boundary::{GeneratorSet, DEFAULT_SCALING_BOUND};
use super::embed::primitive_transvection_i64;
use super::pattern::CongruencePattern;
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;

/// Built-in generating data for a genus-2 pattern: for every direction
/// `v ∈ {-1,0,1}^4` (up to sign) the least positive power inside the
/// pattern of the primitive integral transvection along `v`, plus the torsion elements `-I` and
/// `diag(1,-1,1,-1)` when they are members.
///
/// The set generates a subgroup of the pattern group; it is used for
/// sampling and as a closure seed at finite level.
pub fn preset_generators(pat: &CongruencePattern) -> Result<GeneratorSet> {
    let form = pat.form().clone();
    if form.genus() != 2 {
        return Err(Error::MissingGenerators);
    }
    let mut elems: Vec<IntMatrix> = Vec::new();
    for v in small_directions(4) {
        for c in 1..=DEFAULT_SCALING_BOUND as i64 {
            let t = primitive_transvection_i64(&v, c, &form)?;
            if pat.is_member(&t)? {
                if !elems.contains(&t) {
                    elems.push(t);
                }
                break;
            }
        }
    }
    for diag in [[-1, -1, -1, -1], [1, -1, 1, -1], [-1, 1, -1, 1]] {
        let m = IntMatrix::diagonal(&diag);
        if pat.is_member(&m)? {
            elems.push(m);
        }
    }
    if elems.is_empty() {
        return Err(Error::MissingGenerators);
    }
    GeneratorSet::new("preset", elems, form)
}

/// Nilpotent directions `X` with `I + t·X ∈ Sp(4, Z)` for the standard
/// form, one-based `(row, col, sign)` entries.
const ELEMENTARY_DIRECTIONS: [&[(usize, usize, i64)]; 8] = [
    &[(1, 3, 1)],
    &[(2, 4, 1)],
    &[(1, 4, 1), (2, 3, 1)],
    &[(3, 1, 1)],
    &[(4, 2, 1)],
    &[(4, 1, 1), (3, 2, 1)],
    &[(1, 2, 1), (4, 3, -1)],
    &[(2, 1, 1), (3, 4, -1)],
];

/// The eight elementary elements `I + l·X` of `Sp(4, Z)` (standard form);
/// for `l = 1` they generate `Sp(4, Z)`, in general they lie in `Γ(l)`.
pub fn elementary_generators(l: i64) -> Vec<IntMatrix> {
    ELEMENTARY_DIRECTIONS
        .iter()
        .map(|dir| {
            let mut m = IntMatrix::identity(4);
            for &(i, j, s) in dir.iter() {
                m.set(i - 1, j - 1, s * l);
            }
            m
        })
        .collect()
}

/// Nonzero vectors in `{-1,0,1}^d` whose first nonzero entry is `1`.
pub fn small_directions(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for k in 0..3usize.pow(d as u32) {
        let mut v = Vec::with_capacity(d);
        let mut r = k;
        for _ in 0..d {
            v.push((r % 3) as i64 - 1);
            r /= 3;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{PolarizedForm, Symplectic};

    #[test]
    fn elementary_generators_are_symplectic() {
        let f = PolarizedForm::standard(2);
        for l in [1, 4, 5] {
            let gens = elementary_generators(l);
            assert_eq!(gens.len(), 8);
            let pat = CongruencePattern::principal(f.clone(), l as u64);
            for g in &gens {
                assert!(g.sp_check(&f).unwrap());
                assert!(pat.is_member(g).unwrap());
            }
        }
    }

    #[test]
    fn directions_count() {
        assert_eq!(small_directions(4).len(), 40);
    }

    #[test]
    fn presets_are_members() {
        for pat in [
            CongruencePattern::gamma0_13_level2(),
            CongruencePattern::upsilon_13_level2(),
            CongruencePattern::principal(PolarizedForm::standard(2), 4),
        ] {
            let gens = preset_generators(&pat).unwrap();
            assert!(!gens.is_empty());
            for g in &gens.elements {
                assert!(pat.is_member(g).unwrap());
                assert!(g.sp_check(pat.form()).unwrap());
            }
        }
    }

    #[test]
    fn torsion_elements_follow_pattern() {
        let pat = CongruencePattern::gamma0_13_level2();
        let gens = preset_generators(&pat).unwrap();
        assert!(gens.elements.contains(&IntMatrix::diagonal(&[-1, -1, -1, -1])));
        assert!(gens.elements.contains(&IntMatrix::diagonal(&[1, -1, 1, -1])));
        let principal = CongruencePattern::principal(PolarizedForm::standard(2), 4);
        let gens = preset_generators(&principal).unwrap();
        assert!(!gens.elements.contains(&IntMatrix::diagonal(&[-1, -1, -1, -1])));
        assert_eq!(gens.len(), 40);
    }

    #[test]
    fn higher_genus_has_no_preset() {
        let pat = CongruencePattern::full(PolarizedForm::standard(3));
        assert_eq!(preset_generators(&pat).unwrap_err(), Error::MissingGenerators);
    }
}
