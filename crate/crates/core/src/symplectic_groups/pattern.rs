use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact_algebra::{IntMatrix, ModMatrix, PolarizedForm, Symplectic};

/// Entrywise divisibility constraints on `γ - I` inside `Sp(Λ, Z)`.
///
/// A modulus of 0 or 1 means the entry is unconstrained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePattern {
    dim: usize,
    moduli: Vec<u64>,
    form: PolarizedForm,
}

/// Level-2 pattern for the `(1,3)` polarization: the ambient group.
pub const GAMMA0_13_LEVEL2: [[u64; 4]; 4] = [[2, 2, 2, 2], [6, 2, 6, 2], [2, 2, 2, 2], [6, 2, 6, 2]];

/// Level-2 pattern for the `(1,3)` polarization: the unipotent-generated subgroup.
pub const UPSILON_13_LEVEL2: [[u64; 4]; 4] =
    [[2, 4, 2, 2], [12, 2, 6, 2], [2, 2, 2, 4], [6, 2, 12, 2]];

impl CongruencePattern {
    pub fn new(form: PolarizedForm, moduli: Vec<Vec<u64>>) -> Result<Self> {
        let dim = form.dim();
        if moduli.len() != dim || moduli.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: moduli.len(),
            });
        }
        Ok(CongruencePattern {
            dim,
            moduli: moduli.into_iter().flatten().collect(),
            form,
        })
    }

    /// Principal congruence subgroup `Γ(l)` of `Sp(Λ, Z)`.
    pub fn principal(form: PolarizedForm, level: u64) -> Self {
        let dim = form.dim();
        CongruencePattern {
            dim,
            moduli: vec![level; dim * dim],
            form,
        }
    }

    /// `Sp(Λ, Z)` itself.
    pub fn full(form: PolarizedForm) -> Self {
        Self::principal(form, 1)
    }

    pub fn gamma0_13_level2() -> Self {
        Self::from_array(PolarizedForm::one_p(3), GAMMA0_13_LEVEL2)
    }

    pub fn upsilon_13_level2() -> Self {
        Self::from_array(PolarizedForm::one_p(3), UPSILON_13_LEVEL2)
    }

    fn from_array(form: PolarizedForm, a: [[u64; 4]; 4]) -> Self {
        CongruencePattern {
            dim: 4,
            moduli: a.iter().flatten().copied().collect(),
            form,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form(&self) -> &PolarizedForm {
        &self.form
    }

    pub fn modulus(&self, i: usize, j: usize) -> u64 {
        self.moduli[i * self.dim + j]
    }

    pub fn moduli_rows(&self) -> Vec<Vec<u64>> {
        self.moduli.chunks(self.dim).map(<[u64]>::to_vec).collect()
    }

    /// Constant pattern value, if every entry carries the same modulus.
    pub fn principal_level(&self) -> Option<u64> {
        let first = normalize(self.moduli[0]);
        self.moduli
            .iter()
            .all(|&m| normalize(m) == first)
            .then_some(first)
    }

    /// Least common multiple of all constraint moduli (1 if unconstrained).
    pub fn level(&self) -> u64 {
        self.moduli
            .iter()
            .fold(1u64, |acc, &m| acc.lcm(&normalize(m)))
    }

    /// All divisibility constraints hold (no symplectic test).
    pub fn divisibility_holds(&self, g: &IntMatrix) -> bool {
        let d = g.minus_identity();
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let m = normalize(self.modulus(i, j));
                m == 1 || (d.get(i, j) % BigInt::from(m)).is_zero()
            })
        })
    }

    pub fn is_member(&self, g: &IntMatrix) -> Result<bool> {
        if !g.is_square() || g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.rows(),
            });
        }
        Ok(g.sp_check(&self.form)? && self.divisibility_holds(g))
    }

    /// Membership of a residue class; the modulus must be a multiple of
    /// every constraint modulus so the answer is well defined.
    pub fn is_member_mod(&self, g: &ModMatrix) -> Result<bool> {
        let n = u64::from(g.modulus());
        if n % self.level() != 0 {
            return Err(Error::Precondition(format!(
                "working modulus {n} is not a multiple of pattern level {}",
                self.level()
            )));
        }
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.dim(),
            });
        }
        if !g.sp_check(&self.form)? {
            return Ok(false);
        }
        Ok(self.divisibility_holds_mod(g))
    }

    pub(crate) fn divisibility_holds_mod(&self, g: &ModMatrix) -> bool {
        let n = u64::from(g.modulus());
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let m = normalize(self.modulus(i, j));
                let diag = u64::from(i == j);
                let e = (u64::from(g.get(i, j)) + n - diag) % n;
                e % m == 0
            })
        })
    }
}

fn normalize(m: u64) -> u64 {
    if m == 0 {
        1
    } else {
        m
    }
}

/// `pattern_member(g, pat)`.
pub fn pattern_member(g: &IntMatrix, pat: &CongruencePattern) -> Result<bool> {
    pat.is_member(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic_groups::embed_sl2;

    #[test]
    fn identity_is_member_of_every_pattern() {
        for p in [
            CongruencePattern::gamma0_13_level2(),
            CongruencePattern::upsilon_13_level2(),
            CongruencePattern::principal(PolarizedForm::standard(2), 7),
        ] {
            assert!(p.is_member(&IntMatrix::identity(4)).unwrap());
        }
    }

    #[test]
    fn odd_translation_is_not_in_level_two_pattern() {
        // (2,4) entry 3 is odd, the pattern demands an even entry there.
        let m0 = IntMatrix::elementary(4, 1, 3, 3);
        let pat = CongruencePattern::gamma0_13_level2();
        assert!(m0.sp_check(pat.form()).unwrap());
        assert!(!pat.is_member(&m0).unwrap());
    }

    #[test]
    fn first_slot_shear_is_member() {
        let pat = CongruencePattern::gamma0_13_level2();
        let m = embed_sl2(&IntMatrix::from_i64(2, &[1, 2, 0, 1]), 1, pat.form()).unwrap();
        assert!(pat.is_member(&m).unwrap());
        assert!(CongruencePattern::upsilon_13_level2().is_member(&m).unwrap());
    }

    #[test]
    fn composite_level_and_principal_detection() {
        assert_eq!(CongruencePattern::gamma0_13_level2().level(), 6);
        assert_eq!(CongruencePattern::upsilon_13_level2().level(), 12);
        let p = CongruencePattern::principal(PolarizedForm::standard(2), 4);
        assert_eq!(p.principal_level(), Some(4));
        assert_eq!(CongruencePattern::gamma0_13_level2().principal_level(), None);
        assert_eq!(CongruencePattern::full(PolarizedForm::standard(2)).level(), 1);
    }

    #[test]
    fn modular_membership_requires_compatible_modulus() {
        let pat = CongruencePattern::upsilon_13_level2();
        let g = ModMatrix::identity(4, 6);
        assert!(pat.is_member_mod(&g).is_err());
        assert!(pat.is_member_mod(&ModMatrix::identity(4, 12)).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let pat = CongruencePattern::gamma0_13_level2();
        assert!(pat.is_member(&IntMatrix::identity(2)).is_err());
    }
}
