use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::int_matrix::IntMatrix;
use super::mod_matrix::{inv_mod, ModMatrix};
use crate::error::{Error, Result};

/// Alternating form `Λ = [[0, E], [-E, 0]]` for a diagonal polarization type
/// `E = diag(e_1, ..., e_g)`. `E = I` gives the standard form `J`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizedForm {
    #[serde(rename = "E")]
    e: Vec<i64>,
}

impl PolarizedForm {
    pub fn new(e: Vec<i64>) -> Result<Self> {
        if e.is_empty() {
            return Err(Error::Input("polarization type must be nonempty".into()));
        }
        if e.iter().any(|&x| x == 0) {
            return Err(Error::Input("polarization entries must be nonzero".into()));
        }
        Ok(PolarizedForm { e })
    }

    pub fn standard(genus: usize) -> Self {
        PolarizedForm { e: vec![1; genus] }
    }

    /// The `(1, p)` polarization `E = diag(1, p)`.
    pub fn one_p(p: i64) -> Self {
        PolarizedForm { e: vec![1, p] }
    }

    pub fn genus(&self) -> usize {
        self.e.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.e.len()
    }

    pub fn polarization(&self) -> &[i64] {
        &self.e
    }

    pub fn is_unimodular(&self) -> bool {
        self.e.iter().all(|&x| x.abs() == 1)
    }

    pub fn gram(&self) -> IntMatrix {
        let g = self.genus();
        let d = self.dim();
        let mut m = IntMatrix::zeros(d, d);
        for (i, &e) in self.e.iter().enumerate() {
            m.set(i, g + i, e);
            m.set(g + i, i, -e);
        }
        m
    }

    pub fn gram_mod(&self, modulus: u32) -> ModMatrix {
        let g = self.genus();
        let d = self.dim();
        let mut flat = vec![0i64; d * d];
        for (i, &e) in self.e.iter().enumerate() {
            flat[i * d + g + i] = e;
            flat[(g + i) * d + i] = -e;
        }
        ModMatrix::from_i64(d, modulus, &flat)
    }

    /// The pairing `x^T Λ y`.
    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let g = self.genus();
        let mut acc = BigInt::zero();
        for (i, &e) in self.e.iter().enumerate() {
            acc += (&x[i] * &y[g + i] - &x[g + i] * &y[i]) * e;
        }
        acc
    }

    /// The row vector `v^T Λ`, so that `<v, x> = dual_vector(v) · x`.
    pub fn dual_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        let g = self.genus();
        let mut out = vec![BigInt::zero(); self.dim()];
        for (i, &e) in self.e.iter().enumerate() {
            out[i] = -(&v[g + i] * e);
            out[g + i] = &v[i] * e;
        }
        out
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: dim,
            })
        }
    }
}

/// Membership in the symplectic group of a polarized form, and inversion
/// inside it.
pub trait Symplectic: Sized {
    /// `g^T Λ g == Λ` (exactly, or modulo the matrix modulus).
    fn sp_check(&self, form: &PolarizedForm) -> Result<bool>;

    fn sp_inverse(&self, form: &PolarizedForm) -> Result<Self>;
}

impl Symplectic for IntMatrix {
    fn sp_check(&self, form: &PolarizedForm) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows(),
                found: self.cols(),
            });
        }
        form.check_dim(self.dim())?;
        let lam = form.gram();
        let lhs = &(&self.transpose() * &lam) * self;
        Ok(lhs == lam)
    }

    fn sp_inverse(&self, form: &PolarizedForm) -> Result<Self> {
        if !self.sp_check(form)? {
            return Err(Error::NotSymplectic);
        }
        if form.is_unimodular() {
            Ok(form_route_inverse_int(self, form))
        } else {
            // Symplectic matrices have determinant 1, so the adjugate is the inverse.
            Ok(self.adjugate())
        }
    }
}

/// `Λ^{-1} g^T Λ` for a unimodular polarization.
fn form_route_inverse_int(g: &IntMatrix, form: &PolarizedForm) -> IntMatrix {
    let lam = form.gram();
    let x = &g.transpose() * &lam;
    let h = form.genus();
    let d = form.dim();
    let mut out = IntMatrix::zeros(d, d);
    for (i, &e) in form.polarization().iter().enumerate() {
        // Λ^{-1} = [[0, -E^{-1}], [E^{-1}, 0]]; here e = ±1 so e^{-1} = e.
        for j in 0..d {
            out.set(i, j, -(x.get(h + i, j) * e));
            out.set(h + i, j, x.get(i, j) * e);
        }
    }
    out
}

impl Symplectic for ModMatrix {
    fn sp_check(&self, form: &PolarizedForm) -> Result<bool> {
        form.check_dim(self.dim())?;
        let lam = form.gram_mod(self.modulus());
        Ok(self.transpose().mul(&lam).mul(self) == lam)
    }

    fn sp_inverse(&self, form: &PolarizedForm) -> Result<Self> {
        if !self.sp_check(form)? {
            return Err(Error::NotSymplectic);
        }
        let n = self.modulus();
        let inverses: Option<Vec<u64>> = form
            .polarization()
            .iter()
            .map(|&e| inv_mod(e.rem_euclid(i64::from(n)) as u64, u64::from(n)))
            .collect();
        match inverses {
            Some(einv) => {
                let lam = form.gram_mod(n);
                let x = self.transpose().mul(&lam);
                let h = form.genus();
                let d = form.dim();
                let nn = u64::from(n);
                let mut flat = vec![0i64; d * d];
                for (i, &ei) in einv.iter().enumerate() {
                    for j in 0..d {
                        let top = (nn - (u64::from(x.get(h + i, j)) * ei) % nn) % nn;
                        let bottom = (u64::from(x.get(i, j)) * ei) % nn;
                        flat[i * d + j] = top as i64;
                        flat[(h + i) * d + j] = bottom as i64;
                    }
                }
                Ok(ModMatrix::from_i64(d, n, &flat))
            }
            None => self.inverse(),
        }
    }
}

/// `(g - I)^dim == 0` over the integers.
pub fn is_unipotent_int(g: &IntMatrix) -> Result<bool> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: g.cols(),
        });
    }
    Ok(g.minus_identity().pow(g.dim() as u64).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m0_prime(p: i64) -> IntMatrix {
        IntMatrix::elementary(4, 1, 3, p)
    }

    #[test]
    fn identity_is_symplectic_for_any_form() {
        for e in [vec![1, 1], vec![1, 3], vec![2, 6]] {
            let f = PolarizedForm::new(e).unwrap();
            assert!(IntMatrix::identity(4).sp_check(&f).unwrap());
            assert!(ModMatrix::identity(4, 7).sp_check(&f).unwrap());
        }
    }

    #[test]
    fn extra_element_is_symplectic() {
        let f = PolarizedForm::one_p(5);
        assert!(m0_prime(5).sp_check(&f).unwrap());
    }

    #[test]
    fn upper_left_shear_is_not_symplectic() {
        // g = I + E_12: <g e2, g e3> = Λ_13 + Λ_23 = 1 while Λ_23 = 0.
        let f = PolarizedForm::one_p(3);
        let g = IntMatrix::elementary(4, 0, 1, 1);
        assert!(!g.sp_check(&f).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let f = PolarizedForm::standard(2);
        assert!(matches!(
            IntMatrix::identity(2).sp_check(&f),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_of_extra_element() {
        let f = PolarizedForm::one_p(5);
        let inv = m0_prime(5).sp_inverse(&f).unwrap();
        assert_eq!(inv, IntMatrix::elementary(4, 1, 3, -5));
        assert!((&m0_prime(5) * &inv).is_identity());
    }

    #[test]
    fn inverse_rejects_non_symplectic() {
        let f = PolarizedForm::standard(2);
        let g = IntMatrix::elementary(4, 0, 1, 1);
        assert_eq!(g.sp_inverse(&f), Err(Error::NotSymplectic));
    }

    #[test]
    fn modular_inverse_with_non_unit_polarization() {
        // E = diag(1, 3) modulo 12: 3 is not a unit, so the generic route runs.
        let f = PolarizedForm::one_p(3);
        let g = ModMatrix::from_i64(4, 12, m0_prime(3).to_i64_vec().unwrap().as_slice());
        let inv = g.sp_inverse(&f).unwrap();
        assert!(g.mul(&inv).is_identity());
        let g7 = ModMatrix::from_i64(4, 7, m0_prime(3).to_i64_vec().unwrap().as_slice());
        let inv7 = g7.sp_inverse(&f).unwrap();
        assert!(g7.mul(&inv7).is_identity());
    }

    #[test]
    fn unipotency_over_z() {
        assert!(is_unipotent_int(&IntMatrix::identity(4)).unwrap());
        assert!(is_unipotent_int(&m0_prime(7)).unwrap());
        assert!(!is_unipotent_int(&IntMatrix::diagonal(&[1, -1, 1, -1])).unwrap());
    }

    #[test]
    fn pairing_is_alternating() {
        let f = PolarizedForm::one_p(3);
        let x: Vec<BigInt> = [1, 2, -1, 4].iter().map(|&v| BigInt::from(v)).collect();
        let y: Vec<BigInt> = [0, 1, 3, -2].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(f.pairing(&x, &y), -f.pairing(&y, &x));
        assert!(f.pairing(&x, &x).is_zero());
    }
}
