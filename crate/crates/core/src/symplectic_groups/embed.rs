use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::{IntMatrix, PolarizedForm};

/// Embeds `m = [[a, b], [c, d]] ∈ SL(2, Z)` into `Sp(Λ, Z)`.
///
/// Slot `s` acts on coordinates `s` and `s + g` (one-based), i.e. slot 1 on
/// `{1, 3}` and slot 2 on `{2, 4}` in genus 2. With `e = E_ss` the image is
/// `a` at `(s, s)`, `e·b` at `(s, s+g)`, `c/e` at `(s+g, s)` and `d` at
/// `(s+g, s+g)`; `c` must be divisible by `e`.
pub fn embed_sl2(m: &IntMatrix, slot: usize, form: &PolarizedForm) -> Result<IntMatrix> {
    if !m.is_square() || m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.rows(),
        });
    }
    let g = form.genus();
    if slot == 0 || slot > g {
        return Err(Error::Input(format!("slot {slot} out of range 1..={g}")));
    }
    if !m.determinant().is_one() {
        return Err(Error::DeterminantNotOne);
    }
    let e = BigInt::from(form.polarization()[slot - 1]);
    let (c_scaled, rem) = m.get(1, 0).div_rem(&e);
    if !rem.is_zero() {
        return Err(Error::NonIntegralEmbedding {
            entry: m.get(1, 0).to_string(),
            divisor: e.to_string(),
        });
    }
    let i = slot - 1;
    let j = i + g;
    let mut out = IntMatrix::identity(form.dim());
    out.set(i, i, m.get(0, 0).clone());
    out.set(i, j, m.get(0, 1) * &e);
    out.set(j, i, c_scaled);
    out.set(j, j, m.get(1, 1).clone());
    Ok(out)
}

/// Nilpotent direction `v · (v^T Λ)`, so `I + c·N` is `x ↦ x + c<v,x> v`.
pub fn transvection_direction(v: &[BigInt], form: &PolarizedForm) -> Result<IntMatrix> {
    let d = form.dim();
    if v.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Input("transvection vector must be nonzero".into()));
    }
    let w = form.dual_vector(v);
    let mut n = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            n.set(i, j, &v[i] * &w[j]);
        }
    }
    Ok(n)
}

/// Symplectic transvection `x ↦ x + c·<v, x>_Λ·v` with `<v, x> = v^T Λ x`.
pub fn transvection(v: &[BigInt], c: &BigInt, form: &PolarizedForm) -> Result<IntMatrix> {
    let n = transvection_direction(v, form)?;
    Ok(IntMatrix::identity(form.dim()).add(&n.scale(c)))
}

/// `I + c·v·(w/gcd(w))` with `w = v^T Λ`: the generator of the integral
/// transvection group along a primitive `v` is `c = 1` here.
pub fn primitive_transvection_i64(v: &[i64], c: i64, form: &PolarizedForm) -> Result<IntMatrix> {
    let vb: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let n = transvection_direction(&vb, form)?;
    let w = form.dual_vector(&vb);
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out = IntMatrix::identity(form.dim());
    for i in 0..form.dim() {
        for j in 0..form.dim() {
            let x = out.get(i, j) + n.get(i, j) / &g * c;
            out.set(i, j, x);
        }
    }
    Ok(out)
}

/// Convenience wrapper for machine-integer vectors.
pub fn transvection_i64(v: &[i64], c: i64, form: &PolarizedForm) -> Result<IntMatrix> {
    let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    transvection(&v, &BigInt::from(c), form)
}
