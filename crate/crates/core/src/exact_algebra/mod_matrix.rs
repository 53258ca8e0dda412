use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::int_matrix::IntMatrix;
use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Square matrix over `Z/n` with entries kept in `[0, n)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    dim: usize,
    modulus: u32,
    entries: Vec<u32>,
}

pub fn check_modulus(n: u64) -> Result<u32> {
    if (2..MAX_MODULUS).contains(&n) {
        Ok(n as u32)
    } else {
        Err(Error::InvalidModulus(n))
    }
}

/// Minimal number of bytes that holds every residue in `[0, n)`.
pub fn bytes_per_entry(modulus: u32) -> usize {
    let max = modulus - 1;
    match max {
        0..=0xff => 1,
        0x100..=0xffff => 2,
        0x1_0000..=0xff_ffff => 3,
        _ => 4,
    }
}

impl ModMatrix {
    pub fn identity(dim: usize, modulus: u32) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus;
        }
        ModMatrix {
            dim,
            modulus,
            entries,
        }
    }

    /// Builds from arbitrary signed integers, reducing into `[0, n)`.
    pub fn from_i64(dim: usize, modulus: u32, flat: &[i64]) -> Self {
        assert_eq!(flat.len(), dim * dim, "flat slice has wrong length");
        let m = i64::from(modulus);
        ModMatrix {
            dim,
            modulus,
            entries: flat.iter().map(|&x| x.rem_euclid(m) as u32).collect(),
        }
    }

    /// Builds from residues that are already canonical.
    pub fn from_residues(dim: usize, modulus: u32, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), dim * dim);
        debug_assert!(entries.iter().all(|&e| e < modulus));
        ModMatrix {
            dim,
            modulus,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| self.get(i, j) == u32::from(i == j) % self.modulus)
        })
    }

    /// Smallest-absolute-value lift to an integer matrix.
    pub fn lift(&self) -> IntMatrix {
        let n = i64::from(self.modulus);
        let flat: Vec<i64> = self
            .entries
            .iter()
            .map(|&e| {
                let e = i64::from(e);
                if 2 * e > n {
                    e - n
                } else {
                    e
                }
            })
            .collect();
        IntMatrix::from_i64(self.dim, &flat)
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        ModMatrix {
            dim: d,
            modulus: self.modulus,
            entries,
        }
    }

    pub fn neg(&self) -> Self {
        let n = self.modulus;
        ModMatrix {
            dim: self.dim,
            modulus: n,
            entries: self.entries.iter().map(|&e| (n - e) % n).collect(),
        }
    }

    pub fn minus_identity(&self) -> Self {
        let n = self.modulus;
        let mut m = self.clone();
        for i in 0..self.dim {
            let e = &mut m.entries[i * self.dim + i];
            *e = (*e + n - 1) % n;
        }
        m
    }

    pub fn mul(&self, rhs: &ModMatrix) -> ModMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        assert_eq!(self.modulus, rhs.modulus, "modulus mismatch");
        let mut out = vec![0u32; self.dim * self.dim];
        mul_into(self.dim, self.modulus, &self.entries, &rhs.entries, &mut out);
        ModMatrix {
            dim: self.dim,
            modulus: self.modulus,
            entries: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn pow(&self, mut e: u64) -> ModMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Least `k >= 1` with `self^k = I`, by repeated multiplication.
    pub fn order(&self, cap: u64) -> Result<u64> {
        let mut acc = self.clone();
        let mut k = 1u64;
        let mut buf = vec![0u32; self.dim * self.dim];
        while !acc.is_identity() {
            if k >= cap {
                return Err(Error::CapExceeded {
                    cap: cap as usize,
                    partial: k as usize,
                });
            }
            mul_into(self.dim, self.modulus, &acc.entries, &self.entries, &mut buf);
            std::mem::swap(&mut acc.entries, &mut buf);
            k += 1;
        }
        Ok(k)
    }

    /// Determinant mod n by unimodular elimination.
    pub fn determinant(&self) -> u32 {
        let (_, det) = eliminate(self, false);
        det
    }

    /// Inverse over `Z/n` for arbitrary `n` (extended-gcd Gauss-Jordan).
    pub fn inverse(&self) -> Result<ModMatrix> {
        match eliminate(self, true) {
            (Some(inv), _) => Ok(inv),
            (None, _) => Err(Error::NotInvertible {
                modulus: u64::from(self.modulus),
            }),
        }
    }

    pub fn is_invertible(&self) -> bool {
        u64::from(self.determinant()).gcd(&u64::from(self.modulus)) == 1
    }

    /// `(self - I)^dim == 0`; the modulus must be prime.
    pub fn is_unipotent(&self) -> Result<bool> {
        if !is_prime(u64::from(self.modulus)) {
            return Err(Error::CompositeModulus(u64::from(self.modulus)));
        }
        let n = self.minus_identity();
        Ok(n.pow(self.dim as u64).is_zero())
    }

    /// Writes the packed entry bytes (no header) into `out`.
    pub fn encode_entries_into(&self, out: &mut [u8]) {
        encode_entries(&self.entries, bytes_per_entry(self.modulus), out);
    }

    /// Canonical byte encoding: `dim` as big-endian u16, modulus as
    /// big-endian u32, then each entry big-endian in the minimal width.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let width = bytes_per_entry(self.modulus);
        let mut out = Vec::with_capacity(6 + width * self.entries.len());
        out.extend_from_slice(&(self.dim as u16).to_be_bytes());
        out.extend_from_slice(&self.modulus.to_be_bytes());
        let start = out.len();
        out.resize(start + width * self.entries.len(), 0);
        encode_entries(&self.entries, width, &mut out[start..]);
        out
    }

    pub fn from_canonical_bytes(bytes: &[u8]) -> Result<ModMatrix> {
        if bytes.len() < 6 {
            return Err(Error::Input("canonical encoding too short".into()));
        }
        let dim = u16::from_be_bytes([bytes[0], bytes[1]]) as usize;
        let modulus = u32::from_be_bytes([bytes[2], bytes[3], bytes[4], bytes[5]]);
        check_modulus(u64::from(modulus))?;
        let width = bytes_per_entry(modulus);
        let body = &bytes[6..];
        if body.len() != width * dim * dim {
            return Err(Error::Input("canonical encoding has wrong length".into()));
        }
        let mut entries = vec![0; dim * dim];
        decode_entries(body, width, &mut entries);
        if entries.iter().any(|&e| e >= modulus) {
            return Err(Error::Input("entry not reduced".into()));
        }
        Ok(ModMatrix {
            dim,
            modulus,
            entries,
        })
    }
}

pub(crate) fn encode_entries(entries: &[u32], width: usize, out: &mut [u8]) {
    match width {
        1 => {
            for (o, &e) in out.iter_mut().zip(entries) {
                *o = e as u8;
            }
        }
        _ => {
            for (chunk, &e) in out.chunks_exact_mut(width).zip(entries) {
                chunk.copy_from_slice(&e.to_be_bytes()[4 - width..]);
            }
        }
    }
}

pub(crate) fn decode_entries(bytes: &[u8], width: usize, out: &mut [u32]) {
    match width {
        1 => {
            for (o, &b) in out.iter_mut().zip(bytes) {
                *o = u32::from(b);
            }
        }
        _ => {
            for (o, chunk) in out.iter_mut().zip(bytes.chunks_exact(width)) {
                let mut buf = [0u8; 4];
                buf[4 - width..].copy_from_slice(chunk);
                *o = u32::from_be_bytes(buf);
            }
        }
    }
}

/// `out = a * b mod n` for row-major `dim x dim` buffers.
#[inline]
pub(crate) fn mul_into(dim: usize, modulus: u32, a: &[u32], b: &[u32], out: &mut [u32]) {
    let n = u64::from(modulus);
    // With n < 2^16 a whole row-column sum of products stays below 2^64 for
    // any dim < 2^32, so a single reduction suffices.
    if modulus < (1 << 16) {
        for i in 0..dim {
            let row = &a[i * dim..(i + 1) * dim];
            for j in 0..dim {
                let mut acc = 0u64;
                for k in 0..dim {
                    acc += u64::from(row[k]) * u64::from(b[k * dim + j]);
                }
                out[i * dim + j] = (acc % n) as u32;
            }
        }
    } else {
        for i in 0..dim {
            let row = &a[i * dim..(i + 1) * dim];
            for j in 0..dim {
                let mut acc = 0u64;
                for k in 0..dim {
                    acc = (acc + u64::from(row[k]) * u64::from(b[k * dim + j])) % n;
                }
                out[i * dim + j] = acc as u32;
            }
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i64 % n as i64, n as i64);
    (g == 1).then(|| x.rem_euclid(n as i64) as u64)
}

/// Row reduction over `Z/n` using only unimodular integer row operations.
/// Returns the inverse (when requested and it exists) and the determinant.
fn eliminate(m: &ModMatrix, want_inverse: bool) -> (Option<ModMatrix>, u32) {
    let d = m.dim;
    let n = i64::from(m.modulus);
    let w = if want_inverse { 2 * d } else { d };
    let mut a: Vec<i64> = vec![0; d * w];
    for i in 0..d {
        for j in 0..d {
            a[i * w + j] = i64::from(m.get(i, j));
        }
        if want_inverse {
            a[i * w + d + i] = 1 % n;
        }
    }
    let mut det: i64 = 1 % n;
    let mulmod = |x: i64, y: i64| ((x as i128 * y as i128).rem_euclid(n as i128)) as i64;

    for k in 0..d {
        // Fold every nonzero entry of column k (rows k..d) into row k.
        for j in k + 1..d {
            let b = a[j * w + k];
            if b == 0 {
                continue;
            }
            let pa = a[k * w + k];
            if pa == 0 {
                for c in 0..w {
                    a.swap(k * w + c, j * w + c);
                }
                det = (n - det) % n;
                continue;
            }
            let (g, x, y) = ext_gcd(pa, b);
            let (ag, bg) = (pa / g, b / g);
            for c in 0..w {
                let rk = a[k * w + c];
                let rj = a[j * w + c];
                a[k * w + c] = (mulmod(x, rk) + mulmod(y, rj)).rem_euclid(n);
                a[j * w + c] = (mulmod(-bg, rk) + mulmod(ag, rj)).rem_euclid(n);
            }
        }
        let pivot = a[k * w + k];
        det = mulmod(det, pivot);
        if !want_inverse {
            continue;
        }
        let Some(pinv) = inv_mod(pivot as u64, n as u64) else {
            // A non-unit pivot makes the determinant a non-unit.
            return (None, det as u32);
        };
        let pinv = pinv as i64;
        for c in 0..w {
            a[k * w + c] = mulmod(a[k * w + c], pinv);
        }
        for i in 0..d {
            if i == k {
                continue;
            }
            let f = a[i * w + k];
            if f == 0 {
                continue;
            }
            for c in 0..w {
                a[i * w + c] = (a[i * w + c] - mulmod(f, a[k * w + c])).rem_euclid(n);
            }
        }
    }
    if !want_inverse {
        return (None, det as u32);
    }
    let mut entries = vec![0u32; d * d];
    for i in 0..d {
        for j in 0..d {
            entries[i * d + j] = a[i * w + d + j] as u32;
        }
    }
    (
        Some(ModMatrix {
            dim: d,
            modulus: m.modulus,
            entries,
        }),
        det as u32,
    )
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Entrywise reduction of an integer matrix into `Z/n`.
pub fn reduce_mod(g: &IntMatrix, modulus: u64) -> Result<ModMatrix> {
    let n = check_modulus(modulus)?;
    if !g.is_square() {
        return Err(Error::DimensionMismatch {
            expected: g.rows(),
            found: g.cols(),
        });
    }
    let nb = BigInt::from(n);
    let entries = g
        .entries()
        .iter()
        .map(|e| e.mod_floor(&nb).to_u32().expect("residue fits in u32"))
        .collect();
    Ok(ModMatrix {
        dim: g.dim(),
        modulus: n,
        entries,
    })
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim.max(1)).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "] mod {}", self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_orders() {
        assert_eq!(ModMatrix::identity(4, 7).order(10).unwrap(), 1);
        let minus = ModMatrix::identity(4, 5).neg();
        assert_eq!(minus.order(10).unwrap(), 2);
        let t = ModMatrix::from_i64(2, 5, &[1, 1, 0, 1]);
        assert_eq!(t.order(100).unwrap(), 5);
        assert!(matches!(t.order(3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn inverse_over_composite_modulus() {
        let m = ModMatrix::from_i64(2, 12, &[5, 2, 0, 7]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        // det = 4, not a unit mod 12
        let s = ModMatrix::from_i64(2, 12, &[2, 0, 0, 2]);
        assert!(s.inverse().is_err());
        assert_eq!(s.determinant(), 4);
    }

    #[test]
    fn inverse_needs_gcd_combination() {
        // column (2, 3) mod 12 has no unit entry individually reachable by swap
        // alone, but gcd(2, 3) = 1.
        let m = ModMatrix::from_i64(2, 12, &[2, 1, 3, 2]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn determinant_sign_tracks_swaps() {
        let m = ModMatrix::from_i64(2, 7, &[0, 1, 1, 0]);
        assert_eq!(m.determinant(), 6);
    }

    #[test]
    fn unipotency_rejects_composite() {
        let m = ModMatrix::identity(2, 6);
        assert_eq!(m.is_unipotent(), Err(Error::CompositeModulus(6)));
        let t = ModMatrix::from_i64(2, 3, &[1, 1, 0, 1]);
        assert!(t.is_unipotent().unwrap());
        assert!(!t.neg().is_unipotent().unwrap());
    }

    #[test]
    fn canonical_encoding_layout() {
        let m = ModMatrix::from_i64(2, 300, &[1, 299, 0, 256]);
        let bytes = m.canonical_bytes();
        assert_eq!(&bytes[..6], &[0, 2, 0, 0, 1, 44]);
        assert_eq!(&bytes[6..], &[0, 1, 1, 43, 0, 0, 1, 0]);
        assert_eq!(ModMatrix::from_canonical_bytes(&bytes).unwrap(), m);
    }

    #[test]
    fn encoding_distinguishes_modulus_and_dim() {
        let a = ModMatrix::identity(2, 5).canonical_bytes();
        let b = ModMatrix::identity(2, 7).canonical_bytes();
        let c = ModMatrix::identity(1, 5).canonical_bytes();
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn reduce_examples() {
        let m = IntMatrix::from_i64(2, &[1, 4, 0, 1]);
        assert!(reduce_mod(&m, 2).unwrap().is_identity());
        let neg = IntMatrix::from_i64(2, &[-1, 0, 0, -1]);
        assert_eq!(reduce_mod(&neg, 5).unwrap().entries(), &[4, 0, 0, 4]);
        assert!(reduce_mod(&m, 1).is_err());
    }
}
