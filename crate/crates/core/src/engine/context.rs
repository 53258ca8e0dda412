use crate::error::{Error, Result};
use crate::exact_algebra::{check_modulus, reduce_mod, IntMatrix, ModMatrix, PolarizedForm};

/// Ambient group `Sp(Λ, Z/n)` (or `GL(dim, Z/n)` for non-symplectic use).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupContext {
    dim: usize,
    modulus: u32,
    form: PolarizedForm,
}

impl GroupContext {
    pub fn new(form: PolarizedForm, modulus: u64) -> Result<Self> {
        let modulus = check_modulus(modulus)?;
        Ok(GroupContext {
            dim: form.dim(),
            modulus,
            form,
        })
    }

    /// Standard form of genus `g` modulo `n`.
    pub fn standard(genus: usize, modulus: u64) -> Result<Self> {
        Self::new(PolarizedForm::standard(genus), modulus)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn form(&self) -> &PolarizedForm {
        &self.form
    }

    /// Gram matrix of the form reduced mod `n`.
    pub fn gram(&self) -> ModMatrix {
        self.form.gram_mod(self.modulus)
    }

    pub fn identity(&self) -> ModMatrix {
        ModMatrix::identity(self.dim, self.modulus)
    }

    pub fn reduce(&self, g: &IntMatrix) -> Result<ModMatrix> {
        self.check_dim(g.rows())?;
        reduce_mod(g, u64::from(self.modulus))
    }

    pub fn reduce_all(&self, gens: &[IntMatrix]) -> Result<Vec<ModMatrix>> {
        gens.iter().map(|g| self.reduce(g)).collect()
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: d,
            });
        }
        Ok(())
    }

    /// `g^{-1} = Λ^{-1} g^T Λ` on raw residues, valid for elements preserving
    /// the form. Returns `false` (leaving `out` untouched) when some `e_i` is
    /// not a unit mod `n`.
    pub fn form_inverse_into(&self, g: &[u32], out: &mut [u32]) -> bool {
        let n = u64::from(self.modulus);
        let h = self.form.genus();
        let d = self.dim;
        let mut e = Vec::with_capacity(h);
        let mut einv = Vec::with_capacity(h);
        for &x in self.form.polarization() {
            let r = x.rem_euclid(n as i64) as u64;
            match crate::exact_algebra::inv_mod(r, n) {
                Some(i) => {
                    e.push(r);
                    einv.push(i);
                }
                None => return false,
            }
        }
        let at = |i: usize, j: usize| u64::from(g[i * d + j]);
        for i in 0..h {
            for j in 0..h {
                let s = einv[i] * e[j] % n;
                out[i * d + j] = (s * at(h + j, h + i) % n) as u32;
                out[i * d + h + j] = ((n - s * at(j, h + i) % n) % n) as u32;
                out[(h + i) * d + j] = ((n - s * at(h + j, i) % n) % n) as u32;
                out[(h + i) * d + h + j] = (s * at(j, i) % n) as u32;
            }
        }
        true
    }

    /// Matching dimension and modulus, and invertible.
    pub fn check_element(&self, g: &ModMatrix) -> Result<()> {
        self.check_dim(g.dim())?;
        if g.modulus() != self.modulus {
            return Err(Error::Input(format!(
                "element has modulus {}, context has {}",
                g.modulus(),
                self.modulus
            )));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible {
                modulus: u64::from(self.modulus),
            });
        }
        Ok(())
    }
}
