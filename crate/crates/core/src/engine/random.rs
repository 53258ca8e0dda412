use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact_algebra::ModMatrix;

const MIN_STATE: usize = 10;
const WARMUP: usize = 60;

/// Seeded product-replacement walk producing pseudo-random group elements.
pub struct ProductReplacement {
    state: Vec<ModMatrix>,
    acc: ModMatrix,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    /// Walk on `⟨gens⟩`; `identity` is used when `gens` is empty.
    pub fn new(gens: &[ModMatrix], identity: &ModMatrix, seed: u64) -> Self {
        let mut state: Vec<ModMatrix> = if gens.is_empty() {
            vec![identity.clone()]
        } else {
            gens.to_vec()
        };
        let base = state.len();
        while state.len() < MIN_STATE {
            state.push(state[state.len() % base].clone());
        }
        let mut pr = ProductReplacement {
            state,
            acc: identity.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..WARMUP {
            pr.next_element();
        }
        pr
    }

    pub fn next_element(&mut self) -> ModMatrix {
        let k = self.state.len();
        let i = self.rng.gen_range(0..k);
        let mut j = self.rng.gen_range(0..k - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen_bool(0.5) {
            self.state[j].clone()
        } else {
            self.state[j].inverse().expect("group elements are invertible")
        };
        self.state[i] = if self.rng.gen_bool(0.5) {
            self.state[i].mul(&rhs)
        } else {
            rhs.mul(&self.state[i])
        };
        self.acc = self.acc.mul(&self.state[i]);
        self.acc.clone()
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Decomposes `ord` as `q^a · m` with `q ∤ m`.
pub fn split_prime_part(mut ord: u64, q: u64) -> (u64, u64) {
    assert!(ord > 0 && q > 1, "need a positive order and q > 1");
    let mut qa = 1;
    while ord % q == 0 {
        ord /= q;
        qa *= q;
    }
    (qa, ord)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_is_reproducible() {
        let gens = vec![
            ModMatrix::from_i64(2, 7, &[1, 1, 0, 1]),
            ModMatrix::from_i64(2, 7, &[1, 0, 1, 1]),
        ];
        let id = ModMatrix::identity(2, 7);
        let mut a = ProductReplacement::new(&gens, &id, 9);
        let mut b = ProductReplacement::new(&gens, &id, 9);
        let xs: Vec<_> = (0..20).map(|_| a.next_element()).collect();
        let ys: Vec<_> = (0..20).map(|_| b.next_element()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().any(|x| !x.is_identity()));
    }

    #[test]
    fn prime_part_split() {
        assert_eq!(split_prime_part(24, 2), (8, 3));
        assert_eq!(split_prime_part(24, 5), (1, 24));
        assert_eq!(split_prime_part(1, 3), (1, 1));
    }
}
