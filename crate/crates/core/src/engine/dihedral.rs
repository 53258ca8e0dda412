use super::context::GroupContext;
use super::random::ProductReplacement;
use crate::error::{Error, Result};
use crate::exact_algebra::ModMatrix;

/// Default number of random elements drawn by [`find_dihedral8`].
pub const DEFAULT_DIHEDRAL_BUDGET: usize = 2_000;

const ORDER_CAP: u64 = 1 << 20;

/// `a` of order 4 and `b` of order 2 with `b a b^{-1} = a^{-1}`, `b ∉ ⟨a⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dihedral8 {
    pub a: ModMatrix,
    pub b: ModMatrix,
    /// `a^i b^j` for `i < 4`, `j < 2`.
    pub elements: Vec<ModMatrix>,
    pub attempts: usize,
}

/// Checks the defining relations and the full 8 × 8 multiplication table.
pub fn verify_dihedral8(a: &ModMatrix, b: &ModMatrix) -> Option<Vec<ModMatrix>> {
    let id = ModMatrix::identity(a.dim(), a.modulus());
    let a2 = a.mul(a);
    if a2.is_identity() || !a2.mul(&a2).is_identity() || b.is_identity() || !b.mul(b).is_identity() {
        return None;
    }
    let a_inv = a2.mul(a);
    if b.mul(a).mul(b) != a_inv {
        return None;
    }
    let mut elems = Vec::with_capacity(8);
    let mut ai = id;
    for _ in 0..4 {
        elems.push(ai.clone());
        elems.push(ai.mul(b));
        ai = ai.mul(a);
    }
    for (i, x) in elems.iter().enumerate() {
        if elems[..i].contains(x) {
            return None;
        }
    }
    for x in &elems {
        for y in &elems {
            if !elems.contains(&x.mul(y)) {
                return None;
            }
        }
    }
    Some(elems)
}

fn involution_from(x: &ModMatrix) -> Result<Option<ModMatrix>> {
    let o = x.order(ORDER_CAP)?;
    Ok((o % 2 == 0).then(|| x.pow(o / 2)))
}

/// Looks for a dihedral subgroup of order 8 in `⟨gens⟩`.
///
/// Two involutions `b1`, `b2` generate a dihedral group of order
/// `2·ord(b1 b2)`; when `4 | ord(b1 b2) = 4m`, `a = (b1 b2)^m` and `b = b1`
/// give the witness. Fails with `NotFound` after `budget` random draws.
pub fn find_dihedral8(ctx: &GroupContext, gens: &[ModMatrix], seed: u64, budget: usize) -> Result<Dihedral8> {
    for g in gens {
        ctx.check_element(g)?;
    }
    let mut walk = ProductReplacement::new(gens, &ctx.identity(), seed);
    let mut involutions: Vec<ModMatrix> = Vec::new();
    for attempt in 1..=budget {
        let x = walk.next_element();
        let Some(b2) = involution_from(&x)? else {
            continue;
        };
        // also try a random conjugate of an earlier involution
        let conj = involutions.last().map(|b| {
            let r = walk.next_element();
            r.mul(b).mul(&r.inverse().expect("invertible"))
        });
        for b1 in involutions.iter().rev().take(8).chain(conj.iter()) {
            let c = b1.mul(&b2);
            let o = c.order(ORDER_CAP)?;
            if o % 4 == 0 {
                let a = c.pow(o / 4);
                if let Some(elements) = verify_dihedral8(&a, b1) {
                    return Ok(Dihedral8 {
                        a,
                        b: b1.clone(),
                        elements,
                        attempts: attempt,
                    });
                }
            }
        }
        if !involutions.contains(&b2) {
            involutions.push(b2);
        }
    }
    Err(Error::NotFound(budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::closure;
    use crate::exact_algebra::PolarizedForm;

    #[test]
    fn found_in_monomial_group() {
        // monomial 2x2 matrices over F_5, order 32
        let ctx = GroupContext::new(PolarizedForm::standard(1), 5).unwrap();
        let gens = vec![
            ModMatrix::from_i64(2, 5, &[0, 1, 1, 0]),
            ModMatrix::from_i64(2, 5, &[2, 0, 0, 1]),
        ];
        let w = find_dihedral8(&ctx, &gens, 1, 500).unwrap();
        assert!(verify_dihedral8(&w.a, &w.b).is_some());
        let sub = closure(&ctx, &[w.a.clone(), w.b.clone()], 100).unwrap();
        assert_eq!(sub.len(), 8);
    }

    #[test]
    fn cyclic_group_has_none() {
        let ctx = GroupContext::new(PolarizedForm::standard(1), 17).unwrap();
        let g = ModMatrix::from_i64(2, 17, &[2, 0, 0, 9]);
        assert_eq!(find_dihedral8(&ctx, &[g], 3, 200).unwrap_err(), Error::NotFound(200));
    }

    #[test]
    fn verification_rejects_bad_pairs() {
        let a = ModMatrix::from_i64(2, 5, &[2, 0, 0, 3]);
        // a has order 4 and is diagonal, so it commutes with diagonal b
        let b = ModMatrix::from_i64(2, 5, &[4, 0, 0, 4]);
        assert!(verify_dihedral8(&a, &b).is_none());
        let swap = ModMatrix::from_i64(2, 5, &[0, 1, 1, 0]);
        assert!(verify_dihedral8(&a, &swap).is_some());
    }
}
