use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::closure::{closure, extend};
use super::context::GroupContext;
use super::random::split_prime_part;
use super::table::ElementTable;
use crate::error::{Error, Result};
use crate::exact_algebra::{is_prime, mul_into, ModMatrix, Symplectic};

/// Default number of element draws allowed for a Sylow ascent.
pub const DEFAULT_SYLOW_BUDGET: usize = 20_000;

/// Uniform draws tried at each ascent step before scanning for the normaliser.
const DRAWS_BEFORE_SCAN: usize = 24;

/// The `q`-power-order part `x^m` of `x`, where `ord(x) = q^a · m`.
fn q_part(x: &ModMatrix, q: u64, cap: u64) -> Result<ModMatrix> {
    let (_, m) = split_prime_part(x.order(cap)?, q);
    Ok(x.pow(m))
}

/// Decides `x P x^{-1} = P` on raw buffers.
struct NormalizerTest {
    d: usize,
    n: u32,
    form_inverse: bool,
    x: Vec<u32>,
    xi: Vec<u32>,
    t: Vec<u32>,
    u: Vec<u32>,
}

impl NormalizerTest {
    fn new(group: &ElementTable) -> Result<Self> {
        let ctx = group.context();
        let d = ctx.dim();
        let mut sym = true;
        for g in group.generators_or_elements() {
            sym &= g.sp_check(ctx.form())?;
        }
        let mut probe = vec![0; d * d];
        let form_inverse = sym && ctx.form_inverse_into(ctx.identity().entries(), &mut probe);
        Ok(NormalizerTest {
            d,
            n: ctx.modulus(),
            form_inverse,
            x: vec![0; d * d],
            xi: vec![0; d * d],
            t: vec![0; d * d],
            u: vec![0; d * d],
        })
    }

    fn load(&mut self, ctx: &GroupContext, x: &ModMatrix) -> Result<()> {
        self.x.copy_from_slice(x.entries());
        self.invert(ctx)
    }

    fn load_index(&mut self, group: &ElementTable, idx: usize) -> Result<()> {
        group.entries_into(idx, &mut self.x);
        self.invert(group.context())
    }

    fn invert(&mut self, ctx: &GroupContext) -> Result<()> {
        if !(self.form_inverse && ctx.form_inverse_into(&self.x, &mut self.xi)) {
            let x = ModMatrix::from_residues(self.d, self.n, self.x.clone());
            self.xi.copy_from_slice(x.inverse()?.entries());
        }
        Ok(())
    }

    fn normalizes(&mut self, p: &ElementTable, pgens: &[ModMatrix]) -> bool {
        pgens.iter().all(|s| {
            mul_into(self.d, self.n, &self.x, s.entries(), &mut self.t);
            mul_into(self.d, self.n, &self.t, &self.xi, &mut self.u);
            p.index_of_entries(&self.u).is_some()
        })
    }
}

/// Sylow `q`-subgroup of the complete group `table`, by seeded ascent.
///
/// Each step draws elements of `G`, takes their `q`-parts and adjoins one
/// that normalises the current `q`-subgroup `P` without lying in it. If
/// uniform draws keep failing, the step draws from `N_G(P)` instead: since
/// `P` is not yet Sylow, `N_G(P)/P` has order divisible by `q`. A computed
/// normaliser is kept as a pool and only filtered while its `q`-part still
/// exceeds `|P|`, so `G` is rescanned rarely.
pub fn sylow_subgroup(table: &ElementTable, q: u64, seed: u64, budget: usize) -> Result<ElementTable> {
    if !is_prime(q) {
        return Err(Error::Input(format!("{q} is not prime")));
    }
    if !table.is_complete() {
        return Err(Error::Precondition("group table is not complete".into()));
    }
    let ctx = table.context();
    let (target, _) = split_prime_part(table.len() as u64, q);
    let target = target as usize;
    let order_cap = table.len() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test = NormalizerTest::new(table)?;
    let mut p = ElementTable::trivial(ctx);
    let mut pool: Vec<usize> = Vec::new();
    let mut attempts = 0usize;
    let spend = |attempts: &mut usize| {
        *attempts += 1;
        if *attempts > budget {
            Err(Error::BudgetExceeded(budget))
        } else {
            Ok(())
        }
    };

    while p.len() < target {
        let pgens = p.generators_or_elements();
        let mut adjoined = false;
        for _ in 0..DRAWS_BEFORE_SCAN {
            spend(&mut attempts)?;
            let x = table.get(rng.gen_range(0..table.len()));
            let y = q_part(&x, q, order_cap)?;
            if !p.contains(&y) {
                test.load(ctx, &y)?;
                if test.normalizes(&p, &pgens) {
                    extend(&mut p, &y, target)?;
                    adjoined = true;
                    break;
                }
            }
        }
        if adjoined {
            continue;
        }
        // N(P) ∩ pool is a group containing P; it is useful while its
        // q-part is larger than |P|
        let mut refined = Vec::with_capacity(pool.len());
        for &i in &pool {
            test.load_index(table, i)?;
            if test.normalizes(&p, &pgens) {
                refined.push(i);
            }
        }
        if refined.is_empty() || split_prime_part(refined.len() as u64, q).0 as usize <= p.len() {
            refined.clear();
            for i in 0..table.len() {
                test.load_index(table, i)?;
                if test.normalizes(&p, &pgens) {
                    refined.push(i);
                }
            }
        }
        pool = refined;
        loop {
            spend(&mut attempts)?;
            let x = table.get(pool[rng.gen_range(0..pool.len())]);
            let y = q_part(&x, q, order_cap)?;
            if !p.contains(&y) {
                extend(&mut p, &y, target)?;
                break;
            }
        }
    }
    Ok(p)
}

/// Sylow subgroup of `⟨gens⟩`, enumerating the group first.
pub fn sylow_from_generators(
    ctx: &GroupContext,
    gens: &[ModMatrix],
    q: u64,
    seed: u64,
    budget: usize,
    cap: usize,
) -> Result<ElementTable> {
    let g = closure(ctx, gens, cap)?;
    sylow_subgroup(&g, q, seed, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::PolarizedForm;

    fn sl2(n: u32) -> (GroupContext, ElementTable) {
        let ctx = GroupContext::standard(1, u64::from(n)).unwrap();
        let gens = vec![
            ModMatrix::from_i64(2, n, &[1, 1, 0, 1]),
            ModMatrix::from_i64(2, n, &[1, 0, 1, 1]),
        ];
        let t = closure(&ctx, &gens, 10_000).unwrap();
        (ctx, t)
    }

    #[test]
    fn sylow_in_sl2_3() {
        let (_, g) = sl2(3);
        assert_eq!(sylow_subgroup(&g, 3, 1, 1000).unwrap().len(), 3);
        let p2 = sylow_subgroup(&g, 2, 1, 1000).unwrap();
        assert_eq!(p2.len(), 8);
        for x in p2.iter() {
            assert!(x.order(8).unwrap().is_power_of_two());
        }
    }

    #[test]
    fn sylow_in_sl2_7_is_deterministic() {
        let (_, g) = sl2(7);
        let a = sylow_subgroup(&g, 2, 42, 5000).unwrap();
        let b = sylow_subgroup(&g, 2, 42, 5000).unwrap();
        assert_eq!(a.len(), 16);
        assert_eq!(a.sorted_elements(), b.sorted_elements());
    }

    #[test]
    fn cyclic_group_of_prime_order() {
        let ctx = GroupContext::new(PolarizedForm::standard(1), 5).unwrap();
        let g = closure(&ctx, &[ModMatrix::from_i64(2, 5, &[1, 1, 0, 1])], 10).unwrap();
        let p = sylow_subgroup(&g, 5, 0, 10).unwrap();
        assert!(p.same_set(&g));
    }

    #[test]
    fn coprime_prime_gives_trivial_subgroup() {
        let (_, g) = sl2(3);
        assert_eq!(sylow_subgroup(&g, 5, 0, 10).unwrap().len(), 1);
    }

    #[test]
    fn small_budget_is_reported() {
        let (_, g) = sl2(5);
        assert_eq!(sylow_subgroup(&g, 2, 3, 0).unwrap_err(), Error::BudgetExceeded(0));
    }

    #[test]
    fn rejects_composite_q() {
        let (_, g) = sl2(3);
        assert!(sylow_subgroup(&g, 4, 0, 10).is_err());
    }
}
