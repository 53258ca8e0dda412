use super::context::GroupContext;
use super::table::ElementTable;
use crate::error::Result;
use crate::exact_algebra::{mul_into, ModMatrix};

/// Right-multiplies every element from index `start` on by every generator,
/// appending new products, until nothing new appears.
fn saturate(table: &mut ElementTable, gens: &[ModMatrix], start: usize, cap: usize) -> Result<()> {
    let d = table.context().dim();
    let n = table.context().modulus();
    let mut cur = vec![0u32; d * d];
    let mut prod = vec![0u32; d * d];
    let mut idx = start;
    while idx < table.len() {
        table.entries_into(idx, &mut cur);
        for g in gens {
            mul_into(d, n, &cur, g.entries(), &mut prod);
            if table.insert_entries(&prod).1 {
                table.check_cap(cap)?;
            }
        }
        idx += 1;
    }
    Ok(())
}

fn dedup_generators(ctx: &GroupContext, gens: &[ModMatrix]) -> Result<Vec<ModMatrix>> {
    let mut out: Vec<ModMatrix> = Vec::new();
    for g in gens {
        ctx.check_element(g)?;
        if !out.contains(g) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Subgroup generated by `gens`, enumerated breadth first.
///
/// Fails with `CapExceeded` (carrying the partial size) once more than `cap`
/// elements have been found.
pub fn closure(ctx: &GroupContext, gens: &[ModMatrix], cap: usize) -> Result<ElementTable> {
    let gens = dedup_generators(ctx, gens)?;
    let mut table = ElementTable::trivial(ctx);
    table.set_complete(false);
    saturate(&mut table, &gens, 0, cap)?;
    table.set_generators(gens);
    table.set_complete(true);
    Ok(table)
}

/// Extends a complete table by one more generator in place.
///
/// Returns `true` if the group grew.
pub fn extend(table: &mut ElementTable, g: &ModMatrix, cap: usize) -> Result<bool> {
    table.context().check_element(g)?;
    if table.contains(g) {
        return Ok(false);
    }
    let old = table.len();
    let d = table.context().dim();
    let n = table.context().modulus();
    table.set_complete(false);
    let mut cur = vec![0u32; d * d];
    let mut prod = vec![0u32; d * d];
    // old elements are already closed under the old generators
    for idx in 0..old {
        table.entries_into(idx, &mut cur);
        mul_into(d, n, &cur, g.entries(), &mut prod);
        if table.insert_entries(&prod).1 {
            table.check_cap(cap)?;
        }
    }
    let mut gens = table.generators_or_elements();
    gens.push(g.clone());
    saturate(table, &gens, old, cap)?;
    table.set_generators(gens);
    table.set_complete(true);
    Ok(true)
}

/// `g · s · g^{-1}`.
pub fn conjugate(g: &ModMatrix, s: &ModMatrix, g_inv: &ModMatrix) -> ModMatrix {
    g.mul(s).mul(g_inv)
}

fn inverses(gens: &[ModMatrix]) -> Result<Vec<ModMatrix>> {
    gens.iter().map(ModMatrix::inverse).collect()
}

/// Least subgroup containing `sub_gens` and normalised by `group_gens`.
pub fn normal_closure(
    ctx: &GroupContext,
    sub_gens: &[ModMatrix],
    group_gens: &[ModMatrix],
    cap: usize,
) -> Result<ElementTable> {
    let group_gens = dedup_generators(ctx, group_gens)?;
    let group_inv = inverses(&group_gens)?;
    let mut table = closure(ctx, sub_gens, cap)?;
    let mut checked = 0;
    // every generator added later is itself a conjugate, so one pass over the
    // growing generator list suffices
    loop {
        let gens = table.generators_or_elements();
        if checked >= gens.len() {
            break;
        }
        for s in &gens[checked..] {
            for (g, gi) in group_gens.iter().zip(&group_inv) {
                let c = conjugate(g, s, gi);
                extend(&mut table, &c, cap)?;
            }
        }
        checked = gens.len();
    }
    Ok(table)
}

/// `g s g^{-1} ∈ sub` for every generator `s` of `sub` and every `g`.
pub fn is_normal(sub: &ElementTable, group_gens: &[ModMatrix]) -> Result<bool> {
    let inv = inverses(group_gens)?;
    let sgens = sub.generators_or_elements();
    Ok(group_gens
        .iter()
        .zip(&inv)
        .all(|(g, gi)| sgens.iter().all(|s| sub.contains(&conjugate(g, s, gi)))))
}

/// A pair `(g, s)` with `g s g^{-1} ∉ sub`, if any.
pub fn normality_witness(sub: &ElementTable, group_gens: &[ModMatrix]) -> Result<Option<(ModMatrix, ModMatrix)>> {
    let inv = inverses(group_gens)?;
    for s in sub.generators_or_elements() {
        for (g, gi) in group_gens.iter().zip(&inv) {
            if !sub.contains(&conjugate(g, &s, gi)) {
                return Ok(Some((g.clone(), s)));
            }
        }
    }
    Ok(None)
}

/// Elements of `table` commuting with all of its generators.
pub fn center(table: &ElementTable) -> ElementTable {
    let gens = table.generators_or_elements();
    let central: Vec<ModMatrix> = table
        .iter()
        .filter(|z| gens.iter().all(|g| z.mul(g) == g.mul(z)))
        .collect();
    let mut out = ElementTable::from_elements(table.context(), &central);
    out.set_generators(central);
    out
}

/// All elements of `table` satisfying `keep`, as a table with no generators.
pub fn filter(table: &ElementTable, mut keep: impl FnMut(&ModMatrix) -> bool) -> ElementTable {
    let mut out = ElementTable::empty(table.context());
    for g in table.iter() {
        if keep(&g) {
            out.insert(&g);
        }
    }
    out.set_complete(true);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::PolarizedForm;

    pub(crate) fn sl2_gens(n: u32) -> Vec<ModMatrix> {
        vec![
            ModMatrix::from_i64(2, n, &[1, 1, 0, 1]),
            ModMatrix::from_i64(2, n, &[1, 0, 1, 1]),
        ]
    }

    #[test]
    fn identity_generates_trivial_group() {
        let ctx = GroupContext::standard(2, 7).unwrap();
        let t = closure(&ctx, &[ctx.identity()], 10).unwrap();
        assert_eq!(t.len(), 1);
        let t = closure(&ctx, &[], 10).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn sl2_orders() {
        for (n, order) in [(2u32, 6usize), (3, 24), (5, 120), (4, 48), (6, 144)] {
            let ctx = GroupContext::standard(1, u64::from(n)).unwrap();
            assert_eq!(closure(&ctx, &sl2_gens(n), 1000).unwrap().len(), order, "n = {n}");
        }
    }

    #[test]
    fn cap_reports_partial_size() {
        let ctx = GroupContext::standard(1, 5).unwrap();
        match closure(&ctx, &sl2_gens(5), 50) {
            Err(crate::Error::CapExceeded { cap: 50, partial }) => assert!(partial > 50),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_invertible_generator_rejected() {
        let ctx = GroupContext::standard(1, 6).unwrap();
        let g = ModMatrix::from_i64(2, 6, &[2, 0, 0, 1]);
        assert!(closure(&ctx, &[g], 100).is_err());
    }

    #[test]
    fn extend_matches_fresh_closure() {
        let ctx = GroupContext::standard(1, 7).unwrap();
        let gens = sl2_gens(7);
        let mut t = closure(&ctx, &gens[..1], 1000).unwrap();
        assert_eq!(t.len(), 7);
        assert!(extend(&mut t, &gens[1], 1000).unwrap());
        assert_eq!(t.len(), 336);
        assert!(!extend(&mut t, &gens[0], 1000).unwrap());
        assert!(t.same_set(&closure(&ctx, &gens, 1000).unwrap()));
    }

    #[test]
    fn normal_closure_of_minus_identity_and_shear() {
        let ctx = GroupContext::standard(1, 5).unwrap();
        let gens = sl2_gens(5);
        let minus = ctx.identity().neg();
        let z = normal_closure(&ctx, &[minus], &gens, 1000).unwrap();
        assert_eq!(z.len(), 2);
        let full = normal_closure(&ctx, &gens[..1], &gens, 1000).unwrap();
        assert_eq!(full.len(), 120);
        assert!(is_normal(&full, &gens).unwrap());
    }

    #[test]
    fn non_normal_cyclic_subgroup_has_witness() {
        let ctx = GroupContext::standard(1, 5).unwrap();
        let gens = sl2_gens(5);
        let sub = closure(&ctx, &gens[..1], 100).unwrap();
        assert!(!is_normal(&sub, &gens).unwrap());
        let (g, s) = normality_witness(&sub, &gens).unwrap().unwrap();
        assert!(!sub.contains(&conjugate(&g, &s, &g.inverse().unwrap())));
    }

    #[test]
    fn center_of_sl2() {
        let ctx = GroupContext::standard(1, 5).unwrap();
        let g = closure(&ctx, &sl2_gens(5), 1000).unwrap();
        let z = center(&g);
        assert_eq!(z.len(), 2);
        assert!(z.contains(&ctx.identity().neg()));
    }

    #[test]
    fn cyclic_group_is_its_own_center() {
        let ctx = GroupContext::new(PolarizedForm::standard(1), 17).unwrap();
        let g = ModMatrix::from_i64(2, 17, &[2, 0, 0, 9]);
        let t = closure(&ctx, &[g], 100).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(center(&t).len(), 8);
    }
}
