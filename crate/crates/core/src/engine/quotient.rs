use serde::Serialize;

use super::closure::is_normal;
use super::table::ElementTable;
use crate::error::{Error, Result};
use crate::exact_algebra::ModMatrix;
use crate::symplectic_groups::factorize;

/// Default bound on the quotient index for coset enumeration.
pub const DEFAULT_QUOTIENT_CAP: usize = 10_000;

/// Quotients up to this order carry their multiplication table in reports.
pub const EXPORTED_TABLE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group_order: usize,
    pub normal_order: usize,
    pub order: usize,
    pub abelian: bool,
    /// Invariant factors `d_1 | d_2 | ...` (all `> 1`), when abelian.
    pub invariants: Option<Vec<u64>>,
    /// Coset multiplication table, coset 0 being the identity.
    pub table: Option<Vec<Vec<u32>>>,
}

/// Cosets `rN` of a normal subgroup, with representatives.
pub struct CosetSpace<'a> {
    group: &'a ElementTable,
    normal: &'a ElementTable,
    coset_of: Vec<u32>,
    reps: Vec<ModMatrix>,
}

impl<'a> CosetSpace<'a> {
    fn build(group: &'a ElementTable, normal: &'a ElementTable) -> Result<Self> {
        const UNSET: u32 = u32::MAX;
        let mut coset_of = vec![UNSET; group.len()];
        let mut reps = Vec::new();
        let nelems: Vec<ModMatrix> = normal.iter().collect();
        for idx in 0..group.len() {
            if coset_of[idx] != UNSET {
                continue;
            }
            let r = group.get(idx);
            let c = reps.len() as u32;
            for n in &nelems {
                let j = group.index_of(&r.mul(n)).ok_or(Error::NotSubgroup)?;
                coset_of[j] = c;
            }
            reps.push(r);
        }
        Ok(CosetSpace {
            group,
            normal,
            coset_of,
            reps,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, c: usize) -> &ModMatrix {
        &self.reps[c]
    }

    pub fn coset_of(&self, g: &ModMatrix) -> Option<usize> {
        self.group.index_of(g).map(|i| self.coset_of[i] as usize)
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.coset_of(&self.reps[a].mul(&self.reps[b]))
            .expect("group is closed")
    }

    /// Order of the coset `c` in `G/N`.
    pub fn order(&self, c: usize) -> u64 {
        let r = &self.reps[c];
        let mut x = r.clone();
        let mut k = 1;
        while !self.normal.contains(&x) {
            x = x.mul(r);
            k += 1;
        }
        k
    }

    pub fn multiplication_table(&self) -> Vec<Vec<u32>> {
        (0..self.len())
            .map(|a| (0..self.len()).map(|b| self.multiply(a, b) as u32).collect())
            .collect()
    }
}

/// Invariant factors of a finite abelian group from its element-order
/// statistics: `#{x : x^(q^k) = 1} = q^(Σ_i min(a_i, k))`.
pub fn abelian_invariants_from_orders(orders: &[u64]) -> Vec<u64> {
    let n = orders.len() as u64;
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for (q, a) in factorize(n) {
        let mut log_counts = vec![0u32];
        let mut qk = 1u64;
        for _ in 0..a {
            qk *= q;
            let count = orders.iter().filter(|&&o| qk % o == 0).count() as u64;
            log_counts.push(count.ilog(q));
        }
        // number of cyclic factors with exponent >= k is c_k - c_{k-1}
        let mut exps = Vec::new();
        for k in 1..log_counts.len() {
            let ge_k = log_counts[k] - log_counts[k - 1];
            let ge_next = log_counts.get(k + 1).map_or(0, |c| c - log_counts[k]);
            for _ in 0..(ge_k - ge_next) {
                exps.push(q.pow(k as u32));
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(exps);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().filter_map(|v| v.get(i)).product())
        .collect();
    inv.reverse();
    inv
}

/// Structure of `G/N` for complete tables `N ⊆ G`, `N` normal.
///
/// Above `quotient_cap` no cosets are enumerated: a non-abelian quotient is
/// reported by order only, an abelian one fails with `IndexTooLarge`.
pub fn quotient_structure(group: &ElementTable, normal: &ElementTable, quotient_cap: usize) -> Result<QuotientReport> {
    if normal.iter().any(|n| !group.contains(&n)) {
        return Err(Error::NotSubgroup);
    }
    let ggens = group.generators_or_elements();
    if !is_normal(normal, &ggens)? {
        return Err(Error::NotNormal);
    }
    if normal.is_empty() || group.len() % normal.len() != 0 {
        return Err(Error::NotSubgroup);
    }
    let index = group.len() / normal.len();
    let abelian = ggens.iter().enumerate().all(|(i, a)| {
        ggens[i + 1..].iter().all(|b| {
            let comm = a.mul(b).mul(&(b.mul(a)).inverse().expect("invertible"));
            normal.contains(&comm)
        })
    });
    let mut report = QuotientReport {
        group_order: group.len(),
        normal_order: normal.len(),
        order: index,
        abelian,
        invariants: None,
        table: None,
    };
    if index > quotient_cap {
        if abelian {
            return Err(Error::IndexTooLarge {
                index,
                cap: quotient_cap,
            });
        }
        return Ok(report);
    }
    let cosets = CosetSpace::build(group, normal)?;
    debug_assert_eq!(cosets.len(), index);
    if abelian {
        let orders: Vec<u64> = (0..cosets.len()).map(|c| cosets.order(c)).collect();
        report.invariants = Some(abelian_invariants_from_orders(&orders));
    }
    if index <= EXPORTED_TABLE_LIMIT {
        report.table = Some(cosets.multiplication_table());
    }
    Ok(report)
}

/// Coset space of `G/N` for direct inspection (no cap applied).
pub fn coset_space<'a>(group: &'a ElementTable, normal: &'a ElementTable) -> Result<CosetSpace<'a>> {
    CosetSpace::build(group, normal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{closure, GroupContext};
    use crate::exact_algebra::PolarizedForm;

    #[test]
    fn invariants_from_order_statistics() {
        // Z/2 x Z/2
        assert_eq!(abelian_invariants_from_orders(&[1, 2, 2, 2]), vec![2, 2]);
        // Z/4
        assert_eq!(abelian_invariants_from_orders(&[1, 2, 4, 4]), vec![4]);
        // Z/6 = Z/2 x Z/3
        assert_eq!(abelian_invariants_from_orders(&[1, 2, 3, 3, 6, 6]), vec![6]);
        // Z/2 x Z/4
        assert_eq!(abelian_invariants_from_orders(&[1, 2, 2, 2, 4, 4, 4, 4]), vec![2, 4]);
        assert_eq!(abelian_invariants_from_orders(&[1]), Vec::<u64>::new());
    }

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
    fn trivial_and_full_quotients() {
        let (ctx, g) = sl2(3);
        let r = quotient_structure(&g, &g, 100).unwrap();
        assert_eq!((r.order, r.abelian), (1, true));
        assert_eq!(r.invariants, Some(vec![]));
        let triv = ElementTable::trivial(&ctx);
        let r = quotient_structure(&g, &triv, 100).unwrap();
        assert_eq!(r.order, 24);
        assert!(!r.abelian);
        assert!(r.invariants.is_none());
    }

    #[test]
    fn sl2_3_abelianisation() {
        // SL(2,3) / Q8 is cyclic of order 3
        let (_, g) = sl2(3);
        let q8 = crate::engine::sylow_subgroup(&g, 2, 0, 1000).unwrap();
        let r = quotient_structure(&g, &q8, 100).unwrap();
        assert_eq!(r.order, 3);
        assert!(r.abelian);
        assert_eq!(r.invariants, Some(vec![3]));
        let t = r.table.unwrap();
        assert_eq!(t[0], vec![0, 1, 2]);
    }

    #[test]
    fn cap_behaviour() {
        let (ctx, g) = sl2(5);
        let triv = ElementTable::trivial(&ctx);
        let r = quotient_structure(&g, &triv, 10).unwrap();
        assert_eq!(r.order, 120);
        assert!(r.table.is_none());
        let cyc_ctx = GroupContext::new(PolarizedForm::standard(1), 17).unwrap();
        let c = closure(&cyc_ctx, &[ModMatrix::from_i64(2, 17, &[2, 0, 0, 9])], 100).unwrap();
        let e = ElementTable::trivial(&cyc_ctx);
        assert_eq!(
            quotient_structure(&c, &e, 4).unwrap_err(),
            Error::IndexTooLarge { index: 8, cap: 4 }
        );
        assert_eq!(quotient_structure(&c, &e, 8).unwrap().invariants, Some(vec![8]));
    }

    #[test]
    fn non_normal_rejected() {
        let (ctx, g) = sl2(5);
        let sub = closure(&ctx, &[ModMatrix::from_i64(2, 5, &[1, 1, 0, 1])], 100).unwrap();
        assert_eq!(quotient_structure(&g, &sub, 100).unwrap_err(), Error::NotNormal);
    }
}
