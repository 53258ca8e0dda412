use num_bigint::BigUint;
use proptest::prelude::*;

use symplectic_pi1::engine::{closure, is_normal, normal_closure, GroupContext};
use symplectic_pi1::exact_algebra::{reduce_mod, smith_normal_form, IntMatrix, ModMatrix, PolarizedForm, Symplectic};
use symplectic_pi1::pipeline::{pi_quotient, Caps, GammaSpec};
use symplectic_pi1::symplectic_groups::{
    embed_sl2, preset_generators, sp_group_order, transvection_i64, BoundarySpec,
    CongruencePattern,
};
use symplectic_pi1::toric::{toric_pi1, Fan};

fn sl2_mod(n: u32) -> Vec<ModMatrix> {
    vec![
        ModMatrix::from_i64(2, n, &[1, 1, 0, 1]),
        ModMatrix::from_i64(2, n, &[1, 0, 1, 1]),
        ModMatrix::from_i64(2, n, &[2, 1, 1, 1]),
    ]
}

fn sl2_word(letters: &[u8]) -> IntMatrix {
    let gens = [
        IntMatrix::from_i64(2, &[1, 1, 0, 1]),
        IntMatrix::from_i64(2, &[1, 0, 1, 1]),
        IntMatrix::from_i64(2, &[1, -1, 0, 1]),
        IntMatrix::from_i64(2, &[1, 0, -1, 1]),
    ];
    letters.iter().fold(IntMatrix::identity(2), |acc, &i| &acc * &gens[i as usize % 4])
}

fn vector4() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 4).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_independent_of_generator_order(perm in Just(vec![0usize, 1, 2]).prop_shuffle(), n in prop::sample::select(vec![3u32, 4, 5, 6])) {
        let ctx = GroupContext::standard(1, u64::from(n)).unwrap();
        let gens = sl2_mod(n);
        let shuffled: Vec<ModMatrix> = perm.iter().map(|&i| gens[i].clone()).collect();
        let a = closure(&ctx, &gens, 10_000).unwrap();
        let b = closure(&ctx, &shuffled, 10_000).unwrap();
        prop_assert!(a.same_set(&b));
        prop_assert_eq!(BigUint::from(a.len()), sp_group_order(1, u64::from(n)));
    }

    #[test]
    fn subgroup_orders_divide(word in prop::collection::vec(0u8..4, 1..6), n in prop::sample::select(vec![5u32, 7])) {
        let ctx = GroupContext::standard(1, u64::from(n)).unwrap();
        let g = closure(&ctx, &sl2_mod(n), 10_000).unwrap();
        let x = reduce_mod(&sl2_word(&word), u64::from(n)).unwrap();
        let h = closure(&ctx, &[x.clone()], 10_000).unwrap();
        prop_assert_eq!(g.len() % h.len(), 0);
        let nc = normal_closure(&ctx, &[x], &sl2_mod(n), 10_000).unwrap();
        prop_assert_eq!(g.len() % nc.len(), 0);
        prop_assert!(is_normal(&nc, &sl2_mod(n)).unwrap());
    }

    #[test]
    fn reduction_is_multiplicative(a in prop::collection::vec(0u8..4, 0..8), b in prop::collection::vec(0u8..4, 0..8), n in 2u64..1000) {
        let (x, y) = (sl2_word(&a), sl2_word(&b));
        let lhs = reduce_mod(&(&x * &y), n).unwrap();
        let rhs = reduce_mod(&x, n).unwrap().mul(&reduce_mod(&y, n).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn snf_reconstructs(rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-100i64..=100, 36)) {
        let entries: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
        let a = IntMatrix::from_rows(&entries).unwrap();
        let s = smith_normal_form(&a);
        prop_assert!(s.verify(&a));
    }

    #[test]
    fn transvections_add(v in vector4(), s in -20i64..20, t in -20i64..20, p in prop::sample::select(vec![1i64, 3, 5])) {
        let form = PolarizedForm::one_p(p);
        let lhs = &transvection_i64(&v, s, &form).unwrap() * &transvection_i64(&v, t, &form).unwrap();
        prop_assert_eq!(lhs.clone(), transvection_i64(&v, s + t, &form).unwrap());
        prop_assert!(lhs.sp_check(&form).unwrap());
    }

    #[test]
    fn embedding_is_a_homomorphism(a in prop::collection::vec(0u8..4, 0..6), b in prop::collection::vec(0u8..4, 0..6), slot in 1usize..=2) {
        // lower-left entries divisible by 3 keep the second slot integral
        let form = PolarizedForm::one_p(3);
        let x = gamma0_3_word(&a);
        let y = gamma0_3_word(&b);
        let lhs = embed_sl2(&(&x * &y), slot, &form).unwrap();
        let rhs = &embed_sl2(&x, slot, &form).unwrap() * &embed_sl2(&y, slot, &form).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_formula_is_multiplicative(m in 2u64..40, n in 2u64..40) {
        prop_assume!(num_integer::Integer::gcd(&m, &n) == 1);
        for g in 1..=2 {
            prop_assert_eq!(sp_group_order(g, m * n), sp_group_order(g, m) * sp_group_order(g, n));
        }
    }

    #[test]
    fn pattern_group_is_closed_under_inverse(word in prop::collection::vec(0usize..64, 1..5)) {
        for pat in [CongruencePattern::gamma0_13_level2(), CongruencePattern::upsilon_13_level2()] {
            let gens = preset_generators(&pat).unwrap().elements;
            let g = word.iter().fold(IntMatrix::identity(4), |acc, &i| &acc * &gens[i % gens.len()]);
            prop_assert!(pat.is_member(&g).unwrap());
            prop_assert!(pat.is_member(&g.sp_inverse(pat.form()).unwrap()).unwrap());
        }
    }

    #[test]
    fn toric_result_ignores_order_and_scaling(
        cones in prop::collection::vec(prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..3), 0..4),
        k in 1i64..4,
    ) {
        let cones: Vec<Vec<Vec<i64>>> = cones
            .into_iter()
            .map(|c| c.into_iter().filter(|v| v.iter().any(|&x| x != 0)).collect())
            .collect();
        let fan = Fan::new(3, cones.clone()).unwrap();
        let base = toric_pi1(&fan).unwrap();
        let mut reversed = cones.clone();
        reversed.reverse();
        prop_assert_eq!(&toric_pi1(&Fan::new(3, reversed).unwrap()).unwrap(), &base);
        let scaled: Vec<Vec<Vec<i64>>> = cones.iter().map(|c| c.iter().map(|v| v.iter().map(|x| x * k).collect()).collect()).collect();
        prop_assert_eq!(&toric_pi1(&Fan::new(3, scaled).unwrap()).unwrap(), &base);
        // adding a cone only shrinks the group
        let mut more = cones.clone();
        more.push(vec![vec![1, 2, 0]]);
        let bigger = toric_pi1(&Fan::new(3, more).unwrap()).unwrap();
        prop_assert!(bigger.free_rank <= base.free_rank);
        if bigger.free_rank == base.free_rank {
            prop_assert!(base.torsion_order() % bigger.torsion_order() == 0);
        }
    }
}

fn gamma0_3_word(letters: &[u8]) -> IntMatrix {
    let gens = [
        IntMatrix::from_i64(2, &[1, 1, 0, 1]),
        IntMatrix::from_i64(2, &[1, 0, 3, 1]),
        IntMatrix::from_i64(2, &[1, -1, 0, 1]),
        IntMatrix::from_i64(2, &[1, 0, -3, 1]),
    ];
    letters.iter().fold(IntMatrix::identity(2), |acc, &i| &acc * &gens[i as usize % 4])
}

#[test]
fn adding_boundaries_never_grows_the_quotient() {
    let pat = CongruencePattern::principal(PolarizedForm::standard(2), 2);
    let caps = Caps::default();
    let one = GammaSpec::new(pat.clone(), vec![BoundarySpec::line(vec![1, 0, 0, 0])], 4);
    let two = GammaSpec::new(
        pat,
        vec![BoundarySpec::line(vec![1, 0, 0, 0]), BoundarySpec::plane(vec![0, 0, 1, 0], vec![0, 0, 0, 1])],
        4,
    );
    let a = pi_quotient(&one, &caps).unwrap();
    let b = pi_quotient(&two, &caps).unwrap();
    assert_eq!(a.gamma_image.len() % a.quotient.order, 0);
    assert!(b.quotient.order <= a.quotient.order);
}

#[test]
fn single_transvection_kills_sp4_mod_primes() {
    for p in [2u64, 3] {
        let pat = CongruencePattern::full(PolarizedForm::standard(2));
        let spec = GammaSpec::new(pat, vec![BoundarySpec::line(vec![1, 1, 0, 0])], p);
        let caps = Caps::default();
        let r = pi_quotient(&spec, &caps).unwrap();
        assert_eq!(r.quotient.order, 1, "p = {p}");
    }
}
