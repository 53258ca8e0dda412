use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::report::{Caps, Step, VerificationReport};
use crate::cli::formats::big_number;
use crate::engine::{closure, sylow_subgroup, GroupContext, DEFAULT_SYLOW_BUDGET};
use crate::error::{Error, Result};
use crate::exact_algebra::{is_prime, IntMatrix, ModMatrix, PolarizedForm};
use crate::symplectic_groups::{
    boundary_center_generators_with, elementary_generators, prime_part, sp_group_order, BoundarySpec,
    CongruencePattern,
};

/// Unipotent samples drawn in the order-law step.
pub const DEFAULT_UNIPOTENT_SAMPLES: usize = 1000;

/// Boundary components of `Sp(4, Z)` whose centres are checked.
fn standard_boundaries() -> Vec<BoundarySpec> {
    vec![
        BoundarySpec::line(vec![1, 0, 0, 0]),
        BoundarySpec::line(vec![0, 1, 0, 0]),
        BoundarySpec::line(vec![1, 1, 0, 0]),
        BoundarySpec::plane(vec![1, 0, 0, 0], vec![0, 1, 0, 0]),
        BoundarySpec::plane(vec![0, 0, 1, 0], vec![0, 0, 0, 1]),
    ]
}

/// Options beyond the numeric parameters.
#[derive(Clone, Debug, Default)]
pub struct Thm31Options {
    /// Accept `p = 2`.
    pub allow_p2: bool,
}

fn check_preconditions(l: u64, p: u64, q: u64, opts: &Thm31Options) -> Result<()> {
    if l < 4 {
        return Err(Error::Precondition(format!("level l = {l} must be at least 4")));
    }
    if !is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} is not prime")));
    }
    if p == 2 && !opts.allow_p2 {
        return Err(Error::Precondition(
            "p must not divide 2l; p = 2 (\"We can even take p=2\") needs --allow-p2".into(),
        ));
    }
    if (2 * l) % p == 0 && !(p == 2 && l % 2 != 0) {
        return Err(Error::Precondition(format!("p = {p} divides 2l = {}", 2 * l)));
    }
    if !is_prime(q) || q == p {
        return Err(Error::Precondition(format!("q = {q} must be a prime different from p")));
    }
    Ok(())
}

/// Upper unitriangular part of the Borel: positive root directions.
fn positive_root_element(ctx: &GroupContext, rng: &mut ChaCha8Rng) -> Result<ModMatrix> {
    let p = i64::from(ctx.modulus());
    let dirs = elementary_generators(1);
    // I + X for X = E13, E24, E14 + E23, E12 - E43
    let mut g = ctx.identity();
    for idx in [0usize, 1, 2, 6] {
        let t = rng.gen_range(0..p);
        let x = dirs[idx].minus_identity().scale(&t.into());
        g = g.mul(&ctx.reduce(&IntMatrix::identity(4).add(&x))?);
    }
    Ok(g)
}

fn p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Finite-level certificate that `Π(Γ(l))` surjects onto a Sylow subgroup
/// of `Sp(4, F_p)`.
pub fn verify_thm31(l: u64, p: u64, q: u64, seed: u64, caps: &Caps, opts: &Thm31Options) -> Result<VerificationReport> {
    check_preconditions(l, p, q, opts)?;
    let order = sp_group_order(2, p);
    let order_usize = order.to_usize().filter(|&o| o <= caps.closure_cap);
    let Some(order_usize) = order_usize else {
        return Err(Error::GroupTooLarge {
            order: order.to_string(),
            cap: caps.closure_cap,
        });
    };
    let mut report = VerificationReport::new(
        "thm31",
        &format!("Π(Γ({l})) surjects onto a Sylow {q}-subgroup of Sp(4, F_{p})"),
        seed,
        caps,
    );
    report.param("l", l);
    report.param("p", p);
    report.param("q", q);
    let form = PolarizedForm::standard(2);
    let ctx = GroupContext::new(form.clone(), p)?;
    let li = l as i64;

    // 1: the level-l elementary generators reduce onto the whole group
    let gens = ctx.reduce_all(&elementary_generators(li))?;
    let group = closure(&ctx, &gens, caps.closure_cap)?;
    report.push(
        Step::new(
            1,
            "reductions mod p of the elements I + l·X generate Sp(4, F_p)",
            "So in fact Γ(l)_p is the whole of Sp(4,F_p)",
        )
        .with("closure_size", group.len())
        .with("expected_order", big_number(&order))
        .pass_if(group.len() == order_usize),
    );

    // 2: the translation by l·I has order p
    let mut t = IntMatrix::identity(4);
    for i in 0..2 {
        t.set(i, i + 2, li);
    }
    let t = ctx.reduce(&t)?;
    let t_order = t.order(p * p)?;
    report.push(
        Step::new(
            2,
            "[[I, l·I], [0, I]] has order p modulo p",
            "contains the element (I  red_p(l)I; 0  I), which has order p",
        )
        .with("order", t_order)
        .pass_if(t_order == p),
    );

    // 3: sampled unipotents have p-power order
    let samples = caps.samples_or(DEFAULT_UNIPOTENT_SAMPLES);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut orders = std::collections::BTreeSet::new();
    let mut all_unipotent = true;
    for _ in 0..samples {
        let g = group.get(rng.gen_range(0..group.len()));
        let n = positive_root_element(&ctx, &mut rng)?;
        let u = g.mul(&n).mul(&g.inverse()?);
        all_unipotent &= u.is_unipotent()?;
        orders.insert(u.order(p * p * p * p)?);
    }
    let all_p_power = orders.iter().all(|&o| p_power(o, p));
    let divides_p = orders.iter().all(|&o| p % o == 0);
    report.push(
        Step::new(
            3,
            "conjugates of upper unitriangular elements have p-power order",
            "the order of η is a power of p",
        )
        .with("samples", samples)
        .with("orders_seen", orders.iter().copied().collect::<Vec<_>>())
        .with("all_unipotent", all_unipotent)
        .with("all_p_power", all_p_power)
        .with("all_divide_p", divides_p)
        .pass_if(all_unipotent && all_p_power && (p < 5 || divides_p)),
    );

    // 4: a Sylow q-subgroup of the image
    let q_part = prime_part(&order, q);
    let sylow = sylow_subgroup(&group, q, seed, DEFAULT_SYLOW_BUDGET)?;
    let q_elements = sylow.iter().all(|x| x.order(sylow.len() as u64).map(|o| p_power(o, q)).unwrap_or(false));
    report.push(
        Step::new(
            4,
            "a Sylow q-subgroup of the image has the full q-part as order",
            "let Γ^q(l)_p be a Sylow q-subgroup of Γ(l)_p",
        )
        .with("order", sylow.len())
        .with("q_part", big_number(&q_part))
        .with("generators", sylow.generators().map_or(0, <[_]>::len))
        .with("all_q_power_orders", q_elements)
        .pass_if(BigUint::from(sylow.len()) == q_part && q_elements),
    );

    // 5: boundary centres, scaled into red_p^{-1}(P) ∩ Γ(l), die mod p
    let principal = CongruencePattern::principal(form.clone(), l);
    let bound = (l * p * 2).max(crate::symplectic_groups::DEFAULT_SCALING_BOUND);
    let mut all_trivial = true;
    let mut rows: Vec<Value> = Vec::new();
    for b in standard_boundaries() {
        let gens = boundary_center_generators_with(&b, &form, bound, |u| {
            Ok(principal.is_member(u)? && sylow.contains(&ctx.reduce(u)?))
        })?;
        for u in &gens.elements {
            let reduced = ctx.reduce(u)?;
            let scale = u
                .minus_identity()
                .entries()
                .iter()
                .fold(num_bigint::BigInt::from(0), |acc, x| num_integer::Integer::gcd(&acc, x));
            all_trivial &= reduced.is_identity();
            rows.push(json!({
                "boundary": serde_json::to_value(&b).expect("serializable"),
                "content": big_number(&scale),
                "reduces_to_identity": reduced.is_identity(),
            }));
        }
    }
    report.push(
        Step::new(
            5,
            "boundary centre generators of Γ = red_p^{-1}(Γ^q(l)_p) reduce to I mod p",
            "π₁(X̃) has a quotient isomorphic to Γ^q(l)_p",
        )
        .with("generators", rows)
        .pass_if(all_trivial),
    );
    Ok(report)
}
