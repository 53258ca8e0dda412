use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gamma::{pi_quotient, GammaSpec};
use super::report::{Caps, Step, VerificationReport};
use crate::cli::formats::int_json;
use crate::engine::{filter, is_normal, normal_closure, quotient_structure, GroupContext};
use crate::error::{Error, Result};
use crate::exact_algebra::{IntMatrix, ModMatrix, PolarizedForm, Symplectic};
use crate::symplectic_groups::{
    boundary_center_generators, embed_sl2, preset_generators, small_directions, BoundarySpec, CongruencePattern,
};

/// Default number of exact samples in the property steps.
pub const DEFAULT_PATTERN_SAMPLES: usize = 10_000;

const MAX_WORD: usize = 3;
const WORKING_MODULUS: u64 = 12;

/// Homomorphism candidate `γ ↦ ((γ-I)_a / d_a, (γ-I)_b / d_b) mod 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    /// One-based entry and divisor of the first coordinate.
    pub first: (usize, usize, i64),
    pub second: (usize, usize, i64),
}

/// Tried in order; the first one passing the witness, multiplicativity and
/// kernel checks is used.
pub const QUOTIENT_MAPS: [QuotientMap; 2] = [
    QuotientMap {
        first: (1, 2, 2),
        second: (3, 4, 2),
    },
    QuotientMap {
        first: (2, 1, 6),
        second: (4, 3, 6),
    },
];

impl QuotientMap {
    fn coord(g: &IntMatrix, (i, j, d): (usize, usize, i64)) -> u8 {
        let mut x = g.get(i - 1, j - 1).clone();
        if i == j {
            x -= 1;
        }
        let q = x.div_floor(&BigInt::from(d));
        u8::from(q.is_odd())
    }

    fn coord_mod(g: &ModMatrix, (i, j, d): (usize, usize, i64)) -> u8 {
        let n = i64::from(g.modulus());
        let x = (i64::from(g.get(i - 1, j - 1)) - i64::from(i == j)).rem_euclid(n);
        ((x / d) % 2) as u8
    }

    pub fn eval(&self, g: &IntMatrix) -> (u8, u8) {
        (Self::coord(g, self.first), Self::coord(g, self.second))
    }

    /// Needs a working modulus divisible by `2·d` for both coordinates.
    pub fn eval_mod(&self, g: &ModMatrix) -> (u8, u8) {
        (Self::coord_mod(g, self.first), Self::coord_mod(g, self.second))
    }

    pub fn describe(&self) -> String {
        let (a, b, d) = self.first;
        let (c, e, f) = self.second;
        format!("((γ-I)_{a}{b}/{d} mod 2, (γ-I)_{c}{e}/{f} mod 2)")
    }
}

fn add2(a: (u8, u8), b: (u8, u8)) -> (u8, u8) {
    ((a.0 + b.0) % 2, (a.1 + b.1) % 2)
}

/// Externally supplied `M0 ... M4`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExternalMatrices {
    pub m0: Option<IntMatrix>,
    pub m1: Option<IntMatrix>,
    pub m2: Option<IntMatrix>,
    pub m3: Option<IntMatrix>,
    pub m4: Option<IntMatrix>,
}

/// Random words in a generating set closed under inverses.
struct WordSampler {
    letters: Vec<IntMatrix>,
    rng: ChaCha8Rng,
}

impl WordSampler {
    fn new(gens: &[IntMatrix], form: &PolarizedForm, seed: u64) -> Result<Self> {
        let mut letters = gens.to_vec();
        for g in gens {
            letters.push(g.sp_inverse(form)?);
        }
        Ok(WordSampler {
            letters,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    fn sample(&mut self) -> IntMatrix {
        let len = self.rng.gen_range(1..=MAX_WORD);
        let mut g = self.letters[self.rng.gen_range(0..self.letters.len())].clone();
        for _ in 1..len {
            g = &g * &self.letters[self.rng.gen_range(0..self.letters.len())];
        }
        g
    }
}

/// Boundary components used in the proof: two lines and two planes.
pub fn proof_boundaries() -> Vec<BoundarySpec> {
    vec![
        BoundarySpec::line(vec![1, 0, 0, 0]),
        BoundarySpec::line(vec![0, 1, 0, 0]),
        BoundarySpec::plane(vec![1, 0, 0, 0], vec![0, 1, 0, 0]),
        BoundarySpec::plane(vec![0, 0, 1, 0], vec![0, 0, 0, 1]),
    ]
}

/// `-I` and `I0 = diag(1,-1,1,-1)`, which act trivially resp. as reflections.
pub fn torsion_elements() -> Vec<IntMatrix> {
    vec![
        IntMatrix::diagonal(&[-1, -1, -1, -1]),
        IntMatrix::diagonal(&[1, -1, 1, -1]),
    ]
}

/// The `pi-quotient` input that reproduces the level-12 computation.
pub fn level_two_13_spec() -> GammaSpec {
    let mut spec = GammaSpec::new(CongruencePattern::gamma0_13_level2(), proof_boundaries(), WORKING_MODULUS);
    spec.extra_normal = torsion_elements();
    spec
}

struct Samples {
    gamma: Vec<IntMatrix>,
    upsilon: Vec<IntMatrix>,
}

fn draw_samples(n: usize, seed: u64) -> Result<Samples> {
    let gamma0 = CongruencePattern::gamma0_13_level2();
    let upsilon = CongruencePattern::upsilon_13_level2();
    let form = gamma0.form().clone();
    let mut gs = WordSampler::new(&preset_generators(&gamma0)?.elements, &form, seed)?;
    let mut us = WordSampler::new(&preset_generators(&upsilon)?.elements, &form, seed ^ 0x5eed)?;
    Ok(Samples {
        gamma: (0..n).map(|_| gs.sample()).collect(),
        upsilon: (0..n).map(|_| us.sample()).collect(),
    })
}

fn pattern_step(s: &Samples) -> Result<Step> {
    let gamma0 = CongruencePattern::gamma0_13_level2();
    let upsilon = CongruencePattern::upsilon_13_level2();
    let form = gamma0.form();
    let n = s.gamma.len();
    let mut counts = [0usize; 5];
    for k in 0..n {
        let g = &s.gamma[k];
        let h = &s.gamma[(k + 1) % n];
        let u = &s.upsilon[k];
        let v = &s.upsilon[(k + 1) % n];
        let g_inv = g.sp_inverse(form)?;
        counts[0] += usize::from(gamma0.is_member(g)? && gamma0.is_member(&(g * h))?);
        counts[1] += usize::from(gamma0.is_member(&g_inv)?);
        counts[2] += usize::from(upsilon.is_member(u)? && upsilon.is_member(&(u * v))?);
        counts[3] += usize::from(upsilon.is_member(&u.sp_inverse(form)?)?);
        counts[4] += usize::from(upsilon.is_member(&(&(g * u) * &g_inv))?);
    }
    Ok(Step::new(
        1,
        "both patterns are closed under products and inverses, and Υ̃ under conjugation by Γ̃⁰ (exact integer samples)",
        "contains the normal subgroup",
    )
    .with("samples", n)
    .with("gamma_products", counts[0])
    .with("gamma_inverses", counts[1])
    .with("upsilon_products", counts[2])
    .with("upsilon_inverses", counts[3])
    .with("upsilon_conjugates", counts[4])
    .pass_if(counts.iter().all(|&c| c == n)))
}

fn line_generator_step() -> Result<Step> {
    let gamma0 = CongruencePattern::gamma0_13_level2();
    let upsilon = CongruencePattern::upsilon_13_level2();
    let m = embed_sl2(&IntMatrix::from_i64(2, &[1, 2, 0, 1]), 1, gamma0.form())?;
    let line = boundary_center_generators(&BoundarySpec::line(vec![1, 0, 0, 0]), &gamma0)?;
    let in_gamma = gamma0.is_member(&m)?;
    let in_upsilon = upsilon.is_member(&m)?;
    let is_generator = line.elements == [m.clone()];
    Ok(Step::new(
        2,
        "M̃₀² = j₁([[1,2],[0,1]]) is the generator of U(F) ∩ Γ̃⁰ for the line ⟨e₁⟩",
        "is in the centre of the unipotent radical of the parabolic subgroup corresponding to the Λ-isotropic line ℚ(1,0,0,0)",
    )
    .with("M0_squared", int_json(&m))
    .with("boundary_generator", line.elements.iter().map(int_json).collect::<Vec<_>>())
    .with("in_gamma0", in_gamma)
    .with("in_upsilon", in_upsilon)
    .pass_if(in_gamma && in_upsilon && is_generator))
}

/// Short products of the Γ̃⁰ presets hitting `(1,0)` and `(0,1)`.
fn find_witnesses(phi: &QuotientMap) -> Result<[Option<IntMatrix>; 2]> {
    let gens = preset_generators(&CongruencePattern::gamma0_13_level2())?.elements;
    let mut found: [Option<IntMatrix>; 2] = [None, None];
    let mut candidates = gens.clone();
    for a in &gens {
        for b in &gens {
            candidates.push(a * b);
        }
    }
    for g in candidates {
        match phi.eval(&g) {
            (1, 0) if found[0].is_none() => found[0] = Some(g),
            (0, 1) if found[1].is_none() => found[1] = Some(g),
            _ => {}
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    Ok(found)
}

struct PhiChecks {
    witnesses: [Option<IntMatrix>; 2],
    multiplicative: usize,
    first_failure: Option<(IntMatrix, IntMatrix)>,
    kernel: usize,
    kernel_failure: Option<IntMatrix>,
}

impl PhiChecks {
    fn run(phi: &QuotientMap, s: &Samples) -> Result<Self> {
        let n = s.gamma.len();
        let mut multiplicative = 0;
        let mut first_failure = None;
        for k in 0..n {
            let a = &s.gamma[k];
            let b = &s.gamma[(k * 7 + 3) % n];
            if phi.eval(&(a * b)) == add2(phi.eval(a), phi.eval(b)) {
                multiplicative += 1;
            } else if first_failure.is_none() {
                first_failure = Some((a.clone(), b.clone()));
            }
        }
        let mut kernel = 0;
        let mut kernel_failure = None;
        for u in &s.upsilon {
            if phi.eval(u) == (0, 0) {
                kernel += 1;
            } else if kernel_failure.is_none() {
                kernel_failure = Some(u.clone());
            }
        }
        Ok(PhiChecks {
            witnesses: find_witnesses(phi)?,
            multiplicative,
            first_failure,
            kernel,
            kernel_failure,
        })
    }

    fn passed(&self, n: usize) -> bool {
        self.witnesses.iter().all(Option::is_some) && self.multiplicative == n && self.kernel == n
    }
}

fn level12_step(caps: &Caps, phi: &QuotientMap, report: &mut VerificationReport) -> Step {
    let step = Step::new(
        6,
        "at working modulus 12: Γ̃⁰ image / Υ̃ image has order 4 with invariants (2,2)",
        "ℤ/2×ℤ/2",
    );
    match level12(caps, phi) {
        Ok((evidence, ok)) => {
            let outside = evidence
                .iter()
                .find(|(k, _)| k == "line_generators_outside_upsilon")
                .and_then(|(_, v)| v.as_array().map(Vec::len))
                .unwrap_or(0);
            if outside > 0 {
                report.notes.push(format!(
                    "{outside} lines ⟨v⟩ with v in {{-1,0,1}}^4 have U(F) ∩ Γ̃⁰ generators outside Υ̃; \
                     the order-4 quotient is relative to the boundaries ⟨e1⟩, ⟨e2⟩, ⟨e1,e2⟩, ⟨e3,e4⟩ only"
                ));
            }
            let mut step = step.pass_if(ok);
            step.evidence.extend(evidence);
            step
        }
        Err(Error::CapExceeded { cap, partial }) => {
            report.cap_exhausted = true;
            step.with("cap", cap)
                .with("partial", partial)
                .skipped("enumeration exceeded the closure cap; steps 1-5 stand as the certificate")
        }
        Err(Error::IndexTooLarge { index, cap }) => {
            report.cap_exhausted = true;
            step.with("index", index)
                .with("cap", cap)
                .skipped("quotient exceeded the quotient cap; steps 1-5 stand as the certificate")
        }
        Err(e) => step.with("error", e.to_string()).pass_if(false),
    }
}

fn level12(caps: &Caps, phi: &QuotientMap) -> Result<(Vec<(String, Value)>, bool)> {
    let spec = level_two_13_spec();
    let upsilon = CongruencePattern::upsilon_13_level2();
    let pi = pi_quotient(&spec, caps)?;
    let group = &pi.gamma_image;
    let pattern_upsilon = filter(group, |g| upsilon.divisibility_holds_mod(g));
    let gens = group.generators_or_elements();
    let normal = is_normal(&pattern_upsilon, &gens)?;
    let by_pattern = quotient_structure(group, &pattern_upsilon, caps.quotient_cap)?;
    let kernel = group.iter().filter(|g| phi.eval_mod(g) == (0, 0)).count();
    let same = pi.upsilon_image.same_set(&pattern_upsilon);

    // Without the torsion elements, and with every short line direction.
    let ctx = GroupContext::new(spec.pattern.form().clone(), WORKING_MODULUS)?;
    let mut boundary_only = Vec::new();
    for b in &spec.boundaries {
        boundary_only.extend(ctx.reduce_all(&boundary_center_generators(b, &spec.pattern)?.elements)?);
    }
    let boundary_only = normal_closure(&ctx, &boundary_only, &gens, caps.closure_cap)?;
    let mut all_lines = Vec::new();
    let mut outside = Vec::new();
    for v in small_directions(4) {
        for u in boundary_center_generators(&BoundarySpec::line(v.clone()), &spec.pattern)?.elements {
            if !upsilon.is_member(&u)? {
                outside.push(json!({ "direction": v, "generator": int_json(&u) }));
            }
            all_lines.push(ctx.reduce(&u)?);
        }
    }
    let all_lines = normal_closure(&ctx, &all_lines, &gens, caps.closure_cap)?;
    let ok = by_pattern.order == 4
        && by_pattern.invariants.as_deref() == Some(&[2, 2][..])
        && normal
        && same
        && kernel == pattern_upsilon.len()
        && pi.quotient.order == 4;
    let evidence = vec![
        ("gamma_image_order".into(), json!(group.len())),
        ("upsilon_pattern_order".into(), json!(pattern_upsilon.len())),
        ("upsilon_pattern_normal".into(), json!(normal)),
        ("quotient".into(), serde_json::to_value(&by_pattern).expect("serializable")),
        ("phi_kernel_order".into(), json!(kernel)),
        ("kernel_equals_upsilon".into(), json!(kernel == pattern_upsilon.len())),
        ("boundary_and_torsion_closure_order".into(), json!(pi.upsilon_image.len())),
        ("boundary_and_torsion_closure_equals_pattern".into(), json!(same)),
        ("boundary_only_closure_order".into(), json!(boundary_only.len())),
        ("all_line_closure_order".into(), json!(all_lines.len())),
        ("line_generators_outside_upsilon".into(), Value::Array(outside)),
    ];
    Ok((evidence, ok))
}

fn external_step(m: &ExternalMatrices, phi: &QuotientMap) -> Result<Step> {
    let step = Step::new(
        7,
        "supplied M̃₃⁴ equals j₂([[1,0],[-6,1]])·M̃₀²M̃₁²M̃₀⁻²M̃₁⁻², and M̃₃², M̃₄² give distinct nonzero classes",
        "We can also generate M̃₃⁴ … but not M̃₃² or M̃₄²",
    );
    let (Some(m0), Some(m1), Some(m3)) = (&m.m0, &m.m1, &m.m3) else {
        return Ok(step.skipped("M0, M1 and M3 are required"));
    };
    let form = PolarizedForm::one_p(3);
    let gamma0 = CongruencePattern::gamma0_13_level2();
    for g in [m0, m1, m3].into_iter().chain(&m.m2).chain(&m.m4) {
        if !g.sp_check(&form)? {
            return Ok(step.with("not_symplectic", int_json(g)).pass_if(false));
        }
    }
    let m0s = m0 * m0;
    let m1s = m1 * m1;
    let j2 = embed_sl2(&IntMatrix::from_i64(2, &[1, 0, -6, 1]), 2, &form)?;
    let rhs = &(&(&j2 * &m0s) * &m1s) * &(&m0s.sp_inverse(&form)? * &m1s.sp_inverse(&form)?);
    let lhs = m3.pow(4);
    let identity = lhs == rhs;
    let mut step = step
        .with("lhs", int_json(&lhs))
        .with("rhs", int_json(&rhs))
        .with("identity_holds", identity);
    if !identity {
        step.put("diff", int_json(&lhs.sub(&rhs)));
    }
    let mut classes = Vec::new();
    for g in [Some(m3), m.m4.as_ref()].into_iter().flatten() {
        let sq = g * g;
        if !gamma0.is_member(&sq)? {
            step.put("square_outside_gamma0", int_json(&sq));
            return Ok(step.pass_if(false));
        }
        classes.push(phi.eval(&sq));
    }
    let nonzero = classes.iter().all(|&c| c != (0, 0));
    let distinct = classes.len() < 2 || classes[0] != classes[1];
    Ok(step
        .with("classes", classes.iter().map(|c| json!([c.0, c.1])).collect::<Vec<_>>())
        .pass_if(identity && nonzero && distinct))
}

fn opt_json(m: &Option<IntMatrix>) -> Value {
    m.as_ref().map_or(Value::Null, int_json)
}

/// Exact and finite-level certificates that `Γ̃⁰/Υ̃ ≅ (Z/2)²` for the `(1,3)`
/// polarisation with level-2 structure.
pub fn verify_thm34(
    caps: &Caps,
    external: Option<&ExternalMatrices>,
    full_quotient: bool,
    seed: u64,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "thm34",
        "Γ̃⁰₁,₃(2) / Υ̃⁰₁,₃(2) ≅ ℤ/2 × ℤ/2",
        seed,
        caps,
    );
    report.param("E", json!([1, 3]));
    report.param("full_quotient", full_quotient);
    let n = caps.samples_or(DEFAULT_PATTERN_SAMPLES);
    let samples = draw_samples(n, seed)?;
    report.push(pattern_step(&samples)?);
    report.push(line_generator_step()?);

    let mut tried = Vec::new();
    let mut chosen = None;
    for phi in &QUOTIENT_MAPS {
        let checks = PhiChecks::run(phi, &samples)?;
        let ok = checks.passed(n);
        tried.push(json!({ "map": phi.describe(), "passed": ok }));
        if ok || chosen.is_none() {
            chosen = Some((*phi, checks));
        }
        if ok {
            break;
        }
    }
    let (phi, checks) = chosen.expect("at least one candidate");
    report.param("phi", phi.describe());
    report.param("phi_candidates", Value::Array(tried));
    report.push(
        Step::new(3, "φ takes the values (1,0) and (0,1) on members of Γ̃⁰", "ℤ/2×ℤ/2")
            .with("phi", phi.describe())
            .with("witness_10", opt_json(&checks.witnesses[0]))
            .with("witness_01", opt_json(&checks.witnesses[1]))
            .pass_if(checks.witnesses.iter().all(Option::is_some)),
    );
    let mut mult = Step::new(4, "φ is multiplicative on sampled pairs", "ℤ/2×ℤ/2")
        .with("pairs", n)
        .with("multiplicative", checks.multiplicative);
    if let Some((a, b)) = &checks.first_failure {
        mult.put("counterexample", json!([int_json(a), int_json(b)]));
    }
    report.push(mult.pass_if(checks.multiplicative == n));
    let mut kern = Step::new(5, "every sampled member of Υ̃ lies in ker φ", "contains the normal subgroup")
        .with("samples", n)
        .with("in_kernel", checks.kernel);
    if let Some(u) = &checks.kernel_failure {
        kern.put("counterexample", int_json(u));
    }
    report.push(kern.pass_if(checks.kernel == n));

    let step6 = if full_quotient {
        level12_step(caps, &phi, &mut report)
    } else {
        Step::new(
            6,
            "at working modulus 12: Γ̃⁰ image / Υ̃ image has order 4 with invariants (2,2)",
            "ℤ/2×ℤ/2",
        )
        .skipped("not requested; steps 1-5 are the property-level certificate")
    };
    report.push(step6);
    if full_quotient {
        report.notes.push(
            "Step 6 is exact: Υ̃ contains Γ(12), so the level-12 images determine Γ̃⁰/Υ̃.".into(),
        );
    }
    let step7 = match external {
        Some(m) => external_step(m, &phi)?,
        None => Step::new(7, "identity for supplied M̃₃⁴", "We can also generate M̃₃⁴").skipped("no matrices supplied"),
    };
    report.push(step7);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::Status;

    fn small_caps() -> Caps {
        Caps {
            samples: Some(500),
            ..Caps::default()
        }
    }

    #[test]
    fn phi_on_simple_elements() {
        let phi = QUOTIENT_MAPS[0];
        assert_eq!(phi.eval(&IntMatrix::identity(4)), (0, 0));
        // (γ - I)_12 = 2 gives the first class, (γ - I)_43 is not read
        let g = &IntMatrix::elementary(4, 0, 1, 2) * &IntMatrix::elementary(4, 3, 2, -2);
        assert_eq!(phi.eval(&g), (1, 0));
        assert_eq!(phi.eval(&IntMatrix::elementary(4, 2, 3, -2)), (0, 1));
        let m = ModMatrix::from_i64(4, 12, &[1, 2, 0, 0, 0, 1, 0, 0, 0, 0, 1, 10, 0, 0, 0, 1]);
        assert_eq!(phi.eval_mod(&m), (1, 1));
    }

    #[test]
    fn default_run_passes_property_steps() {
        let r = verify_thm34(&small_caps(), None, false, 3).unwrap();
        assert!(r.passed(), "{r:#?}");
        for id in 1..=5 {
            assert_eq!(r.step(id).unwrap().status, Status::Pass, "step {id}");
        }
        assert_eq!(r.step(6).unwrap().status, Status::Skipped);
        assert_eq!(r.parameters["phi"], QUOTIENT_MAPS[0].describe());
    }

    #[test]
    fn inconsistent_external_matrices_fail() {
        let m = ExternalMatrices {
            m0: Some(IntMatrix::elementary(4, 0, 2, 1)),
            m1: Some(IntMatrix::identity(4)),
            m3: Some(IntMatrix::identity(4)),
            ..Default::default()
        };
        let r = verify_thm34(&small_caps(), Some(&m), false, 3).unwrap();
        let s = r.step(7).unwrap();
        assert_eq!(s.status, Status::Fail);
        assert!(s.evidence.contains_key("diff"));
        assert!(!r.passed());
    }

    #[test]
    fn tiny_cap_degrades_to_skip() {
        let caps = Caps {
            closure_cap: 1000,
            samples: Some(100),
            ..Caps::default()
        };
        let r = verify_thm34(&caps, None, true, 3).unwrap();
        assert_eq!(r.step(6).unwrap().status, Status::Skipped);
        assert!(r.cap_exhausted);
        assert!(r.passed());
    }
}
