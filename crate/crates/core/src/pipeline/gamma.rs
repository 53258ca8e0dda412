use serde_json::{json, Value};

use super::report::Caps;
use crate::cli::formats::int_json;
use crate::engine::{closure, normal_closure, quotient_structure, ElementTable, GroupContext, QuotientReport};
use crate::error::{Error, Result};
use crate::exact_algebra::IntMatrix;
use crate::symplectic_groups::{
    boundary_center_generators, preset_generators, BoundarySpec, CongruencePattern, GeneratorSet,
};

/// An arithmetic group `Γ` given by a congruence pattern, with the boundary
/// components whose unipotent centres generate `Υ`.
#[derive(Clone, Debug)]
pub struct GammaSpec {
    pub pattern: CongruencePattern,
    pub explicit_generators: Option<GeneratorSet>,
    pub boundaries: Vec<BoundarySpec>,
    pub working_modulus: u64,
    /// Further elements put into `Υ` (for instance torsion acting trivially).
    pub extra_normal: Vec<IntMatrix>,
}

impl GammaSpec {
    pub fn new(pattern: CongruencePattern, boundaries: Vec<BoundarySpec>, working_modulus: u64) -> Self {
        GammaSpec {
            pattern,
            explicit_generators: None,
            boundaries,
            working_modulus,
            extra_normal: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundaries.is_empty() {
            return Err(Error::Precondition("at least one boundary component is required".into()));
        }
        if self.working_modulus % self.pattern.level() != 0 {
            return Err(Error::Precondition(format!(
                "working modulus {} is not a multiple of the pattern level {}",
                self.working_modulus,
                self.pattern.level()
            )));
        }
        for b in &self.boundaries {
            b.validate(self.pattern.form())?;
        }
        let explicit = self.explicit_generators.iter().flat_map(|g| g.elements.iter());
        for g in explicit.chain(&self.extra_normal) {
            if !self.pattern.is_member(g)? {
                return Err(Error::Input(format!("generator {g} is not in the pattern group")));
            }
        }
        Ok(())
    }

    fn generators(&self) -> Result<GeneratorSet> {
        match &self.explicit_generators {
            Some(g) => Ok(g.clone()),
            None => preset_generators(&self.pattern),
        }
    }
}

/// Finite-level image of `Π(Γ) = Γ/Υ`.
pub struct PiQuotient {
    pub gamma_image: ElementTable,
    pub upsilon_image: ElementTable,
    pub boundary_generators: Vec<IntMatrix>,
    pub quotient: QuotientReport,
}

/// What a finite-level result says about `Π(Γ)`.
pub const BOUND_NOTE: &str = "The result is computed in the reduction of Γ modulo the working modulus. \
Υ is replaced by the normal closure of the listed boundary generators. If the list meets every Γ-class \
of boundary components, the result is a quotient of Π(Γ). With fewer boundaries it can only be larger \
than the true image, so it is an upper-bound certificate.";

impl PiQuotient {
    pub fn summary(&self) -> Value {
        json!({
            "gamma_image_order": self.gamma_image.len(),
            "upsilon_image_order": self.upsilon_image.len(),
            "boundary_generators": self.boundary_generators.iter().map(int_json).collect::<Vec<_>>(),
            "quotient": serde_json::to_value(&self.quotient).expect("serializable"),
            "bound": BOUND_NOTE,
        })
    }
}

/// Computes `U(F) ∩ Γ` generators, reduces everything, and forms
/// `Γ_n / ⟨⟨U(F) ∩ Γ⟩⟩_n`.
///
/// The boundary generators are added to the generators of `Γ`, so the
/// `Υ` image always lies inside the `Γ` image.
pub fn pi_quotient(spec: &GammaSpec, caps: &Caps) -> Result<PiQuotient> {
    spec.validate()?;
    let ctx = GroupContext::new(spec.pattern.form().clone(), spec.working_modulus)?;
    let mut boundary_generators = Vec::new();
    for b in &spec.boundaries {
        for g in boundary_center_generators(b, &spec.pattern)?.elements {
            if !boundary_generators.contains(&g) {
                boundary_generators.push(g);
            }
        }
    }
    let mut upsilon_gens = ctx.reduce_all(&boundary_generators)?;
    upsilon_gens.extend(ctx.reduce_all(&spec.extra_normal)?);
    let mut gamma_gens = ctx.reduce_all(&spec.generators()?.elements)?;
    gamma_gens.extend(upsilon_gens.iter().cloned());
    let gamma_image = closure(&ctx, &gamma_gens, caps.closure_cap)?;
    let upsilon_image = normal_closure(&ctx, &upsilon_gens, &gamma_gens, caps.closure_cap)?;
    let quotient = quotient_structure(&gamma_image, &upsilon_image, caps.quotient_cap)?;
    Ok(PiQuotient {
        gamma_image,
        upsilon_image,
        boundary_generators,
        quotient,
    })
}
