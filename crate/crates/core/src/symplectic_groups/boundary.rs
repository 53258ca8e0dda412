use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::embed::{transvection_direction, transvection_i64};
use super::pattern::CongruencePattern;
use crate::error::{Error, Result};
use crate::exact_algebra::{is_unipotent, smith_normal_form, IntMatrix, PolarizedForm, Symplectic};

/// Default upper bound for the minimal-scaling search.
pub const DEFAULT_SCALING_BOUND: u64 = 144;

/// Word-length bound when moving a plane into standard position.
const STANDARD_POSITION_DEPTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryKind {
    #[serde(alias = "isotropic-line")]
    Line,
    #[serde(alias = "isotropic-plane")]
    Plane,
}

/// A rational isotropic subspace, given by a primitive integral basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub kind: BoundaryKind,
    pub basis: Vec<Vec<i64>>,
}

impl BoundarySpec {
    pub fn line(v: Vec<i64>) -> Self {
        BoundarySpec {
            kind: BoundaryKind::Line,
            basis: vec![v],
        }
    }

    pub fn plane(u: Vec<i64>, w: Vec<i64>) -> Self {
        BoundarySpec {
            kind: BoundaryKind::Plane,
            basis: vec![u, w],
        }
    }

    fn basis_big(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    pub fn validate(&self, form: &PolarizedForm) -> Result<()> {
        let expected = match self.kind {
            BoundaryKind::Line => 1,
            BoundaryKind::Plane => 2,
        };
        if self.basis.len() != expected {
            return Err(Error::InvalidBoundary(format!(
                "{:?} needs {expected} basis vectors, got {}",
                self.kind,
                self.basis.len()
            )));
        }
        for v in &self.basis {
            if v.len() != form.dim() {
                return Err(Error::DimensionMismatch {
                    expected: form.dim(),
                    found: v.len(),
                });
            }
            let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            if g != 1 {
                return Err(Error::InvalidBoundary(format!(
                    "basis vector {v:?} is not primitive"
                )));
            }
        }
        let big = self.basis_big();
        for (i, a) in big.iter().enumerate() {
            for b in &big[i + 1..] {
                if !form.pairing(a, b).is_zero() {
                    return Err(Error::InvalidBoundary("basis is not isotropic".into()));
                }
            }
        }
        if rank(&big) != big.len() {
            return Err(Error::InvalidBoundary("basis is not independent".into()));
        }
        Ok(())
    }
}

/// Labelled set of integral symplectic matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub label: String,
    pub elements: Vec<IntMatrix>,
    pub form: PolarizedForm,
}

impl GeneratorSet {
    pub fn new(label: impl Into<String>, elements: Vec<IntMatrix>, form: PolarizedForm) -> Result<Self> {
        for g in &elements {
            if !g.sp_check(&form)? {
                return Err(Error::NotSymplectic);
            }
        }
        Ok(GeneratorSet {
            label: label.into(),
            elements,
            form,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn rank(vectors: &[Vec<BigInt>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigInt>> = vectors.to_vec();
    let m = IntMatrix::from_rows(&rows).expect("rectangular");
    smith_normal_form(&m).rank()
}

fn same_span(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    let ra = rank(a);
    ra == rank(b) && {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        rank(&all) == ra
    }
}

fn unit_vector(dim: usize, i: usize) -> Vec<BigInt> {
    (0..dim)
        .map(|j| if j == i { BigInt::one() } else { BigInt::zero() })
        .collect()
}

/// Basis of `{ [[0, B], [0, 0]] : E·B symmetric }` for the standard
/// Lagrangian spanned by the first `g` coordinate vectors.
fn standard_lagrangian_directions(form: &PolarizedForm) -> Vec<IntMatrix> {
    let g = form.genus();
    let d = form.dim();
    let e = form.polarization();
    let mut out = Vec::new();
    for i in 0..g {
        let mut n = IntMatrix::zeros(d, d);
        n.set(i, g + i, 1);
        out.push(n);
    }
    for i in 0..g {
        for j in i + 1..g {
            // e_i b_ij = e_j b_ji, minimal integral solution
            let gg = e[i].gcd(&e[j]);
            let mut n = IntMatrix::zeros(d, d);
            n.set(i, g + j, e[j] / gg);
            n.set(j, g + i, e[i] / gg);
            out.push(n);
        }
    }
    out
}

/// Moves the standard Lagrangian onto `target` with an integral symplectic
/// matrix found by bounded word search.
fn standard_position(target: &[Vec<BigInt>], form: &PolarizedForm) -> Result<IntMatrix> {
    let g = form.genus();
    let d = form.dim();
    let std_basis: Vec<Vec<BigInt>> = (0..g).map(|i| unit_vector(d, i)).collect();
    let maps_onto = |s: &IntMatrix| {
        let images: Vec<Vec<BigInt>> = std_basis.iter().map(|v| s.apply(v)).collect();
        same_span(&images, target)
    };

    let mut letters = Vec::new();
    let mut weyl = IntMatrix::zeros(d, d);
    for i in 0..g {
        weyl.set(i, g + i, -1);
        weyl.set(g + i, i, 1);
    }
    letters.push(weyl);
    for i in 0..d {
        for sign in [1, -1] {
            let mut v = vec![0i64; d];
            v[i] = 1;
            letters.push(transvection_i64(&v, sign, form)?);
            for j in i + 1..d {
                for s2 in [1, -1] {
                    let mut w = v.clone();
                    w[j] = s2;
                    letters.push(transvection_i64(&w, sign, form)?);
                }
            }
        }
    }

    let mut frontier = vec![IntMatrix::identity(d)];
    if maps_onto(&frontier[0]) {
        return Ok(frontier.pop().unwrap());
    }
    for _ in 0..STANDARD_POSITION_DEPTH {
        let mut next = Vec::with_capacity(frontier.len() * letters.len());
        for w in &frontier {
            for l in &letters {
                let s = w * l;
                if maps_onto(&s) {
                    return Ok(s);
                }
                next.push(s);
            }
        }
        frontier = next;
    }
    Err(Error::UnsupportedBoundary(format!(
        "no integral symplectic word of length <= {STANDARD_POSITION_DEPTH} moves the standard plane onto it"
    )))
}

/// Nilpotent directions `N_k` spanning the centre of the unipotent radical:
/// `U(F) = { I + Σ c_k N_k }`.
pub fn center_directions(b: &BoundarySpec, form: &PolarizedForm) -> Result<Vec<IntMatrix>> {
    b.validate(form)?;
    let basis = b.basis_big();
    match b.kind {
        BoundaryKind::Line => Ok(vec![transvection_direction(&basis[0], form)?]),
        BoundaryKind::Plane => {
            if form.genus() != 2 {
                return Err(Error::UnsupportedBoundary(
                    "isotropic planes are supported in genus 2 only".into(),
                ));
            }
            let std = standard_lagrangian_directions(form);
            let s = standard_position(&basis, form)?;
            if s.is_identity() {
                return Ok(std);
            }
            let s_inv = s.sp_inverse(form)?;
            Ok(std.iter().map(|n| &(&s * n) * &s_inv).collect())
        }
    }
}

/// Minimal positive scaling of each centre direction satisfying `accept`.
pub fn boundary_center_generators_with<F>(
    b: &BoundarySpec,
    form: &PolarizedForm,
    bound: u64,
    mut accept: F,
) -> Result<GeneratorSet>
where
    F: FnMut(&IntMatrix) -> Result<bool>,
{
    let dirs = center_directions(b, form)?;
    let id = IntMatrix::identity(form.dim());
    let mut elements = Vec::with_capacity(dirs.len());
    for n in &dirs {
        let mut found = None;
        for c in 1..=bound {
            let g = id.add(&n.scale(&BigInt::from(c)));
            if accept(&g)? {
                found = Some(g);
                break;
            }
        }
        elements.push(found.ok_or(Error::NoFiniteScaling(bound))?);
    }
    for (i, g) in elements.iter().enumerate() {
        debug_assert!(is_unipotent(g)?);
        debug_assert!(g.sp_check(form)?);
        for h in &elements[i + 1..] {
            debug_assert_eq!(g * h, h * g);
        }
    }
    let label = match b.kind {
        BoundaryKind::Line => format!("U(F) for line {:?}", b.basis[0]),
        BoundaryKind::Plane => format!("U(F) for plane {:?}, {:?}", b.basis[0], b.basis[1]),
    };
    GeneratorSet::new(label, elements, form.clone())
}

/// Generators of `U(F) ∩ Γ` for the congruence subgroup cut out by `pat`.
pub fn boundary_center_generators(b: &BoundarySpec, pat: &CongruencePattern) -> Result<GeneratorSet> {
    boundary_center_generators_with(b, pat.form(), DEFAULT_SCALING_BOUND, |g| pat.is_member(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic_groups::embed_sl2;

    #[test]
    fn first_line_in_level_two_pattern() {
        let pat = CongruencePattern::gamma0_13_level2();
        let gens = boundary_center_generators(&BoundarySpec::line(vec![1, 0, 0, 0]), &pat).unwrap();
        let expected = embed_sl2(&IntMatrix::from_i64(2, &[1, 2, 0, 1]), 1, pat.form()).unwrap();
        assert_eq!(gens.elements, vec![expected]);
    }

    #[test]
    fn second_line_in_level_two_pattern() {
        // by hand: v^T Λ = (0,0,0,3), so I + 3c E24; least c with 2 | 3c is 2
        let pat = CongruencePattern::gamma0_13_level2();
        let gens = boundary_center_generators(&BoundarySpec::line(vec![0, 1, 0, 0]), &pat).unwrap();
        assert_eq!(gens.elements, vec![IntMatrix::elementary(4, 1, 3, 6)]);
    }

    #[test]
    fn standard_plane_with_trivial_pattern() {
        let pat = CongruencePattern::full(PolarizedForm::standard(2));
        let gens =
            boundary_center_generators(&BoundarySpec::plane(vec![1, 0, 0, 0], vec![0, 1, 0, 0]), &pat)
                .unwrap();
        let mut sym = IntMatrix::identity(4);
        sym.set(0, 3, 1);
        sym.set(1, 2, 1);
        assert_eq!(
            gens.elements,
            vec![
                IntMatrix::elementary(4, 0, 2, 1),
                IntMatrix::elementary(4, 1, 3, 1),
                sym
            ]
        );
    }

    #[test]
    fn opposite_plane_is_moved_into_position() {
        let pat = CongruencePattern::gamma0_13_level2();
        let b = BoundarySpec::plane(vec![0, 0, 1, 0], vec![0, 0, 0, 1]);
        let gens = boundary_center_generators(&b, &pat).unwrap();
        assert_eq!(gens.len(), 3);
        for g in &gens.elements {
            assert!(pat.is_member(g).unwrap());
            assert!(is_unipotent(g).unwrap());
            // fixes the plane pointwise
            for i in [2, 3] {
                let e = unit_vector(4, i);
                assert_eq!(g.apply(&e), e);
            }
        }
        for g in &gens.elements {
            for h in &gens.elements {
                assert_eq!(g * h, h * g);
            }
        }
    }

    #[test]
    fn skew_plane_needs_search() {
        let f = PolarizedForm::standard(2);
        let pat = CongruencePattern::principal(f.clone(), 3);
        // (1,0,0,0),(0,1,1,0): <e1, e2+e3> = 1 → not isotropic
        let bad = BoundarySpec::plane(vec![1, 0, 0, 0], vec![0, 1, 1, 0]);
        assert!(matches!(
            boundary_center_generators(&bad, &pat),
            Err(Error::InvalidBoundary(_))
        ));
        let ok = BoundarySpec::plane(vec![1, 0, 0, 1], vec![0, 1, 1, 0]);
        let gens = boundary_center_generators(&ok, &pat).unwrap();
        for g in &gens.elements {
            assert!(pat.is_member(g).unwrap());
            for v in &ok.basis_big() {
                assert_eq!(&g.apply(v), v);
            }
        }
    }

    #[test]
    fn invalid_boundaries() {
        let f = PolarizedForm::standard(2);
        let pat = CongruencePattern::full(f);
        assert!(boundary_center_generators(&BoundarySpec::line(vec![2, 0, 0, 0]), &pat).is_err());
        assert!(boundary_center_generators(
            &BoundarySpec::plane(vec![1, 0, 0, 0], vec![1, 0, 0, 0]),
            &pat
        )
        .is_err());
        assert!(boundary_center_generators(&BoundarySpec::line(vec![1, 0, 0]), &pat).is_err());
    }

    #[test]
    fn boundary_json_shape() {
        let b: BoundarySpec = serde_json::from_str(r#"{"kind":"line","basis":[[1,0,0,0]]}"#).unwrap();
        assert_eq!(b, BoundarySpec::line(vec![1, 0, 0, 0]));
        let p: BoundarySpec =
            serde_json::from_str(r#"{"kind":"isotropic-plane","basis":[[1,0,0,0],[0,1,0,0]]}"#).unwrap();
        assert_eq!(p.kind, BoundaryKind::Plane);
    }
}
