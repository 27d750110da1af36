//! Piecewise Laurent polynomials: one element of `Z[M / σ^⊥ ∩ M]` per cone,
//! compatible under restriction to faces.

use alloc::vec::Vec;

use crate::cone::Cone;
use crate::fan::Fan;
use crate::gkm::{GkmGraph, KClass};
use crate::lattice::{quotient, QuotientLattice};
use crate::laurent::{LaurentPoly, QuotientRingElem};
use crate::{Error, Result};

/// The quotient `M / (σ^⊥ ∩ M)` carrying the ring of functions on `σ`.
pub fn cone_quotient(sigma: &Cone) -> QuotientLattice {
    quotient(sigma.ambient_rank(), sigma.perp())
}

/// `ψ_{σ,σ'}`: restriction of a function on `sigma_prime` to its face `sigma`.
pub fn restriction_map(
    sigma: &Cone,
    sigma_prime: &Cone,
    x: &QuotientRingElem,
) -> Result<QuotientRingElem> {
    if !sigma.is_face_of(sigma_prime) {
        return Err(Error::NotAFace);
    }
    let from = cone_quotient(sigma_prime);
    if x.quotient() != &from {
        return Err(Error::QuotientMismatch);
    }
    let to = cone_quotient(sigma);
    let map = to.projection.mul(&from.section);
    QuotientRingElem::new(to, x.poly().map_exponents(&map))
}

/// Components indexed like [`Fan::cones`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlpFunction {
    components: Vec<QuotientRingElem>,
}

/// Covering face relations `(face, cone)` where restriction disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlpReport {
    pub violations: Vec<(usize, usize)>,
}

impl PlpReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl PlpFunction {
    /// Checks that each component lives over its cone's quotient; does not
    /// check compatibility (see [`validate_plp`]).
    pub fn new(fan: &Fan, components: Vec<QuotientRingElem>) -> Result<Self> {
        if components.len() != fan.cones().len() {
            return Err(Error::ComponentCount {
                expected: fan.cones().len(),
                found: components.len(),
            });
        }
        for (c, x) in fan.cones().iter().zip(&components) {
            if x.quotient() != &cone_quotient(c) {
                return Err(Error::QuotientMismatch);
            }
        }
        Ok(PlpFunction { components })
    }

    /// The family `(a mod J_σ)_σ`.
    pub fn constant(fan: &Fan, a: &LaurentPoly) -> Result<Self> {
        let components = fan
            .cones()
            .iter()
            .map(|c| QuotientRingElem::project(&cone_quotient(c), a))
            .collect::<Result<_>>()?;
        Ok(PlpFunction { components })
    }

    pub fn components(&self) -> &[QuotientRingElem] {
        &self.components
    }

    pub fn component(&self, cone_idx: usize) -> Result<&QuotientRingElem> {
        self.components.get(cone_idx).ok_or(Error::IndexOutOfRange {
            index: cone_idx,
            len: self.components.len(),
        })
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&QuotientRingElem, &QuotientRingElem) -> Result<QuotientRingElem>,
    ) -> Result<Self> {
        if self.components.len() != other.components.len() {
            return Err(Error::ComponentCount {
                expected: self.components.len(),
                found: other.components.len(),
            });
        }
        Ok(PlpFunction {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, QuotientRingElem::checked_add)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, QuotientRingElem::checked_mul)
    }
}

/// Checks compatibility along every covering face relation.
pub fn validate_plp(fan: &Fan, p: &PlpFunction) -> Result<PlpReport> {
    if p.components.len() != fan.cones().len() {
        return Err(Error::ComponentCount {
            expected: fan.cones().len(),
            found: p.components.len(),
        });
    }
    let cones = fan.cones();
    let mut violations = Vec::new();
    for c in 0..cones.len() {
        for f in fan.facet_indices(c) {
            let image = restriction_map(&cones[f], &cones[c], &p.components[c])?;
            if image != p.components[f] {
                violations.push((f, c));
            }
        }
    }
    Ok(PlpReport { violations })
}

fn require_complete(g: &GkmGraph, fan: &Fan, m: usize) -> Result<()> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if g.m() != fan.max_cones().len() || m != g.m() {
        return Err(Error::ComponentCount {
            expected: g.m(),
            found: m,
        });
    }
    Ok(())
}

/// The image of a GKM class: `a_i mod J_γ` for any maximal `σ_i ⊇ γ`.
///
/// Every containing maximal cone is tried and the results must agree.
pub fn from_kclass(g: &GkmGraph, fan: &Fan, a: &KClass) -> Result<PlpFunction> {
    require_complete(g, fan, a.len())?;
    let mut components = Vec::with_capacity(fan.cones().len());
    for (idx, gamma) in fan.cones().iter().enumerate() {
        let q = cone_quotient(gamma);
        let mut value: Option<QuotientRingElem> = None;
        for &i in fan.containing_max(idx) {
            let r = QuotientRingElem::project(&q, &a.components()[i])?;
            match &value {
                None => value = Some(r),
                Some(v) if *v != r => return Err(Error::IllDefinedRestriction { cone: idx }),
                Some(_) => {}
            }
        }
        components.push(value.ok_or(Error::IllDefinedRestriction { cone: idx })?);
    }
    Ok(PlpFunction { components })
}

/// Reads off the components at the maximal cones.
pub fn to_kclass(g: &GkmGraph, fan: &Fan, p: &PlpFunction) -> Result<KClass> {
    require_complete(g, fan, fan.max_cones().len())?;
    if p.components.len() != fan.cones().len() {
        return Err(Error::ComponentCount {
            expected: fan.cones().len(),
            found: p.components.len(),
        });
    }
    let comps = fan
        .max_cones()
        .iter()
        .map(|s| {
            let x = &p.components[fan.cone_index(s).expect("maximal cones are cones")];
            x.poly().map_exponents(&x.quotient().section)
        })
        .collect();
    g.kclass(comps)
}
