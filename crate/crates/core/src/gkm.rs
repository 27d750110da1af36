//! The GKM graph of a complete cellular fan and the ring of congruence
//! tuples it cuts out of `Z[M]^m`.

use alloc::vec::Vec;

use crate::cellular::CellularCertificate;
use crate::fan::Fan;
use crate::lattice::{annihilator, LatticeVector};
use crate::laurent::{divides_euler, LaurentPoly};
use crate::{Error, Result};

/// Maximal cones `i < j` sharing a wall, with the primitive character
/// spanning the wall's annihilator (first nonzero entry positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmEdge {
    pub i: usize,
    pub j: usize,
    pub chi: LatticeVector,
}

#[derive(Clone, Debug)]
pub struct GkmGraph {
    m: usize,
    rank: usize,
    edges: Vec<GkmEdge>,
    order: Vec<usize>,
    position: Vec<usize>,
}

/// Result of a membership test: the edges whose congruence fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub violated: Vec<(usize, usize)>,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        self.violated.is_empty()
    }
}

pub fn build_gkm(fan: &Fan, cert: &CellularCertificate) -> Result<GkmGraph> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = fan.rank();
    let m = fan.max_cones().len();
    if cert.order.len() != m {
        return Err(Error::ComponentCount {
            expected: m,
            found: cert.order.len(),
        });
    }
    let edges = fan
        .walls()
        .iter()
        .map(|w| {
            let ann = annihilator(n, w.cone.rays());
            debug_assert_eq!(ann.cols(), 1);
            GkmEdge {
                i: w.i,
                j: w.j,
                chi: ann.column(0).sign_normalized(),
            }
        })
        .collect();
    Ok(GkmGraph {
        m,
        rank: n,
        edges,
        order: cert.order.clone(),
        position: cert.position.clone(),
    })
}

impl GkmGraph {
    /// Number of vertices (maximal cones).
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[GkmEdge] {
        &self.edges
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self) -> &[usize] {
        &self.position
    }

    /// `(neighbor, character)` pairs of vertex `i`, by neighbor index.
    pub fn neighbors(&self, i: usize) -> Vec<(usize, &LatticeVector)> {
        let mut out: Vec<(usize, &LatticeVector)> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.i == i {
                    Some((e.j, &e.chi))
                } else if e.j == i {
                    Some((e.i, &e.chi))
                } else {
                    None
                }
            })
            .collect();
        out.sort_by_key(|(j, _)| *j);
        out
    }

    fn check_shape(&self, t: &[LaurentPoly]) -> Result<()> {
        if t.len() != self.m {
            return Err(Error::ComponentCount {
                expected: self.m,
                found: t.len(),
            });
        }
        if let Some(p) = t.iter().find(|p| p.rank() != self.rank) {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: p.rank(),
            });
        }
        Ok(())
    }

    /// Checks `t_i ≡ t_j mod (1 - e^χ)` on every edge.
    pub fn is_member(&self, t: &[LaurentPoly]) -> Result<Membership> {
        self.check_shape(t)?;
        let mut violated = Vec::new();
        for e in &self.edges {
            if !divides_euler(&(&t[e.i] - &t[e.j]), &e.chi)? {
                violated.push((e.i, e.j));
            }
        }
        Ok(Membership { violated })
    }

    /// Wraps a tuple as a class, rejecting non-members.
    pub fn kclass(&self, components: Vec<LaurentPoly>) -> Result<KClass> {
        let mem = self.is_member(&components)?;
        if !mem.is_member() {
            return Err(Error::NotMember {
                violations: mem.violated,
            });
        }
        Ok(KClass { components })
    }

    /// Diagonal image of `a`.
    pub fn from_rep(&self, a: &LaurentPoly) -> KClass {
        KClass::from_rep(a, self.m)
    }
}

/// A member of the GKM ring, stored as its fixed-point restrictions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KClass {
    components: Vec<LaurentPoly>,
}

impl KClass {
    /// `(a, a, ..., a)`; always a member.
    pub fn from_rep(a: &LaurentPoly, m: usize) -> KClass {
        KClass {
            components: alloc::vec![a.clone(); m],
        }
    }

    pub fn zero(rank: usize, m: usize) -> KClass {
        Self::from_rep(&LaurentPoly::zero(rank), m)
    }

    pub fn one(rank: usize, m: usize) -> KClass {
        Self::from_rep(&LaurentPoly::one(rank), m)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(LaurentPoly::is_zero)
    }

    pub fn components(&self) -> &[LaurentPoly] {
        &self.components
    }

    pub fn into_components(self) -> Vec<LaurentPoly> {
        self.components
    }

    /// Restriction to the fixed point of maximal cone `i`.
    pub fn restrict(&self, i: usize) -> Result<&LaurentPoly> {
        self.components.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.components.len(),
        })
    }

    fn zip_with(
        &self,
        other: &KClass,
        f: impl Fn(&LaurentPoly, &LaurentPoly) -> Result<LaurentPoly>,
    ) -> Result<KClass> {
        if self.len() != other.len() {
            return Err(Error::ComponentCount {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(KClass {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| f(a, b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn add(&self, other: &KClass) -> Result<KClass> {
        self.zip_with(other, LaurentPoly::checked_add)
    }

    pub fn sub(&self, other: &KClass) -> Result<KClass> {
        self.zip_with(other, LaurentPoly::checked_sub)
    }

    pub fn mul(&self, other: &KClass) -> Result<KClass> {
        self.zip_with(other, LaurentPoly::checked_mul)
    }

    /// Module action of `Z[M]` through the diagonal.
    pub fn scale(&self, a: &LaurentPoly) -> Result<KClass> {
        Ok(KClass {
            components: self
                .components
                .iter()
                .map(|c| a.checked_mul(c))
                .collect::<Result<_>>()?,
        })
    }
}
