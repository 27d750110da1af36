//! Rational polyhedral cones with both generator and inequality descriptions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::lattice::{
    annihilator, saturate, smith_normal_form, solve_integer, LatticeMatrix, LatticeVector,
    QuotientLattice,
};
use crate::{Error, Result};

/// A strongly convex rational polyhedral cone.
///
/// `rays` are the primitive generators of the extremal rays, sorted
/// lexicographically. `facets` are inward normals in `M`: every ray pairs
/// nonnegatively with each facet, and together with `perp` (a basis of
/// `σ^⊥ ∩ M`) they cut out exactly the cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone {
    dim: usize,
    ambient_rank: usize,
    rays: Vec<LatticeVector>,
    facets: Vec<LatticeVector>,
    perp: Vec<LatticeVector>,
}

impl Cone {
    pub fn zero(ambient_rank: usize) -> Cone {
        Cone {
            dim: 0,
            ambient_rank,
            rays: Vec::new(),
            facets: Vec::new(),
            perp: annihilator(ambient_rank, &[]).column_vectors(),
        }
    }

    /// Builds a cone from generators, computing its facets.
    ///
    /// Generators are made primitive and non-extremal ones are dropped.
    pub fn from_rays(ambient_rank: usize, generators: &[LatticeVector]) -> Result<Cone> {
        let n = ambient_rank;
        let mut gens = BTreeSet::new();
        for g in generators {
            if g.rank() != n {
                return Err(Error::RankMismatch {
                    expected: n,
                    found: g.rank(),
                });
            }
            gens.insert(g.primitive()?);
        }
        if gens.is_empty() {
            return Ok(Cone::zero(n));
        }
        let gens: Vec<LatticeVector> = gens.into_iter().collect();

        // work in coordinates of the saturated span, where the cone is
        // full-dimensional; facets there are the extreme rays of the dual cone
        let span = saturate(n, &gens);
        let d = span.cols();
        let coords: Vec<LatticeVector> = gens
            .iter()
            .map(|g| solve_integer(&span, g).expect("generator lies in its own saturated span"))
            .collect();
        let local_facets = extreme_rays(d, &[], &coords);
        if LatticeMatrix::from_rows(d, &local_facets).rank() < d {
            return Err(Error::NotStronglyConvex);
        }

        let rays: Vec<LatticeVector> = gens
            .iter()
            .zip(&coords)
            .filter(|(_, y)| {
                let tight: Vec<LatticeVector> = local_facets
                    .iter()
                    .filter(|f| f.dot(y).is_zero())
                    .cloned()
                    .collect();
                LatticeMatrix::from_rows(d, &tight).rank() + 1 == d
            })
            .map(|(g, _)| g.clone())
            .collect();

        let span_t = span.transpose();
        let mut facets: Vec<LatticeVector> = local_facets
            .iter()
            .map(|f| solve_integer(&span_t, f).expect("saturated span: restriction is surjective"))
            .collect();
        facets.sort();

        Ok(Cone {
            dim: d,
            ambient_rank: n,
            perp: annihilator(n, &rays).column_vectors(),
            rays,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn facets(&self) -> &[LatticeVector] {
        &self.facets
    }

    /// Basis of `σ^⊥ ∩ M`.
    pub fn perp(&self) -> &[LatticeVector] {
        &self.perp
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn ray_matrix(&self) -> LatticeMatrix {
        LatticeMatrix::from_columns(self.ambient_rank, &self.rays)
    }

    pub fn span_contains(&self, x: &LatticeVector) -> bool {
        self.perp.iter().all(|u| u.dot(x).is_zero())
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.span_contains(x) && self.facets.iter().all(|u| !u.dot(x).is_negative())
    }

    pub fn rel_interior_contains(&self, x: &LatticeVector) -> bool {
        self.span_contains(x) && self.facets.iter().all(|u| u.dot(x).is_positive())
    }

    /// Every face, including `{0}` and the cone itself, sorted by dimension.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeMap<Vec<LatticeVector>, Cone> = BTreeMap::new();
        let mut stack = vec![self.clone()];
        while let Some(c) = stack.pop() {
            if seen.contains_key(&c.rays) {
                continue;
            }
            for u in &c.facets {
                let sub: Vec<LatticeVector> = c
                    .rays
                    .iter()
                    .filter(|r| u.dot(r).is_zero())
                    .cloned()
                    .collect();
                if !seen.contains_key(&sub) {
                    stack.push(Cone::from_rays(self.ambient_rank, &sub).expect("faces are cones"));
                }
            }
            seen.insert(c.rays.clone(), c);
        }
        let mut out: Vec<Cone> = seen.into_values().collect();
        out.sort();
        out
    }

    /// True when `self` is a face of `other`.
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if self.ambient_rank != other.ambient_rank
            || !self.rays.iter().all(|r| other.rays.contains(r))
        {
            return false;
        }
        let vanishing: Vec<&LatticeVector> = other
            .facets
            .iter()
            .filter(|u| self.rays.iter().all(|r| u.dot(r).is_zero()))
            .collect();
        let closure: Vec<&LatticeVector> = other
            .rays
            .iter()
            .filter(|r| vanishing.iter().all(|u| u.dot(r).is_zero()))
            .collect();
        closure.len() == self.rays.len()
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let eqs: Vec<LatticeVector> = self.perp.iter().chain(&other.perp).cloned().collect();
        let ineqs: Vec<LatticeVector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let rays = extreme_rays(self.ambient_rank, &eqs, &ineqs);
        Cone::from_rays(self.ambient_rank, &rays).expect("intersection of pointed cones is pointed")
    }

    /// Simplicial with primitive rays extending to a lattice basis.
    pub fn is_smooth(&self) -> bool {
        if self.rays.len() != self.dim {
            return false;
        }
        let snf = smith_normal_form(&self.ray_matrix());
        snf.rank() == self.dim && snf.invariant_factors().iter().all(One::is_one)
    }

    /// Image of `self` in `N / N_f`, where `q` is the quotient by the span of
    /// the face `f`.
    pub fn quotient_cone(&self, f: &Cone, q: &QuotientLattice) -> Result<Cone> {
        if !f.is_face_of(self) {
            return Err(Error::NotAFace);
        }
        if q.ambient_rank != self.ambient_rank {
            return Err(Error::RankMismatch {
                expected: self.ambient_rank,
                found: q.ambient_rank,
            });
        }
        if !f.rays.iter().all(|r| q.project(r).is_zero()) {
            return Err(Error::NotAFace);
        }
        let images: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| q.project(r))
            .filter(|r| !r.is_zero())
            .collect();
        Cone::from_rays(q.rank(), &images)
    }
}

/// Free-function form of [`Cone::from_rays`].
pub fn dual_description(ambient_rank: usize, rays: &[LatticeVector]) -> Result<Cone> {
    Cone::from_rays(ambient_rank, rays)
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Primitive extreme rays of the pointed cone
/// `{x : <e, x> = 0 for e in eqs, <a, x> >= 0 for a in ineqs}`.
///
/// A ray is extreme exactly when its active constraints have rank `n - 1`,
/// so candidates are the one-dimensional kernels of `eqs` plus `k`
/// inequalities.
pub(crate) fn extreme_rays(
    n: usize,
    eqs: &[LatticeVector],
    ineqs: &[LatticeVector],
) -> Vec<LatticeVector> {
    let eq_rank = LatticeMatrix::from_rows(n, eqs).rank();
    if eq_rank >= n {
        return Vec::new();
    }
    let k = n - 1 - eq_rank;
    let mut found = BTreeSet::new();
    for_each_combination(ineqs.len(), k, |combo| {
        let mut rows: Vec<LatticeVector> = eqs.to_vec();
        rows.extend(combo.iter().map(|&i| ineqs[i].clone()));
        let ker = annihilator(n, &rows);
        if ker.cols() != 1 {
            return;
        }
        let g = ker.column(0);
        for cand in [g.clone(), -&g] {
            if ineqs.iter().all(|a| !a.dot(&cand).is_negative()) {
                found.insert(cand);
            }
        }
    });
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::quotient;

    fn lv(d: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(d)
    }

    fn cone(n: usize, rays: &[&[i64]]) -> Cone {
        let rays: Vec<LatticeVector> = rays.iter().map(|r| lv(r)).collect();
        Cone::from_rays(n, &rays).unwrap()
    }

    fn sigma4() -> Cone {
        cone(3, &[&[0, 0, 1], &[0, 1, 1], &[1, 0, 1], &[1, 1, 1]])
    }

    fn check_invariants(c: &Cone) {
        for r in c.rays() {
            assert!(r.is_primitive());
            assert!(c.facets().iter().all(|u| !u.dot(r).is_negative()));
            assert!(c.span_contains(r));
        }
        for u in c.facets() {
            assert!(u.is_primitive());
            assert!(c.rays().iter().any(|r| u.dot(r).is_zero()));
            assert!(c.rays().iter().any(|r| !u.dot(r).is_zero()));
        }
    }

    #[test]
    fn quadrant_is_self_dual() {
        let c = cone(2, &[&[1, 0], &[0, 1]]);
        assert_eq!(c.facets(), [lv(&[0, 1]), lv(&[1, 0])]);
        assert_eq!(c.dim(), 2);
        check_invariants(&c);
    }

    #[test]
    fn non_simplicial_pyramid() {
        let c = sigma4();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        check_invariants(&c);
        assert!(!c.is_smooth());
        assert_eq!(c.faces().len(), 10);
    }

    #[test]
    fn facets_of_sigma1() {
        let c = cone(2, &[&[1, 0], &[4, 1]]);
        assert_eq!(c.facets(), [lv(&[0, 1]), lv(&[1, -4])]);
        check_invariants(&c);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = cone(3, &[&[1, 0, 0], &[1, 1, 0]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.perp(), [lv(&[0, 0, 1])]);
        check_invariants(&c);
        assert!(c.rel_interior_contains(&lv(&[2, 1, 0])));
        assert!(!c.contains(&lv(&[2, 1, 1])));
        assert!(!c.contains(&lv(&[0, 1, 0])));
    }

    #[test]
    fn drops_redundant_generators() {
        let c = cone(2, &[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(c.rays(), [lv(&[0, 1]), lv(&[1, 0])]);
    }

    #[test]
    fn rejects_lines() {
        let r = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0])]);
        assert_eq!(r, Err(Error::NotStronglyConvex));
        let r = Cone::from_rays(2, &[lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])]);
        assert_eq!(r, Err(Error::NotStronglyConvex));
        assert_eq!(Cone::from_rays(2, &[lv(&[0, 0])]), Err(Error::ZeroVector));
    }

    #[test]
    fn face_enumeration() {
        let c = cone(2, &[&[1, 0], &[4, 1]]);
        let faces = c.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces[0].is_zero());
        assert_eq!(faces[3], c);
        assert_eq!(Cone::zero(2).faces(), [Cone::zero(2)]);
        for f in &faces {
            assert!(f.is_face_of(&c));
        }
        // closed under intersection
        let faces = sigma4().faces();
        for a in &faces {
            for b in &faces {
                let i = a.intersection(b);
                assert!(faces.contains(&i));
            }
        }
    }

    #[test]
    fn membership() {
        let s1 = cone(2, &[&[1, 0], &[4, 1]]);
        let s2 = cone(2, &[&[2, 1], &[4, 1]]);
        let v = lv(&[5, 1]);
        assert!(s1.rel_interior_contains(&v));
        assert!(!s2.contains(&v));
        let z = lv(&[0, 0]);
        assert!(s1.contains(&z) && !s1.rel_interior_contains(&z));
        assert!(Cone::zero(2).rel_interior_contains(&z));
        assert!(s1.contains(&lv(&[4, 1])) && !s1.rel_interior_contains(&lv(&[4, 1])));
    }

    #[test]
    fn quotient_cones() {
        let s2 = cone(2, &[&[2, 1], &[4, 1]]);
        let tau = cone(2, &[&[2, 1]]);
        let q = quotient(2, tau.rays());
        let bar = s2.quotient_cone(&tau, &q).unwrap();
        assert_eq!(bar.dim(), 1);
        assert!(bar.is_smooth());
        assert_eq!(bar.rays(), [lv(&[1])]);

        let zero = Cone::zero(2);
        let same = s2.quotient_cone(&zero, &quotient(2, &[])).unwrap();
        assert_eq!(same, s2);

        let s4 = sigma4();
        let e3 = cone(3, &[&[0, 0, 1]]);
        let bar = s4.quotient_cone(&e3, &quotient(3, e3.rays())).unwrap();
        assert_eq!(bar.rays(), [lv(&[0, 1]), lv(&[1, 0])]);
        assert!(bar.is_smooth());

        let not_face = cone(2, &[&[3, 1]]);
        assert_eq!(
            s2.quotient_cone(&not_face, &quotient(2, not_face.rays())),
            Err(Error::NotAFace)
        );
    }

    #[test]
    fn smoothness() {
        assert!(cone(2, &[&[1, 0], &[4, 1]]).is_smooth());
        assert!(!cone(2, &[&[2, 1], &[4, 1]]).is_smooth());
        assert!(!sigma4().is_smooth());
        assert!(Cone::zero(3).is_smooth());
    }

    #[test]
    fn combinations() {
        let mut all = Vec::new();
        for_each_combination(4, 2, |c| all.push(c.to_vec()));
        assert_eq!(all.len(), 6);
        let mut empty = 0;
        for_each_combination(3, 0, |_| empty += 1);
        assert_eq!(empty, 1);
    }
}
