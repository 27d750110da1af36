//! Fans given by their maximal cones.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cone::Cone;
use crate::lattice::{quotient, LatticeVector, QuotientLattice};
use crate::{Error, Result};

/// Two maximal cones meeting in a codimension-one cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub i: usize,
    pub j: usize,
    pub cone: Cone,
}

/// A failed fan axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyFan,
    DuplicateRay {
        first: usize,
        second: usize,
    },
    /// The intersection of maximal cones `i` and `j` is not a face of both.
    IntersectionNotFace {
        i: usize,
        j: usize,
    },
    /// Maximal cone `i` is a face of maximal cone `j`.
    NotMaximal {
        i: usize,
        j: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyFan => write!(f, "empty fan"),
            Violation::DuplicateRay { first, second } => {
                write!(f, "duplicate ray: rays {first} and {second} coincide")
            }
            Violation::IntersectionNotFace { i, j } => {
                write!(f, "intersection not a face: cones {i} and {j}")
            }
            Violation::NotMaximal { i, j } => {
                write!(f, "listed cone {i} is a face of cone {j}")
            }
        }
    }
}

/// A fan in `N = Z^n`, stored as its maximal cones plus every face.
#[derive(Clone, Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Cone>,
    cones: Vec<Cone>,
    // maximal cones containing each cone of `cones`
    containing: Vec<Vec<usize>>,
    walls: Vec<Wall>,
    violations: Vec<Violation>,
}

impl Fan {
    /// Builds a fan from rays and maximal cones given as ray indices.
    ///
    /// Rays are replaced by their primitive generators. Fan axioms are not
    /// enforced here; see [`Fan::validate`].
    pub fn new(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let rays = rays
            .iter()
            .map(|r| {
                if r.rank() != rank {
                    return Err(Error::RankMismatch {
                        expected: rank,
                        found: r.rank(),
                    });
                }
                r.primitive()
            })
            .collect::<Result<Vec<_>>>()?;
        let max = max_cones
            .iter()
            .map(|idx| {
                let gens = idx
                    .iter()
                    .map(|&k| {
                        rays.get(k)
                            .cloned()
                            .ok_or(Error::RayIndexOutOfRange { index: k })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Cone::from_rays(rank, &gens)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_cones(rank, rays, max))
    }

    fn from_cones(rank: usize, rays: Vec<LatticeVector>, max_cones: Vec<Cone>) -> Fan {
        let mut violations = Vec::new();
        if max_cones.is_empty() {
            violations.push(Violation::EmptyFan);
        }
        for a in 0..rays.len() {
            for b in a + 1..rays.len() {
                if rays[a] == rays[b] {
                    violations.push(Violation::DuplicateRay {
                        first: a,
                        second: b,
                    });
                }
            }
        }

        let mut all = BTreeSet::new();
        for c in &max_cones {
            all.extend(c.faces());
        }
        let cones: Vec<Cone> = all.into_iter().collect();
        let containing = cones
            .iter()
            .map(|c| {
                (0..max_cones.len())
                    .filter(|&i| c.is_face_of(&max_cones[i]))
                    .collect()
            })
            .collect();

        let mut walls = Vec::new();
        for i in 0..max_cones.len() {
            for j in i + 1..max_cones.len() {
                let (a, b) = (&max_cones[i], &max_cones[j]);
                if a.is_face_of(b) {
                    violations.push(Violation::NotMaximal { i, j });
                    continue;
                }
                if b.is_face_of(a) {
                    violations.push(Violation::NotMaximal { i: j, j: i });
                    continue;
                }
                let meet = a.intersection(b);
                if !meet.is_face_of(a) || !meet.is_face_of(b) {
                    violations.push(Violation::IntersectionNotFace { i, j });
                } else if rank > 0 && meet.dim() + 1 == rank {
                    walls.push(Wall { i, j, cone: meet });
                }
            }
        }

        Fan {
            rank,
            rays,
            max_cones,
            cones,
            containing,
            walls,
            violations,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn max_cone(&self, i: usize) -> Result<&Cone> {
        self.max_cones.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.max_cones.len(),
        })
    }

    /// Every cone of the fan, ordered by dimension and then by rays.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone_index(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    /// Index into [`Fan::rays`] of a primitive ray.
    pub fn ray_index(&self, r: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|x| x == r)
    }

    /// Ray indices of a cone of the fan, ascending.
    pub fn ray_indices(&self, c: &Cone) -> Vec<usize> {
        let mut idx: Vec<usize> = c.rays().iter().filter_map(|r| self.ray_index(r)).collect();
        idx.sort_unstable();
        idx
    }

    /// Maximal cones having the cone at `cone_idx` as a face.
    pub fn containing_max(&self, cone_idx: usize) -> &[usize] {
        &self.containing[cone_idx]
    }

    /// Indices of the codimension-one faces of the cone at `cone_idx`.
    pub fn facet_indices(&self, cone_idx: usize) -> Vec<usize> {
        let c = &self.cones[cone_idx];
        if c.dim() == 0 {
            return Vec::new();
        }
        c.faces()
            .iter()
            .filter(|f| f.dim() + 1 == c.dim())
            .filter_map(|f| self.cone_index(f))
            .collect()
    }

    /// Fan-axiom violations; empty iff the input is a fan.
    pub fn validate(&self) -> Vec<Violation> {
        self.violations.clone()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.max_cones.iter().all(|c| c.dim() == self.rank)
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Maximal cones sharing a wall with `i`, ascending.
    pub fn wall_neighbors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .walls
            .iter()
            .filter_map(|w| match (w.i == i, w.j == i) {
                (true, _) => Some(w.j),
                (_, true) => Some(w.i),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Nonempty, pure, and every codimension-one cone lies in exactly two
    /// maximal cones.
    pub fn is_complete(&self) -> bool {
        if self.max_cones.is_empty() || !self.is_valid() || !self.is_pure() || self.rank == 0 {
            return false;
        }
        self.cones
            .iter()
            .zip(&self.containing)
            .filter(|(c, _)| c.dim() + 1 == self.rank)
            .all(|(_, m)| m.len() == 2)
    }

    /// The fan `star(τ)` in `N(τ) = N / N_τ`.
    pub fn star(&self, tau: &Cone) -> Result<StarFan<'_>> {
        let t = self.cone_index(tau).ok_or(Error::ConeNotInFan)?;
        let q = quotient(self.rank, tau.rays());
        let mut images = BTreeSet::new();
        for c in self.cones.iter().filter(|c| tau.is_face_of(c)) {
            images.insert(c.quotient_cone(tau, &q)?);
        }
        let max_cones = self.containing[t]
            .iter()
            .map(|&i| Ok((i, self.max_cones[i].quotient_cone(tau, &q)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(StarFan {
            base: self,
            tau: tau.clone(),
            quotient: q,
            cones: images.into_iter().collect(),
            max_cones,
        })
    }

    /// Whether, for every cone τ, the maximal cones containing τ are
    /// connected through walls among maximal cones that also contain τ.
    pub fn stars_strongly_connected(&self) -> bool {
        let adj: BTreeMap<usize, Vec<usize>> = (0..self.max_cones.len())
            .map(|i| (i, self.wall_neighbors(i)))
            .collect();
        self.containing.iter().all(|around| {
            let Some(&start) = around.first() else {
                return true;
            };
            let mut seen = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in &adj[&i] {
                    if around.contains(&j) && !seen.contains(&j) {
                        seen.push(j);
                        queue.push_back(j);
                    }
                }
            }
            seen.len() == around.len()
        })
    }
}

/// The fan of images of cones containing `tau`, in `N(τ)`.
#[derive(Clone, Debug)]
pub struct StarFan<'a> {
    pub base: &'a Fan,
    pub tau: Cone,
    pub quotient: QuotientLattice,
    /// All image cones, sorted.
    pub cones: Vec<Cone>,
    /// `(index in base, image)` for maximal cones containing `tau`.
    pub max_cones: Vec<(usize, Cone)>,
}

impl StarFan<'_> {
    pub fn rank(&self) -> usize {
        self.quotient.rank()
    }

    /// Image of the base maximal cone `i`, if it contains `tau`.
    pub fn image_of(&self, i: usize) -> Option<&Cone> {
        self.max_cones.iter().find(|(k, _)| *k == i).map(|(_, c)| c)
    }
}
