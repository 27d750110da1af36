//! Bialynicki-Birula cellularity of a fan with respect to a generic `v`.
//!
//! For each maximal cone `σ_i` the distinguished face `τ_i` is the
//! smallest face whose quotient cone contains the image of `v` in its
//! relative interior. The toric variety is cellular for `v` exactly when
//! the relation "`τ_i ⊆ σ_j`" admits a linear order and every quotient
//! cone `σ_i / τ_i` is smooth in `N(τ_i)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::cone::Cone;
use crate::fan::{Fan, Violation};
use crate::lattice::{dual_basis, quotient, LatticeMatrix, LatticeVector};
use crate::{Error, Result};

/// Evidence that a fan is cellular for `v`.
///
/// Vectors are indexed by maximal cone; `order[p]` is the cone in cell
/// position `p` and `position` is its inverse.
#[derive(Clone, Debug)]
pub struct CellularCertificate {
    pub fan: Fan,
    pub v: LatticeVector,
    pub order: Vec<usize>,
    pub position: Vec<usize>,
    pub tau: Vec<Cone>,
    pub cell_dims: Vec<usize>,
    /// Per cone, the dual basis of the quotient cone's rays pulled back to
    /// `τ_i^⊥ ∩ M`.
    pub cell_characters: Vec<Vec<LatticeVector>>,
}

impl CellularCertificate {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Rechecks the ordering and character conditions from scratch.
    pub fn verify(&self) -> bool {
        let n = self.fan.rank();
        let m = self.fan.max_cones().len();
        if self.order.len() != m || self.tau.len() != m || self.cell_characters.len() != m {
            return false;
        }
        if self.order.first().is_some_and(|&i| !self.tau[i].is_zero()) {
            return false;
        }
        for i in 0..m {
            let sigma = &self.fan.max_cones()[i];
            if !self.tau[i].is_face_of(sigma) {
                return false;
            }
            for j in 0..m {
                if self.tau[i].is_face_of(&self.fan.max_cones()[j])
                    && self.position[i] > self.position[j]
                {
                    return false;
                }
            }
            let chars = &self.cell_characters[i];
            if chars.len() != n - self.tau[i].dim() || self.cell_dims[i] != chars.len() {
                return false;
            }
            if !chars
                .iter()
                .all(|u| self.tau[i].rays().iter().all(|r| u.dot(r).is_zero()))
            {
                return false;
            }
            let q = quotient(n, self.tau[i].rays());
            let Ok(bar) = sigma.quotient_cone(&self.tau[i], &q) else {
                return false;
            };
            // pairing against lifted quotient rays is the identity
            for (a, u) in chars.iter().enumerate() {
                for (b, r) in bar.rays().iter().enumerate() {
                    let pairing = u.dot(&q.lift(r));
                    if pairing != num_bigint::BigInt::from(u8::from(a == b)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Outcome of ordering the cones by the relation `τ_i ⊆ σ_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderOutcome {
    Order(Vec<usize>),
    /// A directed cycle `c_0 -> c_1 -> ... -> c_0`, listed without repetition.
    Cycle(Vec<usize>),
}

/// The first condition a fan fails, in checking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    InvalidFan(Vec<Violation>),
    NotPure { cone: usize },
    NotGeneric,
    OrderingCycle(Vec<usize>),
    NonSmoothQuotient { cone: usize, tau: Cone },
}

impl Rejection {
    /// Short machine-friendly reason.
    pub fn reason(&self) -> &'static str {
        match self {
            Rejection::InvalidFan(_) => "invalid fan",
            Rejection::NotPure { .. } => "not pure",
            Rejection::NotGeneric => "v not generic",
            Rejection::OrderingCycle(_) => "ordering cycle",
            Rejection::NonSmoothQuotient { .. } => "non-smooth quotient cone",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::InvalidFan(v) => write!(f, "invalid fan ({} violations)", v.len()),
            Rejection::NotPure { cone } => {
                write!(f, "not pure: cone {} is not full-dimensional", cone + 1)
            }
            Rejection::NotGeneric => write!(f, "v not generic"),
            Rejection::OrderingCycle(c) => write!(f, "ordering cycle through {} cones", c.len()),
            Rejection::NonSmoothQuotient { cone, .. } => {
                write!(f, "non-smooth quotient cone at σ{}", cone + 1)
            }
        }
    }
}

/// `v` lies in the support and off the span of every codimension-one cone.
pub fn is_generic(fan: &Fan, v: &LatticeVector) -> bool {
    let n = fan.rank();
    v.rank() == n
        && fan.max_cones().iter().any(|c| c.contains(v))
        && fan
            .cones()
            .iter()
            .filter(|c| c.dim() + 1 == n)
            .all(|c| !c.span_contains(v))
}

/// The minimal face `γ` of `sigma` with the image of `v` in the relative
/// interior of `sigma / γ`.
pub fn distinguished_face(sigma: &Cone, v: &LatticeVector) -> Result<Cone> {
    let n = sigma.ambient_rank();
    if v.rank() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: v.rank(),
        });
    }
    let passes = |g: &Cone| -> bool {
        let q = quotient(n, g.rays());
        sigma
            .quotient_cone(g, &q)
            .is_ok_and(|bar| bar.rel_interior_contains(&q.project(v)))
    };
    let mut tau: Option<Cone> = None;
    for g in sigma.faces().iter().filter(|g| passes(g)) {
        tau = Some(match tau {
            None => g.clone(),
            Some(t) => t.intersection(g),
        });
    }
    match tau {
        Some(t) if passes(&t) => Ok(t),
        _ => Err(Error::NotGeneric),
    }
}

/// Topological order of the digraph `i -> j` for `τ_i ⊆ σ_j`, taking the
/// lowest available index first.
pub fn bb_order(fan: &Fan, tau: &[Cone]) -> OrderOutcome {
    let m = fan.max_cones().len();
    let succ: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| j != i && tau[i].is_face_of(&fan.max_cones()[j]))
                .collect()
        })
        .collect();
    let mut indeg = alloc::vec![0usize; m];
    for s in &succ {
        for &j in s {
            indeg[j] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(m);
    while let Some(i) = ready.pop_first() {
        order.push(i);
        for &j in &succ[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                ready.insert(j);
            }
        }
    }
    if order.len() == m {
        return OrderOutcome::Order(order);
    }

    // every leftover node has a leftover predecessor; walk back to a repeat
    let left: BTreeSet<usize> = (0..m).filter(|i| !order.contains(i)).collect();
    let pred = |j: usize| {
        *left
            .iter()
            .find(|&&i| succ[i].contains(&j))
            .expect("leftover nodes have leftover predecessors")
    };
    let mut walk = alloc::vec![*left.first().expect("nonempty")];
    loop {
        let p = pred(*walk.last().unwrap());
        if let Some(k) = walk.iter().position(|&x| x == p) {
            let mut cycle: Vec<usize> = walk[k..].to_vec();
            cycle.reverse();
            return OrderOutcome::Cycle(cycle);
        }
        walk.push(p);
    }
}

/// Checks cellularity, returning the certificate or the first failure.
pub fn certify_cellular(
    fan: &Fan,
    v: &LatticeVector,
) -> core::result::Result<CellularCertificate, Rejection> {
    let violations = fan.validate();
    if !violations.is_empty() {
        return Err(Rejection::InvalidFan(violations));
    }
    let n = fan.rank();
    if let Some(cone) = fan.max_cones().iter().position(|c| c.dim() != n) {
        return Err(Rejection::NotPure { cone });
    }
    if !is_generic(fan, v) {
        return Err(Rejection::NotGeneric);
    }
    let tau = fan
        .max_cones()
        .iter()
        .map(|s| distinguished_face(s, v))
        .collect::<Result<Vec<_>>>()
        .map_err(|_| Rejection::NotGeneric)?;
    let order = match bb_order(fan, &tau) {
        OrderOutcome::Order(o) => o,
        OrderOutcome::Cycle(c) => return Err(Rejection::OrderingCycle(c)),
    };
    let mut position = alloc::vec![0; order.len()];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }

    let mut cell_characters = alloc::vec![Vec::new(); order.len()];
    for &i in &order {
        let q = quotient(n, tau[i].rays());
        let bar = fan.max_cones()[i]
            .quotient_cone(&tau[i], &q)
            .expect("distinguished faces are faces");
        if !bar.is_smooth() {
            return Err(Rejection::NonSmoothQuotient {
                cone: i,
                tau: tau[i].clone(),
            });
        }
        let d = q.rank();
        cell_characters[i] = if d == 0 {
            Vec::new()
        } else {
            let duals = dual_basis(&LatticeMatrix::from_columns(d, bar.rays()))
                .expect("smooth full-dimensional cone has a unimodular ray matrix");
            let pt = q.projection.transpose();
            duals.column_vectors().iter().map(|u| pt.apply(u)).collect()
        };
    }

    let cert = CellularCertificate {
        fan: fan.clone(),
        v: v.clone(),
        cell_dims: tau.iter().map(|t| n - t.dim()).collect(),
        order,
        position,
        tau,
        cell_characters,
    };
    debug_assert!(cert.verify());
    Ok(cert)
}
