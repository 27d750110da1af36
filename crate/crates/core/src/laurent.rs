//! Sparse Laurent polynomials: the group ring `Z[M]`.
//!
//! Exponents are [`LatticeVector`]s in the standard coordinates of `M`;
//! terms are kept in a `BTreeMap`, so iteration is lexicographic in the
//! exponent and no zero coefficient is ever stored.

use alloc::collections::BTreeMap;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::lattice::{quotient, smith_normal_form, LatticeMatrix, LatticeVector, QuotientLattice};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<LatticeVector, BigInt>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BigInt::one())
    }

    pub fn constant(rank: usize, c: BigInt) -> Self {
        Self::term(LatticeVector::zero(rank), c)
    }

    /// `e^u`.
    pub fn monomial(u: LatticeVector) -> Self {
        Self::term(u, BigInt::one())
    }

    pub fn term(u: LatticeVector, c: BigInt) -> Self {
        let mut p = Self::zero(u.rank());
        p.add_term(u, c);
        p
    }

    pub fn from_terms(
        rank: usize,
        terms: impl IntoIterator<Item = (LatticeVector, BigInt)>,
    ) -> Result<Self> {
        let mut p = Self::zero(rank);
        for (u, c) in terms {
            if u.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: u.rank(),
                });
            }
            p.add_term(u, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, u: LatticeVector, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(u) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(u, c)| u.is_zero() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, u: &LatticeVector) -> BigInt {
        self.terms.get(u).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of coefficients (image in `Z[M/M] = Z`).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Largest absolute exponent coordinate; zero for constants and zero.
    pub fn exponent_radius(&self) -> BigInt {
        self.terms
            .keys()
            .flat_map(|u| u.entries().iter().map(Signed::abs))
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (u, c) in &other.terms {
            out.add_term(u.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = LaurentPoly::zero(self.rank);
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                out.add_term(u + w, a * b);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(u, a)| (u.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the unit `e^u`.
    pub fn shift(&self, u: &LatticeVector) -> LaurentPoly {
        assert_eq!(u.rank(), self.rank);
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, a)| (w + u, a.clone())).collect(),
        }
    }

    /// Pushes exponents forward along a linear map `Z^rank -> Z^k`,
    /// merging terms that collide.
    pub fn map_exponents(&self, map: &LatticeMatrix) -> LaurentPoly {
        let mut out = LaurentPoly::zero(map.rows());
        for (u, c) in &self.terms {
            out.add_term(map.apply(u), c.clone());
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent rank mismatch")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent rank mismatch")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent rank mismatch")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scalar_mul(&-BigInt::one())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (u, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if u.is_zero() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "e^{u}")?;
            }
        }
        Ok(())
    }
}

/// Equivariant Euler class `1 - e^u` of the character `u`.
pub fn euler(u: &LatticeVector) -> LaurentPoly {
    &LaurentPoly::one(u.rank()) - &LaurentPoly::monomial(u.clone())
}

/// Element of `Z[M / L]` for a saturated sublattice `L`, with exponents in
/// the coordinates fixed by the quotient's projection.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotientRingElem {
    quotient: QuotientLattice,
    poly: LaurentPoly,
}

impl QuotientRingElem {
    pub fn new(quotient: QuotientLattice, poly: LaurentPoly) -> Result<Self> {
        if poly.rank() != quotient.rank() {
            return Err(Error::RankMismatch {
                expected: quotient.rank(),
                found: poly.rank(),
            });
        }
        Ok(QuotientRingElem { quotient, poly })
    }

    /// Image of `f` under `Z[M] -> Z[M / L]`.
    pub fn project(quotient: &QuotientLattice, f: &LaurentPoly) -> Result<Self> {
        if f.rank() != quotient.ambient_rank {
            return Err(Error::RankMismatch {
                expected: quotient.ambient_rank,
                found: f.rank(),
            });
        }
        Ok(QuotientRingElem {
            quotient: quotient.clone(),
            poly: f.map_exponents(&quotient.projection),
        })
    }

    pub fn quotient(&self) -> &QuotientLattice {
        &self.quotient
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.quotient != other.quotient {
            return Err(Error::QuotientMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuotientRingElem {
            quotient: self.quotient.clone(),
            poly: &self.poly + &other.poly,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuotientRingElem {
            quotient: self.quotient.clone(),
            poly: &self.poly - &other.poly,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(QuotientRingElem {
            quotient: self.quotient.clone(),
            poly: &self.poly * &other.poly,
        })
    }
}

fn character_quotient(rank: usize, chi: &LatticeVector) -> Result<QuotientLattice> {
    if chi.rank() != rank {
        return Err(Error::RankMismatch {
            expected: rank,
            found: chi.rank(),
        });
    }
    if !chi.is_primitive() {
        return Err(Error::ImprimitiveCharacter);
    }
    Ok(quotient(rank, core::slice::from_ref(chi)))
}

/// Image of `f` in `Z[M] / (1 - e^χ) = Z[M / Zχ]`.
pub fn reduce_mod_character(f: &LaurentPoly, chi: &LatticeVector) -> Result<QuotientRingElem> {
    let q = character_quotient(f.rank(), chi)?;
    QuotientRingElem::project(&q, f)
}

/// Whether `1 - e^χ` divides `f`.
pub fn divides_euler(f: &LaurentPoly, chi: &LatticeVector) -> Result<bool> {
    Ok(reduce_mod_character(f, chi)?.is_zero())
}

/// The exact quotient `g` with `g * (1 - e^χ) = f`.
///
/// Exponents are split as `w = t χ + s(p(w))` using a projection `p` with
/// kernel `Zχ` and a section `s`; each fibre is a univariate Laurent
/// polynomial in `e^χ`, divided by `1 - e^χ` by telescoping.
pub fn div_exact_euler(f: &LaurentPoly, chi: &LatticeVector) -> Result<LaurentPoly> {
    let q = character_quotient(f.rank(), chi)?;
    let k = chi
        .entries()
        .iter()
        .position(|x| !x.is_zero())
        .expect("primitive vectors are nonzero");

    let mut fibres: BTreeMap<LatticeVector, BTreeMap<BigInt, BigInt>> = BTreeMap::new();
    for (w, c) in f.terms() {
        let key = q.project(w);
        let residual = w - &q.lift(&key);
        let t = &residual.entries()[k] / &chi.entries()[k];
        debug_assert_eq!(chi.scaled(&t), residual);
        fibres.entry(key).or_default().insert(t, c.clone());
    }

    let mut out = LaurentPoly::zero(f.rank());
    for (key, series) in fibres {
        let total: BigInt = series.values().sum();
        if !total.is_zero() {
            return Err(Error::DivisionRemainder);
        }
        let base = q.lift(&key);
        let (lo, hi) = (
            series.keys().next().unwrap().clone(),
            series.keys().next_back().unwrap().clone(),
        );
        // h_t = sum of c_s for s <= t, for t in [lo, hi)
        let mut running = BigInt::zero();
        let mut t = lo;
        while t < hi {
            if let Some(c) = series.get(&t) {
                running += c;
            }
            if !running.is_zero() {
                out.add_term(&base + &chi.scaled(&t), running.clone());
            }
            t += 1;
        }
    }
    Ok(out)
}

/// Image of `f` in `Z[M] / (1 - e^{u_1}, ..., 1 - e^{u_r}) = Z[M / <u_i>]`,
/// where the `u_i` span a saturated sublattice.
pub fn reduce_mod_ideal(f: &LaurentPoly, perp_basis: &[LatticeVector]) -> Result<QuotientRingElem> {
    let n = f.rank();
    for u in perp_basis {
        if u.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: u.rank(),
            });
        }
    }
    let snf = smith_normal_form(&LatticeMatrix::from_columns(n, perp_basis));
    if !snf.invariant_factors().iter().all(One::is_one) {
        return Err(Error::NotSaturated);
    }
    QuotientRingElem::project(&quotient(n, perp_basis), f)
}

/// Product of the Euler classes of `chars`; `1` for an empty list.
pub fn euler_product(rank: usize, chars: &[LatticeVector]) -> LaurentPoly {
    chars
        .iter()
        .fold(LaurentPoly::one(rank), |acc, u| &acc * &euler(u))
}
