//! The triangular `Z[M]`-module basis of the GKM ring, coordinates in it,
//! and multiplicative structure constants.
//!
//! `f_i` vanishes at every fixed point after `i` in the cellular order and
//! restricts at `x_i` to the product of the Euler classes of the cell
//! characters of `σ_i`. Below the diagonal it is built vertex by vertex,
//! descending, by solving the congruences against already fixed upward
//! neighbors.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cellular::CellularCertificate;
use crate::gkm::{GkmGraph, KClass};
use crate::lattice::{
    dual_basis, quotient, solve_integer, LatticeMatrix, LatticeVector, QuotientLattice,
};
use crate::laurent::{div_exact_euler, divides_euler, euler_product, LaurentPoly};
use crate::{Error, Result};

/// How a below-diagonal restriction is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtensionStrategy {
    /// Closed-form projection first, bounded search if it fails.
    #[default]
    Auto,
    /// Closed-form projection only.
    ProjectionOnly,
    /// Bounded-box integer linear solve only.
    BoxSolveOnly,
}

/// Largest number of unknown coefficients the box solver will attempt.
pub const BOX_SOLVE_LIMIT: usize = 2000;

/// Basis classes and their diagonal restrictions, indexed by maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBasis {
    classes: Vec<KClass>,
    euler_diagonals: Vec<LaurentPoly>,
}

impl KBasis {
    /// Wraps classes after checking triangularity and diagonals.
    pub fn from_classes(
        g: &GkmGraph,
        cert: &CellularCertificate,
        classes: Vec<KClass>,
    ) -> Result<KBasis> {
        let m = g.m();
        if classes.len() != m {
            return Err(Error::ComponentCount {
                expected: m,
                found: classes.len(),
            });
        }
        let euler_diagonals: Vec<LaurentPoly> = (0..m).map(|i| euler_class_at(cert, i)).collect();
        for (i, f) in classes.iter().enumerate() {
            if f.len() != m || !g.is_member(f.components())?.is_member() {
                return Err(Error::InvalidBasis("class is not a member"));
            }
            if f.components()[i] != euler_diagonals[i] {
                return Err(Error::InvalidBasis("diagonal is not the Euler class"));
            }
            for l in 0..m {
                if g.position()[l] > g.position()[i] && !f.components()[l].is_zero() {
                    return Err(Error::InvalidBasis("not triangular"));
                }
            }
        }
        Ok(KBasis {
            classes,
            euler_diagonals,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[KClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> Result<&KClass> {
        self.classes.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.classes.len(),
        })
    }

    pub fn euler_diagonals(&self) -> &[LaurentPoly] {
        &self.euler_diagonals
    }

    /// `Σ a_i f_i`.
    pub fn combine(&self, coeffs: &[LaurentPoly]) -> Result<KClass> {
        if coeffs.len() != self.len() {
            return Err(Error::ComponentCount {
                expected: self.len(),
                found: coeffs.len(),
            });
        }
        let rank = self.euler_diagonals.first().map_or(0, LaurentPoly::rank);
        let mut acc = KClass::zero(rank, self.len());
        for (a, f) in coeffs.iter().zip(&self.classes) {
            acc = acc.add(&f.scale(a)?)?;
        }
        Ok(acc)
    }
}

/// Sparse `a^p_{i,j}` with `f_i f_j = Σ_p a^p_{i,j} f_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    entries: BTreeMap<(usize, usize, usize), LaurentPoly>,
}

impl StructureConstants {
    /// `a^p_{i,j}`, zero when not stored.
    pub fn get(&self, i: usize, j: usize, p: usize) -> LaurentPoly {
        let key = if i <= j { (i, j, p) } else { (j, i, p) };
        self.entries
            .get(&key)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.rank))
    }

    /// Nonzero constants keyed by `(i, j, p)` with `i <= j`.
    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `Π_j (1 - e^{u_j})` over the cell characters of `σ_i`.
pub fn euler_class_at(cert: &CellularCertificate, i: usize) -> LaurentPoly {
    euler_product(cert.fan.rank(), &cert.cell_characters[i])
}

/// GKM neighbors of `i` later in the cellular order, each with the cell
/// character of `σ_i` its edge character matches up to sign.
pub fn upward_neighbors(
    g: &GkmGraph,
    cert: &CellularCertificate,
    i: usize,
) -> Result<Vec<(usize, LatticeVector)>> {
    if i >= g.m() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: g.m(),
        });
    }
    let chars = &cert.cell_characters[i];
    let ups: Vec<(usize, &LatticeVector)> = g
        .neighbors(i)
        .into_iter()
        .filter(|(j, _)| g.position()[*j] > g.position()[i])
        .collect();
    if ups.len() != chars.len() {
        return Err(Error::Inconsistent { cone: i });
    }
    let mut used = vec![false; chars.len()];
    let mut out = Vec::with_capacity(ups.len());
    for (j, chi) in ups {
        let k = (0..chars.len())
            .find(|&k| !used[k] && (&chars[k] == chi || chars[k] == -chi))
            .ok_or(Error::Inconsistent { cone: i })?;
        used[k] = true;
        out.push((j, chars[k].clone()));
    }
    Ok(out)
}

pub fn construct_basis(g: &GkmGraph, cert: &CellularCertificate) -> Result<KBasis> {
    construct_basis_with(g, cert, ExtensionStrategy::Auto)
}

pub fn construct_basis_with(
    g: &GkmGraph,
    cert: &CellularCertificate,
    strategy: ExtensionStrategy,
) -> Result<KBasis> {
    let m = g.m();
    let n = g.rank();
    if cert.order.len() != m {
        return Err(Error::ComponentCount {
            expected: m,
            found: cert.order.len(),
        });
    }
    let ups = (0..m)
        .map(|l| upward_neighbors(g, cert, l))
        .collect::<Result<Vec<_>>>()?;
    let projectors: Vec<Vec<LatticeMatrix>> = (0..m)
        .map(|l| coordinate_projectors(n, &ups[l]))
        .collect::<Result<_>>()?;

    let mut classes = Vec::with_capacity(m);
    for i in 0..m {
        let top = g.position()[i];
        let mut values = vec![LaurentPoly::zero(n); m];
        values[i] = euler_class_at(cert, i);
        for p in (0..top).rev() {
            let l = cert.order[p];
            let targets: Vec<(&LaurentPoly, &LatticeVector)> =
                ups[l].iter().map(|(j, u)| (&values[*j], u)).collect();
            values[l] = extend(n, &targets, &projectors[l], strategy)
                .map_err(|_| Error::SolverExhausted { cone: i })?;
        }
        classes.push(
            g.kclass(values)
                .map_err(|_| Error::Inconsistent { cone: i })?,
        );
    }
    KBasis::from_classes(g, cert, classes)
}

/// `E_j`: the map `e^w -> e^{w - c_j(w) u_j}` where `c_j` is the `j`-th
/// coordinate in a basis of `M` extending the `u_j`; it sets `e^{u_j} = 1`.
fn coordinate_projectors(n: usize, ups: &[(usize, LatticeVector)]) -> Result<Vec<LatticeMatrix>> {
    if ups.is_empty() {
        return Ok(Vec::new());
    }
    let us: Vec<LatticeVector> = ups.iter().map(|(_, u)| u.clone()).collect();
    let rest = quotient(n, &us);
    let mut cols = us.clone();
    cols.extend(rest.section.column_vectors());
    let full = LatticeMatrix::from_columns(n, &cols);
    let duals = dual_basis(&full).map_err(|_| Error::NotSaturated)?;
    Ok(us
        .iter()
        .enumerate()
        .map(|(j, u)| {
            let d = duals.column(j);
            let mut e = LatticeMatrix::identity(n);
            for a in 0..n {
                for b in 0..n {
                    let x = e.get(a, b) - &u.entries()[a] * &d.entries()[b];
                    e.set(a, b, x);
                }
            }
            e
        })
        .collect())
}

fn satisfies(y: &LaurentPoly, targets: &[(&LaurentPoly, &LatticeVector)]) -> bool {
    targets
        .iter()
        .all(|(a, u)| divides_euler(&(y - a), u).unwrap_or(false))
}

fn extend(
    n: usize,
    targets: &[(&LaurentPoly, &LatticeVector)],
    projectors: &[LatticeMatrix],
    strategy: ExtensionStrategy,
) -> Result<LaurentPoly> {
    if targets.is_empty() {
        return Ok(LaurentPoly::zero(n));
    }
    if strategy != ExtensionStrategy::BoxSolveOnly {
        let y = project_extend(targets, projectors);
        if satisfies(&y, targets) {
            return Ok(y);
        }
        if strategy == ExtensionStrategy::ProjectionOnly {
            return Err(Error::DivisionRemainder);
        }
    }
    box_extend(n, targets)
}

/// `y = a_1`, then `y += Π_{j<k} (1 - E_j)(a_k - y)` for each later `k`.
fn project_extend(
    targets: &[(&LaurentPoly, &LatticeVector)],
    projectors: &[LatticeMatrix],
) -> LaurentPoly {
    let mut y = targets[0].0.clone();
    for k in 1..targets.len() {
        let mut delta = targets[k].0 - &y;
        for e in &projectors[..k] {
            delta = &delta - &delta.map_exponents(e);
        }
        y = &y + &delta;
    }
    y
}

/// Searches for `y` supported in `[-R, R]^n`, doubling `R`.
fn box_extend(n: usize, targets: &[(&LaurentPoly, &LatticeVector)]) -> Result<LaurentPoly> {
    let quotients: Vec<QuotientLattice> = targets
        .iter()
        .map(|(_, u)| quotient(n, &[(*u).clone()]))
        .collect();
    let start = targets
        .iter()
        .map(|(a, _)| a.exponent_radius())
        .max()
        .unwrap_or_else(BigInt::zero)
        .max(BigInt::one());
    let mut radius: i64 = i64::try_from(&start).map_err(|_| Error::DivisionRemainder)?;
    loop {
        let side = usize::try_from(2 * radius + 1).map_err(|_| Error::DivisionRemainder)?;
        let unknowns = side.checked_pow(n as u32).unwrap_or(usize::MAX);
        if unknowns > BOX_SOLVE_LIMIT {
            return Err(Error::DivisionRemainder);
        }
        if let Some(y) = box_solve(n, radius, targets, &quotients) {
            return Ok(y);
        }
        radius *= 2;
    }
}

fn box_solve(
    n: usize,
    radius: i64,
    targets: &[(&LaurentPoly, &LatticeVector)],
    quotients: &[QuotientLattice],
) -> Option<LaurentPoly> {
    let exps = box_points(n, radius);
    // one row per (constraint, quotient exponent): the fibre sums of y and
    // a_j over that class must agree
    let mut rows: BTreeMap<(usize, LatticeVector), (Vec<usize>, BigInt)> = BTreeMap::new();
    for (j, q) in quotients.iter().enumerate() {
        for (col, w) in exps.iter().enumerate() {
            rows.entry((j, q.project(w)))
                .or_insert_with(|| (Vec::new(), BigInt::zero()))
                .0
                .push(col);
        }
        for (w, c) in targets[j].0.terms() {
            rows.entry((j, q.project(w)))
                .or_insert_with(|| (Vec::new(), BigInt::zero()))
                .1 += c;
        }
    }
    let mut a = LatticeMatrix::zeros(rows.len(), exps.len());
    let mut b = Vec::with_capacity(rows.len());
    for (r, (cols, rhs)) in rows.values().enumerate() {
        if cols.is_empty() && !rhs.is_zero() {
            return None;
        }
        for &c in cols {
            a.set(r, c, BigInt::one());
        }
        b.push(rhs.clone());
    }
    let x = solve_integer(&a, &LatticeVector::new(b))?;
    let y = LaurentPoly::from_terms(n, exps.into_iter().zip(x.into_entries())).ok()?;
    satisfies(&y, targets).then_some(y)
}

fn box_points(n: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out.iter().map(|p| LatticeVector::from_i64s(p)).collect()
}

/// Coefficients `a_i` with `f = Σ a_i f_i`, indexed by maximal cone.
///
/// Runs down the cellular order, dividing the residual's restriction at
/// `x_i` by one Euler factor at a time.
pub fn coordinates(
    g: &GkmGraph,
    cert: &CellularCertificate,
    basis: &KBasis,
    f: &KClass,
) -> Result<Vec<LaurentPoly>> {
    let m = g.m();
    if basis.len() != m || f.len() != m {
        return Err(Error::ComponentCount {
            expected: m,
            found: if basis.len() != m {
                basis.len()
            } else {
                f.len()
            },
        });
    }
    let n = g.rank();
    let mut residual = f.clone();
    let mut coeffs = vec![LaurentPoly::zero(n); m];
    for &i in cert.order.iter().rev() {
        let mut c = residual.components()[i].clone();
        for u in &cert.cell_characters[i] {
            c = div_exact_euler(&c, u).map_err(|_| Error::NotInSpan { cone: i })?;
        }
        if !c.is_zero() {
            residual = residual.sub(&basis.classes[i].scale(&c)?)?;
        }
        coeffs[i] = c;
    }
    if !residual.is_zero() {
        return Err(Error::NotInSpan {
            cone: cert.order[0],
        });
    }
    Ok(coeffs)
}

/// Coordinates of `f_i f_j` for every `i <= j`.
pub fn structure_constants(
    g: &GkmGraph,
    cert: &CellularCertificate,
    basis: &KBasis,
) -> Result<StructureConstants> {
    let m = basis.len();
    let mut entries = BTreeMap::new();
    for i in 0..m {
        for j in i..m {
            let prod = basis.classes[i].mul(&basis.classes[j])?;
            for (p, a) in coordinates(g, cert, basis, &prod)?.into_iter().enumerate() {
                if !a.is_zero() {
                    entries.insert((i, j, p), a);
                }
            }
        }
    }
    Ok(StructureConstants {
        rank: g.rank(),
        entries,
    })
}
