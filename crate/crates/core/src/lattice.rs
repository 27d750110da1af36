//! Exact integer linear algebra over free abelian groups.
//!
//! Everything here works on arbitrary-precision integers. Basis vectors of
//! sublattices are stored as the *columns* of a [`LatticeMatrix`]; linear
//! maps `Z^n -> Z^k` are `k x n` matrices acting on column vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An element of `Z^n`, used both for `N` and for its dual `M`.
///
/// Ordering is lexicographic on the entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        LatticeVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); rank])
    }

    /// The `i`-th standard basis vector.
    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The pairing `<self, other>`.
    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        assert_eq!(
            self.rank(),
            other.rank(),
            "pairing of vectors of different rank"
        );
        self.0
            .iter()
            .zip(&other.0)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content, keeping the ray direction.
    pub fn primitive(&self) -> Result<LatticeVector> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(LatticeVector(self.0.iter().map(|x| x / &g).collect()))
    }

    pub fn scaled(&self, c: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Flips the sign so the first nonzero entry is positive.
    pub fn sign_normalized(&self) -> LatticeVector {
        match self.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -self,
            _ => self.clone(),
        }
    }
}

impl From<Vec<BigInt>> for LatticeVector {
    fn from(v: Vec<BigInt>) -> Self {
        LatticeVector(v)
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.rank(), rhs.rank());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatticeMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl LatticeMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::RankMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(LatticeMatrix { rows, cols, data })
    }

    pub fn from_i64s(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        LatticeMatrix {
            rows,
            cols,
            data: data.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        LatticeMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Matrix whose rows are the given vectors (each of length `cols`).
    pub fn from_rows(cols: usize, rows: &[LatticeVector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.rank(), cols);
            data.extend(r.entries().iter().cloned());
        }
        LatticeMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[LatticeVector]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    fn from_nested(rows: usize, cols: usize, a: Vec<Vec<BigInt>>) -> Self {
        LatticeMatrix {
            rows,
            cols,
            data: a.into_iter().flatten().collect(),
        }
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> LatticeVector {
        LatticeVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row_vectors(&self) -> Vec<LatticeVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vectors(&self) -> Vec<LatticeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> LatticeMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &LatticeMatrix) -> LatticeMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        assert_eq!(self.cols, v.rank(), "matrix does not act on this rank");
        LatticeVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v.0[j])
                })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.to_nested();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        hermite_rows(self.to_nested(), self.cols).len()
    }
}

impl fmt::Display for LatticeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// `U * A * V = S` with `U`, `V` unimodular and `S` diagonal, `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub s: LatticeMatrix,
    pub u: LatticeMatrix,
    pub v: LatticeMatrix,
    pub u_inv: LatticeMatrix,
    pub v_inv: LatticeMatrix,
}

impl SmithForm {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.s.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s
            .diagonal()
            .into_iter()
            .filter(|d| !d.is_zero())
            .collect()
    }
}

struct SmithState {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn nested_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl SmithState {
    // row_i += c * row_k
    fn row_add(&mut self, i: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let src = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x += c * y;
            }
        }
        for row in self.u_inv.iter_mut() {
            let t = c * &row[i];
            row[k] -= t;
        }
    }

    // col_j += c * col_k
    fn col_add(&mut self, j: usize, k: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = c * &row[k];
                row[j] += t;
            }
        }
        let src = self.v_inv[j].clone();
        for (x, y) in self.v_inv[k].iter_mut().zip(&src) {
            *x -= c * y;
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.u.swap(i, k);
        for row in self.u_inv.iter_mut() {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(j, k);
            }
        }
        self.v_inv.swap(j, k);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }
}

/// Smith normal form with unimodular transforms and their inverses.
pub fn smith_normal_form(a: &LatticeMatrix) -> SmithForm {
    let (rows, cols) = (a.rows, a.cols);
    let mut st = SmithState {
        a: a.to_nested(),
        u: nested_identity(rows),
        u_inv: nested_identity(rows),
        v: nested_identity(cols),
        v_inv: nested_identity(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &st.a[i][j];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < st.a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            st.swap_rows(t, pi);
            st.swap_cols(t, pj);
            let p = st.a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = st.a[i][t].div_floor(&p);
                st.row_add(i, t, &-q);
                clean &= st.a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = st.a[t][j].div_floor(&p);
                st.col_add(j, t, &-q);
                clean &= st.a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !st.a[i][j].is_multiple_of(&p)));
            match offender {
                Some(i) => st.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if t < rows && st.a[t][t].is_negative() {
            st.negate_row(t);
        }
    }
    SmithForm {
        s: LatticeMatrix::from_nested(rows, cols, st.a),
        u: LatticeMatrix::from_nested(rows, rows, st.u),
        v: LatticeMatrix::from_nested(cols, cols, st.v),
        u_inv: LatticeMatrix::from_nested(rows, rows, st.u_inv),
        v_inv: LatticeMatrix::from_nested(cols, cols, st.v_inv),
    }
}

// Row-style Hermite normal form: echelon rows, positive pivots, entries
// above each pivot reduced into [0, pivot). Zero rows are dropped.
fn hermite_rows(mut a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        let mut found = false;
        loop {
            let pivot = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &k| a[i][col].abs().cmp(&a[k][col].abs()));
            let Some(pi) = pivot else { break };
            found = true;
            a.swap(r, pi);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let src = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&src) {
                    *x -= &q * y;
                }
                done &= a[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if q.is_zero() {
                continue;
            }
            let src = a[r].clone();
            for (x, y) in a[i].iter_mut().zip(&src) {
                *x -= &q * y;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Canonical basis (Hermite normal form) of the lattice generated by `vectors`.
pub fn hermite_normal_form(rank: usize, vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let rows = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.rank(), rank);
            v.0.clone()
        })
        .collect();
    hermite_rows(rows, rank)
        .into_iter()
        .map(LatticeVector)
        .collect()
}

/// Free-function form of [`LatticeVector::primitive`].
pub fn primitive(w: &LatticeVector) -> Result<LatticeVector> {
    w.primitive()
}

/// Basis (as columns) of `span_R(vectors) ∩ Z^n`.
pub fn saturate(rank: usize, vectors: &[LatticeVector]) -> LatticeMatrix {
    let a = LatticeMatrix::from_columns(rank, vectors);
    let snf = smith_normal_form(&a);
    let r = snf.rank();
    // column span of A is U^{-1} S Z^k; its saturation is spanned by the
    // first r columns of U^{-1}
    let cols: Vec<LatticeVector> = (0..r).map(|j| snf.u_inv.column(j)).collect();
    LatticeMatrix::from_columns(rank, &hermite_normal_form(rank, &cols))
}

/// Basis (as columns) of `{u in Z^n : <u, w> = 0 for all inputs w}`.
///
/// Each generator is primitive; a rank-one answer has its first nonzero
/// entry positive.
pub fn annihilator(rank: usize, vectors: &[LatticeVector]) -> LatticeMatrix {
    let w = LatticeMatrix::from_rows(rank, vectors);
    let snf = smith_normal_form(&w);
    let r = snf.rank();
    let kernel: Vec<LatticeVector> = (r..rank).map(|j| snf.v.column(j)).collect();
    LatticeMatrix::from_columns(rank, &hermite_normal_form(rank, &kernel))
}

/// Integer solution of `A x = b`, if one exists.
pub fn solve_integer(a: &LatticeMatrix, b: &LatticeVector) -> Option<LatticeVector> {
    assert_eq!(a.rows, b.rank());
    let snf = smith_normal_form(a);
    let ub = snf.u.apply(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, rhs) in ub.0.iter().enumerate() {
        let d = if i < a.cols {
            snf.s.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        if d.is_zero() {
            if !rhs.is_zero() {
                return None;
            }
        } else {
            let (q, rem) = rhs.div_rem(&d);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    Some(snf.v.apply(&LatticeVector(y)))
}

/// Inverse of a unimodular square matrix.
pub fn unimodular_inverse(b: &LatticeMatrix) -> Result<LatticeMatrix> {
    if b.rows != b.cols {
        return Err(Error::NotALatticeBasis);
    }
    let snf = smith_normal_form(b);
    if !snf.s.is_identity() {
        return Err(Error::NotALatticeBasis);
    }
    Ok(snf.v.mul(&snf.u))
}

/// Dual basis: column `j` of the result pairs to `δ_{jr}` with column `r` of `b`.
pub fn dual_basis(b: &LatticeMatrix) -> Result<LatticeMatrix> {
    Ok(unimodular_inverse(b)?.transpose())
}

/// `N / N_τ` with a chosen projection and section.
///
/// The projection is normalized to Hermite form, so it depends only on the
/// saturated sublattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientLattice {
    pub ambient_rank: usize,
    /// Columns form a basis of the saturated sublattice.
    pub sub_basis: LatticeMatrix,
    /// Surjection `Z^n -> Z^(n-k)` whose kernel is the sublattice.
    pub projection: LatticeMatrix,
    /// Right inverse of `projection`.
    pub section: LatticeMatrix,
}

impl QuotientLattice {
    pub fn rank(&self) -> usize {
        self.projection.rows()
    }

    pub fn project(&self, v: &LatticeVector) -> LatticeVector {
        self.projection.apply(v)
    }

    pub fn lift(&self, v: &LatticeVector) -> LatticeVector {
        self.section.apply(v)
    }
}

pub fn quotient(ambient_rank: usize, sub: &[LatticeVector]) -> QuotientLattice {
    let n = ambient_rank;
    let sub_basis = saturate(n, sub);
    let k = sub_basis.cols();
    let snf = smith_normal_form(&sub_basis);
    // U B = [V^{-1}; 0], so the last n-k rows of U vanish on the sublattice
    let rows: Vec<LatticeVector> = (k..n).map(|i| snf.u.row(i)).collect();
    let projection = LatticeMatrix::from_rows(n, &hermite_normal_form(n, &rows));
    let section = if projection.rows() == 0 {
        LatticeMatrix::zeros(n, 0)
    } else {
        // P V_P = U_P^{-1} [I 0]  =>  P (V_P [I; 0] U_P) = I
        let psnf = smith_normal_form(&projection);
        let q = projection.rows();
        let mut embed = LatticeMatrix::zeros(n, q);
        for i in 0..q {
            embed.set(i, i, BigInt::one());
        }
        psnf.v.mul(&embed).mul(&psnf.u)
    };
    QuotientLattice {
        ambient_rank: n,
        sub_basis,
        projection,
        section,
    }
}
