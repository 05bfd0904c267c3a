//! Matrices over a quaternion algebra acting on right vector spaces:
//! column vectors, scalars on the right, matrices on the left.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::quaternion::{Algebra, Quaternion};
use crate::ratmat::RatMatrix;
use crate::rational::Rational;

/// Column vector of quaternions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QVector(pub Vec<Quaternion>);

impl QVector {
    pub fn zeros(alg: &Algebra, n: usize) -> Self {
        Self(vec![alg.zero(); n])
    }

    /// Standard basis vector `e_i`.
    pub fn unit(alg: &Algebra, n: usize, i: usize) -> Self {
        let mut v = Self::zeros(alg, n);
        v.0[i] = alg.one();
        v
    }

    /// Vector with the given rational coordinates, four per entry.
    pub fn from_coords(alg: &Algebra, coords: &[Rational]) -> Self {
        assert_eq!(coords.len() % 4, 0);
        Self(
            coords
                .chunks(4)
                .map(|c| alg.quaternion([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
                .collect(),
        )
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.0.iter().flat_map(|q| q.coords().iter().cloned()).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Quaternion::is_zero)
    }

    /// `X * q`.
    pub fn scale_right(&self, q: &Quaternion) -> Self {
        Self(self.0.iter().map(|x| x * q).collect())
    }

    pub fn add(&self, other: &QVector) -> Self {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> Self {
        assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|q| !q.is_zero())
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;
    fn index(&self, i: usize) -> &Quaternion {
        &self.0[i]
    }
}

/// Dense matrix over a quaternion algebra, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    alg: Algebra,
    data: Vec<Quaternion>,
}

/// Result of noncommutative Gauss-Jordan elimination by left row operations.
#[derive(Debug, Clone)]
pub struct RowReduction {
    /// Reduced echelon form, pivots equal to 1.
    pub echelon: QMatrix,
    /// Invertible `T` with `T * M = echelon`.
    pub transform: QMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(alg: &Algebra, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            alg: alg.clone(),
            data: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &Algebra, n: usize) -> Self {
        Self::scalar(alg, n, &alg.one())
    }

    /// `Diag(q, ..., q)`.
    pub fn scalar(alg: &Algebra, n: usize, q: &Quaternion) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m[(i, i)] = q.clone();
        }
        m
    }

    pub fn diag(alg: &Algebra, d: &[Quaternion]) -> Self {
        let mut m = Self::zeros(alg, d.len(), d.len());
        for (i, q) in d.iter().enumerate() {
            m[(i, i)] = q.clone();
        }
        m
    }

    pub fn from_rows(alg: &Algebra, rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data: Vec<Quaternion> = rows.into_iter().flatten().collect();
        if data.iter().any(|q| q.algebra() != alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Self {
            rows: r,
            cols: c,
            alg: alg.clone(),
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(alg: &Algebra, cols: &[QVector]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, QVector::len);
        let mut m = Self::zeros(alg, r, c);
        for (j, col) in cols.iter().enumerate() {
            for i in 0..r {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// Embeds a rational matrix through the centre.
    pub fn from_rational(alg: &Algebra, m: &RatMatrix) -> Self {
        let mut out = Self::zeros(alg, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out[(i, j)] = alg.scalar(m[(i, j)].clone());
            }
        }
        out
    }

    /// Inverse of [`QMatrix::from_rational`], when every entry is central.
    pub fn to_rational(&self) -> Option<RatMatrix> {
        let mut out = RatMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].as_rational()?.clone();
            }
        }
        Some(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn row(&self, i: usize) -> Vec<Quaternion> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn diagonal(&self) -> Vec<Quaternion> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Quaternion::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        self.diagonal().iter().all(Quaternion::is_zero)
    }

    /// `Some(lambda)` when the matrix is `lambda * I` with `lambda` rational.
    pub fn central_scalar(&self) -> Option<Rational> {
        if !self.is_square() || !self.is_diagonal() {
            return None;
        }
        let d = self[(0, 0)].as_rational()?;
        self.diagonal()
            .iter()
            .all(|q| q.as_rational() == Some(d))
            .then(|| d.clone())
    }

    fn check_alg(&self, other: &QMatrix) -> Result<()> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_alg(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_alg(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} - {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &QMatrix, f: impl Fn(&Quaternion, &Quaternion) -> Quaternion) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            alg: self.alg.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn try_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_alg(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(&self.alg, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                out[(i, j)] = self
                    .alg
                    .sum_of_products((0..self.cols).map(|k| (&self[(i, k)], &other[(k, j)])));
            }
        }
        Ok(out)
    }

    /// `M * X`.
    pub fn apply(&self, x: &QVector) -> Result<QVector> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} applied to length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(QVector(
            (0..self.rows)
                .map(|i| {
                    self.alg
                        .sum_of_products((0..self.cols).map(|j| (&self[(i, j)], &x[j])))
                })
                .collect(),
        ))
    }

    /// `M * q`, every entry multiplied on the right.
    pub fn scale_right(&self, q: &Quaternion) -> QMatrix {
        QMatrix {
            data: self.data.iter().map(|a| a * q).collect(),
            ..self.clone()
        }
    }

    /// `q * M`, every entry multiplied on the left.
    pub fn scale_left(&self, q: &Quaternion) -> QMatrix {
        QMatrix {
            data: self.data.iter().map(|a| q * a).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        assert!(self.is_square());
        let mut acc = QMatrix::identity(&self.alg, self.rows);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Contiguous block with top-left corner `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> QMatrix {
        let mut out = QMatrix::zeros(&self.alg, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        out
    }

    /// `Diag(1, ..., 1, inner)` with `inner` in the lower-right corner.
    pub fn embed_lower_right(&self, n: usize) -> QMatrix {
        assert!(self.is_square() && self.rows <= n);
        let off = n - self.rows;
        let mut out = QMatrix::identity(&self.alg, n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(off + i, off + j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination with left row operations, first nonzero
    /// entry in column order as pivot.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let mut t = QMatrix::identity(&self.alg, self.rows);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            t.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            m.left_scale_row(row, &inv);
            t.left_scale_row(row, &inv);
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                m.sub_row_multiple(r, row, &f);
                t.sub_row_multiple(r, row, &f);
            }
            pivots.push(col);
            row += 1;
        }
        RowReduction {
            echelon: m,
            transform: t,
            rank: pivots.len(),
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn left_scale_row(&mut self, r: usize, q: &Quaternion) {
        for j in 0..self.cols {
            let v = q * &self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// row_r -= f * row_src
    fn sub_row_multiple(&mut self, r: usize, src: usize, f: &Quaternion) {
        for j in 0..self.cols {
            if self[(src, j)].is_zero() {
                continue;
            }
            let v = f * &self[(src, j)];
            self[(r, j)] -= &v;
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let red = self.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = QVector::zeros(&self.alg, self.cols);
                v.0[f] = self.alg.one();
                for (row, &pc) in red.pivots.iter().enumerate() {
                    v.0[pc] = -&red.echelon[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Some `X` with `M X = B`.
    pub fn solve_right(&self, b: &QVector) -> Option<QVector> {
        assert_eq!(b.len(), self.rows);
        let red = self.row_reduce();
        let tb = red.transform.apply(b).ok()?;
        if (red.rank..self.rows).any(|r| !tb[r].is_zero()) {
            return None;
        }
        let mut x = QVector::zeros(&self.alg, self.cols);
        for (row, &pc) in red.pivots.iter().enumerate() {
            x.0[pc] = tb[row].clone();
        }
        Some(x)
    }

    pub fn invert(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let red = self.row_reduce();
        (red.rank == self.rows).then_some(red.transform)
    }

    /// `M^n = 0`, the nilpotency test over a division ring.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        // N^(2^s) = 0 for some 2^s >= n
        let mut p = self.clone();
        let mut e = 1;
        loop {
            if p.is_zero() {
                return true;
            }
            if e >= self.rows {
                return false;
            }
            p = &p * &p;
            e *= 2;
        }
    }

    /// `t(sum of diagonal entries)`.
    pub fn reduced_trace(&self) -> Rational {
        self.diagonal().iter().map(Quaternion::trace).sum()
    }

    /// Strictly upper and strictly lower parts of a zero-diagonal matrix.
    pub fn strict_split(&self) -> Result<(QMatrix, QMatrix)> {
        if !self.is_square() {
            return Err(Error::Dimension("strict_split needs a square matrix".into()));
        }
        if !self.has_zero_diagonal() {
            return Err(Error::Precondition("strict_split needs a zero diagonal".into()));
        }
        let mut upper = QMatrix::zeros(&self.alg, self.rows, self.cols);
        let mut lower = upper.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i < j {
                    upper[(i, j)] = self[(i, j)].clone();
                } else if i > j {
                    lower[(i, j)] = self[(i, j)].clone();
                }
            }
        }
        Ok((upper, lower))
    }

    /// `(c, r)` with `M = c r` when `rank M = 1`; the first nonzero entry
    /// of `c` is 1.
    pub fn rank1_factor(&self) -> Option<(QVector, Vec<Quaternion>)> {
        if self.rank() != 1 {
            return None;
        }
        let s = (0..self.rows).find(|&i| (0..self.cols).any(|j| !self[(i, j)].is_zero()))?;
        let t = (0..self.cols).find(|&j| !self[(s, j)].is_zero())?;
        let pivot_inv = self[(s, t)].inv().ok()?;
        let c = self.column(t).scale_right(&pivot_inv);
        let r = self.row(s);
        let outer = outer_product(&self.alg, &c, &r);
        (outer == *self).then_some((c, r))
    }

    /// The 4r x 4c rational matrix of `X -> M X` on coordinates.
    pub fn to_real(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(4 * self.rows, 4 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let l = self[(i, j)].left_matrix();
                for a in 0..4 {
                    for b in 0..4 {
                        out[(4 * i + a, 4 * j + b)] = l[(a, b)].clone();
                    }
                }
            }
        }
        out
    }

    /// Largest coordinate height over all entries.
    pub fn height(&self) -> num_bigint::BigInt {
        self.data.iter().map(Quaternion::height).max().unwrap_or_default()
    }
}

/// `c r`, the matrix with entries `c_s r_t`.
pub fn outer_product(alg: &Algebra, c: &QVector, r: &[Quaternion]) -> QMatrix {
    let mut m = QMatrix::zeros(alg, c.len(), r.len());
    for s in 0..c.len() {
        for t in 0..r.len() {
            m[(s, t)] = &c[s] * &r[t];
        }
    }
    m
}

/// Rank of a family of vectors over the quaternions.
pub fn vectors_rank(alg: &Algebra, vs: &[QVector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    QMatrix::from_columns(alg, vs).rank()
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("matrix sum")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("matrix difference")
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            data: self.data.iter().map(|q| -q).collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

pub fn m_add(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.try_add(b)
}

pub fn m_mul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    a.try_mul(b)
}

pub fn m_apply(m: &QMatrix, x: &QVector) -> Result<QVector> {
    m.apply(x)
}

pub fn m_scale_right(m: &QMatrix, q: &Quaternion) -> QMatrix {
    m.scale_right(q)
}

/// Basis-change certificate `(P, P^-1)` for similarity claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub p: QMatrix,
    pub p_inv: QMatrix,
}

impl SimilarityWitness {
    pub fn identity(alg: &Algebra, n: usize) -> Self {
        let i = QMatrix::identity(alg, n);
        Self { p: i.clone(), p_inv: i }
    }

    pub fn from_matrix(p: QMatrix) -> Option<Self> {
        let p_inv = p.invert()?;
        Some(Self { p, p_inv })
    }

    /// Witness whose `P^-1` has the given columns (the new basis).
    pub fn from_basis(alg: &Algebra, basis: &[QVector]) -> Option<Self> {
        let p_inv = QMatrix::from_columns(alg, basis);
        let p = p_inv.invert()?;
        Some(Self { p, p_inv })
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// `P P^-1 = P^-1 P = I`, exactly.
    pub fn verify(&self) -> bool {
        let n = self.p.rows();
        let i = QMatrix::identity(self.p.algebra(), n);
        self.p.is_square()
            && self.p_inv.is_square()
            && self.p_inv.rows() == n
            && &self.p * &self.p_inv == i
            && &self.p_inv * &self.p == i
    }

    /// `P M P^-1`.
    pub fn conjugate(&self, m: &QMatrix) -> Result<QMatrix> {
        self.p.try_mul(m)?.try_mul(&self.p_inv)
    }

    /// `P^-1 M P`.
    pub fn pull_back(&self, m: &QMatrix) -> Result<QMatrix> {
        self.p_inv.try_mul(m)?.try_mul(&self.p)
    }

    /// Applies `self` first, then `outer`.
    pub fn then(&self, outer: &SimilarityWitness) -> SimilarityWitness {
        SimilarityWitness {
            p: &outer.p * &self.p,
            p_inv: &self.p_inv * &outer.p_inv,
        }
    }

    pub fn inverse(&self) -> SimilarityWitness {
        SimilarityWitness {
            p: self.p_inv.clone(),
            p_inv: self.p.clone(),
        }
    }

    /// `Diag(I, self)` in dimension `n`.
    pub fn embed_lower_right(&self, n: usize) -> SimilarityWitness {
        SimilarityWitness {
            p: self.p.embed_lower_right(n),
            p_inv: self.p_inv.embed_lower_right(n),
        }
    }
}

pub fn conjugate_by(m: &QMatrix, w: &SimilarityWitness) -> Result<QMatrix> {
    w.conjugate(m)
}
