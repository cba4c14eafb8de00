//! Dense matrices over `Q`.
//!
//! Sizes in this crate never exceed 24×24, so everything is plain Gaussian
//! elimination on `BigRational` entries.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{IntPolynomial, RatPolynomial};

pub type QVector = Vec<BigRational>;

pub(crate) fn q(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

/// Counts of positive, negative and zero diagonal entries after congruence
/// diagonalisation of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Panics on ragged input; intended for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        RationalMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
    }

    pub fn from_columns(cols: &[QVector], rows: usize) -> Self {
        let mut m = RationalMatrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn require_square(&self, what: &str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!(
                "{what} needs a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(BigRational::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut t = RationalMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Result<RationalMatrix> {
        self.require_square("minus_identity")?;
        self.sub(&RationalMatrix::identity(self.rows))
    }

    pub fn scale(&self, k: &BigRational) -> RationalMatrix {
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Result<RationalMatrix> {
        self.require_square("pow")?;
        let mut base = self.clone();
        let mut acc = RationalMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<BigRational> {
        self.require_square("trace")?;
        Ok((0..self.rows).map(|i| self[(i, i)].clone()).sum())
    }

    /// `vᵀ · self · w`.
    pub fn bilinear(&self, v: &[BigRational], w: &[BigRational]) -> Result<BigRational> {
        let mw = self.mul_vec(w)?;
        if v.len() != self.rows {
            return Err(Error::Dimension("bilinear form argument length".into()));
        }
        Ok(v.iter().zip(&mw).map(|(a, b)| a * b).sum())
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column of the RREF: the
    /// free coordinate is 1, the other free coordinates are 0, and pivot
    /// coordinates are read off the reduced rows.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Coordinates of `target` in the basis given by `basis`, or `None` if it is
    /// outside their span. `basis` must be linearly independent.
    pub fn solve_in_span(basis: &[QVector], target: &[BigRational]) -> Option<QVector> {
        let n = target.len();
        let k = basis.len();
        let mut aug = RationalMatrix::zeros(n, k + 1);
        for (j, b) in basis.iter().enumerate() {
            for i in 0..n {
                aug[(i, j)] = b[i].clone();
            }
        }
        for (i, t) in target.iter().enumerate() {
            aug[(i, k)] = t.clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&k) || pivots.len() != k {
            return None;
        }
        Some((0..k).map(|row| r[(row, k)].clone()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Similarity transform to upper Hessenberg form.
    fn hessenberg(&self) -> RationalMatrix {
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let pivot_inv = h[(m, m - 1)].recip();
            for j in m + 1..n {
                if h[(j, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(j, m - 1)] * &pivot_inv;
                // row_j -= u · row_m
                for c in 0..n {
                    if h[(m, c)].is_zero() {
                        continue;
                    }
                    let v = &u * &h[(m, c)];
                    h[(j, c)] -= v;
                }
                // col_m += u · col_j
                for r in 0..n {
                    if h[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &u * &h[(r, j)];
                    h[(r, m)] += v;
                }
            }
        }
        h
    }

    /// `det(tI - self)`, via reduction to Hessenberg form.
    pub fn char_poly(&self) -> Result<RatPolynomial> {
        self.require_square("char_poly")?;
        let n = self.rows;
        let h = self.hessenberg();
        // polys[k] = characteristic polynomial of the leading k×k block.
        let mut polys: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
        for m in 0..n {
            // (t - h[m][m]) · polys[m]
            let prev = &polys[m];
            let mut next = vec![BigRational::zero(); m + 2];
            for (i, c) in prev.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &h[(m, m)];
            }
            // - Σ_{i<m} h[i][m] · (Π_{j=i+1..m} h[j][j-1]) · polys[i]
            let mut sub_prod = BigRational::one();
            for i in (0..m).rev() {
                sub_prod *= &h[(i + 1, i)];
                if sub_prod.is_zero() {
                    break;
                }
                let f = &h[(i, m)] * &sub_prod;
                if f.is_zero() {
                    continue;
                }
                for (k, c) in polys[i].iter().enumerate() {
                    next[k] -= &f * c;
                }
            }
            polys.push(next);
        }
        Ok(RatPolynomial::new(polys.pop().unwrap()))
    }

    /// Characteristic polynomial of an integer matrix, as an integer polynomial.
    pub fn char_poly_int(&self) -> Result<IntPolynomial> {
        if !self.is_integral() {
            return Err(Error::InvalidInput("matrix has non-integer entries".into()));
        }
        self.char_poly()?
            .to_int()
            .ok_or_else(|| Error::Consistency("integer matrix produced a non-integral characteristic polynomial".into()))
    }

    /// Signature of a symmetric matrix by congruence diagonalisation.
    pub fn signature(&self) -> Result<Signature> {
        self.require_square("signature")?;
        if *self != self.transpose() {
            return Err(Error::InvalidInput("signature of a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sig = Signature {
            positive: 0,
            negative: 0,
            zero: 0,
        };
        for k in 0..n {
            if m[(k, k)].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !m[(i, i)].is_zero()) {
                    m.swap_rows(k, i);
                    m.swap_cols(k, i);
                } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                    // e_k ↦ e_k + e_j makes the diagonal 2·m[k][j] ≠ 0.
                    for c in 0..n {
                        let v = m[(j, c)].clone();
                        m[(k, c)] += v;
                    }
                    for r in 0..n {
                        let v = m[(r, j)].clone();
                        m[(r, k)] += v;
                    }
                } else {
                    sig.zero += 1;
                    continue;
                }
            }
            let pivot = m[(k, k)].clone();
            if pivot.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            for j in k + 1..n {
                if m[(j, k)].is_zero() {
                    continue;
                }
                let f = &m[(j, k)] / &pivot;
                for c in 0..n {
                    let v = &f * &m[(k, c)];
                    m[(j, c)] -= v;
                }
                for r in 0..n {
                    let v = &f * &m[(r, k)];
                    m[(r, j)] -= v;
                }
            }
        }
        Ok(sig)
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kernel basis of a square matrix. Errors on non-square input.
pub fn kernel_basis(m: &RationalMatrix) -> Result<Vec<QVector>> {
    m.require_square("kernel_basis")?;
    Ok(m.kernel_basis())
}

/// `det(tI - m)` for a square matrix.
pub fn char_poly(m: &RationalMatrix) -> Result<RatPolynomial> {
    m.char_poly()
}
