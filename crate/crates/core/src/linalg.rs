//! Exact arbitrary-precision linear algebra: determinants and minors by
//! fraction-free Bareiss elimination, rational kernels, and integer kernel
//! lattices via Hermite reduction. No floating point anywhere.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers with row/column labels.
///
/// Rows are indexed by vertices and columns by edges when the matrix is an
/// incidence matrix; labels are carried along so basis elements can be
/// rendered with the caller's edge names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
            row_labels: (0..rows).map(|i| format!("r{}", i + 1)).collect(),
            col_labels: (0..cols).map(|j| format!("c{}", j + 1)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut m = IntegerMatrix::zero(r, c);
        m.entries = rows.into_iter().flatten().collect();
        m
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    /// True if all entries are nonnegative and every column has a nonzero
    /// entry, which makes the associated toric ideal positively graded.
    pub fn is_positively_graded(&self) -> bool {
        if self.entries.iter().any(|e| e.is_negative()) {
            return false;
        }
        (0..self.cols).all(|j| (0..self.rows).any(|i| !self.get(i, j).is_zero()))
    }

    /// Matrix-vector product over the integers.
    pub fn mul_vector(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    /// True iff `v` lies in the integer kernel.
    pub fn annihilates(&self, v: &[BigInt]) -> bool {
        matches!(self.mul_vector(v), Ok(w) if w.iter().all(BigInt::is_zero))
    }

    /// Submatrix keeping the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                m.set(ri, ci, self.get(r, c).clone());
            }
        }
        m.row_labels = rows.iter().map(|&r| self.row_labels[r].clone()).collect();
        m.col_labels = cols.iter().map(|&c| self.col_labels[c].clone()).collect();
        m
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMinor {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    // Bareiss update; the division by the previous pivot is exact.
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign < 0 { -det } else { det })
    }

    /// Determinant of the submatrix obtained by deleting the given rows and
    /// columns (0-based). The remainder must be square.
    pub fn minor(&self, rows_removed: &[usize], cols_removed: &[usize]) -> Result<BigInt> {
        let rows: Vec<usize> = (0..self.rows)
            .filter(|i| !rows_removed.contains(i))
            .collect();
        let cols: Vec<usize> = (0..self.cols)
            .filter(|j| !cols_removed.contains(j))
            .collect();
        if rows.len() != cols.len() {
            return Err(Error::NonSquareMinor {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        self.submatrix(&rows, &cols).det()
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let (echelon, pivots) = self.rational_echelon();
        let _ = echelon;
        pivots.len()
    }

    /// Basis of the rational null space; dimension equals `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (echelon, pivots) = self.rational_echelon();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::with_capacity(free_cols.len());
        for &f in &free_cols {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            // back-substitute pivot coordinates
            for &(r, c) in pivots.iter().rev() {
                let mut s = BigRational::zero();
                for j in c + 1..self.cols {
                    if !echelon[r][j].is_zero() && !v[j].is_zero() {
                        s += &echelon[r][j] * &v[j];
                    }
                }
                v[c] = -s / &echelon[r][c];
            }
            basis.push(v);
        }
        basis
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of the integer kernel lattice `{ x : Ax = 0 }`.
    ///
    /// Row-reduces the transpose by unimodular operations; the transformation
    /// rows paired with zero rows of the echelon form span the kernel. The
    /// lattice is saturated, so this is a genuine lattice basis, not merely a
    /// finite-index sublattice.
    #[allow(clippy::needless_range_loop)] // index loops read one row while writing another
    pub fn integer_kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let m = self.cols;
        let n = self.rows;
        // b = transpose(A), u = identity
        let mut b: Vec<Vec<BigInt>> = (0..m)
            .map(|j| (0..n).map(|i| self.get(i, j).clone()).collect())
            .collect();
        let mut u: Vec<Vec<BigInt>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut pivot = 0usize;
        for col in 0..n {
            if pivot == m {
                break;
            }
            // euclidean reduction of column `col` among rows pivot..m
            loop {
                let mut best: Option<usize> = None;
                for i in pivot..m {
                    if !b[i][col].is_zero()
                        && best.is_none_or(|j| b[i][col].abs() < b[j][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(best) = best else { break };
                b.swap(pivot, best);
                u.swap(pivot, best);
                let mut done = true;
                for i in pivot + 1..m {
                    if b[i][col].is_zero() {
                        continue;
                    }
                    let q = div_round(&b[i][col], &b[pivot][col]);
                    if !q.is_zero() {
                        for k in 0..n {
                            let t = &b[pivot][k] * &q;
                            b[i][k] -= t;
                        }
                        for k in 0..m {
                            let t = &u[pivot][k] * &q;
                            u[i][k] -= t;
                        }
                    }
                    if !b[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    pivot += 1;
                    break;
                }
            }
        }
        let mut basis: Vec<Vec<BigInt>> = u[pivot..]
            .iter()
            .map(|row| {
                let mut v = row.clone();
                sign_normalize(&mut v);
                v
            })
            .collect();
        basis.sort();
        basis
    }

    #[allow(clippy::needless_range_loop)] // same split-borrow shape as above
    fn rational_echelon(&self) -> (Vec<Vec<BigRational>>, Vec<(usize, usize)>) {
        let mut m: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from(self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let factor = &m[i][c] / &m[r][c];
                for j in c..self.cols {
                    let t = &m[r][j] * &factor;
                    m[i][j] -= t;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        (m, pivots)
    }
}

/// Quotient rounded to nearest, used by the Hermite reduction to keep
/// intermediate entries small.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// gcd of the absolute values of all entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Flips the sign so the entry at the lowest-index support position is
/// positive. This is the single global convention used when comparing
/// binomials across bases.
pub fn sign_normalize(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Smallest integer multiple of a rational vector with content one, sign
/// normalized. Errors on the zero vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> Result<Vec<BigInt>> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let lcm_den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm_den / x.denom()))
        .collect();
    let g = content(&ints);
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    sign_normalize(&mut ints);
    Ok(ints)
}

/// Integer coordinates of `v` in the given lattice basis, if they exist.
#[allow(clippy::needless_range_loop)] // split-borrow elimination loops
pub fn lattice_coordinates(basis: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return if v.iter().all(BigInt::is_zero) {
            Some(vec![])
        } else {
            None
        };
    }
    let m = v.len();
    let d = basis.len();
    // solve B^T x = v over the rationals
    let mut aug: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..d)
                .map(|j| BigRational::from(basis[j][i].clone()))
                .chain(std::iter::once(BigRational::from(v[i].clone())))
                .collect()
        })
        .collect();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..d {
        let Some(p) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        for i in 0..m {
            if i != r && !aug[i][c].is_zero() {
                let f = &aug[i][c] / &aug[r][c];
                for j in c..=d {
                    let t = &aug[r][j] * &f;
                    aug[i][j] -= t;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    // inconsistent rows mean v is outside the span
    for i in r..m {
        if !aug[i][d].is_zero() {
            return None;
        }
    }
    let mut coords = vec![BigRational::zero(); d];
    for &(row, col) in &pivots {
        coords[col] = &aug[row][d] / &aug[row][col];
    }
    let mut out = Vec::with_capacity(d);
    for c in coords {
        if !c.denom().is_one() {
            return None;
        }
        out.push(c.numer().clone());
    }
    Some(out)
}
