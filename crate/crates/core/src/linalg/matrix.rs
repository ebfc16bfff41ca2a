//! Dense matrices over the rationals.
//!
//! Kernel and image bases come back in reduced row echelon form (each basis
//! vector is one row of the RREF of the subspace), which is canonical for the
//! subspace. Every caller downstream relies on that for reproducible output.

use super::poly::Poly;
use super::rational::{rat, Rat};
use super::LinalgError;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(QMat { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rat::one();
        }
        m
    }

    pub fn diag(entries: &[Rat]) -> Self {
        let n = entries.len();
        let mut m = QMat::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        QMat::diag(&entries.iter().map(|&e| rat(e)).collect::<Vec<_>>())
    }

    /// Row-major integer entries. Panics if `entries.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        QMat {
            rows,
            cols,
            data: entries.iter().map(|&e| rat(e)).collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(LinalgError::EntryCount {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rat>]) -> Self {
        let cols = columns.len();
        let mut m = QMat::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, v) in col.iter().enumerate() {
                m.data[i * cols + j] = v.clone();
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

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rat>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(
            v.len(),
            self.cols,
            "vector length does not match column count"
        );
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn try_mul(&self, rhs: &QMat) -> Result<QMat, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = QMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> QMat {
        assert!(self.is_square(), "power of a non-square matrix");
        (0..k).fold(QMat::identity(self.rows), |acc, _| &acc * self)
    }

    /// Rows `row_idx` and columns `col_idx`, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> QMat {
        let mut out = QMat::zeros(row_idx.len(), col_idx.len());
        for (a, &i) in row_idx.iter().enumerate() {
            for (b, &j) in col_idx.iter().enumerate() {
                out.data[a * col_idx.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.rows, rhs.rows, "hstack with different row counts");
        let cols = self.cols + rhs.cols;
        let mut out = QMat::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..rhs.cols {
                out.data[i * cols + self.cols + j] = rhs.get(i, j).clone();
            }
        }
        out
    }

    /// `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &QMat) -> QMat {
        assert_eq!(self.cols, rhs.cols, "vstack with different column counts");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        QMat {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut a = self.clone();
        let (m, n) = (a.rows, a.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.data.swap(p * n + j, r * n + j);
                }
            }
            let inv = a.get(r, c).recip();
            for j in c..n {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..m {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c).clone();
                for j in c..n {
                    if a.get(r, j).is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &factor * a.get(r, j);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self * v = 0}`, in reduced echelon
    /// form. Empty when the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let raw: Vec<Vec<Rat>> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rat::zero(); n];
                v[f] = Rat::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect();
        echelon_basis(n, &raw)
    }

    /// Basis of the column space, in reduced echelon form; its size is the rank.
    pub fn image_basis(&self) -> Vec<Vec<Rat>> {
        let cols = self.columns();
        echelon_basis(self.rows, &cols)
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> Result<Rat, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            det *= &pivot;
            for i in c + 1..n {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let factor = a.get(i, c) / &pivot;
                for j in c..n {
                    let v = a.get(i, j) - &factor * a.get(c, j);
                    a.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<QMat, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let (r, pivots) = self.hstack(&QMat::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(r.submatrix(&idx, &right))
    }

    /// `det(xI - self)`, monic of degree equal to the side length.
    ///
    /// Reduces to upper Hessenberg form by elimination similarities, then
    /// expands the Hessenberg determinant by the standard recurrence.
    pub fn char_poly(&self) -> Result<Poly, LinalgError> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if p != m {
                for j in 0..n {
                    h.data.swap(p * n + j, m * n + j);
                }
                for i in 0..n {
                    h.data.swap(i * n + p, i * n + m);
                }
            }
            let pivot_inv = h.get(m, m - 1).recip();
            for i in m + 1..n {
                if h.get(i, m - 1).is_zero() {
                    continue;
                }
                let u = h.get(i, m - 1) * &pivot_inv;
                // row_i -= u * row_m, then col_m += u * col_i
                for j in 0..n {
                    let v = h.get(i, j) - &u * h.get(m, j);
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, m) + &u * h.get(r, i);
                    h.set(r, m, v);
                }
            }
        }
        // p[k] = char poly of the leading k x k block.
        let mut p: Vec<Poly> = Vec::with_capacity(n + 1);
        p.push(Poly::one());
        for k in 0..n {
            let lin = Poly::from_coeffs(vec![-h.get(k, k).clone(), Rat::one()]);
            let mut next = &lin * &p[k];
            let mut t = Rat::one();
            for i in 1..=k {
                t *= h.get(k - i + 1, k - i);
                if t.is_zero() {
                    break;
                }
                let c = &t * h.get(k - i, k);
                if !c.is_zero() {
                    next = &next - &p[k - i].scale(&c);
                }
            }
            p.push(next);
        }
        Ok(p.pop().unwrap_or_else(Poly::one))
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

/// RREF rows of the span of `vectors` (all of length `dim`), zero rows dropped.
pub fn echelon_basis(dim: usize, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMat::from_rows(vectors.to_vec()).expect("vectors of equal length");
    debug_assert_eq!(m.cols, dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, rhs: &QMat) -> QMat {
        self.try_mul(rhs)
            .expect("matrix product with incompatible shapes")
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, rhs: &QMat) -> QMat {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape"
        );
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, rhs: &QMat) -> QMat {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape"
        );
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for QMat {
    /// The shared text format: `rows cols` then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    fn vecq(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(QMat::identity(2).rank(), 2);
        assert_eq!(QMat::zeros(2, 2).rank(), 0);
        assert_eq!(QMat::from_i64(2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(QMat::identity(3).kernel_basis().is_empty());
        assert_eq!(QMat::zeros(2, 3).kernel_basis().len(), 3);
        let k = QMat::from_i64(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vecq(&[1, -1])]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(
            QMat::identity(2).image_basis(),
            vec![vecq(&[1, 0]), vecq(&[0, 1])]
        );
        assert!(QMat::zeros(2, 2).image_basis().is_empty());
        assert_eq!(
            QMat::from_i64(2, 1, &[1, 2]).image_basis(),
            vec![vecq(&[1, 2])]
        );
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(
            QMat::diag_i64(&[2, 3]).char_poly().unwrap(),
            Poly::from_i64(&[6, -5, 1])
        );
        assert_eq!(
            QMat::from_i64(2, 2, &[0, 1, -1, 0]).char_poly().unwrap(),
            Poly::from_i64(&[1, 0, 1])
        );
        assert_eq!(
            QMat::from_i64(2, 2, &[2, 1, 1, 1]).char_poly().unwrap(),
            Poly::from_i64(&[1, -3, 1])
        );
        assert_eq!(QMat::zeros(0, 0).char_poly().unwrap(), Poly::one());
        assert!(matches!(
            QMat::zeros(2, 3).char_poly(),
            Err(LinalgError::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn char_poly_needs_pivoting() {
        // Zero subdiagonal entry forces a row/column swap in the reduction.
        let m = QMat::from_i64(4, 4, &[1, 2, 0, 3, 0, 1, 1, 0, 5, 0, 2, 1, 0, 3, 0, 4]);
        let p = m.char_poly().unwrap();
        for k in -3..=3 {
            let x = rat(k);
            let shifted = &QMat::identity(4).scale(&x) - &m;
            assert_eq!(p.eval(&x), shifted.det().unwrap());
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = QMat::from_i64(2, 2, &[2, 4, 6, 8]);
        assert_eq!(m.det().unwrap(), rat(-8));
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, QMat::identity(2));
        assert_eq!(*inv.get(0, 0), rat(-1));
        assert_eq!(*inv.get(0, 1), ratio(1, 2));
        assert!(matches!(
            QMat::from_i64(2, 2, &[1, 2, 2, 4]).inverse(),
            Err(LinalgError::Singular)
        ));
    }

    #[test]
    fn text_format() {
        let m = QMat::new(1, 2, vec![ratio(1, 2), rat(-3)]).unwrap();
        assert_eq!(m.to_string(), "1 2\n1/2 -3\n");
        assert!(QMat::new(2, 2, vecq(&[1, 2, 3])).is_err());
    }
}
