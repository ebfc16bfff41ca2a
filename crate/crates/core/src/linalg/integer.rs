//! Integer matrices and Smith normal form.

use super::matrix::QMat;
use super::rational::{int, Int, Rat};
use super::LinalgError;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::Mul;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// `left * m * right = diag(diagonal)` with unimodular `left`, `right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Invariant factors, length `min(rows, cols)`, nonnegative, each dividing
    /// the next (zeros last).
    pub diagonal: Vec<Int>,
    pub left: ZMat,
    pub right: ZMat,
}

impl ZMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Int>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::EntryCount {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(ZMat { rows, cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count does not match shape"
        );
        ZMat {
            rows,
            cols,
            data: entries.iter().map(|&e| int(e)).collect(),
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat {
            rows,
            cols,
            data: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Int::one();
        }
        m
    }

    /// Fails with `NotIntegral` if some entry has a denominator other than 1.
    pub fn from_qmat(m: &QMat) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(m.entries().len());
        for e in m.entries() {
            if !e.denom().is_one() {
                return Err(LinalgError::NotIntegral(e.to_string()));
            }
            data.push(e.numer().clone());
        }
        Ok(ZMat {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::new(
            self.rows,
            self.cols,
            self.data.iter().cloned().map(Rat::from_integer).collect(),
        )
        .expect("shape preserved")
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

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut Int {
        &mut self.data[i * self.cols + j]
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<Int, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Int::one());
        }
        let mut a = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return Ok(Int::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    *a.at(i, j) = v;
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_ok_and(|d| d.abs().is_one())
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

    /// row_dst += c * row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &Int) {
        for j in 0..self.cols {
            let v = self.get(src, j) * c;
            *self.at(dst, j) += v;
        }
    }

    /// col_dst += c * col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &Int) {
        for i in 0..self.rows {
            let v = self.get(i, src) * c;
            *self.at(i, dst) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            *self.at(r, j) = v;
        }
    }

    /// Smith normal form by gcd-driven elimination, always pivoting on the
    /// entry of least magnitude in the remaining block.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut left = ZMat::identity(m);
        let mut right = ZMat::identity(n);
        let steps = m.min(n);

        for t in 0..steps {
            loop {
                let pivot = (t..m)
                    .flat_map(|i| (t..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| a.get(i, j).abs());
                let Some((pi, pj)) = pivot else {
                    break;
                };
                a.swap_rows(t, pi);
                left.swap_rows(t, pi);
                a.swap_cols(t, pj);
                right.swap_cols(t, pj);

                let p = a.get(t, t).clone();
                let mut clean = true;
                for i in t + 1..m {
                    let q = a.get(i, t).div_floor(&p);
                    if !q.is_zero() {
                        let neg = -q;
                        a.add_row(i, t, &neg);
                        left.add_row(i, t, &neg);
                    }
                    if !a.get(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    let q = a.get(t, j).div_floor(&p);
                    if !q.is_zero() {
                        let neg = -q;
                        a.add_col(j, t, &neg);
                        right.add_col(j, t, &neg);
                    }
                    if !a.get(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // Pivot row and column are clear; the pivot must divide the
                // rest of the block, otherwise fold an offending row in.
                let offender = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
                match offender {
                    Some((i, _)) => {
                        let one = Int::one();
                        a.add_row(t, i, &one);
                        left.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if a.get(t, t).is_negative() {
                a.negate_row(t);
                left.negate_row(t);
            }
        }
        let diagonal = (0..steps).map(|t| a.get(t, t).clone()).collect();
        SmithForm {
            diagonal,
            left,
            right,
        }
    }
}

impl Mul for &ZMat {
    type Output = ZMat;
    fn mul(self, rhs: &ZMat) -> ZMat {
        assert_eq!(
            self.cols, rhs.rows,
            "integer matrix product with incompatible shapes"
        );
        let mut out = ZMat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.get(k, j);
                    *out.at(i, j) += v;
                }
            }
        }
        out
    }
}

impl SmithForm {
    /// The `rows x cols` matrix carrying `diagonal`.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> ZMat {
        let mut d = ZMat::zeros(rows, cols);
        for (t, v) in self.diagonal.iter().enumerate() {
            *d.at(t, t) = v.clone();
        }
        d
    }
}
