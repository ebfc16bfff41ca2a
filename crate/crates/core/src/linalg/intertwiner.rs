//! Solutions of `h * f = g * h`.
//!
//! With `f` of size `n` and `g` of size `m`, the unknown `h` is `m x n`. Its
//! entries are vectorized row-major (`h[i][j]` is unknown `i * n + j`) and the
//! homogeneous system `h f - g h = 0` is solved exactly.

use super::integer::ZMat;
use super::matrix::QMat;
use super::rational::Int;
use super::LinalgError;
use crate::spectra::{is_expanding_matrix, ExpansionVerdict};
use num_traits::Zero;
use thiserror::Error;

/// The `(mn) x (mn)` coefficient matrix of `h f - g h = 0`.
pub fn intertwiner_system(f: &QMat, g: &QMat) -> Result<QMat, LinalgError> {
    for m in [f, g] {
        if !m.is_square() {
            return Err(LinalgError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
    }
    let n = f.rows();
    let m = g.rows();
    let mut sys = QMat::zeros(m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            let eq = i * n + j;
            // (h f)[i][j] = sum_k h[i][k] f[k][j]
            for k in 0..n {
                let c = f.get(k, j);
                if !c.is_zero() {
                    let v = sys.get(eq, i * n + k) + c;
                    sys.set(eq, i * n + k, v);
                }
            }
            // (g h)[i][j] = sum_k g[i][k] h[k][j]
            for k in 0..m {
                let c = g.get(i, k);
                if !c.is_zero() {
                    let v = sys.get(eq, k * n + j) - c;
                    sys.set(eq, k * n + j, v);
                }
            }
        }
    }
    Ok(sys)
}

/// Basis over the rationals of `{h : h f = g h}`; each element is `m x n`.
/// Empty when only `h = 0` intertwines.
pub fn intertwiner_space(f: &QMat, g: &QMat) -> Result<Vec<QMat>, LinalgError> {
    let sys = intertwiner_system(f, g)?;
    let (m, n) = (g.rows(), f.rows());
    Ok(sys
        .kernel_basis()
        .into_iter()
        .map(|v| QMat::new(m, n, v).expect("kernel vector has m*n entries"))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntertwinerError {
    #[error(transparent)]
    Shape(#[from] LinalgError),
    #[error("the source map is not expanding")]
    SourceNotExpanding(ExpansionVerdict),
    #[error("the target map is not unimodular (determinant {0})")]
    TargetNotUnimodular(Int),
}

/// Outcome of checking that an expanding integer map admits no nonzero
/// intertwiner into a unimodular one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoIntertwiner {
    Confirmed,
    /// A nonzero `h` with `h f = g h`. Cannot occur for inputs meeting the
    /// preconditions.
    Witness(QMat),
}

/// For expanding integer `f` and unimodular `g`, confirms that the only
/// `h` with `h f = g h` is zero.
pub fn verify_no_intertwiner(f: &ZMat, g: &ZMat) -> Result<NoIntertwiner, IntertwinerError> {
    let fq = f.to_qmat();
    let verdict = is_expanding_matrix(&fq)?;
    if !verdict.is_expanding() {
        return Err(IntertwinerError::SourceNotExpanding(verdict));
    }
    let det = g.det()?;
    if det != Int::from(1) && det != Int::from(-1) {
        return Err(IntertwinerError::TargetNotUnimodular(det));
    }
    let space = intertwiner_space(&fq, &g.to_qmat())?;
    Ok(match space.into_iter().next() {
        None => NoIntertwiner::Confirmed,
        Some(h) => NoIntertwiner::Witness(h),
    })
}

/// Residual `h f - g h`.
pub fn intertwining_residual(h: &QMat, f: &QMat, g: &QMat) -> QMat {
    &(h * f) - &(g * h)
}
