//! Exact dense linear algebra over the rationals and the integers.

pub mod integer;
pub mod intertwiner;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use integer::{SmithForm, ZMat};
pub use intertwiner::{intertwiner_space, verify_no_intertwiner, IntertwinerError, NoIntertwiner};
pub use matrix::QMat;
pub use poly::Poly;
pub use rational::{Int, Rat};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("cannot multiply a {}x{} matrix by a {}x{} matrix", left.0, left.1, right.0, right.1)]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is singular")]
    Singular,
    #[error("entry {0} is not an integer")]
    NotIntegral(String),
}

/// `rank(m)` over the rationals.
pub fn rank(m: &QMat) -> usize {
    m.rank()
}

pub fn kernel_basis(m: &QMat) -> Vec<Vec<Rat>> {
    m.kernel_basis()
}

pub fn image_basis(m: &QMat) -> Vec<Vec<Rat>> {
    m.image_basis()
}

pub fn char_poly(m: &QMat) -> Result<Poly, LinalgError> {
    m.char_poly()
}

pub fn smith_normal_form(m: &ZMat) -> SmithForm {
    m.smith_normal_form()
}
