//! Duals, Kronecker products and exterior powers of linear maps.
//!
//! Exterior bases use strictly increasing index tuples in lexicographic
//! order, everywhere in the crate. With that order, `exterior_power(m, l)`
//! is the `l`-th compound matrix of `m`.

use crate::linalg::rational::Rat;
use crate::linalg::{LinalgError, Poly, QMat};
use itertools::Itertools;
use num_traits::{One, Zero};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultilinearError {
    #[error("degree {degree} is out of range for dimension {dim}")]
    DegreeOutOfRange { degree: usize, dim: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The basis `{e_I : I = (i_1 < ... < i_l)}` of the `l`-th exterior power of
/// an `n`-dimensional space, 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorBasis {
    dim: usize,
    degree: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl ExteriorBasis {
    pub fn new(dim: usize, degree: usize) -> Result<Self, MultilinearError> {
        if degree > dim {
            return Err(MultilinearError::DegreeOutOfRange { degree, dim });
        }
        let tuples: Vec<Vec<usize>> = (0..dim).combinations(degree).collect();
        let index = tuples
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k))
            .collect();
        Ok(ExteriorBasis {
            dim,
            degree,
            tuples,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple(&self, k: usize) -> &[usize] {
        &self.tuples[k]
    }

    /// Position of a strictly increasing tuple.
    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    /// Renders basis element `k` as `x1^x3`, 1-based.
    pub fn label(&self, k: usize) -> String {
        if self.degree == 0 {
            return "1".to_string();
        }
        self.tuples[k]
            .iter()
            .map(|i| format!("x{}", i + 1))
            .join("^")
    }
}

/// Sorts `indices` in place, returning the permutation sign, or `None` on a
/// repeated index (the wedge vanishes).
pub fn sort_with_sign(indices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// The dual map in dual bases: the transpose.
pub fn dual_map(m: &QMat) -> Result<QMat, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.transpose())
}

pub fn kronecker(a: &QMat, b: &QMat) -> QMat {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = QMat::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out.set(i * br + k, j * bc + l, x * b.get(k, l));
                }
            }
        }
    }
    out
}

/// The `l`-th compound matrix: entry `(I, J)` is the minor of `m` on rows
/// `I` and columns `J`. `l = 0` gives `[1]`.
pub fn exterior_power(m: &QMat, l: usize) -> Result<QMat, MultilinearError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    let basis = ExteriorBasis::new(m.rows(), l)?;
    let size = basis.len();
    let mut out = QMat::zeros(size, size);
    for (r, rows) in basis.tuples().iter().enumerate() {
        for (c, cols) in basis.tuples().iter().enumerate() {
            let minor = if l == 0 {
                Rat::one()
            } else {
                m.submatrix(rows, cols).det()?
            };
            out.set(r, c, minor);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExteriorCheck {
    /// Roots of the compound's characteristic polynomial match the products
    /// over index subsets.
    Confirmed {
        products: Vec<Rat>,
    },
    Mismatch {
        expected: Poly,
        actual: Poly,
    },
    /// `char_poly(m)` does not split over the rationals.
    OracleInapplicable,
}

/// Rational roots with multiplicity, when `p` splits over the rationals.
pub fn rational_roots(p: &Poly) -> Option<Vec<Rat>> {
    let mut p = p.monic();
    let mut roots = Vec::new();
    // Clear denominators: roots of the monic p are roots of an integer
    // polynomial whose rational roots are num | a0, den | an.
    while let Some(d) = p.degree() {
        if d == 0 {
            break;
        }
        if p.coeff(0).is_zero() {
            roots.push(Rat::zero());
            p = p.div_rem(&Poly::x()).0;
            continue;
        }
        let lcm = p.coeffs().iter().fold(num_bigint::BigInt::one(), |acc, c| {
            num_integer::lcm(acc, c.denom().clone())
        });
        let ints: Vec<num_bigint::BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let a0 = ints[0].clone();
        let an = ints[d].clone();
        let (nums, dens) = (divisors(&a0)?, divisors(&an)?);
        let found = nums.into_iter().find_map(|num| {
            dens.iter().find_map(|den| {
                [1i64, -1].into_iter().find_map(|s| {
                    let r = Rat::new(num.clone() * s, den.clone());
                    p.eval(&r).is_zero().then_some(r)
                })
            })
        })?;
        roots.push(found.clone());
        p = p.div_rem(&Poly::from_coeffs(vec![-found, Rat::one()])).0;
    }
    roots.sort();
    Some(roots)
}

/// Positive divisors by trial division; `None` past `2^40`.
fn divisors(n: &num_bigint::BigInt) -> Option<Vec<num_bigint::BigInt>> {
    use num_traits::{Signed, ToPrimitive};
    let small = n.abs().to_u64().filter(|&v| v < 1 << 40)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(num_bigint::BigInt::from(d));
            if d * d != small {
                out.push(num_bigint::BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Brute-force check that the spectrum of `exterior_power(m, l)` is the
/// multiset of `l`-fold products of eigenvalues over index subsets. Only
/// applies when `char_poly(m)` splits over the rationals.
pub fn char_poly_exterior_check(m: &QMat, l: usize) -> Result<ExteriorCheck, MultilinearError> {
    let cp = m.char_poly()?;
    let ext = exterior_power(m, l)?;
    let Some(roots) = rational_roots(&cp) else {
        return Ok(ExteriorCheck::OracleInapplicable);
    };
    let mut products: Vec<Rat> = (0..roots.len())
        .combinations(l)
        .map(|idx| idx.iter().fold(Rat::one(), |acc, &i| acc * &roots[i]))
        .collect();
    products.sort();
    let expected = Poly::from_roots(&products);
    let actual = ext.char_poly()?;
    if expected == actual {
        Ok(ExteriorCheck::Confirmed { products })
    } else {
        Ok(ExteriorCheck::Mismatch { expected, actual })
    }
}
