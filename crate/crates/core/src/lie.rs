//! Finite-dimensional Lie algebras over the rationals given by structure
//! constants, their Chevalley-Eilenberg cochain complexes, and automorphisms
//! pushed through to cohomology.
//!
//! Indices are 0-based in the API and 1-based in rendered text. The basis
//! `x_1, ..., x_n` of the dual is dual to `X_1, ..., X_n`; on generators
//! `dx_k = -sum_{i<j} c_ij^k x_i ^ x_j`, and `d` extends as an
//! antiderivation: `d(a ^ b) = da ^ b + (-1)^|a| a ^ db`. Induced-map
//! matrices depend on this sign convention; dimensions do not.

use crate::complex::{chain_exp_check, ChainEndomorphism, CochainComplex, ComplexError};
use crate::linalg::rational::{rat, Rat};
use crate::linalg::{Poly, QMat};
use crate::multilinear::{exterior_power, sort_with_sign, ExteriorBasis};
use crate::spectra::{is_expanding_matrix, ExpansionVerdict};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `(i, j)` with `i < j` to the coordinates of `[X_i, X_j]`.
    brackets: BTreeMap<(usize, usize), Vec<Rat>>,
}

/// A nonzero coefficient of `d^2 x_m` on `x_i ^ x_j ^ x_k`. Jacobi fails on
/// `(X_i, X_j, X_k)` in the `X_m` component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiWitness {
    pub triple: (usize, usize, usize),
    pub generator: usize,
    pub value: Rat,
}

impl fmt::Display for JacobiWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = self.triple;
        write!(
            f,
            "d^2 x{} has coefficient {} on x{}^x{}^x{}",
            self.generator + 1,
            self.value,
            i + 1,
            j + 1,
            k + 1
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("bracket index ({}, {}, {}) out of range for dimension {dim}", .i + 1, .j + 1, .k + 1)]
    IndexOutOfRange {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },
    #[error("bracket ({}, {}) must have i < j", .i + 1, .j + 1)]
    NotIncreasing { i: usize, j: usize },
    #[error("Jacobi identity fails: {0}")]
    JacobiViolation(JacobiWitness),
    #[error("matrix is {rows}x{cols}, expected {dim}x{dim}")]
    WrongSize {
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error(
        "bracket ({}, {}) not preserved: [aX{}, aX{}] = {} but a[X{}, X{}] = {}",
        .i + 1, .j + 1, .i + 1, .j + 1, render_vec(.left), .i + 1, .j + 1, render_vec(.right)
    )]
    NotBracketPreserving {
        i: usize,
        j: usize,
        left: Vec<Rat>,
        right: Vec<Rat>,
    },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Renders coordinates as a combination of `X_k`, e.g. `4X3`.
pub fn render_vec(v: &[Rat]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            if *c == rat(1) {
                format!("X{}", k + 1)
            } else if *c == rat(-1) {
                format!("-X{}", k + 1)
            } else if c.is_integer() {
                format!("{c}X{}", k + 1)
            } else {
                format!("({c})X{}", k + 1)
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    /// Sets `c_ij^k = c` (0-based, `i < j`). Zero constants are dropped.
    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, c: Rat) -> Result<(), LieError> {
        let dim = self.dim;
        if i >= dim || j >= dim || k >= dim {
            return Err(LieError::IndexOutOfRange { i, j, k, dim });
        }
        if i >= j {
            return Err(LieError::NotIncreasing { i, j });
        }
        let entry = self
            .brackets
            .entry((i, j))
            .or_insert_with(|| vec![Rat::zero(); dim]);
        entry[k] = c;
        if entry.iter().all(Zero::is_zero) {
            self.brackets.remove(&(i, j));
        }
        Ok(())
    }

    /// From `(i, j, k, c)` entries, 0-based. Jacobi is not checked here.
    pub fn from_constants(
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, Rat)>,
    ) -> Result<Self, LieError> {
        let mut g = LieAlgebra::abelian(dim);
        for (i, j, k, c) in constants {
            g.set_constant(i, j, k, c)?;
        }
        Ok(g)
    }

    /// `[X_{2i-1}, X_{2i}] = X_{2m+1}` for `i = 1..m`; dimension `2m + 1`.
    pub fn heisenberg(m: usize) -> Self {
        let dim = 2 * m + 1;
        LieAlgebra::from_constants(dim, (0..m).map(|i| (2 * i, 2 * i + 1, dim - 1, rat(1))))
            .expect("indices in range")
    }

    /// `[X_1, X_i] = X_{i+1}` for `i = 2..n-1`.
    pub fn filiform(n: usize) -> Self {
        LieAlgebra::from_constants(n, (1..n.saturating_sub(1)).map(|i| (0, i, i + 1, rat(1))))
            .expect("indices in range")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero constants `(i, j, k, c)` in lexicographic order.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Rat)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), v)| {
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(move |(k, c)| (i, j, k, c.clone()))
            })
            .collect()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rat {
        if i == j {
            return Rat::zero();
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        match self.brackets.get(&(a, b)) {
            Some(v) => &v[k] * rat(sign),
            None => Rat::zero(),
        }
    }

    /// Coordinates of `[X_i, X_j]` for any `i, j`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rat> {
        (0..self.dim).map(|k| self.constant(i, j, k)).collect()
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (&(i, j), v) in &self.brackets {
            // [x, y] picks up (x_i y_j - x_j y_i) [X_i, X_j]
            let w = &x[i] * &y[j] - &x[j] * &y[i];
            if w.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(v) {
                *o += &w * c;
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = rat(1);
    v
}

fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `[[X_i, X_j], X_k] + [[X_j, X_k], X_i] + [[X_k, X_i], X_j]`, evaluated
/// directly from the bracket.
pub fn jacobiator(g: &LieAlgebra, i: usize, j: usize, k: usize) -> Vec<Rat> {
    let n = g.dim;
    let (xi, xj, xk) = (unit(n, i), unit(n, j), unit(n, k));
    let t1 = g.bracket(&g.bracket(&xi, &xj), &xk);
    let t2 = g.bracket(&g.bracket(&xj, &xk), &xi);
    let t3 = g.bracket(&g.bracket(&xk, &xi), &xj);
    add(&add(&t1, &t2), &t3)
}

/// Triples `i < j < k` whose jacobiator is nonzero.
pub fn jacobi_failures(g: &LieAlgebra) -> Vec<(usize, usize, usize)> {
    let n = g.dim;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if jacobiator(g, i, j, k).iter().any(|c| !c.is_zero()) {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

pub fn satisfies_jacobi(g: &LieAlgebra) -> bool {
    jacobi_failures(g).is_empty()
}

/// `d` on the basis of `Lambda^l`, as a `C(n, l+1) x C(n, l)` matrix.
fn ce_differential(g: &LieAlgebra, l: usize) -> QMat {
    let n = g.dim;
    let src = ExteriorBasis::new(n, l).expect("l <= n");
    let dst = ExteriorBasis::new(n, l + 1).expect("l < n");
    let mut d = QMat::zeros(dst.len(), src.len());
    // dx_k = -sum_{a<b} c_ab^k x_a ^ x_b
    let gens: Vec<Vec<(usize, usize, Rat)>> = (0..n)
        .map(|k| {
            g.brackets
                .iter()
                .filter(|(_, v)| !v[k].is_zero())
                .map(|(&(a, b), v)| (a, b, -v[k].clone()))
                .collect()
        })
        .collect();
    for (col, tuple) in src.tuples().iter().enumerate() {
        for (p, &ip) in tuple.iter().enumerate() {
            // d passes p degree-one factors before reaching x_ip
            let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
            for (a, b, c) in &gens[ip] {
                let mut idx = Vec::with_capacity(l + 1);
                idx.extend_from_slice(&tuple[..p]);
                idx.push(*a);
                idx.push(*b);
                idx.extend_from_slice(&tuple[p + 1..]);
                let Some(s) = sort_with_sign(&mut idx) else {
                    continue;
                };
                let row = dst.position(&idx).expect("sorted tuple");
                let v = d.get(row, col) + &sign * c * rat(s as i64);
                d.set(row, col, v);
            }
        }
    }
    d
}

/// First nonzero coefficient of `d^2` on a generator.
fn square_on_generators(g: &LieAlgebra, d1: &QMat, d2: &QMat) -> Option<JacobiWitness> {
    let sq = d2 * d1;
    let basis3 = ExteriorBasis::new(g.dim, 3).ok()?;
    for m in 0..g.dim {
        for r in 0..sq.rows() {
            let v = sq.get(r, m);
            if !v.is_zero() {
                let t = basis3.tuple(r);
                return Some(JacobiWitness {
                    triple: (t[0], t[1], t[2]),
                    generator: m,
                    value: v.clone(),
                });
            }
        }
    }
    None
}

/// The cochain complex `Lambda^0 -> Lambda^1 -> ... -> Lambda^n` of the
/// dual. Fails with a located witness when `d^2 != 0`.
pub fn ce_complex(g: &LieAlgebra) -> Result<CochainComplex, LieError> {
    let n = g.dim;
    let dims: Vec<usize> = (0..=n)
        .map(|l| ExteriorBasis::new(n, l).expect("l <= n").len())
        .collect();
    let diffs: Vec<QMat> = (0..n).map(|l| ce_differential(g, l)).collect();
    if n >= 3 {
        if let Some(w) = square_on_generators(g, &diffs[1], &diffs[2]) {
            return Err(LieError::JacobiViolation(w));
        }
    }
    CochainComplex::new(dims, diffs).map_err(|e| LieError::Internal(e.to_string()))
}

/// Cohomology dimensions of the CE complex, degrees `0..=n`.
pub fn betti(g: &LieAlgebra) -> Result<Vec<usize>, LieError> {
    Ok(ce_complex(g)?.betti())
}

/// A bracket-preserving invertible linear map `a` (columns are the images
/// `a X_j`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAutomorphism {
    algebra: LieAlgebra,
    matrix: QMat,
}

impl LieAutomorphism {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }
}

/// Validates `a` as an automorphism: invertible and
/// `[a X_i, a X_j] = a [X_i, X_j]` for all `i < j`. Integrality is not
/// required.
pub fn check_automorphism(g: &LieAlgebra, a: &QMat) -> Result<LieAutomorphism, LieError> {
    let n = g.dim;
    if a.rows() != n || a.cols() != n {
        return Err(LieError::WrongSize {
            rows: a.rows(),
            cols: a.cols(),
            dim: n,
        });
    }
    if a.det().expect("square").is_zero() {
        return Err(LieError::NotInvertible);
    }
    let cols = a.columns();
    for i in 0..n {
        for j in i + 1..n {
            let left = g.bracket(&cols[i], &cols[j]);
            let right = a.mul_vec(&g.bracket_basis(i, j));
            if left != right {
                return Err(LieError::NotBracketPreserving { i, j, left, right });
            }
        }
    }
    Ok(LieAutomorphism {
        algebra: g.clone(),
        matrix: a.clone(),
    })
}

/// The chain map `Lambda^l(a^T)` on the CE complex; `a^T` is the matrix of
/// the dual map in the dual basis.
pub fn induced_ce_endomorphism(aut: &LieAutomorphism) -> Result<ChainEndomorphism, LieError> {
    let complex = ce_complex(&aut.algebra)?;
    let at = aut.matrix.transpose();
    let maps = (0..=aut.algebra.dim)
        .map(|l| exterior_power(&at, l).expect("l <= n"))
        .collect();
    ChainEndomorphism::new(complex, maps).map_err(|e| match e {
        ComplexError::NotAChainMap { degree } => LieError::Internal(format!(
            "induced map does not commute with d in degree {degree}"
        )),
        other => LieError::Internal(other.to_string()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCertificate {
    pub degree: usize,
    /// Matrix of the induced map on `H^l` in the representative basis.
    pub induced: QMat,
    pub char_poly: Poly,
    pub verdict: ExpansionVerdict,
    /// Characteristic polynomial of the homology-side map, the transpose.
    pub homology_char_poly: Poly,
    /// Labels of the representative cocycles, e.g. `x1^x3`.
    pub representatives: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub automorphism: ExpansionVerdict,
    pub degrees: Vec<DegreeCertificate>,
}

impl ExpansionCertificate {
    pub fn all_expanding(&self) -> bool {
        self.degrees.iter().all(|d| d.verdict.is_expanding())
    }

    /// Degrees where an expanding automorphism induces a non-expanding map.
    /// Nonempty output contradicts the expansion theorem for nilmanifolds.
    pub fn alarms(&self) -> Vec<usize> {
        if !self.automorphism.is_expanding() {
            return Vec::new();
        }
        self.degrees
            .iter()
            .filter(|d| !d.verdict.is_expanding())
            .map(|d| d.degree)
            .collect()
    }

    /// Cohomology and homology sides agree in every degree.
    pub fn dual_consistent(&self) -> bool {
        self.degrees
            .iter()
            .all(|d| d.char_poly == d.homology_char_poly)
    }
}

/// Per positive degree: the induced map on cohomology, its characteristic
/// polynomial and expansion verdict.
pub fn certify_expanding_on_cohomology(
    aut: &LieAutomorphism,
) -> Result<ExpansionCertificate, LieError> {
    let f = induced_ce_endomorphism(aut)?;
    let spaces = f.complex().cohomology();
    let n = aut.algebra.dim;
    let degrees = chain_exp_check(&f)
        .into_iter()
        .map(|d| {
            let char_poly = d.induced.char_poly().expect("square");
            let homology_char_poly = d.induced.transpose().char_poly().expect("square");
            let basis = ExteriorBasis::new(n, d.degree).expect("degree <= n");
            let reps = &spaces[d.degree].representatives;
            let representatives = (0..reps.cols())
                .map(|c| render_cochain(&basis, &reps.column(c)))
                .collect();
            DegreeCertificate {
                degree: d.degree,
                induced: d.induced,
                char_poly,
                verdict: d.cohomology,
                homology_char_poly,
                representatives,
            }
        })
        .collect();
    Ok(ExpansionCertificate {
        automorphism: is_expanding_matrix(&aut.matrix).expect("square"),
        degrees,
    })
}

/// Renders a cochain in the exterior basis, e.g. `x1^x3 - 2 x2^x3`.
pub fn render_cochain(basis: &ExteriorBasis, v: &[Rat]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let label = basis.label(k);
            if *c == rat(1) {
                label
            } else if *c == rat(-1) {
                format!("-{label}")
            } else {
                format!("{c} {label}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}
