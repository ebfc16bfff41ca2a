//! Lie brackets stored independently of the library, with a direct Jacobi
//! evaluator.

use nilspec_core::lie::LieAlgebra;
use nilspec_core::linalg::rational::rat;
use nilspec_core::linalg::{QMat, Rat};
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Structure constants kept outside the library: `(i, j) -> [X_i, X_j]`
/// for `i < j`.
#[derive(Debug, Clone)]
pub struct Constants {
    pub dim: usize,
    pub table: BTreeMap<(usize, usize), Vec<Rat>>,
}

impl Constants {
    pub fn new(dim: usize) -> Self {
        Constants {
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Rat) {
        let dim = self.dim;
        self.table
            .entry((i, j))
            .or_insert_with(|| vec![Rat::zero(); dim])[k] = c;
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rat> {
        let zero = vec![Rat::zero(); self.dim];
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or(zero),
            std::cmp::Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(|v| v.iter().map(|c| -c).collect())
                .unwrap_or(zero),
            std::cmp::Ordering::Equal => zero,
        }
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                let w = xi * yj;
                if w.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(self.basis_bracket(i, j)) {
                    *o += &w * c;
                }
            }
        }
        out
    }

    pub fn unit(&self, i: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim];
        v[i] = rat(1);
        v
    }

    /// `[[X_i, X_j], X_k] + [[X_j, X_k], X_i] + [[X_k, X_i], X_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rat> {
        let (ei, ej, ek) = (self.unit(i), self.unit(j), self.unit(k));
        let a = self.bracket(&self.bracket(&ei, &ej), &ek);
        let b = self.bracket(&self.bracket(&ej, &ek), &ei);
        let c = self.bracket(&self.bracket(&ek, &ei), &ej);
        a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((a, b), c)| a + b + c)
            .collect()
    }

    pub fn jacobi_holds(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| {
            (i + 1..n)
                .all(|j| (j + 1..n).all(|k| self.jacobiator(i, j, k).iter().all(Zero::is_zero)))
        })
    }

    pub fn algebra(&self) -> LieAlgebra {
        let mut entries = Vec::new();
        for (&(i, j), v) in &self.table {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c.clone()));
                }
            }
        }
        LieAlgebra::from_constants(self.dim, entries).unwrap()
    }

    /// Constants of the same algebra in the basis given by the columns of
    /// `p`.
    pub fn change_basis(&self, p: &QMat, p_inv: &QMat) -> Constants {
        let cols = p.columns();
        let mut out = Constants::new(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = p_inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                for (k, c) in v.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.set(i, j, k, c);
                    }
                }
            }
        }
        out
    }
}

pub fn heisenberg3() -> Constants {
    let mut c = Constants::new(3);
    c.set(0, 1, 2, rat(1));
    c
}

pub fn filiform4() -> Constants {
    let mut c = Constants::new(4);
    c.set(0, 1, 2, rat(1));
    c.set(0, 2, 3, rat(1));
    c
}

pub fn random_constants(r: &mut ChaCha8Rng) -> Constants {
    let n = r.random_range(3..=5);
    let mut c = Constants::new(n);
    for _ in 0..r.random_range(1..=5) {
        let i = r.random_range(0..n - 1);
        let j = r.random_range(i + 1..n);
        let k = r.random_range(0..n);
        let v = r.random_range(-2..=2);
        c.set(i, j, k, rat(v));
    }
    c
}

/// Brackets of the first generators land in the last `center` ones, so
/// every double bracket vanishes.
pub fn two_step(r: &mut ChaCha8Rng) -> Constants {
    let n = r.random_range(3..=6);
    let center = r.random_range(1..n - 1);
    let mut c = Constants::new(n);
    for i in 0..n - center {
        for j in i + 1..n - center {
            for k in n - center..n {
                c.set(i, j, k, rat(r.random_range(-2..=2)));
            }
        }
    }
    c
}

pub fn valid_constants(r: &mut ChaCha8Rng) -> Constants {
    let base = match r.random_range(0..3) {
        0 => heisenberg3(),
        1 => filiform4(),
        _ => two_step(r),
    };
    let (p, p_inv) = crate::matrices::unimodular(r, base.dim);
    base.change_basis(&p, &p_inv)
}

/// `[[B, 0], [w, det B]]` preserves `[X1, X2] = X3`.
pub fn heisenberg_automorphism(r: &mut ChaCha8Rng) -> (QMat, QMat) {
    let b = crate::matrices::expanding_matrix(r, 2);
    let det = b.det().unwrap();
    let mut a = QMat::zeros(3, 3);
    for i in 0..2 {
        for j in 0..2 {
            a.set(i, j, b.get(i, j).clone());
        }
        a.set(2, i, rat(r.random_range(-3..=3)));
    }
    a.set(2, 2, det);
    (a, b)
}
