//! Random integer matrices with controlled rank and spectrum.

use nilspec_core::linalg::rational::rat;
use nilspec_core::linalg::{QMat, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> QMat {
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| r.random_range(-bound..=bound))
        .collect();
    QMat::from_i64(rows, cols, &entries)
}

/// `L * [I_rank 0; 0 0] * R` with random unimodular `L`, `R`.
pub fn matrix_of_rank(r: &mut ChaCha8Rng, rows: usize, cols: usize, rank: usize) -> QMat {
    let (left, _) = unimodular(r, rows);
    let (right, _) = unimodular(r, cols);
    let mut core = QMat::zeros(rows, cols);
    for k in 0..rank {
        core.set(k, k, rat(1));
    }
    &(&left * &core) * &right
}

/// A random unimodular integer matrix together with its inverse, both built
/// from the same sequence of elementary row operations.
pub fn unimodular(r: &mut ChaCha8Rng, n: usize) -> (QMat, QMat) {
    let mut m = QMat::identity(n);
    let mut inv = QMat::identity(n);
    if n < 2 {
        if n == 1 && r.random_bool(0.5) {
            m.set(0, 0, rat(-1));
            inv.set(0, 0, rat(-1));
        }
        return (m, inv);
    }
    for _ in 0..3 * n {
        let i = r.random_range(0..n);
        let mut j = r.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rat(r.random_range(-2..=2));
        // m <- E m with E = I + c e_ij; inv <- inv E^{-1}
        let e = elementary(n, i, j, &c);
        let e_inv = elementary(n, i, j, &-c);
        m = &e * &m;
        inv = &inv * &e_inv;
    }
    (m, inv)
}

fn elementary(n: usize, i: usize, j: usize, c: &Rat) -> QMat {
    let mut e = QMat::identity(n);
    e.set(i, j, c.clone());
    e
}

/// Integer matrix conjugate to an upper-triangular matrix with the given
/// diagonal.
pub fn with_eigenvalues(r: &mut ChaCha8Rng, diag: &[i64]) -> QMat {
    let n = diag.len();
    let mut t = QMat::diag_i64(diag);
    for i in 0..n {
        for j in i + 1..n {
            t.set(i, j, rat(r.random_range(-2..=2)));
        }
    }
    let (p, p_inv) = unimodular(r, n);
    &(&p * &t) * &p_inv
}

/// Nonzero integers with absolute value at least 2.
pub fn expanding_eigenvalues(r: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n)
        .map(|_| {
            let v = r.random_range(2..=4);
            if r.random_bool(0.5) {
                v
            } else {
                -v
            }
        })
        .collect()
}

pub fn expanding_matrix(r: &mut ChaCha8Rng, n: usize) -> QMat {
    let d = expanding_eigenvalues(r, n);
    with_eigenvalues(r, &d)
}

/// Characteristic polynomial by cofactor expansion along the first row,
/// independent of the library's Hessenberg reduction. Only for small sizes.
pub fn char_poly_by_cofactors(m: &QMat) -> nilspec_core::linalg::Poly {
    use nilspec_core::linalg::Poly;
    let n = m.rows();
    // entries of x I - m as polynomials
    let entries: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Poly::constant(-m.get(i, j).clone());
                    if i == j {
                        &c + &Poly::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    poly_det(&entries)
}

fn poly_det(m: &[Vec<nilspec_core::linalg::Poly>]) -> nilspec_core::linalg::Poly {
    use nilspec_core::linalg::Poly;
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut total = Poly::zero();
    for c in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * &poly_det(&minor);
        total = if c % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}
