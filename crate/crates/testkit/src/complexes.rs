//! Cochain complexes and exact triples with structure known by
//! construction.

use nilspec_core::complex::{CochainComplex, ExactTriple};
use nilspec_core::linalg::rational::rat;
use nilspec_core::linalg::QMat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A complex in which degree `i` splits as `H_i + U_i + V_i`, with `d`
/// sending `V_i` identically onto `U_{i+1}`, then re-expressed in random
/// bases. `f` acts on `H_i` by `a[i]` modulo lower terms, so the induced map
/// on `H^i` is conjugate to `a[i]`.
pub struct StandardForm {
    pub complex: CochainComplex,
    pub maps: Vec<QMat>,
    pub a: Vec<QMat>,
}

pub fn block(rows: &[usize], cols: &[usize], blocks: &[Vec<Option<QMat>>]) -> QMat {
    let mut out = QMat::zeros(rows.iter().sum(), cols.iter().sum());
    let mut r0 = 0;
    for (bi, &br) in rows.iter().enumerate() {
        let mut c0 = 0;
        for (bj, &bc) in cols.iter().enumerate() {
            if let Some(b) = &blocks[bi][bj] {
                for i in 0..br {
                    for j in 0..bc {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
            }
            c0 += bc;
        }
        r0 += br;
    }
    out
}

pub fn standard_form(r: &mut ChaCha8Rng, top: usize, expanding: bool) -> StandardForm {
    let gen = |r: &mut ChaCha8Rng, n: usize| {
        if expanding {
            crate::matrices::expanding_matrix(r, n)
        } else {
            crate::matrices::int_matrix(r, n, n, 3)
        }
    };
    let (h, v) = loop {
        let h: Vec<usize> = (0..=top).map(|_| r.random_range(0..=2)).collect();
        let mut v: Vec<usize> = (0..=top).map(|_| r.random_range(0..=2)).collect();
        v[top] = 0;
        // u_i = v_{i-1}
        if (0..=top).all(|i| h[i] + v[i] + if i > 0 { v[i - 1] } else { 0 } > 0) {
            break (h, v);
        }
    };
    let u: Vec<usize> = (0..=top)
        .map(|i| if i > 0 { v[i - 1] } else { 0 })
        .collect();
    let dims: Vec<usize> = (0..=top).map(|i| h[i] + u[i] + v[i]).collect();
    let a: Vec<QMat> = (0..=top).map(|i| gen(r, h[i])).collect();
    // m[i] acts on V_i and again on U_{i+1}
    let m: Vec<QMat> = (0..=top).map(|i| gen(r, v[i])).collect();
    let bases: Vec<(QMat, QMat)> = dims
        .iter()
        .map(|&n| crate::matrices::unimodular(r, n))
        .collect();

    let mut diffs = Vec::new();
    for i in 0..top {
        let shape_to = [h[i + 1], u[i + 1], v[i + 1]];
        let shape_from = [h[i], u[i], v[i]];
        let mut blocks = vec![vec![None, None, None]; 3];
        blocks[1][2] = Some(QMat::identity(v[i]));
        let d = block(&shape_to, &shape_from, &blocks);
        diffs.push(&(&bases[i + 1].0 * &d) * &bases[i].1);
    }
    let mut maps = Vec::new();
    for i in 0..=top {
        let shape = [h[i], u[i], v[i]];
        let mut blocks = vec![vec![None, None, None]; 3];
        blocks[0][0] = Some(a[i].clone());
        blocks[0][2] = Some(crate::matrices::int_matrix(r, h[i], v[i], 2));
        blocks[1][0] = Some(crate::matrices::int_matrix(r, u[i], h[i], 2));
        if i > 0 {
            blocks[1][1] = Some(m[i - 1].clone());
        }
        blocks[1][2] = Some(crate::matrices::int_matrix(r, u[i], v[i], 2));
        blocks[2][2] = Some(m[i].clone());
        let f = block(&shape, &shape, &blocks);
        maps.push(&(&bases[i].0 * &f) * &bases[i].1);
    }
    StandardForm {
        complex: CochainComplex::new(dims, diffs).expect("d^2 = 0 by construction"),
        maps,
        a,
    }
}

/// `A -> B1 + B2 -> C` exact in the middle, with random ranks.
pub fn exact_triple(r: &mut ChaCha8Rng) -> ExactTriple {
    let a = r.random_range(1..=4);
    let b1 = r.random_range(1..=3);
    let b2 = r.random_range(1..=3);
    let b = b1 + b2;
    let rank = r.random_range(0..=a.min(b));
    let c = (b - rank).max(1) + r.random_range(0..=1);
    let (p, p_inv) = crate::matrices::unimodular(r, b);
    // im phi = p * span(e_1..e_rank)
    let mut k = QMat::zeros(b, a);
    for i in 0..rank {
        k.set(i, i, rat(1));
    }
    let (ra, _) = crate::matrices::unimodular(r, a);
    let phi = &(&p * &k) * &ra;
    // ker psi = p * span(e_1..e_rank)
    let mut j = QMat::zeros(c, b);
    for i in 0..b - rank {
        j.set(i, rank + i, rat(1));
    }
    let (q, _) = crate::matrices::unimodular(r, c);
    let psi = &(&q * &j) * &p_inv;
    let all_a: Vec<usize> = (0..a).collect();
    let all_c: Vec<usize> = (0..c).collect();
    let top: Vec<usize> = (0..b1).collect();
    let bottom: Vec<usize> = (b1..b).collect();
    ExactTriple::new(
        phi.submatrix(&top, &all_a),
        phi.submatrix(&bottom, &all_a),
        psi.submatrix(&all_c, &top),
        -&psi.submatrix(&all_c, &bottom),
    )
    .expect("exact by construction")
}
