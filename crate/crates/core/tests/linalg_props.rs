use itertools::Itertools;
use nilspec_core::linalg::intertwiner::intertwining_residual;
use nilspec_core::linalg::rational::int;
use nilspec_core::linalg::{intertwiner_space, Int, Poly, QMat, Rat, ZMat};
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

fn small_matrix(max: usize) -> impl Strategy<Value = QMat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |v| QMat::from_i64(r, c, &v))
    })
}

fn square_matrix(max: usize) -> impl Strategy<Value = QMat> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| QMat::from_i64(n, n, &v))
    })
}

/// Evaluates `p` at a square matrix by Horner's rule.
fn eval_at_matrix(p: &Poly, m: &QMat) -> QMat {
    let n = m.rows();
    let mut acc = QMat::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * m) + &QMat::identity(n).scale(c);
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(m in small_matrix(6)) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.image_basis().len(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn image_vectors_lie_in_column_space(m in small_matrix(5)) {
        let rank = m.rank();
        for v in m.image_basis() {
            let extended = m.hstack(&QMat::from_columns(m.rows(), &[v]));
            prop_assert_eq!(extended.rank(), rank);
        }
    }

    #[test]
    fn transpose_has_same_char_poly(m in square_matrix(6)) {
        prop_assert_eq!(m.char_poly().unwrap(), m.transpose().char_poly().unwrap());
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(m in square_matrix(4)) {
        prop_assert_eq!(m.char_poly().unwrap(), nilspec_testkit::matrices::char_poly_by_cofactors(&m));
    }

    #[test]
    fn cayley_hamilton(m in square_matrix(5)) {
        let p = m.char_poly().unwrap();
        prop_assert!(eval_at_matrix(&p, &m).is_zero());
    }

    #[test]
    fn det_is_multiplicative(
        (a, b) in (1usize..=5).prop_flat_map(|n| (
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| QMat::from_i64(n, n, &v)),
            proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| QMat::from_i64(n, n, &v)),
        ))
    ) {
        let ab = &a * &b;
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        let za = ZMat::from_qmat(&a).unwrap();
        prop_assert_eq!(Rat::from(za.det().unwrap()), a.det().unwrap());
    }

    #[test]
    fn inverse_round_trips(m in square_matrix(5)) {
        match m.inverse() {
            Ok(inv) => prop_assert_eq!(&m * &inv, QMat::identity(m.rows())),
            Err(_) => prop_assert!(m.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn smith_form_factors_the_matrix(m in small_matrix(4)) {
        let z = ZMat::from_qmat(&m).unwrap();
        let s = z.smith_normal_form();
        let (r, c) = (z.rows(), z.cols());
        prop_assert!(s.left.is_unimodular());
        prop_assert!(s.right.is_unimodular());
        prop_assert_eq!(&(&s.left * &z) * &s.right, s.diagonal_matrix(r, c));
        for w in s.diagonal.windows(2) {
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(s.diagonal.iter().all(|d| *d >= Int::zero()));
    }

    #[test]
    fn smith_factors_match_determinantal_divisors(m in small_matrix(4)) {
        let z = ZMat::from_qmat(&m).unwrap();
        let s = z.smith_normal_form();
        let mut product = Int::one();
        for (k, d) in s.diagonal.iter().enumerate() {
            product *= d;
            prop_assert_eq!(&product, &determinantal_divisor(&m, k + 1));
        }
    }
}

/// gcd of all `k x k` minors.
fn determinantal_divisor(m: &QMat, k: usize) -> Int {
    let mut g = Int::zero();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            let d = m.submatrix(&rows, &cols).det().unwrap();
            g = g.gcd(d.numer());
        }
    }
    g
}

#[test]
fn smith_known_factors() {
    let z = ZMat::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
    assert_eq!(
        z.smith_normal_form().diagonal,
        vec![int(2), int(6), int(12)]
    );
}

#[test]
fn intertwiners_solve_the_equation() {
    let mut r = nilspec_testkit::rng(11);
    for _ in 0..100 {
        let n = r.random_range(1..=3usize);
        let m = r.random_range(1..=3usize);
        let f = nilspec_testkit::matrices::int_matrix(&mut r, n, n, 2);
        let g = nilspec_testkit::matrices::int_matrix(&mut r, m, m, 2);
        let space = intertwiner_space(&f, &g).unwrap();
        for h in &space {
            assert!(!h.is_zero());
            assert!(intertwining_residual(h, &f, &g).is_zero());
        }
        // the solution space is closed under h -> g h and h -> h f
        let span = |hs: &[QMat]| {
            QMat::from_columns(
                m * n,
                &hs.iter().map(|h| h.entries().to_vec()).collect::<Vec<_>>(),
            )
        };
        if !space.is_empty() {
            let base = span(&space).rank();
            for h in &space {
                let mut moved = space.clone();
                moved.push(&g * h);
                moved.push(h * &f);
                assert_eq!(span(&moved).rank(), base);
            }
        }
    }
}

#[test]
fn intertwiners_of_conjugate_matrices_include_the_conjugator() {
    let mut r = nilspec_testkit::rng(12);
    for _ in 0..50 {
        let f = nilspec_testkit::matrices::int_matrix(&mut r, 3, 3, 3);
        let (p, p_inv) = nilspec_testkit::matrices::unimodular(&mut r, 3);
        let g = &(&p * &f) * &p_inv;
        let space = intertwiner_space(&f, &g).unwrap();
        let cols: Vec<Vec<Rat>> = space.iter().map(|h| h.entries().to_vec()).collect();
        let basis = QMat::from_columns(9, &cols);
        let with_p = basis.hstack(&QMat::from_columns(9, &[p.entries().to_vec()]));
        assert_eq!(with_p.rank(), basis.rank(), "p f p^-1 = g so p intertwines");
        assert!(basis.rank() >= 1);
    }
}
