use nilspec_core::complex::alternating_sum;
use nilspec_core::lie::{
    betti, ce_complex, certify_expanding_on_cohomology, check_automorphism, satisfies_jacobi,
    LieAlgebra, LieError,
};
use nilspec_core::linalg::rational::rat;
use nilspec_core::linalg::{Poly, QMat, Rat};
use nilspec_testkit::lie::{
    filiform4, heisenberg3, heisenberg_automorphism, random_constants, valid_constants, Constants,
};
use num_traits::{Signed, Zero};
use rand::Rng;

fn assert_agrees(c: &Constants) -> bool {
    let g = c.algebra();
    let holds = c.jacobi_holds();
    assert_eq!(satisfies_jacobi(&g), holds);
    match ce_complex(&g) {
        Ok(complex) => {
            assert!(holds, "CE complex built for a non-Lie bracket {c:?}");
            assert_eq!(complex.dims().len(), c.dim + 1);
        }
        Err(LieError::JacobiViolation(w)) => {
            assert!(!holds);
            let (i, j, k) = w.triple;
            assert!(i < j && j < k);
            let jac = c.jacobiator(i, j, k);
            assert!(!w.value.is_zero());
            assert_eq!(
                jac[w.generator].abs(),
                w.value.abs(),
                "witness {w} on {c:?}"
            );
        }
        Err(e) => panic!("unexpected error {e}"),
    }
    holds
}

#[test]
fn jacobi_agrees_with_ce_construction() {
    let mut r = nilspec_testkit::rng(801);
    let (mut lie, mut not_lie) = (0, 0);
    for t in 0..400 {
        let c = if t % 2 == 0 {
            valid_constants(&mut r)
        } else {
            random_constants(&mut r)
        };
        if assert_agrees(&c) {
            lie += 1;
        } else {
            not_lie += 1;
        }
    }
    assert!(lie >= 200 && not_lie >= 50, "{lie} Lie, {not_lie} not");
}

#[test]
fn single_constant_mutations_are_caught() {
    for base in [heisenberg3(), filiform4()] {
        let n = base.dim;
        let mut broken = 0;
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    for delta in [-1, 1, 2] {
                        let mut c = base.clone();
                        let old = c.basis_bracket(i, j)[k].clone();
                        c.set(i, j, k, old + rat(delta));
                        if !assert_agrees(&c) {
                            broken += 1;
                        }
                    }
                }
            }
        }
        assert!(broken > 0);
    }
}

#[test]
fn betti_numbers_of_valid_algebras() {
    let mut r = nilspec_testkit::rng(802);
    for _ in 0..200 {
        let c = valid_constants(&mut r);
        let b = betti(&c.algebra()).unwrap();
        assert_eq!(b.len(), c.dim + 1);
        assert_eq!(b[0], 1);
        assert_eq!(alternating_sum(&b), 0);
        // nilpotent, so Poincare duality holds
        let rev: Vec<usize> = b.iter().rev().copied().collect();
        assert_eq!(b, rev);
        // H^1 is dual to g / [g, g]
        let derived: Vec<Vec<Rat>> = c.table.values().cloned().collect();
        let derived_rank = QMat::from_columns(c.dim, &derived).rank();
        assert_eq!(b[1], c.dim - derived_rank);
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn heisenberg_betti_numbers() {
    for m in 1..=3 {
        let b = betti(&LieAlgebra::heisenberg(m)).unwrap();
        for k in 0..=m {
            let expected = binomial(2 * m, k) - if k >= 2 { binomial(2 * m, k - 2) } else { 0 };
            assert_eq!(b[k], expected, "h_{} degree {k}", 2 * m + 1);
            assert_eq!(b[2 * m + 1 - k], expected);
        }
    }
}

#[test]
fn abelian_betti_numbers_are_binomial() {
    for n in 1..=6 {
        let b = betti(&LieAlgebra::abelian(n)).unwrap();
        assert_eq!(b, (0..=n).map(|k| binomial(n, k)).collect::<Vec<_>>());
    }
}

#[test]
fn filiform_betti_numbers() {
    assert_eq!(
        betti(&LieAlgebra::filiform(4)).unwrap(),
        vec![1, 2, 2, 2, 1]
    );
}

#[test]
fn heisenberg_certificates_match_weight_oracle() {
    let g = LieAlgebra::heisenberg(1);
    let mut r = nilspec_testkit::rng(803);
    for _ in 0..200 {
        let (a, b) = heisenberg_automorphism(&mut r);
        let aut = check_automorphism(&g, &a).expect("bracket preserving");
        let cert = certify_expanding_on_cohomology(&aut).unwrap();
        assert!(cert.automorphism.is_expanding());
        assert!(cert.all_expanding() && cert.alarms().is_empty() && cert.dual_consistent());
        let (tr, det) = (b.get(0, 0) + b.get(1, 1), b.det().unwrap());
        // H^1 carries B, H^2 carries det B * B, H^3 carries det B^2
        let p1 = Poly::from_high_first(&[rat(1), -tr.clone(), det.clone()]);
        let p2 = Poly::from_high_first(&[rat(1), -&det * &tr, &det * &det * &det]);
        let p3 = Poly::from_high_first(&[rat(1), -&det * &det]);
        assert_eq!(cert.degrees[0].char_poly, p1);
        assert_eq!(cert.degrees[1].char_poly, p2);
        assert_eq!(cert.degrees[2].char_poly, p3);
    }
}

#[test]
fn filiform_weight_automorphisms() {
    // diag(a, b, ab, a^2 b) preserves [X1, X2] = X3, [X1, X3] = X4
    let g = LieAlgebra::filiform(4);
    for (a, b) in [(2i64, 4i64), (2, 3), (-2, 3), (3, -2), (-3, -2)] {
        let m = QMat::diag_i64(&[a, b, a * b, a * a * b]);
        let aut = check_automorphism(&g, &m).unwrap();
        let cert = certify_expanding_on_cohomology(&aut).unwrap();
        assert!(cert.all_expanding(), "diag({a}, {b}, ..)");
    }
    let bad = QMat::diag_i64(&[2, 4, 8, 32]);
    assert!(matches!(
        check_automorphism(&g, &bad),
        Err(LieError::NotBracketPreserving { i: 0, j: 2, .. })
    ));
}

#[test]
fn perturbed_automorphisms_are_rejected() {
    let g = LieAlgebra::heisenberg(1);
    let mut r = nilspec_testkit::rng(804);
    let mut rejected = 0;
    for _ in 0..200 {
        let (mut a, _) = heisenberg_automorphism(&mut r);
        let (i, j) = (r.random_range(0..3), r.random_range(0..3));
        a.set(i, j, a.get(i, j) + rat(1));
        match check_automorphism(&g, &a) {
            Err(LieError::NotBracketPreserving { left, right, .. }) => {
                assert_ne!(left, right);
                rejected += 1;
            }
            Err(LieError::NotInvertible) => rejected += 1,
            Err(e) => panic!("{e}"),
            Ok(_) => {}
        }
    }
    assert!(rejected > 100, "{rejected}");
}
