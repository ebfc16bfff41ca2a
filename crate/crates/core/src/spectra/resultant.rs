//! Polynomials whose roots are products or powers of roots of given ones,
//! computed as resultants sampled at integer points and interpolated.

use super::SpectraError;
use crate::linalg::rational::{rat, Rat};
use crate::linalg::{Poly, QMat};
use num_traits::Zero;

/// Sylvester resultant of `a` (actual degree `n`) and `b` taken with formal
/// degree `m`.
fn sylvester_resultant(a: &Poly, b: &Poly, m: usize) -> Rat {
    let n = a.degree().expect("nonzero first argument");
    let size = n + m;
    if size == 0 {
        return rat(1);
    }
    let mut s = QMat::zeros(size, size);
    for r in 0..m {
        for k in 0..=n {
            s.set(r, r + n - k, a.coeff(k));
        }
    }
    for r in 0..n {
        for k in 0..=m {
            s.set(m + r, r + m - k, b.coeff(k));
        }
    }
    s.det().expect("square")
}

/// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
pub fn interpolate(points: &[(Rat, Rat)]) -> Poly {
    let n = points.len();
    let xs: Vec<Rat> = points.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<Rat> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut out = Poly::zero();
    for i in (0..n).rev() {
        out = &(&out * &Poly::from_coeffs(vec![-xs[i].clone(), rat(1)]))
            + &Poly::constant(dd[i].clone());
    }
    out
}

/// Resultant in `y` of `a(y)` and `b_at(x)(y)` as a polynomial in `x` of
/// degree at most `deg`.
fn resultant_in_x(a: &Poly, m: usize, deg: usize, b_at: impl Fn(&Rat) -> Poly) -> Poly {
    let points: Vec<(Rat, Rat)> = (0..=deg)
        .map(|i| {
            let x = rat(i as i64);
            let r = sylvester_resultant(a, &b_at(&x), m);
            (x, r)
        })
        .collect();
    interpolate(&points)
}

/// Monic polynomial whose roots are all products `lambda * mu` with `lambda`
/// a root of `p` and `mu` a root of `q`, with multiplicity. This is the
/// characteristic polynomial of `A (x) B` for `A`, `B` with characteristic
/// polynomials `p`, `q`.
pub fn eigen_product_multiset(p: &Poly, q: &Poly) -> Result<Poly, SpectraError> {
    if p.is_zero() || q.is_zero() {
        return Err(SpectraError::ZeroPolynomial);
    }
    if !p.is_monic() || !q.is_monic() {
        return Err(SpectraError::NotMonic);
    }
    let n = p.degree().unwrap_or(0);
    let m = q.degree().unwrap_or(0);
    if n == 0 || m == 0 {
        return Ok(Poly::one());
    }
    // Res_y(p(y), y^m q(x / y)) = prod_i prod_j (x - lambda_i mu_j)
    Ok(resultant_in_x(p, m, n * m, |x| {
        let coeffs: Vec<Rat> = (0..=m)
            .map(|j| {
                // coefficient of y^j in y^m q(x/y) is q_{m-j} x^{m-j}
                let c = q.coeff(m - j);
                if c.is_zero() {
                    c
                } else {
                    c * num_traits::pow(x.clone(), m - j)
                }
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }))
}

/// Monic polynomial whose roots are the `k`-th powers of the roots of the
/// monic `p`, with multiplicity.
pub fn root_power_poly(p: &Poly, k: usize) -> Result<Poly, SpectraError> {
    if p.is_zero() {
        return Err(SpectraError::ZeroPolynomial);
    }
    if !p.is_monic() {
        return Err(SpectraError::NotMonic);
    }
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(Poly::one());
    }
    // Res_y(p(y), x - y^k) = prod_i (x - lambda_i^k)
    Ok(resultant_in_x(p, k, n, |x| {
        &Poly::constant(x.clone()) - &Poly::monomial(rat(1), k)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_cubic() {
        let p = Poly::from_i64(&[3, -1, 0, 2]);
        let pts: Vec<_> = (0..4).map(|i| (rat(i), p.eval(&rat(i)))).collect();
        assert_eq!(interpolate(&pts), p);
    }

    #[test]
    fn products_of_rational_roots() {
        let p = Poly::from_roots(&[rat(2), rat(3)]);
        let q = Poly::from_roots(&[rat(-1), rat(5)]);
        let expected = Poly::from_roots(&[rat(-2), rat(10), rat(-3), rat(15)]);
        assert_eq!(eigen_product_multiset(&p, &q).unwrap(), expected);
    }

    #[test]
    fn squares_of_roots() {
        // roots +-i square to -1 twice
        let p = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(root_power_poly(&p, 2).unwrap(), Poly::from_i64(&[1, 2, 1]));
        let q = Poly::from_roots(&[rat(2), rat(-3)]);
        assert_eq!(
            root_power_poly(&q, 3).unwrap(),
            Poly::from_roots(&[rat(8), rat(-27)])
        );
    }

    #[test]
    fn rejects_non_monic() {
        let p = Poly::from_i64(&[1, 2]);
        assert_eq!(eigen_product_multiset(&p, &p), Err(SpectraError::NotMonic));
    }
}
