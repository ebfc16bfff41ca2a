//! Exact decision of whether every complex root of a rational polynomial has
//! modulus strictly greater than one.
//!
//! Negative verdicts carry evidence that [`check_evidence`] re-verifies by an
//! independent computation. The decision never approximates a root.

pub mod resultant;
pub mod sturm;

pub use resultant::{eigen_product_multiset, interpolate, root_power_poly};
pub use sturm::SturmChain;

use crate::linalg::rational::{abs, rat, Rat};
use crate::linalg::{LinalgError, Poly, QMat};
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("the zero polynomial has no spectrum")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
}

/// Root counts with multiplicity, by position relative to the unit circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootCounts {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

/// Roots on the unit circle. Complex pairs `e^{+-i theta}` are located by
/// their traces `2 cos theta`, which are the roots of `trace_polynomial` in
/// `(-2, 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircleEvidence {
    /// Multiplicity of the root 1.
    pub at_one: usize,
    /// Multiplicity of the root -1.
    pub at_minus_one: usize,
    /// Number of distinct non-real conjugate pairs on the circle.
    pub conjugate_pairs: usize,
    pub trace_polynomial: Poly,
    /// One interval `(lo, hi]` per pair, each containing one trace.
    pub trace_intervals: Vec<(Rat, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsideEvidence {
    pub counts: RootCounts,
    /// Isolating intervals `(lo, hi]` for the distinct real roots in the open
    /// unit interval. Empty when all inner roots are non-real.
    pub real_intervals: Vec<(Rat, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonExpansion {
    ZeroRoot {
        multiplicity: usize,
    },
    /// `|p(0) / lc(p)| < 1`, so the product of root moduli is below one.
    DeterminantTooSmall {
        constant_ratio: Rat,
    },
    RootOnUnitCircle(CircleEvidence),
    RootInsideDisk(InsideEvidence),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionVerdict {
    /// All roots lie outside the closed unit disk.
    Expanding(RootCounts),
    NotExpanding(NonExpansion),
}

impl ExpansionVerdict {
    pub fn is_expanding(&self) -> bool {
        matches!(self, ExpansionVerdict::Expanding(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ExpansionVerdict::Expanding(_) => "Expanding",
            ExpansionVerdict::NotExpanding(NonExpansion::ZeroRoot { .. }) => "ZeroRoot",
            ExpansionVerdict::NotExpanding(NonExpansion::DeterminantTooSmall { .. }) => {
                "DeterminantTooSmall"
            }
            ExpansionVerdict::NotExpanding(NonExpansion::RootOnUnitCircle(_)) => "RootOnUnitCircle",
            ExpansionVerdict::NotExpanding(NonExpansion::RootInsideDisk(_)) => "RootInsideDisk",
        }
    }
}

/// Decides whether every root of `p` has modulus `> 1`. Constants are
/// vacuously expanding.
pub fn is_expanding_poly(p: &Poly) -> Result<ExpansionVerdict, SpectraError> {
    if p.is_zero() {
        return Err(SpectraError::ZeroPolynomial);
    }
    let p = p.monic();
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return Ok(ExpansionVerdict::Expanding(RootCounts {
            inside: 0,
            on_circle: 0,
            outside: 0,
        }));
    }
    let zero_mult = p.root_multiplicity(&Rat::zero());
    if zero_mult > 0 {
        return Ok(ExpansionVerdict::NotExpanding(NonExpansion::ZeroRoot {
            multiplicity: zero_mult,
        }));
    }
    let ratio = abs(&p.coeff(0));
    if ratio < Rat::one() {
        return Ok(ExpansionVerdict::NotExpanding(
            NonExpansion::DeterminantTooSmall {
                constant_ratio: ratio,
            },
        ));
    }
    if let Some(ev) = unit_circle_roots(&p) {
        return Ok(ExpansionVerdict::NotExpanding(
            NonExpansion::RootOnUnitCircle(ev),
        ));
    }
    let inside = roots_inside_disk(&p);
    let counts = RootCounts {
        inside,
        on_circle: 0,
        outside: n - inside,
    };
    if inside == 0 {
        return Ok(ExpansionVerdict::Expanding(counts));
    }
    let real_intervals = SturmChain::new(&p).isolate(&rat(-1), &rat(1));
    Ok(ExpansionVerdict::NotExpanding(
        NonExpansion::RootInsideDisk(InsideEvidence {
            counts,
            real_intervals,
        }),
    ))
}

/// Expansion verdict for the characteristic polynomial of a square matrix.
pub fn is_expanding_matrix(m: &QMat) -> Result<ExpansionVerdict, LinalgError> {
    let cp = m.char_poly()?;
    Ok(is_expanding_poly(&cp).expect("characteristic polynomials are monic"))
}

fn strip_factor(mut g: Poly, f: &Poly) -> Poly {
    while g.degree().unwrap_or(0) > 0 && g.is_divisible_by(f) {
        g = g.div_rem(f).0;
    }
    g
}

/// For palindromic `g` of degree `2k`, the degree-`k` polynomial `h` with
/// `g(x) = x^k h(x + 1/x)`.
pub fn trace_polynomial(g: &Poly) -> Poly {
    let k = g.degree().unwrap_or(0) / 2;
    // D_0 = 2, D_1 = y, D_j = y D_{j-1} - D_{j-2}, so x^j + x^{-j} = D_j(x + 1/x)
    let mut d_prev = Poly::constant(rat(2));
    let mut d_cur = Poly::x();
    let mut h = Poly::constant(g.coeff(k));
    for j in 1..=k {
        if j > 1 {
            let next = &(&Poly::x() * &d_cur) - &d_prev;
            d_prev = std::mem::replace(&mut d_cur, next);
        }
        h = &h + &d_cur.scale(&g.coeff(k + j));
    }
    h
}

/// Inverse of [`trace_polynomial`]: `x^k h(x + 1/x)` with `k = deg h`.
pub fn untrace_polynomial(h: &Poly) -> Poly {
    let k = h.degree().unwrap_or(0);
    let x2p1 = Poly::from_i64(&[1, 0, 1]);
    let mut out = Poly::zero();
    for (j, c) in h.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &x2p1.pow(j as u32) * &Poly::monomial(c.clone(), k - j);
        out = &out + &term;
    }
    out
}

/// Detects roots of modulus one. Requires `p(0) != 0`.
fn unit_circle_roots(p: &Poly) -> Option<CircleEvidence> {
    let at_one = p.root_multiplicity(&rat(1));
    let at_minus_one = p.root_multiplicity(&rat(-1));
    // Circle roots are shared with the reversed polynomial; every other
    // common root comes in a pair {z, 1/conj z} and is excluded below.
    let g = p.gcd(&p.reverse());
    let g = strip_factor(g, &Poly::from_i64(&[-1, 1]));
    let g = strip_factor(g, &Poly::from_i64(&[1, 1]));
    let (trace_poly, trace_intervals) = if g.degree().unwrap_or(0) == 0 {
        (Poly::one(), Vec::new())
    } else {
        debug_assert_eq!(g.reverse().monic(), g.monic());
        let h = trace_polynomial(&g).square_free_part();
        let iv = SturmChain::new(&h).isolate(&rat(-2), &rat(2));
        (h, iv)
    };
    if at_one + at_minus_one + trace_intervals.len() == 0 {
        return None;
    }
    Some(CircleEvidence {
        at_one,
        at_minus_one,
        conjugate_pairs: trace_intervals.len(),
        trace_polynomial: trace_poly,
        trace_intervals,
    })
}

/// Roots of `p` in the open unit disk, with multiplicity. Requires that `p`
/// has no root on the unit circle.
///
/// `w = (z - 1) / (z + 1)` sends the disk to the left half-plane; the count
/// is read off a Cauchy index of `Q(iy)`.
pub fn roots_inside_disk(p: &Poly) -> usize {
    let n = p.degree().unwrap_or(0);
    if n == 0 {
        return 0;
    }
    // Q(w) = sum a_k (1 + w)^k (1 - w)^{n - k}
    let one_plus = Poly::from_i64(&[1, 1]);
    let one_minus = Poly::from_i64(&[1, -1]);
    let mut q = Poly::zero();
    for k in 0..=n {
        let a = p.coeff(k);
        if a.is_zero() {
            continue;
        }
        let term = &one_plus.pow(k as u32) * &one_minus.pow((n - k) as u32);
        q = &q + &term.scale(&a);
    }
    // Q(iy) = A(y) + i B(y)
    let mut a = vec![Rat::zero(); n + 1];
    let mut b = vec![Rat::zero(); n + 1];
    for (k, c) in q.coeffs().iter().enumerate() {
        let sign = if (k / 2) % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        if k % 2 == 0 {
            a[k] = sign;
        } else {
            b[k] = sign;
        }
    }
    let (a, b) = (Poly::from_coeffs(a), Poly::from_coeffs(b));
    let diff = if n.is_multiple_of(2) {
        -SturmChain::signed_remainder(&a, &b).cauchy_index()
    } else {
        SturmChain::signed_remainder(&b, &a).cauchy_index()
    };
    let left = n as i64 + diff;
    debug_assert!(left >= 0 && left % 2 == 0);
    (left / 2) as usize
}

/// Schur-Cohn recursion: true iff every root of `q` lies strictly inside the
/// unit disk.
pub fn schur_cohn_inside(q: &Poly) -> bool {
    let mut q = q.clone();
    loop {
        let Some(n) = q.degree() else {
            return false;
        };
        if n == 0 {
            return true;
        }
        let an = q.leading();
        let a0 = q.coeff(0);
        if abs(&an) <= abs(&a0) {
            return false;
        }
        let rev = q.reverse();
        let t = &q.scale(&an) - &rev.scale(&a0);
        // t(0) = an a0 - a0 an = 0
        q = t.div_rem(&Poly::x()).0;
    }
}

/// Re-verifies a verdict for `p` without reusing the deciding computation.
pub fn check_evidence(p: &Poly, verdict: &ExpansionVerdict) -> bool {
    if p.is_zero() {
        return false;
    }
    let p = p.monic();
    let n = p.degree().unwrap_or(0);
    match verdict {
        ExpansionVerdict::Expanding(c) => {
            c.inside == 0
                && c.on_circle == 0
                && c.outside == n
                && (n == 0 || (!p.coeff(0).is_zero() && schur_cohn_inside(&p.reverse())))
        }
        ExpansionVerdict::NotExpanding(NonExpansion::ZeroRoot { multiplicity }) => {
            *multiplicity > 0
                && p.is_divisible_by(&Poly::monomial(rat(1), *multiplicity))
                && !p.is_divisible_by(&Poly::monomial(rat(1), multiplicity + 1))
        }
        ExpansionVerdict::NotExpanding(NonExpansion::DeterminantTooSmall { constant_ratio }) => {
            n > 0 && *constant_ratio == abs(&p.coeff(0)) && *constant_ratio < Rat::one()
        }
        ExpansionVerdict::NotExpanding(NonExpansion::RootOnUnitCircle(ev)) => check_circle(&p, ev),
        ExpansionVerdict::NotExpanding(NonExpansion::RootInsideDisk(ev)) => {
            let c = &ev.counts;
            // simple roots only, so every root changes sign
            let sf = p.square_free_part();
            c.inside > 0
                && c.inside + c.on_circle + c.outside == n
                && !p.coeff(0).is_zero()
                && ev.real_intervals.iter().all(|(lo, hi)| {
                    *lo >= rat(-1) && *hi <= rat(1) && lo < hi && sturm::brackets_root(&sf, lo, hi)
                })
                && !schur_cohn_inside(&p.reverse())
        }
    }
}

fn check_circle(p: &Poly, ev: &CircleEvidence) -> bool {
    let mut found = false;
    if ev.at_one > 0 {
        if !p.eval(&rat(1)).is_zero() {
            return false;
        }
        found = true;
    }
    if ev.at_minus_one > 0 {
        if !p.eval(&rat(-1)).is_zero() {
            return false;
        }
        found = true;
    }
    if ev.conjugate_pairs != ev.trace_intervals.len() {
        return false;
    }
    if ev.conjugate_pairs > 0 {
        let g = untrace_polynomial(&ev.trace_polynomial);
        if !p.is_divisible_by(&g) {
            return false;
        }
        let h = &ev.trace_polynomial;
        let ok = ev.trace_intervals.iter().all(|(lo, hi)| {
            *lo >= rat(-2)
                && *hi <= rat(2)
                && lo < hi
                && !h.eval(&rat(2)).is_zero()
                && sturm::brackets_root(h, lo, hi)
        });
        if !ok {
            return false;
        }
        found = true;
    }
    found
}

/// Companion matrix of the monic `p`; its characteristic polynomial is `p`.
pub fn companion(p: &Poly) -> QMat {
    let p = p.monic();
    let n = p.degree().unwrap_or(0);
    let mut m = QMat::zeros(n, n);
    for i in 1..n {
        m.set(i, i - 1, rat(1));
    }
    for i in 0..n {
        m.set(i, n - 1, -p.coeff(i));
    }
    m
}
