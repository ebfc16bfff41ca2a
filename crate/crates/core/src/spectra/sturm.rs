//! Sturm sequences and Cauchy indices over the rationals.

use crate::linalg::rational::{rat, Rat};
use crate::linalg::Poly;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Signed remainder sequence `f0, f1, -rem(f0, f1), ...`.
///
/// Built from `(p, p')` on the square-free part of `p` it is a Sturm chain:
/// `V(a) - V(b)` counts the distinct real roots in `(a, b]`. Built from an
/// arbitrary pair it computes the Cauchy index of `f1 / f0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    /// Sturm chain of the square-free part of `p`.
    pub fn new(p: &Poly) -> Self {
        let sf = p.square_free_part();
        let d = sf.derivative();
        SturmChain::signed_remainder(&sf, &d)
    }

    pub fn signed_remainder(f0: &Poly, f1: &Poly) -> Self {
        let mut chain = Vec::new();
        if f0.is_zero() {
            return SturmChain { chain };
        }
        chain.push(f0.clone());
        let mut a = f0.clone();
        let mut b = f1.clone();
        while !b.is_zero() {
            chain.push(b.clone());
            let r = a.rem(&b);
            a = b;
            b = -&r;
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.chain
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations_at(&self, x: &Rat) -> usize {
        count_variations(self.chain.iter().map(|p| sign(&p.eval(x))))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(|p| sign(&p.leading())))
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        count_variations(self.chain.iter().map(|p| {
            let s = sign(&p.leading());
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Distinct roots in `(a, b]`, for `a < b`.
    pub fn count_roots(&self, a: &Rat, b: &Rat) -> usize {
        debug_assert!(a < b);
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Cauchy index over the whole real line of `chain[1] / chain[0]`.
    pub fn cauchy_index(&self) -> i64 {
        self.variations_at_neg_infinity() as i64 - self.variations_at_pos_infinity() as i64
    }

    /// Disjoint intervals `(lo, hi]` inside `(a, b]`, each holding exactly one
    /// root, in increasing order.
    pub fn isolate(&self, a: &Rat, b: &Rat) -> Vec<(Rat, Rat)> {
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            match self.count_roots(&lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / rat(2);
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
        out.sort();
        out
    }
}

fn sign(x: &Rat) -> i8 {
    match x.cmp(&Rat::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn count_variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// True when `p` has a root in `(lo, hi]` detectable by sign: `p(hi) = 0` or
/// the endpoint values differ in sign once factors `x - lo` are divided out.
pub fn brackets_root(p: &Poly, lo: &Rat, hi: &Rat) -> bool {
    if p.is_zero() {
        return false;
    }
    let linear = Poly::from_coeffs(vec![-lo.clone(), Rat::one()]);
    let mut p = p.clone();
    while p.eval(lo).is_zero() {
        p = p.div_rem(&linear).0;
    }
    let (a, b) = (p.eval(lo), p.eval(hi));
    b.is_zero() || (a.is_negative() && b.is_positive()) || (a.is_positive() && b.is_negative())
}
