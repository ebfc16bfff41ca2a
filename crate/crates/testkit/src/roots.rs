//! Polynomials with exactly known roots, and the classification those roots
//! imply.

use nilspec_core::linalg::rational::{rat, ratio};
use nilspec_core::linalg::{Poly, Rat};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// A polynomial assembled from factors whose roots are known exactly.
#[derive(Debug, Clone)]
pub struct KnownRoots {
    /// Real rational roots.
    pub real: Vec<Rat>,
    /// Conjugate pairs `x^2 - t x + c` with `t^2 < 4c`; modulus is `sqrt(c)`.
    pub pairs: Vec<(Rat, Rat)>,
}

#[derive(Debug, PartialEq, Eq)]
pub struct Expected {
    pub kind: &'static str,
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub at_one: usize,
    pub at_minus_one: usize,
    pub circle_pairs: usize,
}

impl KnownRoots {
    pub fn poly(&self) -> Poly {
        let mut p = Poly::from_roots(&self.real);
        for (t, c) in &self.pairs {
            p = &p * &Poly::from_high_first(&[rat(1), -t.clone(), c.clone()]);
        }
        p
    }

    pub fn expected(&self) -> Expected {
        let one = Rat::one();
        let mut e = Expected {
            kind: "",
            inside: 0,
            on_circle: 0,
            outside: 0,
            at_one: 0,
            at_minus_one: 0,
            circle_pairs: 0,
        };
        let mut zero = 0;
        let mut modulus_product_sq = Rat::one();
        for r in &self.real {
            if r.is_zero() {
                zero += 1;
            }
            modulus_product_sq *= r * r;
            match r.abs().cmp(&one) {
                Ordering::Less => e.inside += 1,
                Ordering::Equal => {
                    e.on_circle += 1;
                    if r.is_positive() {
                        e.at_one += 1;
                    } else {
                        e.at_minus_one += 1;
                    }
                }
                Ordering::Greater => e.outside += 1,
            }
        }
        let mut distinct_traces = BTreeSet::new();
        for (t, c) in &self.pairs {
            modulus_product_sq *= c * c;
            match c.cmp(&one) {
                Ordering::Less => e.inside += 2,
                Ordering::Equal => {
                    e.on_circle += 2;
                    distinct_traces.insert(t.clone());
                }
                Ordering::Greater => e.outside += 2,
            }
        }
        e.circle_pairs = distinct_traces.len();
        e.kind = if zero > 0 {
            "ZeroRoot"
        } else if modulus_product_sq < one {
            "DeterminantTooSmall"
        } else if e.on_circle > 0 {
            "RootOnUnitCircle"
        } else if e.inside > 0 {
            "RootInsideDisk"
        } else {
            "Expanding"
        };
        e
    }
}

pub fn random_known(r: &mut ChaCha8Rng, max_factors: usize) -> KnownRoots {
    let mut k = KnownRoots {
        real: Vec::new(),
        pairs: Vec::new(),
    };
    let factors = r.random_range(1..=max_factors);
    for _ in 0..factors {
        if r.random_bool(0.6) {
            let den = r.random_range(1..=3);
            let num = r.random_range(-3 * den..=3 * den);
            k.real.push(ratio(num, den));
        } else {
            // modulus^2 drawn around 1, trace strictly inside (-2 sqrt c, 2 sqrt c)
            let c = [
                ratio(1, 4),
                ratio(1, 2),
                rat(1),
                rat(1),
                rat(2),
                rat(4),
                ratio(9, 4),
            ][r.random_range(0..7)]
            .clone();
            let t = loop {
                let t = ratio(r.random_range(-8..=8), 4);
                if &t * &t < &c * rat(4) {
                    break t;
                }
            };
            k.pairs.push((t, c));
        }
    }
    k
}
