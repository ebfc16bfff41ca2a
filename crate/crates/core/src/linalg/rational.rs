//! Exact scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator (`0` is stored as `0/1`). `Int` is the matching
//! arbitrary-precision integer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Parses `p` or `p/q` with optional sign. Rejects a zero denominator.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty number".to_string());
    }
    match s.split_once('/') {
        None => Int::from_str(s)
            .map(Rat::from_integer)
            .map_err(|_| format!("`{s}` is not an integer or fraction")),
        Some((num, den)) => {
            let num = Int::from_str(num.trim())
                .map_err(|_| format!("`{s}` has a malformed numerator"))?;
            let den = Int::from_str(den.trim())
                .map_err(|_| format!("`{s}` has a malformed denominator"))?;
            if den.is_zero() {
                return Err(format!("`{s}` has a zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Exact `|a|`.
pub fn abs(a: &Rat) -> Rat {
    a.abs()
}

pub fn is_integer(a: &Rat) -> bool {
    a.denom().is_one()
}
