//! Exact rational scalars.
//!
//! Everything in this crate computes over `Rat`, an arbitrary-precision
//! fraction kept in lowest terms with positive denominator. There is no
//! floating point anywhere; decimal output exists only as a display aid.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The universal scalar: an exact fraction of arbitrary-precision integers.
pub type Rat = BigRational;

/// Shorthand for `p/q` as a `Rat`. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer as a `Rat`.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a `Rat`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as `p/q`, or plain `p` when the denominator is one.
///
/// This is the canonical output form of the whole crate; `Display` on
/// `BigRational` already does the same thing, this name just documents it.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Rounded decimal rendering with `digits` places, marked for human skimming
/// only: `~1.333` style. Rounds half away from zero.
pub fn fmt_decimal(r: &Rat, digits: u32) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits);
    // round(|r| * 10^digits)
    let scaled: BigInt = (a.numer() * &scale * 2 + a.denom()) / (a.denom() * 2);
    let int_part: BigInt = &scaled / &scale;
    let frac_part: BigInt = &scaled % &scale;
    if digits == 0 {
        format!("~{sign}{int_part}")
    } else {
        format!(
            "~{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = digits as usize
        )
    }
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}
