//! Exact arithmetic over ℚ and its completions: valuations, square classes,
//! Hilbert symbols and quadratic defects.
//!
//! Everything is computed from global rational data; a "local" quantity is
//! always a valuation at a fixed prime, never a truncated p-adic expansion.

mod defect;
mod factor;
mod hilbert;
mod ideal;
mod square;

pub use defect::quadratic_defect;
pub use factor::{
    factor, factor_bound, factor_with_bound, is_prime, is_square_free, set_factor_bound,
    square_free_part, DEFAULT_FACTOR_BOUND,
};
pub use hilbert::{hilbert_symbol, legendre, Place};
pub(crate) use ideal::{bigint_str, val_unchecked};
pub use ideal::{valuation, valuation_int, IdealZ, LocalIdeal, Valuation};
pub use square::{iota, square_class, SquareClass};

use crate::error::{Error, Result};
use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Parses `"n"` or `"n/d"` (optional sign, surrounding whitespace ignored).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::ParseRational(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Inverse of [`parse_rat`]: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// An integer in the square class of `x`: numerator times denominator.
pub(crate) fn integral_representative(x: &Rat) -> BigInt {
    x.numer() * x.denom()
}

/// Residue of the p-adic unit `x` (numerator and denominator prime to `p`)
/// modulo `p^k`, as an integer in `[0, p^k)`.
pub(crate) fn unit_residue(x: &Rat, modulus: &BigInt) -> BigInt {
    let d_inv = mod_inverse(&x.denom().mod_floor(modulus), modulus)
        .expect("denominator must be a unit modulo p^k");
    (x.numer() * d_inv).mod_floor(modulus)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.abs().is_one() {
        return None;
    }
    Some((g.x * g.gcd.signum()).mod_floor(m))
}

pub(crate) fn pow_big(p: &BigInt, e: u32) -> BigInt {
    num_traits::pow(p.clone(), e as usize)
}

/// `p^e` as a rational, for any integer exponent.
pub(crate) fn pow_rat(p: &BigInt, e: i64) -> Rat {
    let m = pow_big(p, e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(m)
    } else {
        Rat::new(BigInt::one(), m)
    }
}
