use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::is_prime;
use super::ideal::valuation_int;
use super::integral_representative;
use crate::error::{Error, Result};
use crate::Rat;

/// A place of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Infinite,
    Finite(BigInt),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`; 0 when `p | a`.
pub fn legendre(a: &BigInt, p: &BigInt) -> i8 {
    let r = a.mod_floor(p);
    if r.is_zero() {
        return 0;
    }
    let e = (p - BigInt::one()) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

/// The Hilbert symbol `(a, b)_v` with values ±1.
///
/// Both arguments are replaced by integers in the same square class, split
/// as `p^α·u`, and the classical unit/valuation formula is applied.
pub fn hilbert_symbol(a: &Rat, b: &Rat, place: &Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = match place {
        Place::Infinite => {
            return Ok(if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            });
        }
        Place::Finite(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let a = integral_representative(a);
    let b = integral_representative(b);
    let alpha = valuation_int(&a, p);
    let beta = valuation_int(&b, p);
    let u = &a / num_traits::pow(p.clone(), alpha as usize);
    let v = &b / num_traits::pow(p.clone(), beta as usize);

    let two = BigInt::from(2);
    let exponent_sign = |e: u64| if e % 2 == 0 { 1i8 } else { -1i8 };
    if *p == two {
        let eps = |t: &BigInt| (t.mod_floor(&BigInt::from(4)).to_u64().unwrap() - 1) / 2;
        let omega = |t: &BigInt| {
            let r = t.mod_floor(&BigInt::from(8)).to_u64().unwrap();
            ((r * r - 1) / 8) % 2
        };
        let e = eps(&u) * eps(&v) + alpha as u64 * omega(&v) + beta as u64 * omega(&u);
        Ok(exponent_sign(e))
    } else {
        let eps_p = ((p - BigInt::one()) / &two)
            .mod_floor(&two)
            .to_u64()
            .unwrap();
        let mut s = exponent_sign(alpha as u64 * beta as u64 * eps_p);
        if beta % 2 == 1 {
            s *= legendre(&u, p);
        }
        if alpha % 2 == 1 {
            s *= legendre(&v, p);
        }
        Ok(s)
    }
}
