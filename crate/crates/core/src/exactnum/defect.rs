use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::factor::is_prime;
use super::hilbert::legendre;
use super::ideal::{valuation_int, LocalIdeal, Valuation};
use super::integral_representative;
use crate::error::{Error, Result};
use crate::Rat;

/// Quadratic defect `𝔡(a) = ⋂_b (a − b²)ℤ_p`, returned as a local ideal.
///
/// Writing `a = p^v·u`: odd `v` gives `(a)`; even `v` gives `p^v·𝔡(u)`,
/// where for a unit `u` the defect is zero if `u` is a p-adic square, the
/// unit ideal for a non-residue at odd `p`, and at `p = 2` depends on
/// `u mod 8`: `5 ↦ (4)`, `3, 7 ↦ (2)`.
pub fn quadratic_defect(a: &Rat, p: &BigInt) -> Result<LocalIdeal> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let v = valuation_int(a.numer(), p) as i64 - valuation_int(a.denom(), p) as i64;
    let val = if v.rem_euclid(2) == 1 {
        Valuation::Finite(v)
    } else {
        // a = p^v · u with u a unit; n·d lies in the square class of u·p^{even}
        let n = integral_representative(a);
        let k = valuation_int(&n, p);
        let unit = &n / num_traits::pow(p.clone(), k as usize);
        unit_defect(&unit, p).shift(v)
    };
    Ok(LocalIdeal::new(p.clone(), val))
}

fn unit_defect(u: &BigInt, p: &BigInt) -> Valuation {
    if *p == BigInt::from(2) {
        match u.mod_floor(&BigInt::from(8)).to_u8().unwrap() {
            1 => Valuation::Infinite,
            5 => Valuation::Finite(2),
            _ => Valuation::Finite(1),
        }
    } else if legendre(u, p) == 1 {
        Valuation::Infinite
    } else {
        Valuation::Finite(0)
    }
}
