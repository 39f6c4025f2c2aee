use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

static FACTOR_BOUND: AtomicU64 = AtomicU64::new(DEFAULT_FACTOR_BOUND);

/// Process-wide trial-division bound used by [`factor`].
pub fn factor_bound() -> u64 {
    FACTOR_BOUND.load(Ordering::Relaxed)
}

pub fn set_factor_bound(bound: u64) {
    FACTOR_BOUND.store(bound.max(2), Ordering::Relaxed);
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first thirteen primes as bases. This is a proof of
/// primality below 3.3·10²⁴, which covers every integer this crate factors
/// in practice; above that it is a strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &q in SMALL_PRIMES.iter() {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in SMALL_PRIMES.iter() {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors `|n|` using the process-wide bound.
pub fn factor(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    factor_with_bound(n, factor_bound())
}

/// Prime factorization of `|n|` (ascending primes).
///
/// Trial division runs up to `bound`; whatever cofactor remains must be
/// certified prime (by size or Miller–Rabin) or be the square of a prime,
/// otherwise [`Error::UncertifiedFactorization`] is returned.
pub fn factor_with_bound(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut m = n.abs();
    let mut out = Vec::new();
    if let Some(small) = m.to_u128() {
        let (factors, rest) = trial_divide_u128(small, bound);
        out.extend(factors.into_iter().map(|(p, e)| (BigInt::from(p), e)));
        m = BigInt::from(rest);
    } else {
        let mut d = 2u64;
        while d <= bound {
            let dd = BigInt::from(d);
            if &dd * &dd > m {
                break;
            }
            let mut e = 0;
            while (&m % &dd).is_zero() {
                m /= &dd;
                e += 1;
            }
            if e > 0 {
                out.push((dd, e));
                if is_prime(&m) {
                    break;
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
    }
    if m > BigInt::one() {
        let b = BigInt::from(bound);
        if m <= &b * &b || is_prime(&m) {
            out.push((m, 1));
        } else {
            let r = m.sqrt();
            if &r * &r == m && is_prime(&r) {
                out.push((r, 2));
            } else {
                return Err(Error::UncertifiedFactorization(m));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn trial_divide_u128(mut m: u128, bound: u64) -> (Vec<(u128, u32)>, u128) {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    let bound = bound as u128;
    while d <= bound && d * d <= m {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d, e));
            if m > 1 && is_prime(&BigInt::from(m)) {
                break;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (out, m)
}

/// Square-free part of a nonzero integer, sign retained.
pub fn square_free_part(n: &BigInt) -> Result<BigInt> {
    let mut r = BigInt::one();
    for (p, e) in factor(n)? {
        if e % 2 == 1 {
            r *= p;
        }
    }
    Ok(if n.is_negative() { -r } else { r })
}

pub fn is_square_free(n: &BigInt) -> Result<bool> {
    Ok(factor(n)?.iter().all(|(_, e)| *e == 1))
}
