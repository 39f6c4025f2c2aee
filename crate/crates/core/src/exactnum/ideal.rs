use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::{factor, is_prime};
use crate::error::{Error, Result};
use crate::Rat;

/// A p-adic order; `Infinite` is the order of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn shift(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + k),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Valuation::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Valuation::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad valuation {s:?}"))),
        }
    }
}

/// `ord_p(n)` for a nonzero integer, without a primality check.
pub fn valuation_int(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn val_unchecked(x: &Rat, p: &BigInt) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(valuation_int(x.numer(), p) as i64 - valuation_int(x.denom(), p) as i64)
}

/// `ord_p(x)`; `Infinite` iff `x = 0`.
pub fn valuation(x: &Rat, p: &BigInt) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(val_unchecked(x, p))
}

/// The ideal `p^valuation` of ℤ localized at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalIdeal {
    #[serde(with = "bigint_str")]
    pub prime: BigInt,
    pub valuation: Valuation,
}

impl LocalIdeal {
    pub fn new(prime: BigInt, valuation: Valuation) -> Self {
        LocalIdeal { prime, valuation }
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_infinite()
    }

    /// Ideal inclusion `self ⊆ other`.
    pub fn is_contained_in(&self, other: &LocalIdeal) -> bool {
        self.valuation >= other.valuation
    }
}

impl fmt::Display for LocalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            Valuation::Infinite => f.write_str("(0)"),
            Valuation::Finite(v) => write!(f, "({}^{})", self.prime, v),
        }
    }
}

/// An ideal of ℤ, stored by its nonnegative generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealZ(BigInt);

impl IdealZ {
    pub fn new(generator: BigInt) -> Self {
        IdealZ(generator.abs())
    }

    pub fn from_i64(g: i64) -> Self {
        IdealZ::new(BigInt::from(g))
    }

    pub fn unit() -> Self {
        IdealZ(BigInt::one())
    }

    pub fn generator(&self) -> &BigInt {
        &self.0
    }

    pub fn product(&self, other: &IdealZ) -> IdealZ {
        IdealZ(&self.0 * &other.0)
    }

    /// `(m) ∩ (n) = (lcm(m, n))`.
    pub fn intersect(&self, other: &IdealZ) -> IdealZ {
        if self.0.is_zero() || other.0.is_zero() {
            return IdealZ(BigInt::zero());
        }
        IdealZ(self.0.lcm(&other.0))
    }

    pub fn sum(&self, other: &IdealZ) -> IdealZ {
        IdealZ(self.0.gcd(&other.0))
    }

    pub fn local_valuation(&self, p: &BigInt) -> Valuation {
        if self.0.is_zero() {
            Valuation::Infinite
        } else {
            Valuation::Finite(valuation_int(&self.0, p) as i64)
        }
    }

    /// Prime divisors of the generator.
    pub fn primes(&self) -> Result<Vec<BigInt>> {
        if self.0.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(factor(&self.0)?.into_iter().map(|(p, _)| p).collect())
    }

    pub fn is_square_free(&self) -> Result<bool> {
        if self.0.is_zero() {
            return Ok(false);
        }
        Ok(factor(&self.0)?.iter().all(|(_, e)| *e == 1))
    }
}

impl fmt::Display for IdealZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(BigInt::from(v)),
            Raw::Str(s) => s.trim().parse().map_err(serde::de::Error::custom),
        }
    }
}
