use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::factor::square_free_part;
use super::ideal::IdealZ;
use super::integral_representative;
use crate::error::{Error, Result};
use crate::Rat;

/// An element of ℚ×/(ℚ×)², named by its square-free integral representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    pub fn representative(&self) -> &BigInt {
        &self.0
    }

    pub fn as_rat(&self) -> Rat {
        Rat::from_integer(self.0.clone())
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass> {
        Ok(SquareClass(square_free_part(&(&self.0 * &other.0))?))
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn square_class(x: &Rat) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(SquareClass(square_free_part(&integral_representative(x))?))
}

/// The square-free ideal generated by the integral members of a square class.
pub fn iota(c: &SquareClass) -> IdealZ {
    IdealZ::new(c.0.clone())
}
