//! Full-rank ℤ-lattices and orders in a quaternion algebra over ℚ.
//!
//! A lattice is stored by its canonical basis: the lower-triangular Hermite
//! form of the coordinate rows after clearing denominators, divided back by
//! the common denominator. Equal lattices therefore have equal bases.

use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_integral, IdealZ};
use crate::linalg::{self, RatMatrix};
use crate::{Algebra, Involution, Quat, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralLattice4 {
    algebra: Algebra,
    basis: RatMatrix,
    inverse: RatMatrix,
}

impl IntegralLattice4 {
    /// The ℤ-span of `vectors`, which must have rank 4.
    pub fn canonicalize(algebra: &Algebra, vectors: &[Quat]) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
        Self::from_rows(algebra, &rows)
    }

    /// As [`canonicalize`](Self::canonicalize), from coordinate rows.
    pub fn from_rows(algebra: &Algebra, rows: &[Vec<Rat>]) -> Result<Self> {
        if rows.iter().any(|r| r.len() != 4) {
            return Err(Error::Invalid(
                "lattice rows must have four coordinates".into(),
            ));
        }
        let den = linalg::lcm_of_denominators(rows.iter().flatten());
        let ints: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|x| (x * &den).to_integer()).collect())
            .collect();
        let h = linalg::hnf_lower(&ints);
        if h.len() < 4 {
            return Err(Error::RankDeficient(h.len()));
        }
        let denr = Rat::from_integer(den);
        let basis: RatMatrix = h
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| Rat::from_integer(x) / &denr)
                    .collect()
            })
            .collect();
        let inverse =
            linalg::inverse(&basis).ok_or_else(|| Error::Internal("singular HNF".into()))?;
        Ok(IntegralLattice4 {
            algebra: algebra.clone(),
            basis,
            inverse,
        })
    }

    /// `ℤ⟨1, i, j, ij⟩`.
    pub fn standard(algebra: &Algebra) -> Self {
        Self::from_rows(algebra, &linalg::identity(4)).expect("identity has full rank")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Canonical basis; row `r` holds the coordinates of the `r`-th basis
    /// element in `1, i, j, ij`.
    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn elements(&self) -> Vec<Quat> {
        self.basis.iter().map(|r| row_to_quat(r)).collect()
    }

    /// Coordinates of `x` with respect to the canonical basis.
    pub fn coordinates(&self, x: &Quat) -> Vec<Rat> {
        linalg::vec_mul(&x.coords(), &self.inverse)
    }

    pub fn contains(&self, x: &Quat) -> bool {
        self.coordinates(x).iter().all(is_integral)
    }

    pub fn contains_lattice(&self, other: &IntegralLattice4) -> bool {
        other.elements().iter().all(|e| self.contains(e))
    }

    /// Covolume relative to `ℤ⟨1, i, j, ij⟩`: `|det basis|`.
    pub fn covolume(&self) -> Rat {
        linalg::determinant(&self.basis).abs()
    }

    /// `[self : sub]` as a rational (an integer when `sub ⊆ self`).
    pub fn index_of(&self, sub: &IntegralLattice4) -> Rat {
        sub.covolume() / self.covolume()
    }

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let rows: RatMatrix = self
            .basis
            .iter()
            .map(|r| r.iter().map(|x| x * c).collect())
            .collect();
        Self::from_rows(&self.algebra, &rows)
    }

    pub fn sum(&self, other: &IntegralLattice4) -> Result<Self> {
        self.same_algebra(other.algebra())?;
        let rows: RatMatrix = self
            .basis
            .iter()
            .chain(other.basis.iter())
            .cloned()
            .collect();
        Self::from_rows(&self.algebra, &rows)
    }

    /// Intersection, computed as the dual of the sum of the duals for the
    /// standard coordinate pairing.
    pub fn intersect(&self, other: &IntegralLattice4) -> Result<Self> {
        self.same_algebra(other.algebra())?;
        let d1 = self.coordinate_dual();
        let d2 = other.coordinate_dual();
        let s = d1.sum(&d2)?;
        Ok(s.coordinate_dual())
    }

    /// `{x : trd(xL) ⊆ ℤ}`.
    pub fn trace_dual(&self) -> Self {
        let g0 = trace_gram_diagonal(&self.algebra);
        let rows: RatMatrix = linalg::transpose(&self.inverse)
            .into_iter()
            .map(|r| r.iter().zip(g0.iter()).map(|(x, g)| x / g).collect())
            .collect();
        Self::from_rows(&self.algebra, &rows).expect("dual of a full-rank lattice has full rank")
    }

    /// `{x : x·Lᵀ ⊆ ℤ}` for the coordinate dot product.
    fn coordinate_dual(&self) -> Self {
        Self::from_rows(&self.algebra, &linalg::transpose(&self.inverse))
            .expect("dual of a full-rank lattice has full rank")
    }

    /// Gram matrix `trd(eᵣ eₛ)` of the canonical basis.
    pub fn trace_gram(&self) -> RatMatrix {
        let e = self.elements();
        e.iter()
            .map(|x| {
                e.iter()
                    .map(|y| self.algebra.trd(&self.algebra.mul(x, y)))
                    .collect()
            })
            .collect()
    }

    /// `Ok(())` iff the lattice contains 1 and is closed under multiplication.
    pub fn check_order(&self) -> Result<()> {
        if !self.contains(&Quat::one()) {
            return Err(Error::NotAnOrder("does not contain 1".into()));
        }
        let e = self.elements();
        for x in &e {
            for y in &e {
                if !self.contains(&self.algebra.mul(x, y)) {
                    return Err(Error::NotAnOrder("not closed under multiplication".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_order(&self) -> bool {
        self.check_order().is_ok()
    }

    pub fn involution_image(&self, inv: &Involution) -> Result<Self> {
        self.same_algebra(inv.algebra())?;
        let images: Vec<Quat> = self.elements().iter().map(|e| inv.apply(e)).collect();
        Self::canonicalize(&self.algebra, &images)
    }

    pub fn is_dagger_stable(&self, inv: &Involution) -> Result<bool> {
        Ok(self.involution_image(inv)? == *self)
    }

    fn same_algebra(&self, other: &Algebra) -> Result<()> {
        if self.algebra != *other {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }
}

/// An order: a lattice containing 1 and closed under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order4(IntegralLattice4);

impl Order4 {
    pub fn new(lattice: IntegralLattice4) -> Result<Self> {
        lattice.check_order()?;
        Ok(Order4(lattice))
    }

    pub fn standard(algebra: &Algebra) -> Self {
        Order4(IntegralLattice4::standard(algebra))
    }

    pub fn from_generators(algebra: &Algebra, vectors: &[Quat]) -> Result<Self> {
        Self::new(IntegralLattice4::canonicalize(algebra, vectors)?)
    }

    pub(crate) fn new_unchecked(lattice: IntegralLattice4) -> Self {
        Order4(lattice)
    }

    pub fn lattice(&self) -> &IntegralLattice4 {
        &self.0
    }

    pub fn into_lattice(self) -> IntegralLattice4 {
        self.0
    }

    /// Intersections of orders are orders.
    pub fn intersect(&self, other: &Order4) -> Result<Order4> {
        Ok(Order4(self.0.intersect(&other.0)?))
    }

    /// Involutions are anti-automorphisms, so images of orders are orders.
    pub fn involution_image(&self, inv: &Involution) -> Result<Order4> {
        Ok(Order4(self.0.involution_image(inv)?))
    }

    /// `O ∩ O^‡`, the largest ‡-stable order inside `O`.
    pub fn dagger_core(&self, inv: &Involution) -> Result<Order4> {
        self.intersect(&self.involution_image(inv)?)
    }

    /// The positive `d` with `d² = |det trd(eᵣeₛ)|`.
    pub fn reduced_discriminant(&self) -> Result<IdealZ> {
        let det = linalg::determinant(&self.0.trace_gram()).abs();
        if !is_integral(&det) {
            return Err(Error::Internal(format!(
                "trace form determinant {det} is not integral"
            )));
        }
        let n = det.to_integer();
        let d = n.sqrt();
        if &d * &d != n || d.is_zero() {
            return Err(Error::Internal(format!(
                "trace form determinant {n} is not a square"
            )));
        }
        Ok(IdealZ::new(d))
    }
}

impl Deref for Order4 {
    type Target = IntegralLattice4;
    fn deref(&self) -> &IntegralLattice4 {
        &self.0
    }
}

/// Discriminant of an order given as a lattice; rejects non-orders.
pub fn reduced_discriminant(lattice: &IntegralLattice4) -> Result<IdealZ> {
    Order4::new(lattice.clone())?.reduced_discriminant()
}

/// Diagonal of the trace form on `1, i, j, ij`: `(2, 2a, 2b, −2ab)`.
pub(crate) fn trace_gram_diagonal(h: &Algebra) -> [Rat; 4] {
    let two = Rat::from_integer(2.into());
    [
        two.clone(),
        &two * h.a(),
        &two * h.b(),
        -(&two * h.a() * h.b()),
    ]
}

pub(crate) fn row_to_quat(r: &[Rat]) -> Quat {
    Quat::new(r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone())
}
