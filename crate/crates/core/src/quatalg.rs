//! Quaternion algebras `(a, b / F)` with basis `1, i, j, ij`, the standard
//! involution, and orthogonal involutions `x ↦ u x̄ u⁻¹` for pure `u`.
//!
//! Arithmetic is generic over the scalar field; the discriminant computations
//! at the bottom of the file need exact rationals.

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use num_traits::Num;

use crate::error::{Error, Result};
use crate::exactnum::{factor, hilbert_symbol, iota, square_class, IdealZ, Place, SquareClass};
use crate::Rat;

/// Scalars the quaternion arithmetic can run over.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> {}

impl<T: Clone + PartialEq + Debug + Num + Neg<Output = T>> Scalar for T {}

/// `w + x·i + y·j + z·ij`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quaternion<S> {
    pub w: S,
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> Quaternion<S> {
    pub fn new(w: S, x: S, y: S, z: S) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_coords(c: [S; 4]) -> Self {
        let [w, x, y, z] = c;
        Quaternion { w, x, y, z }
    }

    pub fn coords(&self) -> [S; 4] {
        [
            self.w.clone(),
            self.x.clone(),
            self.y.clone(),
            self.z.clone(),
        ]
    }

    pub fn zero() -> Self {
        Quaternion::new(S::zero(), S::zero(), S::zero(), S::zero())
    }

    pub fn scalar(s: S) -> Self {
        Quaternion::new(s, S::zero(), S::zero(), S::zero())
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn i() -> Self {
        Quaternion::new(S::zero(), S::one(), S::zero(), S::zero())
    }

    pub fn j() -> Self {
        Quaternion::new(S::zero(), S::zero(), S::one(), S::zero())
    }

    pub fn ij() -> Self {
        Quaternion::new(S::zero(), S::zero(), S::zero(), S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn is_pure(&self) -> bool {
        self.w.is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn scale(&self, s: &S) -> Self {
        Quaternion::new(
            self.w.clone() * s.clone(),
            self.x.clone() * s.clone(),
            self.y.clone() * s.clone(),
            self.z.clone() * s.clone(),
        )
    }

    /// Standard involution.
    pub fn conjugate(&self) -> Self {
        Quaternion::new(
            self.w.clone(),
            -self.x.clone(),
            -self.y.clone(),
            -self.z.clone(),
        )
    }

    /// Pure part `x·i + y·j + z·ij`.
    pub fn pure_part(&self) -> Self {
        Quaternion::new(S::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }
}

impl<S: Scalar> Add for Quaternion<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<S: Scalar> Sub for Quaternion<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<S: Scalar> Neg for Quaternion<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// `(a, b / F)`: `i² = a`, `j² = b`, `ij = −ji`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra<S> {
    a: S,
    b: S,
}

impl<S: Scalar> QuaternionAlgebra<S> {
    pub fn new(a: S, b: S) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn mul(&self, p: &Quaternion<S>, q: &Quaternion<S>) -> Quaternion<S> {
        let (a, b) = (self.a.clone(), self.b.clone());
        let ab = a.clone() * b.clone();
        let (w1, x1, y1, z1) = (&p.w, &p.x, &p.y, &p.z);
        let (w2, x2, y2, z2) = (&q.w, &q.x, &q.y, &q.z);
        let m = |s: &S, t: &S| s.clone() * t.clone();
        Quaternion::new(
            m(w1, w2) + a.clone() * m(x1, x2) + b.clone() * m(y1, y2) - ab * m(z1, z2),
            m(w1, x2) + m(x1, w2) - b.clone() * m(y1, z2) + b * m(z1, y2),
            m(w1, y2) + m(y1, w2) + a.clone() * m(x1, z2) - a * m(z1, x2),
            m(w1, z2) + m(z1, w2) + m(x1, y2) - m(y1, x2),
        )
    }

    /// Reduced norm `x̄x = w² − a x² − b y² + ab z²`.
    pub fn nrd(&self, q: &Quaternion<S>) -> S {
        let (a, b) = (self.a.clone(), self.b.clone());
        let sq = |s: &S| s.clone() * s.clone();
        sq(&q.w) - a.clone() * sq(&q.x) - b.clone() * sq(&q.y) + a * b * sq(&q.z)
    }

    /// Reduced trace `x + x̄ = 2w`.
    pub fn trd(&self, q: &Quaternion<S>) -> S {
        q.w.clone() + q.w.clone()
    }

    pub fn inverse(&self, q: &Quaternion<S>) -> Option<Quaternion<S>> {
        let n = self.nrd(q);
        if n.is_zero() {
            return None;
        }
        let c = q.conjugate();
        Some(Quaternion::new(
            c.w / n.clone(),
            c.x / n.clone(),
            c.y / n.clone(),
            c.z / n,
        ))
    }
}

/// Sign `l` in `g^‡ g = (−1)^l nrd(g)` for a similitude `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimilitudeSign {
    Proper,
    Improper,
}

impl SimilitudeSign {
    pub fn exponent(self) -> u8 {
        match self {
            SimilitudeSign::Proper => 0,
            SimilitudeSign::Improper => 1,
        }
    }

    pub fn compose(self, other: SimilitudeSign) -> SimilitudeSign {
        if self == other {
            SimilitudeSign::Proper
        } else {
            SimilitudeSign::Improper
        }
    }
}

/// The orthogonal involution `x ↦ u x̄ u⁻¹` of a quaternion algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalInvolution<S> {
    algebra: QuaternionAlgebra<S>,
    u: Quaternion<S>,
    u_inv: Quaternion<S>,
}

impl<S: Scalar> OrthogonalInvolution<S> {
    pub fn new(algebra: QuaternionAlgebra<S>, u: Quaternion<S>) -> Result<Self> {
        if !u.is_pure() || u.is_zero() {
            return Err(Error::NotPure);
        }
        let u_inv = algebra.inverse(&u).ok_or(Error::NotInvertible)?;
        Ok(OrthogonalInvolution { algebra, u, u_inv })
    }

    pub fn algebra(&self) -> &QuaternionAlgebra<S> {
        &self.algebra
    }

    /// The skew element spanning `H⁻`.
    pub fn skew_element(&self) -> &Quaternion<S> {
        &self.u
    }

    pub fn apply(&self, x: &Quaternion<S>) -> Quaternion<S> {
        let h = &self.algebra;
        h.mul(&h.mul(&self.u, &x.conjugate()), &self.u_inv)
    }

    /// Same involution iff the skew elements are parallel.
    pub fn same_as(&self, other: &Self) -> bool {
        if self.algebra != other.algebra {
            return false;
        }
        let (p, q) = (self.u.coords(), other.u.coords());
        (0..4).all(|r| (r..4).all(|s| p[r].clone() * q[s].clone() == p[s].clone() * q[r].clone()))
    }

    /// Coordinate matrix of the involution: row `r` is the image of the
    /// `r`-th basis element `1, i, j, ij`.
    pub fn matrix(&self) -> [[S; 4]; 4] {
        let basis = [
            Quaternion::one(),
            Quaternion::i(),
            Quaternion::j(),
            Quaternion::ij(),
        ];
        basis.map(|e| self.apply(&e).coords())
    }

    /// `Some(sign)` iff `g^‡ g` is a scalar, i.e. `g ∈ GO(H, ‡)`.
    pub fn similitude_sign(&self, g: &Quaternion<S>) -> Result<Option<SimilitudeSign>> {
        let n = self.algebra.nrd(g);
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        let prod = self.algebra.mul(&self.apply(g), g);
        if !prod.is_scalar() {
            return Ok(None);
        }
        if prod.w == n {
            Ok(Some(SimilitudeSign::Proper))
        } else if prod.w == -n {
            Ok(Some(SimilitudeSign::Improper))
        } else {
            Err(Error::Internal(format!(
                "similitude factor {:?} is not ±nrd",
                prod.w
            )))
        }
    }
}

/// Square class of `nrd(h)` for any `h ∈ H⁻`.
pub fn involution_discriminant(inv: &OrthogonalInvolution<Rat>) -> Result<SquareClass> {
    square_class(&inv.algebra.nrd(&inv.u))
}

/// Product of the finite primes at which `(a, b)` is ramified.
pub fn algebra_discriminant(h: &QuaternionAlgebra<Rat>) -> Result<IdealZ> {
    let mut candidates: Vec<num_bigint::BigInt> = vec![2.into()];
    for x in [h.a(), h.b()] {
        for n in [x.numer(), x.denom()] {
            candidates.extend(factor(n)?.into_iter().map(|(p, _)| p));
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut disc = num_bigint::BigInt::from(1);
    for p in candidates {
        if hilbert_symbol(h.a(), h.b(), &Place::Finite(p.clone()))? == -1 {
            disc *= p;
        }
    }
    Ok(IdealZ::new(disc))
}

/// `ι(disc ‡)`, the square-free ideal attached to the involution.
pub fn involution_ideal(inv: &OrthogonalInvolution<Rat>) -> Result<IdealZ> {
    Ok(iota(&involution_discriminant(inv)?))
}
