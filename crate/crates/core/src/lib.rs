//! Quaternion algebras over ℚ with orthogonal involutions: orders, their
//! involution images, maximality of ‡-orders, and local classification via
//! rank-2 quadratic lattices.
//!
//! Arithmetic is exact throughout. Quaternion arithmetic is generic over the
//! scalar; the number-theoretic layers use [`Rat`].

pub mod error;
pub mod exactnum;
pub mod json;
pub mod lattices;
pub mod linalg;
pub mod localquad;
pub mod maximality;
pub mod quatalg;

pub use error::{Error, Result};
pub use quatalg::{OrthogonalInvolution, Quaternion, QuaternionAlgebra, Scalar, SimilitudeSign};

pub type Rat = num_rational::BigRational;
pub type Quat = Quaternion<Rat>;
pub type Algebra = QuaternionAlgebra<Rat>;
pub type Involution = OrthogonalInvolution<Rat>;
