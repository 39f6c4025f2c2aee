//! Rank-2 lattices over ℤ localized at a prime `p`, inside `F² = ℚ²` with
//! the form `q(x, y) = λx² + y²`, `b(v, w) = λv₁w₁ + v₂w₂`.
//!
//! Lattices are given by global rational bases; every ideal below is a
//! valuation at `p`.

mod classify;
mod orders;

pub use classify::{
    classify, classify_with, count_classes, dyadic_unit_lattice_is_maximal, enumerate_lattices,
    norm_weight_orders, strange_count, unimodular_norm_weight_types, Classification,
    EnumerationWindow,
};
pub use orders::{
    is_similitude_matrix, lattice_equivalent, order_of_lattice, stabilizes_standard_order,
    LocalOrder2x2, Mat2,
};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, val_unchecked, LocalIdeal, Valuation};
use crate::linalg::local_echelon;
use crate::Rat;

/// `(𝔰Λ, 𝔫Λ, 𝔳Λ)` as valuations at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleNormVolume {
    pub scale: LocalIdeal,
    pub norm: LocalIdeal,
    pub volume: LocalIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuadLattice2 {
    p: BigInt,
    lambda: Rat,
    /// Columns are the basis vectors.
    basis: Mat2,
    gram: Mat2,
}

impl LocalQuadLattice2 {
    /// The lattice spanned by the columns of `basis`.
    pub fn new(p: &BigInt, lambda: &Rat, basis: Mat2) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.clone()));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroInput);
        }
        if orders::det2(&basis).is_zero() {
            return Err(Error::RankDeficient(1));
        }
        let gram = gram_of(lambda, &basis);
        Ok(LocalQuadLattice2 {
            p: p.clone(),
            lambda: lambda.clone(),
            basis,
            gram,
        })
    }

    pub fn from_vectors(p: &BigInt, lambda: &Rat, v1: [Rat; 2], v2: [Rat; 2]) -> Result<Self> {
        let [a, c] = v1;
        let [b, d] = v2;
        Self::new(p, lambda, [[a, b], [c, d]])
    }

    /// `𝔬²`.
    pub fn standard(p: &BigInt, lambda: &Rat) -> Result<Self> {
        Self::new(p, lambda, orders::identity2())
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn lambda(&self) -> &Rat {
        &self.lambda
    }

    pub fn basis(&self) -> &Mat2 {
        &self.basis
    }

    pub fn gram(&self) -> &Mat2 {
        &self.gram
    }

    pub fn vectors(&self) -> [[Rat; 2]; 2] {
        let b = &self.basis;
        [
            [b[0][0].clone(), b[1][0].clone()],
            [b[0][1].clone(), b[1][1].clone()],
        ]
    }

    pub fn q(&self, v: &[Rat; 2]) -> Rat {
        self.b(v, v)
    }

    pub fn b(&self, v: &[Rat; 2], w: &[Rat; 2]) -> Rat {
        &self.lambda * &v[0] * &w[0] + &v[1] * &w[1]
    }

    /// Canonical basis (rows are vectors) of the localized span.
    pub fn canonical_basis(&self) -> Vec<Vec<Rat>> {
        let rows: Vec<Vec<Rat>> = self.vectors().iter().map(|v| v.to_vec()).collect();
        local_echelon(&rows, &self.p).expect("basis is nonsingular")
    }

    pub fn same_lattice(&self, other: &LocalQuadLattice2) -> bool {
        self.p == other.p && self.canonical_basis() == other.canonical_basis()
    }

    pub fn contains(&self, v: &[Rat; 2]) -> bool {
        let inv = orders::inv2(&self.basis);
        (0..2).all(|r| {
            let c = &inv[r][0] * &v[0] + &inv[r][1] * &v[1];
            val_unchecked(&c, &self.p) >= Valuation::Finite(0)
        })
    }

    /// `gΛ` for a matrix `g` acting on column vectors.
    pub fn transform(&self, g: &Mat2) -> Result<Self> {
        Self::new(&self.p, &self.lambda, orders::mul2(g, &self.basis))
    }

    pub fn scale(&self, c: &Rat) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::ZeroInput);
        }
        let basis = self.basis.clone().map(|r| r.map(|x| x * c));
        Self::new(&self.p, &self.lambda, basis)
    }

    /// `Λ^♯ = {v : b(v, Λ) ⊆ 𝔬}`, with basis `B·G⁻¹`.
    pub fn dual(&self) -> Result<Self> {
        if orders::det2(&self.gram).is_zero() {
            return Err(Error::SingularForm);
        }
        let basis = orders::mul2(&self.basis, &orders::inv2(&self.gram));
        Self::new(&self.p, &self.lambda, basis)
    }

    pub fn scale_norm_volume(&self) -> ScaleNormVolume {
        scale_norm_volume_of_gram(&self.p, &self.gram)
    }

    /// `Some(𝔞)` iff `Λ = 𝔞Λ^♯`, i.e. `𝔳Λ = (𝔰Λ)²`.
    pub fn is_modular(&self) -> Option<LocalIdeal> {
        let snv = self.scale_norm_volume();
        match (snv.scale.valuation, snv.volume.valuation) {
            (Valuation::Finite(s), Valuation::Finite(v)) if v == 2 * s => Some(snv.scale),
            _ => None,
        }
    }

    /// `Λ` is `𝔞`-maximal: `𝔫Λ ⊆ 𝔞` and no proper superlattice has norm in `𝔞`.
    ///
    /// When `4𝔞⁻²𝔳Λ` is square-free the answer is yes outright; otherwise
    /// every index-`p` superlattice `Λ + 𝔬·w/p` is examined, which is
    /// enough because norms only grow with the lattice.
    pub fn is_maximal(&self, a: &LocalIdeal) -> Result<bool> {
        if a.prime != self.p {
            return Err(Error::Precondition(
                "ideal and lattice live at different primes".into(),
            ));
        }
        let Valuation::Finite(av) = a.valuation else {
            return Err(Error::Precondition("𝔞 must be nonzero".into()));
        };
        let snv = self.scale_norm_volume();
        if !snv.norm.is_contained_in(a) {
            return Err(Error::Precondition(format!(
                "norm {} is not contained in {}",
                snv.norm, a
            )));
        }
        let v = snv.volume.valuation.finite().expect("nondegenerate form");
        let two = if self.p == BigInt::from(2) { 1 } else { 0 };
        let k = 2 * two - 2 * av + v;
        if (0..=1).contains(&k) {
            return Ok(true);
        }
        for sup in self.index_p_superlattices()? {
            if sup.scale_norm_volume().norm.is_contained_in(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `p + 1` lattices `Λ + 𝔬·w/p` for lines `w` of `Λ/pΛ`.
    pub fn index_p_superlattices(&self) -> Result<Vec<LocalQuadLattice2>> {
        let pu =
            self.p.to_u64().filter(|&x| x < 1 << 20).ok_or_else(|| {
                Error::Precondition("prime too large for superlattice search".into())
            })?;
        let [e1, e2] = self.vectors();
        let inv_p = Rat::new(BigInt::one(), self.p.clone());
        let mut lines: Vec<[Rat; 2]> = (0..pu)
            .map(|t| {
                let t = Rat::from_integer(t.into());
                [&e1[0] + &t * &e2[0], &e1[1] + &t * &e2[1]]
            })
            .collect();
        lines.push(e2.clone());
        lines
            .into_iter()
            .map(|w| {
                let w = [&w[0] * &inv_p, &w[1] * &inv_p];
                let rows = vec![e1.to_vec(), e2.to_vec(), w.to_vec()];
                let ech = local_echelon(&rows, &self.p).expect("full rank");
                Self::from_vectors(
                    &self.p,
                    &self.lambda,
                    [ech[0][0].clone(), ech[0][1].clone()],
                    [ech[1][0].clone(), ech[1][1].clone()],
                )
            })
            .collect()
    }

    /// An orthogonal basis of the same lattice.
    ///
    /// Pivots on a basis vector (or the sum of both) whose norm generates
    /// `𝔫Λ` and completes it by the orthogonal complement. Impossible when
    /// `p = 2` and `𝔫Λ ⊊ 𝔰Λ`.
    pub fn orthogonalize(&self) -> Result<Self> {
        if self.gram[0][1].is_zero() {
            return Ok(self.clone());
        }
        let snv = self.scale_norm_volume();
        if snv.norm != snv.scale {
            return Err(Error::NoOrthogonalBasis);
        }
        let [e1, e2] = self.vectors();
        let sum = [&e1[0] + &e2[0], &e1[1] + &e2[1]];
        let candidates = [(e1.clone(), e2.clone()), (e2.clone(), e1), (sum, e2)];
        let (v, other) = candidates
            .into_iter()
            .find(|(v, _)| val_unchecked(&self.q(v), &self.p) == snv.norm.valuation)
            .ok_or_else(|| Error::Internal("no vector attains the norm".into()))?;
        let c = self.b(&v, &other) / self.q(&v);
        let w = [&other[0] - &c * &v[0], &other[1] - &c * &v[1]];
        Self::from_vectors(&self.p, &self.lambda, v, w)
    }
}

/// Scale, norm and volume of a Gram matrix at `p`.
pub fn scale_norm_volume_of_gram(p: &BigInt, gram: &Mat2) -> ScaleNormVolume {
    let v = |x: &Rat| val_unchecked(x, p);
    let s = v(&gram[0][0])
        .min(v(&gram[0][1]))
        .min(v(&gram[1][0]))
        .min(v(&gram[1][1]));
    let two = if *p == BigInt::from(2) { 1 } else { 0 };
    let n = v(&gram[0][0]).min(v(&gram[1][1])).min(s.shift(two));
    let vol = v(&orders::det2(gram));
    ScaleNormVolume {
        scale: LocalIdeal::new(p.clone(), s),
        norm: LocalIdeal::new(p.clone(), n),
        volume: LocalIdeal::new(p.clone(), vol),
    }
}

fn gram_of(lambda: &Rat, basis: &Mat2) -> Mat2 {
    let col = |c: usize| [basis[0][c].clone(), basis[1][c].clone()];
    let b = |v: &[Rat; 2], w: &[Rat; 2]| lambda * &v[0] * &w[0] + &v[1] * &w[1];
    let (v1, v2) = (col(0), col(1));
    [[b(&v1, &v1), b(&v1, &v2)], [b(&v2, &v1), b(&v2, &v2)]]
}
