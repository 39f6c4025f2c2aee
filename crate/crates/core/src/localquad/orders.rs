use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::LocalQuadLattice2;
use crate::error::{Error, Result};
use crate::exactnum::{pow_rat, val_unchecked, Valuation};
use crate::linalg::{self, local_echelon, RatMatrix};
use crate::quatalg::SimilitudeSign;
use crate::Rat;

/// A 2×2 rational matrix, row-major.
pub type Mat2 = [[Rat; 2]; 2];

pub(crate) fn identity2() -> Mat2 {
    [[Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]]
}

pub(crate) fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |r: usize, c: usize| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub(crate) fn det2(m: &Mat2) -> Rat {
    &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
}

pub(crate) fn inv2(m: &Mat2) -> Mat2 {
    let d = det2(m);
    [
        [&m[1][1] / &d, -(&m[0][1] / &d)],
        [-(&m[1][0] / &d), &m[0][0] / &d],
    ]
}

fn transpose2(m: &Mat2) -> Mat2 {
    [
        [m[0][0].clone(), m[1][0].clone()],
        [m[0][1].clone(), m[1][1].clone()],
    ]
}

fn flatten(m: &Mat2) -> Vec<Rat> {
    vec![
        m[0][0].clone(),
        m[0][1].clone(),
        m[1][0].clone(),
        m[1][1].clone(),
    ]
}

fn unflatten(v: &[Rat]) -> Mat2 {
    [[v[0].clone(), v[1].clone()], [v[2].clone(), v[3].clone()]]
}

fn matrix_units() -> [Mat2; 4] {
    let (o, z) = (Rat::one, Rat::zero);
    [
        [[o(), z()], [z(), z()]],
        [[z(), o()], [z(), z()]],
        [[z(), z()], [o(), z()]],
        [[z(), z()], [z(), o()]],
    ]
}

/// An order in `Mat(2, ℚ)` localized at `p`, stored by the canonical
/// echelon basis of its entries `(a, b, c, d)`; equal orders compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalOrder2x2 {
    p: BigInt,
    basis: Vec<Vec<Rat>>,
}

impl LocalOrder2x2 {
    pub fn from_generators(p: &BigInt, generators: &[Mat2]) -> Result<Self> {
        let o = Self::module(p, generators)?;
        if !o.contains(&identity2()) {
            return Err(Error::NotAnOrder("does not contain 1".into()));
        }
        let g = o.generators();
        for x in &g {
            for y in &g {
                if !o.contains(&mul2(x, y)) {
                    return Err(Error::NotAnOrder("not closed under multiplication".into()));
                }
            }
        }
        Ok(o)
    }

    /// `Mat(2, 𝔬)`.
    pub fn standard(p: &BigInt) -> Self {
        Self::module(p, &matrix_units()).expect("matrix units span")
    }

    fn module(p: &BigInt, generators: &[Mat2]) -> Result<Self> {
        let rows: Vec<Vec<Rat>> = generators.iter().map(flatten).collect();
        let basis = local_echelon(&rows, p).ok_or(Error::RankDeficient(generators.len().min(3)))?;
        Ok(LocalOrder2x2 {
            p: p.clone(),
            basis,
        })
    }

    pub fn prime(&self) -> &BigInt {
        &self.p
    }

    pub fn generators(&self) -> Vec<Mat2> {
        self.basis.iter().map(|r| unflatten(r)).collect()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        let inv = linalg::inverse(&self.basis).expect("full rank");
        linalg::vec_mul(&flatten(m), &inv)
            .iter()
            .all(|c| val_unchecked(c, &self.p) >= Valuation::Finite(0))
    }

    /// `g O g⁻¹`.
    pub fn conjugate(&self, g: &Mat2) -> Self {
        let gi = inv2(g);
        let gens: Vec<Mat2> = self
            .generators()
            .iter()
            .map(|x| mul2(&mul2(g, x), &gi))
            .collect();
        Self::module(&self.p, &gens).expect("conjugation preserves rank")
    }

    /// Valuation of the reduced discriminant: half that of `det tr(eᵣeₛ)`.
    pub fn discriminant_valuation(&self) -> i64 {
        let g = self.generators();
        let gram: RatMatrix = g
            .iter()
            .map(|x| {
                g.iter()
                    .map(|y| {
                        let m = mul2(x, y);
                        &m[0][0] + &m[1][1]
                    })
                    .collect()
            })
            .collect();
        let v = val_unchecked(&linalg::determinant(&gram), &self.p)
            .finite()
            .expect("trace form is nondegenerate");
        v / 2
    }

    fn intersect(&self, other: &Self) -> Self {
        let d1 = coordinate_dual(&self.basis);
        let d2 = coordinate_dual(&other.basis);
        let sum: Vec<Vec<Rat>> = d1.into_iter().chain(d2).collect();
        let s = local_echelon(&sum, &self.p).expect("full rank");
        let basis = local_echelon(&coordinate_dual(&s), &self.p).expect("full rank");
        LocalOrder2x2 {
            p: self.p.clone(),
            basis,
        }
    }
}

fn coordinate_dual(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    linalg::dual_basis(rows).expect("nonsingular basis")
}

/// `End(Λ) = B·Mat(2, 𝔬)·B⁻¹` for a basis matrix `B`.
fn endomorphisms(lattice: &LocalQuadLattice2) -> LocalOrder2x2 {
    LocalOrder2x2::standard(lattice.prime()).conjugate(lattice.basis())
}

/// `End(Λ) ∩ End(Λ^♯)`.
pub fn order_of_lattice(lattice: &LocalQuadLattice2) -> Result<LocalOrder2x2> {
    let dual = lattice.dual()?;
    Ok(endomorphisms(lattice).intersect(&endomorphisms(&dual)))
}

/// `Λ₁ = cΛ₂` or `Λ₁ = cΛ₂^♯` for some scalar `c`.
pub fn lattice_equivalent(l1: &LocalQuadLattice2, l2: &LocalQuadLattice2) -> Result<bool> {
    if l1.prime() != l2.prime() || l1.lambda() != l2.lambda() {
        return Err(Error::Invalid("lattices must share the prime and λ".into()));
    }
    let p = l1.prime();
    let vdet = |l: &LocalQuadLattice2| val_unchecked(&det2(l.basis()), p).finite().unwrap();
    for target in [l2.clone(), l2.dual()?] {
        let d = vdet(l1) - vdet(&target);
        if d % 2 != 0 {
            continue;
        }
        if target.scale(&pow_rat(p, d / 2))?.same_lattice(l1) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `Some(sign)` iff `gᵀ·diag(λ, 1)·g = ±det(g)·diag(λ, 1)`.
pub fn is_similitude_matrix(lambda: &Rat, g: &Mat2) -> Result<Option<SimilitudeSign>> {
    let det = det2(g);
    if det.is_zero() {
        return Err(Error::NotInvertible);
    }
    let d: Mat2 = [[lambda.clone(), Rat::zero()], [Rat::zero(), Rat::one()]];
    let lhs = mul2(&mul2(&transpose2(g), &d), g);
    let scaled = |c: &Rat| d.clone().map(|r| r.map(|x| x * c));
    if lhs == scaled(&det) {
        Ok(Some(SimilitudeSign::Proper))
    } else if lhs == scaled(&-det) {
        Ok(Some(SimilitudeSign::Improper))
    } else {
        Ok(None)
    }
}

/// `g·Mat(2, 𝔬)·g⁻¹ = Mat(2, 𝔬)`: after removing the largest power of `p`
/// dividing all entries, `g` must have unit determinant.
pub fn stabilizes_standard_order(p: &BigInt, g: &Mat2) -> Result<bool> {
    let det = det2(g);
    if det.is_zero() {
        return Err(Error::NotInvertible);
    }
    let k = g
        .iter()
        .flatten()
        .map(|x| val_unchecked(x, p))
        .min()
        .unwrap()
        .finite()
        .unwrap();
    let primitive = g.clone().map(|r| r.map(|x| x * pow_rat(p, -k)));
    Ok(val_unchecked(&det2(&primitive), p) == Valuation::Finite(0))
}

/// Union-find over orders, joined by conjugation with the given matrices.
pub(crate) fn conjugacy_classes(
    orders: &[LocalOrder2x2],
    similitudes: &[Mat2],
    budget: &mut u64,
) -> Result<Vec<usize>> {
    let index: HashMap<&LocalOrder2x2, usize> =
        orders.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut parent: Vec<usize> = (0..orders.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, o) in orders.iter().enumerate() {
        for g in similitudes {
            if *budget == 0 {
                return Err(Error::BudgetExhausted(0));
            }
            *budget -= 1;
            if let Some(&j) = index.get(&o.conjugate(g)) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    Ok((0..orders.len()).map(|i| find(&mut parent, i)).collect())
}
