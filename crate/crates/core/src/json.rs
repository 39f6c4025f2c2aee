//! JSON payloads. Rationals travel as `"n"` or `"n/d"` strings.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{format_rat, parse_rat, IdealZ};
use crate::lattices::{IntegralLattice4, Order4};
use crate::localquad::{Classification, LocalQuadLattice2, Mat2};
use crate::maximality::{MaximalityCertificate, PrimeWitness, Verdict};
use crate::{Algebra, Involution, Quat, Rat};

fn rat(s: &str) -> Result<Rat> {
    parse_rat(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatJson {
    pub w: String,
    pub x: String,
    pub y: String,
    pub z: String,
}

impl From<&Quat> for QuatJson {
    fn from(q: &Quat) -> Self {
        QuatJson {
            w: format_rat(&q.w),
            x: format_rat(&q.x),
            y: format_rat(&q.y),
            z: format_rat(&q.z),
        }
    }
}

impl QuatJson {
    pub fn decode(&self) -> Result<Quat> {
        Ok(Quat::new(
            rat(&self.w)?,
            rat(&self.x)?,
            rat(&self.y)?,
            rat(&self.z)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub a: String,
    pub b: String,
}

impl From<&Algebra> for AlgebraJson {
    fn from(h: &Algebra) -> Self {
        AlgebraJson {
            a: format_rat(h.a()),
            b: format_rat(h.b()),
        }
    }
}

impl AlgebraJson {
    pub fn decode(&self) -> Result<Algebra> {
        Algebra::new(rat(&self.a)?, rat(&self.b)?)
    }
}

/// `{"u": element}`, optionally with the algebra it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraJson>,
    pub u: QuatJson,
}

impl From<&Involution> for InvolutionJson {
    fn from(inv: &Involution) -> Self {
        InvolutionJson {
            algebra: Some(inv.algebra().into()),
            u: inv.skew_element().into(),
        }
    }
}

impl InvolutionJson {
    /// Uses `context` when the payload carries no algebra; both present
    /// and different is an error.
    pub fn decode(&self, context: Option<&Algebra>) -> Result<Involution> {
        let own = self.algebra.as_ref().map(AlgebraJson::decode).transpose()?;
        let h = match (own, context) {
            (Some(h), Some(c)) if h != *c => return Err(Error::AlgebraMismatch),
            (Some(h), _) => h,
            (None, Some(c)) => c.clone(),
            (None, None) => return Err(Error::Invalid("involution needs an algebra".into())),
        };
        Involution::new(h, self.u.decode()?)
    }
}

/// `{"algebra": …, "basis": [[4 strings] × 4]}`, rows in HNF.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub algebra: AlgebraJson,
    pub basis: Vec<Vec<String>>,
}

impl From<&IntegralLattice4> for LatticeJson {
    fn from(l: &IntegralLattice4) -> Self {
        LatticeJson {
            algebra: l.algebra().into(),
            basis: l
                .basis()
                .iter()
                .map(|r| r.iter().map(format_rat).collect())
                .collect(),
        }
    }
}

impl From<&Order4> for LatticeJson {
    fn from(o: &Order4) -> Self {
        o.lattice().into()
    }
}

impl LatticeJson {
    pub fn decode(&self) -> Result<IntegralLattice4> {
        let h = self.algebra.decode()?;
        let rows = self
            .basis
            .iter()
            .map(|r| {
                if r.len() != 4 {
                    return Err(Error::Invalid(format!(
                        "basis rows need 4 entries, got {}",
                        r.len()
                    )));
                }
                r.iter().map(|s| rat(s)).collect()
            })
            .collect::<Result<Vec<Vec<Rat>>>>()?;
        IntegralLattice4::from_rows(&h, &rows)
    }

    pub fn decode_order(&self) -> Result<Order4> {
        Order4::new(self.decode()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub verdict: Verdict,
    pub target: String,
    pub achieved: String,
    pub witnesses: Vec<PrimeWitness>,
    pub order: LatticeJson,
    pub dagger_stable: bool,
    pub eichler_form: bool,
}

impl From<&MaximalityCertificate> for CertificateJson {
    fn from(c: &MaximalityCertificate) -> Self {
        CertificateJson {
            verdict: c.verdict,
            target: c.target.to_string(),
            achieved: c.achieved.to_string(),
            witnesses: c.witnesses.clone(),
            order: (&c.order).into(),
            dagger_stable: c.dagger_stable,
            eichler_form: c.eichler_form,
        }
    }
}

impl CertificateJson {
    pub fn decode(&self) -> Result<MaximalityCertificate> {
        let ideal = |s: &str| -> Result<IdealZ> {
            s.trim()
                .parse::<BigInt>()
                .map(IdealZ::new)
                .map_err(|_| Error::Invalid(format!("bad ideal generator {s:?}")))
        };
        Ok(MaximalityCertificate {
            order: self.order.decode_order()?,
            target: ideal(&self.target)?,
            achieved: ideal(&self.achieved)?,
            verdict: self.verdict,
            dagger_stable: self.dagger_stable,
            eichler_form: self.eichler_form,
            witnesses: self.witnesses.clone(),
        })
    }
}

/// Integers as JSON numbers when they fit in `u64`/`i64`, strings otherwise.
mod bigint_num {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        crate::exactnum::bigint_str::deserialize(d)
    }
}

fn mat2_strings(m: &Mat2) -> [[String; 2]; 2] {
    m.clone().map(|r| r.map(|x| format_rat(&x)))
}

/// `{"p": int, "lambda": "…", "basis": [[2 strings] × 2]}`, columns are
/// the basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalLatticeJson {
    #[serde(with = "bigint_num")]
    pub p: BigInt,
    pub lambda: String,
    pub basis: [[String; 2]; 2],
}

impl From<&LocalQuadLattice2> for LocalLatticeJson {
    fn from(l: &LocalQuadLattice2) -> Self {
        LocalLatticeJson {
            p: l.prime().clone(),
            lambda: format_rat(l.lambda()),
            basis: mat2_strings(l.basis()),
        }
    }
}

impl LocalLatticeJson {
    pub fn decode(&self) -> Result<LocalQuadLattice2> {
        let basis = [
            [rat(&self.basis[0][0])?, rat(&self.basis[0][1])?],
            [rat(&self.basis[1][0])?, rat(&self.basis[1][1])?],
        ];
        LocalQuadLattice2::new(&self.p, &rat(&self.lambda)?, basis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentativeJson {
    pub lattice: LocalLatticeJson,
    pub gram: [[String; 2]; 2],
}

/// Class count plus one representative lattice per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationJson {
    #[serde(with = "bigint_num")]
    pub p: BigInt,
    pub lambda: String,
    pub classes: usize,
    pub orders_found: usize,
    pub representatives: Vec<RepresentativeJson>,
}

impl From<&Classification> for ClassificationJson {
    fn from(c: &Classification) -> Self {
        ClassificationJson {
            p: c.p.clone(),
            lambda: format_rat(&c.lambda),
            classes: c.class_count(),
            orders_found: c.orders.len(),
            representatives: c
                .representatives
                .iter()
                .map(|l| RepresentativeJson {
                    lattice: l.into(),
                    gram: mat2_strings(l.gram()),
                })
                .collect(),
        }
    }
}
