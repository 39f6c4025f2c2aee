//! Maximal orders, maximal ‡-orders, and certificates for the discriminant
//! criterion `discrd(O) = disc(H) ∩ ι(disc ‡)`.
//!
//! Enlargement works one prime at a time. If `O ⊊ O'` are orders, then
//! `O' ⊆ O^♯` and `O'/O` is a finite group, so some `x ∈ O' ∖ O` has
//! `px ∈ O` for a prime `p` dividing the index. Such an `x` lies in
//! `W = (O^♯ ∩ p⁻¹O)/O`, an 𝔽_p-space, and the ring `O[x]` is an order
//! inside `O'`. Searching the projective points of `W` (after a norm filter
//! modulo `p²`) therefore finds a proper superorder whenever one exists.
//! For ‡-stable `O'` the element can be taken to be a ‡-eigenvector modulo
//! `O`, and then `O[x]` is ‡-stable as well.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{valuation_int, IdealZ};
use crate::lattices::{IntegralLattice4, Order4};
use crate::linalg::{left_kernel_mod_p, row_space_mod_p};
use crate::quatalg::{algebra_discriminant, involution_ideal};
use crate::{Algebra, Involution, Quat, Rat};

/// Default number of search steps before giving up.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Counts search steps and fails once the limit is reached.
#[derive(Debug)]
struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    fn spend(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(Error::BudgetExhausted(self.limit));
        }
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Mode<'a> {
    Plain,
    Dagger(&'a Involution),
}

/// `disc(H) ∩ ι(disc ‡)`.
pub fn target_discriminant(h: &Algebra, inv: &Involution) -> Result<IdealZ> {
    if inv.algebra() != h {
        return Err(Error::AlgebraMismatch);
    }
    Ok(algebra_discriminant(h)?.intersect(&involution_ideal(inv)?))
}

pub fn maximal_order_containing(o: &Order4) -> Result<Order4> {
    maximal_order_containing_with_budget(o, DEFAULT_BUDGET)
}

pub fn maximal_order_containing_with_budget(o: &Order4, budget: u64) -> Result<Order4> {
    let target = algebra_discriminant(o.algebra())?;
    ascend(o.clone(), &target, Mode::Plain, &mut Budget::new(budget))
}

/// A maximal ‡-order containing `O ∩ O^‡`.
pub fn enlarge_to_maximal_dagger(o: &Order4, inv: &Involution) -> Result<Order4> {
    enlarge_to_maximal_dagger_with_budget(o, inv, DEFAULT_BUDGET)
}

pub fn enlarge_to_maximal_dagger_with_budget(
    o: &Order4,
    inv: &Involution,
    budget: u64,
) -> Result<Order4> {
    let target = target_discriminant(o.algebra(), inv)?;
    let start = if o.is_dagger_stable(inv)? {
        o.clone()
    } else {
        o.dagger_core(inv)?
    };
    ascend(start, &target, Mode::Dagger(inv), &mut Budget::new(budget))
}

fn ascend(mut cur: Order4, target: &IdealZ, mode: Mode, budget: &mut Budget) -> Result<Order4> {
    let start = cur.reduced_discriminant()?;
    for p in start.primes()? {
        let goal = valuation_int(target.generator(), &p);
        loop {
            let v = valuation_int(cur.reduced_discriminant()?.generator(), &p);
            if v <= goal {
                break;
            }
            cur = superorder_step(&cur, &p, mode, budget)?.ok_or_else(|| {
                Error::Internal(format!(
                    "no superorder at {p} although the discriminant valuation {v} exceeds {goal}"
                ))
            })?;
        }
    }
    let achieved = cur.reduced_discriminant()?;
    if achieved != *target {
        return Err(Error::Internal(format!(
            "ascent ended at discriminant {achieved}, expected {target}"
        )));
    }
    Ok(cur)
}

/// A proper superorder `O[x]` with `px ∈ O`, or `None` when `O` is maximal
/// at `p` (among ‡-stable orders in dagger mode). Candidates are tried in a
/// fixed order, so the result is deterministic.
fn superorder_step(
    o: &Order4,
    p: &BigInt,
    mode: Mode,
    budget: &mut Budget,
) -> Result<Option<Order4>> {
    let pu = p.to_u64().filter(|&v| v < 1 << 31).ok_or_else(|| {
        Error::Precondition(format!("prime {p} is too large for superorder search"))
    })?;
    let pr = Rat::from_integer(p.clone());
    let dual = o.trace_dual();
    let top = dual.intersect(&o.scale(&pr.recip())?)?;
    let rows: Vec<Vec<u64>> = top
        .elements()
        .iter()
        .map(|e| residues(&o.coordinates(e), &pr, p))
        .collect::<Result<_>>()?;
    let w = row_space_mod_p(&rows, pu);
    if w.is_empty() {
        return Ok(None);
    }

    let spaces = match mode {
        Mode::Plain => vec![w],
        Mode::Dagger(inv) => eigenspaces(o, inv, &w, p, pu)?,
    };
    for space in spaces.iter().filter(|s| !s.is_empty()) {
        if let Some(found) = search_space(o, &dual, space, p, pu, budget)? {
            if let Mode::Dagger(inv) = mode {
                if !found.is_dagger_stable(inv)? {
                    return Err(Error::Internal(
                        "ring of a ‡-eigenvector is not ‡-stable".into(),
                    ));
                }
            }
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// Coordinates scaled by `p`, reduced modulo `p`.
fn residues(coords: &[Rat], pr: &Rat, p: &BigInt) -> Result<Vec<u64>> {
    coords
        .iter()
        .map(|c| {
            let t = c * pr;
            if !t.is_integer() {
                return Err(Error::Internal("element outside p⁻¹O".into()));
            }
            Ok(t.to_integer().mod_floor(p).to_u64().unwrap())
        })
        .collect()
}

fn element(o: &Order4, coords: &[u64]) -> Quat {
    o.elements()
        .iter()
        .zip(coords)
        .fold(Quat::zero(), |acc, (e, &c)| {
            acc + e.scale(&Rat::from_integer(c.into()))
        })
}

/// Bases (in `O/pO` coordinates) of the ±1 eigenspaces of ‡ on `W`.
fn eigenspaces(
    o: &Order4,
    inv: &Involution,
    w: &[Vec<u64>],
    p: &BigInt,
    pu: u64,
) -> Result<Vec<Vec<Vec<u64>>>> {
    let one = Rat::one();
    let pivots: Vec<usize> = w
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).unwrap())
        .collect();
    let t: Vec<Vec<u64>> = w
        .iter()
        .map(|y| {
            let img = inv.apply(&element(o, y));
            let c = residues(&o.coordinates(&img), &one, p)?;
            Ok(pivots.iter().map(|&k| c[k]).collect())
        })
        .collect::<Result<_>>()?;
    let signs: &[u64] = if pu == 2 { &[1] } else { &[1, pu - 1] };
    let r = w.len();
    Ok(signs
        .iter()
        .map(|&s| {
            let m: Vec<Vec<u64>> = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|k| {
                            let d = if i == k { s } else { 0 };
                            (t[i][k] + pu - d) % pu
                        })
                        .collect()
                })
                .collect();
            left_kernel_mod_p(&m, pu)
                .into_iter()
                .map(|c| {
                    (0..4)
                        .map(|col| {
                            c.iter()
                                .zip(w)
                                .fold(0u64, |acc, (&ci, row)| (acc + ci * row[col]) % pu)
                        })
                        .collect()
                })
                .collect()
        })
        .collect())
}

fn search_space(
    o: &Order4,
    dual: &IntegralLattice4,
    space: &[Vec<u64>],
    p: &BigInt,
    pu: u64,
    budget: &mut Budget,
) -> Result<Option<Order4>> {
    let h = o.algebra();
    let z: Vec<Quat> = space.iter().map(|v| element(o, v)).collect();
    let m = (pu as i128) * (pu as i128);
    let p2 = p * p;
    let reduce = |x: Rat| -> Result<i128> {
        if !x.is_integer() {
            return Err(Error::Internal("non-integral norm on an order".into()));
        }
        Ok(x.to_integer().mod_floor(&p2).to_i128().unwrap())
    };
    let s = z.len();
    let norms: Vec<i128> = z.iter().map(|q| reduce(h.nrd(q))).collect::<Result<_>>()?;
    let mut cross = vec![vec![0i128; s]; s];
    for k in 0..s {
        for l in k + 1..s {
            cross[k][l] = reduce(h.trd(&h.mul(&z[k], &z[l].conjugate())))?;
        }
    }
    let form = |c: &[i128]| -> i128 {
        let mut acc = 0i128;
        for k in 0..s {
            if c[k] == 0 {
                continue;
            }
            acc = (acc + c[k] * c[k] % m * norms[k]) % m;
            for l in k + 1..s {
                acc = (acc + c[k] * c[l] % m * cross[k][l]) % m;
            }
        }
        acc
    };

    let pr = Rat::from_integer(p.clone());
    let mut c = vec![0i128; s];
    for lead in 0..s {
        let tail = (s - lead - 1) as u32;
        let count = (pu as u128).pow(tail);
        for idx in 0..count {
            budget.spend(1)?;
            c.iter_mut().for_each(|x| *x = 0);
            c[lead] = 1;
            let mut rest = idx;
            for k in (lead + 1..s).rev() {
                c[k] = (rest % pu as u128) as i128;
                rest /= pu as u128;
            }
            if form(&c) != 0 {
                continue;
            }
            let y = z.iter().zip(&c).fold(Quat::zero(), |acc, (q, &ci)| {
                acc + q.scale(&Rat::from_integer(ci.into()))
            });
            if let Some(found) = ring_closure(o, &y.scale(&pr.recip()), dual, budget)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// The ring generated by `O` and `x`, if it stays inside `O^♯`.
fn ring_closure(
    o: &Order4,
    x: &Quat,
    dual: &IntegralLattice4,
    budget: &mut Budget,
) -> Result<Option<Order4>> {
    let h = o.algebra();
    let mut gens = o.elements();
    gens.push(x.clone());
    let mut l = IntegralLattice4::canonicalize(h, &gens)?;
    loop {
        budget.spend(16)?;
        if !dual.contains_lattice(&l) {
            return Ok(None);
        }
        let e = l.elements();
        let mut g = e.clone();
        for a in &e {
            for b in &e {
                g.push(h.mul(a, b));
            }
        }
        let next = IntegralLattice4::canonicalize(h, &g)?;
        if next == l {
            return Ok(Some(Order4::new_unchecked(l)));
        }
        l = next;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Maximal,
    NotMaximal,
}

/// Valuations of the achieved and target discriminants at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeWitness {
    #[serde(with = "crate::exactnum::bigint_str")]
    pub prime: BigInt,
    pub achieved_valuation: u32,
    pub target_valuation: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityCertificate {
    pub order: Order4,
    pub target: IdealZ,
    pub achieved: IdealZ,
    pub verdict: Verdict,
    /// `O^‡ = O`.
    pub dagger_stable: bool,
    /// `O = M ∩ M^‡` for the maximal order `M ⊇ O` found by the search.
    pub eichler_form: bool,
    pub witnesses: Vec<PrimeWitness>,
}

pub fn is_maximal_dagger_order(o: &Order4, inv: &Involution) -> Result<MaximalityCertificate> {
    let target = target_discriminant(o.algebra(), inv)?;
    let achieved = o.reduced_discriminant()?;
    let dagger_stable = o.is_dagger_stable(inv)?;
    let eichler_form = dagger_stable && {
        let m = maximal_order_containing(o)?;
        m.dagger_core(inv)? == *o
    };
    let verdict = if dagger_stable && eichler_form && achieved == target {
        Verdict::Maximal
    } else {
        Verdict::NotMaximal
    };
    let mut primes = achieved.primes()?;
    primes.extend(target.primes()?);
    primes.sort();
    primes.dedup();
    let witnesses = primes
        .into_iter()
        .map(|p| PrimeWitness {
            achieved_valuation: valuation_int(achieved.generator(), &p),
            target_valuation: valuation_int(target.generator(), &p),
            prime: p,
        })
        .collect();
    Ok(MaximalityCertificate {
        order: o.clone(),
        target,
        achieved,
        verdict,
        dagger_stable,
        eichler_form,
        witnesses,
    })
}
