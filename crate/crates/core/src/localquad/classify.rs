use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::orders::{conjugacy_classes, det2, order_of_lattice, LocalOrder2x2, Mat2};
use super::LocalQuadLattice2;
use crate::error::{Error, Result};
use crate::exactnum::{
    is_integral, is_prime, is_square_free, pow_rat, quadratic_defect, val_unchecked, Valuation,
};
use crate::Rat;

/// Valuation of 2 at `p` (the `n` of the dyadic count).
fn ord_two(p: &BigInt) -> i64 {
    if *p == BigInt::from(2) {
        1
    } else {
        0
    }
}

fn check_lambda(lambda: &Rat) -> Result<BigInt> {
    if lambda.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !is_integral(lambda) {
        return Err(Error::Precondition(format!("λ = {lambda} is not integral")));
    }
    let l = lambda.to_integer();
    if !is_square_free(&l)? {
        return Err(Error::Precondition(format!("λ = {l} is not square-free")));
    }
    Ok(l)
}

/// Number of isomorphism classes of maximal ‡-orders in `Mat(2, ℚ_p)` for
/// the involution attached to `λ`.
pub fn count_classes(p: &BigInt, lambda: &Rat) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    check_lambda(lambda)?;
    let n = ord_two(p);
    if n == 0 {
        return Ok(1);
    }
    let d = quadratic_defect(&-lambda, p)?;
    if d.valuation == Valuation::Finite(1) {
        return Ok(1);
    }
    strange_count(d.valuation, n)
}

/// Class count for a dyadic defect `𝔭^d` with `n = ord(2)`:
/// `m + 1` when `d = 2m + 1 < 2n`, `n + 1` when `d = 2n` or the defect is 0.
pub fn strange_count(defect: Valuation, n: i64) -> Result<usize> {
    if n < 1 {
        return Err(Error::Precondition("n = ord(2) must be positive".into()));
    }
    match defect {
        Valuation::Infinite => Ok(n as usize + 1),
        Valuation::Finite(d) if d == 2 * n => Ok(n as usize + 1),
        Valuation::Finite(d) if d >= 1 && d < 2 * n && d % 2 == 1 => Ok((d as usize - 1) / 2 + 1),
        Valuation::Finite(d) => Err(Error::Invalid(format!(
            "{d} is not a dyadic defect valuation for n = {n}"
        ))),
    }
}

/// Orders of the norm and weight generators of a unimodular lattice with
/// Gram matrix `(α 1; 1 β)`: `(ord α, min(ord β, ord 2))`.
pub fn norm_weight_orders(alpha: &Rat, beta: &Rat, p: &BigInt) -> Result<(i64, i64)> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    let n = ord_two(p);
    let va = val_unchecked(alpha, p);
    let vb = val_unchecked(beta, p);
    let det = alpha * beta - Rat::one();
    if va < Valuation::Finite(0) || vb < Valuation::Finite(0) {
        return Err(Error::Precondition("α and β must be integral".into()));
    }
    if val_unchecked(&det, p) != Valuation::Finite(0) {
        return Err(Error::Precondition("αβ − 1 must be a unit".into()));
    }
    let Valuation::Finite(a) = va else {
        return Err(Error::Precondition("α = 0 is not a norm generator".into()));
    };
    if va > vb || a > n {
        return Err(Error::Precondition(format!(
            "α is not a norm generator (ord α = {a})"
        )));
    }
    let w = match vb {
        Valuation::Finite(b) => b.min(n),
        Valuation::Infinite => n,
    };
    Ok((a, w))
}

/// Distinct `(norm, weight)` order pairs over all integral `α, β` with
/// `|α|, |β| ≤ 2^bound` whose Gram matrix `(α 1; 1 β)` has determinant in
/// the unit square class of `−λ`, at `p = 2`.
pub fn unimodular_norm_weight_types(lambda: &Rat, bound: u32) -> Result<Vec<(i64, i64)>> {
    let l = check_lambda(lambda)?;
    let two = BigInt::from(2);
    if l.clone() % 2 == BigInt::zero() {
        return Err(Error::Precondition("λ must be a 2-adic unit".into()));
    }
    let r = 1i64 << bound.min(20);
    let mut types: Vec<(i64, i64)> = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let det = a * b - 1;
            if det % 2 == 0 {
                continue;
            }
            // det·λ ≡ 1 mod 8: det and −λ agree modulo unit squares, up to sign
            // from the determinant of diag(λ, 1)
            let prod: BigInt = BigInt::from(det) * &l;
            if ((prod % 8) + 8) % 8 != BigInt::from(1) {
                continue;
            }
            if let Ok(t) = norm_weight_orders(
                &Rat::from_integer(a.into()),
                &Rat::from_integer(b.into()),
                &two,
            ) {
                if !types.contains(&t) {
                    types.push(t);
                }
            }
        }
    }
    types.sort();
    Ok(types)
}

/// For `p = 2`: `𝔬²` with `q = λx² + y²` is `(1)`-maximal iff `𝔡(−λ) = 𝔭`.
pub fn dyadic_unit_lattice_is_maximal(lambda: &Rat) -> Result<bool> {
    if lambda.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(quadratic_defect(&-lambda, &BigInt::from(2))?.valuation == Valuation::Finite(1))
}

/// Search window for [`classify_with`]: lattices between `p^radius·𝔬²` and
/// `p^-radius·𝔬²`; similitudes `(a b; −bλ a)` with `a, b` mod `p^precision`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationWindow {
    pub radius: u32,
    pub precision: u32,
}

impl EnumerationWindow {
    pub fn default_for(p: &BigInt) -> Self {
        if *p == BigInt::from(2) {
            EnumerationWindow {
                radius: 2,
                precision: 3,
            }
        } else {
            EnumerationWindow {
                radius: 1,
                precision: 1,
            }
        }
    }
}

/// All lattices with column basis `(p^e₁, x; 0, p^e₂)`, `|eᵢ| ≤ K`,
/// `x ∈ p^-K·ℤ` reduced modulo `p^e₁`.
pub fn enumerate_lattices(p: &BigInt, lambda: &Rat, radius: u32) -> Result<Vec<LocalQuadLattice2>> {
    let pu = small_prime(p)?;
    let k = radius as i64;
    let mut out = Vec::new();
    for e1 in -k..=k {
        let steps = pu
            .checked_pow((e1 + k) as u32)
            .filter(|&s| s <= 1 << 16)
            .ok_or_else(|| Error::Precondition("enumeration window too large".into()))?;
        for e2 in -k..=k {
            for t in 0..steps {
                let x = Rat::from_integer(t.into()) * pow_rat(p, -k);
                let basis: Mat2 = [[pow_rat(p, e1), x], [Rat::zero(), pow_rat(p, e2)]];
                out.push(LocalQuadLattice2::new(p, lambda, basis)?);
            }
        }
    }
    Ok(out)
}

fn small_prime(p: &BigInt) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    p.to_u64()
        .filter(|&x| x < 1 << 16)
        .ok_or_else(|| Error::Precondition("prime too large for enumeration".into()))
}

/// Maximal ‡-orders found in a window, grouped by similitude conjugacy.
#[derive(Clone, Debug)]
pub struct Classification {
    pub p: BigInt,
    pub lambda: Rat,
    /// Distinct maximal ‡-orders found.
    pub orders: Vec<LocalOrder2x2>,
    /// One lattice per class.
    pub representatives: Vec<LocalQuadLattice2>,
    /// Class index of each entry of `orders`.
    pub class_of: Vec<usize>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn classify(p: &BigInt, lambda: &Rat) -> Result<Classification> {
    classify_with(p, lambda, EnumerationWindow::default_for(p), 5_000_000)
}

/// Enumerates lattices in the window, keeps those whose order
/// `End(Λ) ∩ End(Λ^♯)` has discriminant valuation `v_p(λ)` (a maximal
/// ‡-order), and merges orders conjugate under `GO(q)`.
pub fn classify_with(
    p: &BigInt,
    lambda: &Rat,
    window: EnumerationWindow,
    budget: u64,
) -> Result<Classification> {
    let pu = small_prime(p)?;
    let l = check_lambda(lambda)?;
    let target = crate::exactnum::valuation_int(&l, p) as i64;
    let mut remaining = budget;
    let mut found: HashMap<LocalOrder2x2, usize> = HashMap::new();
    let mut orders = Vec::new();
    let mut sources = Vec::new();
    for lat in enumerate_lattices(p, lambda, window.radius)? {
        if remaining == 0 {
            return Err(Error::BudgetExhausted(budget));
        }
        remaining -= 1;
        let o = order_of_lattice(&lat)?;
        if found.contains_key(&o) || o.discriminant_valuation() != target {
            continue;
        }
        found.insert(o.clone(), orders.len());
        orders.push(o);
        sources.push(lat);
    }
    let sims = similitudes(pu, lambda, window.precision)?;
    let roots = conjugacy_classes(&orders, &sims, &mut remaining).map_err(|e| match e {
        Error::BudgetExhausted(_) => Error::BudgetExhausted(budget),
        e => e,
    })?;
    let mut class_index: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = Vec::with_capacity(orders.len());
    for (i, r) in roots.iter().enumerate() {
        let next = class_index.len();
        let c = *class_index.entry(*r).or_insert(next);
        if c == representatives.len() {
            representatives.push(normalized(&sources[i])?);
        }
        class_of.push(c);
    }
    Ok(Classification {
        p: p.clone(),
        lambda: lambda.clone(),
        orders,
        representatives,
        class_of,
    })
}

/// Rescales by a power of `p` so that the scale has valuation 0 or 1.
fn normalized(l: &LocalQuadLattice2) -> Result<LocalQuadLattice2> {
    let s = l
        .scale_norm_volume()
        .scale
        .valuation
        .finite()
        .expect("nonzero form");
    l.scale(&pow_rat(l.prime(), -s.div_euclid(2)))
}

/// `(a b; −bλ a)·diag(−1, 1)^ε` for `a, b ∈ [0, p^M)` not both divisible by `p`.
fn similitudes(p: u64, lambda: &Rat, precision: u32) -> Result<Vec<Mat2>> {
    let r = p
        .checked_pow(precision)
        .filter(|&r| r <= 1 << 10)
        .ok_or_else(|| Error::Precondition("similitude window too large".into()))?;
    let flip: Mat2 = [[-Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]];
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            if a % p == 0 && b % p == 0 {
                continue;
            }
            let (a, b) = (Rat::from_integer(a.into()), Rat::from_integer(b.into()));
            let g: Mat2 = [[a.clone(), b.clone()], [-(&b * lambda), a]];
            if det2(&g).is_zero() {
                continue;
            }
            out.push(super::orders::mul2(&g, &flip));
            out.push(g);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn counts() {
        for lambda in [-1, 2, 3, 5, -7] {
            assert_eq!(count_classes(&big(5), &rat_int(lambda)).unwrap(), 1);
        }
        assert_eq!(count_classes(&big(2), &rat_int(2)).unwrap(), 1);
        assert_eq!(count_classes(&big(2), &rat_int(-1)).unwrap(), 2);
        assert_eq!(count_classes(&big(2), &rat_int(-3)).unwrap(), 1);
        assert!(count_classes(&big(2), &rat_int(12)).is_err());
        assert!(count_classes(&big(4), &rat_int(1)).is_err());
    }

    #[test]
    fn strange_counts() {
        assert_eq!(strange_count(Valuation::Finite(1), 1), Ok(1));
        assert_eq!(strange_count(Valuation::Finite(2), 1), Ok(2));
        assert_eq!(strange_count(Valuation::Infinite, 1), Ok(2));
        assert_eq!(strange_count(Valuation::Finite(3), 2), Ok(2));
        assert_eq!(strange_count(Valuation::Finite(5), 3), Ok(3));
        assert_eq!(strange_count(Valuation::Finite(6), 3), Ok(4));
        assert!(strange_count(Valuation::Finite(3), 1).is_err());
        assert!(strange_count(Valuation::Finite(4), 3).is_err());
    }

    #[test]
    fn norm_weight() {
        let two = big(2);
        assert_eq!(
            norm_weight_orders(&rat_int(1), &rat_int(0), &two),
            Ok((0, 1))
        );
        assert_eq!(
            norm_weight_orders(&rat_int(2), &rat_int(2), &two),
            Ok((1, 1))
        );
        assert!(norm_weight_orders(&rat_int(2), &rat_int(1), &two).is_err());
        assert!(norm_weight_orders(&rat_int(1), &rat_int(1), &two).is_err());
        assert!(norm_weight_orders(&rat_int(0), &rat_int(3), &two).is_err());
        assert!(norm_weight_orders(&rat_int(4), &rat_int(4), &two).is_err());
    }

    #[test]
    fn unimodular_types() {
        for lambda in [-1, -17, 7, 3, -5] {
            assert_eq!(
                unimodular_norm_weight_types(&rat_int(lambda), 4).unwrap(),
                vec![(0, 1), (1, 1)],
                "λ={lambda}"
            );
        }
        assert_eq!(
            unimodular_norm_weight_types(&rat_int(-3), 4).unwrap(),
            vec![(0, 1)]
        );
    }

    #[test]
    fn window_lattices() {
        let ls = enumerate_lattices(&big(3), &rat_int(1), 1).unwrap();
        assert_eq!(ls.len(), 3 * (1 + 3 + 9));
        for (i, a) in ls.iter().enumerate() {
            for b in &ls[..i] {
                assert!(!a.same_lattice(b));
            }
        }
    }

    #[test]
    fn enumeration_matches_counts() {
        for (p, lambda) in [(2, -1), (2, 2), (2, -3), (3, -1), (3, 3), (5, 2)] {
            let c = classify(&big(p), &rat_int(lambda)).unwrap();
            assert_eq!(
                c.class_count(),
                count_classes(&big(p), &rat_int(lambda)).unwrap(),
                "p={p} λ={lambda}"
            );
        }
    }

    #[test]
    fn budget() {
        let w = EnumerationWindow {
            radius: 2,
            precision: 3,
        };
        assert_eq!(
            classify_with(&big(2), &rat_int(-1), w, 10).unwrap_err(),
            Error::BudgetExhausted(10)
        );
    }
}
