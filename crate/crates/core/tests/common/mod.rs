//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use dagger_core::exactnum::{rat_int, square_free_part, IdealZ};
use dagger_core::lattices::{IntegralLattice4, Order4};
use dagger_core::linalg::{hnf_upper, inverse, mat_mul};
use dagger_core::localquad::{LocalQuadLattice2, Mat2};
use dagger_core::{Algebra, Involution, Quat, Rat};

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn q(w: i64, x: i64, y: i64, z: i64) -> Quat {
    Quat::new(rat_int(w), rat_int(x), rat_int(y), rat_int(z))
}

pub fn golden() -> (Algebra, Involution) {
    let h = Algebra::new(rat_int(-1), rat_int(-5)).unwrap();
    let inv = Involution::new(h.clone(), Quat::ij()).unwrap();
    (h, inv)
}

fn v_int(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// Valuation of a nonzero rational by repeated division.
pub fn v_rat(x: &Rat, p: &BigInt) -> i64 {
    v_int(x.numer(), p) as i64 - v_int(x.denom(), p) as i64
}

// ---------------------------------------------------------------- Hilbert

/// `(a, b)_p` for nonzero integers by searching primitive solutions of
/// `z² = ax² + by²` modulo `p^N` that lift by Hensel's lemma
/// (`v(Q(x)) > 2·min v(∇Q(x))`). Only for `p ∈ {2, 3, 5}`.
pub fn hilbert_oracle(a: i64, b: i64, p: i64) -> i8 {
    let a = square_free_part(&big(a)).unwrap().to_i64().unwrap();
    let b = square_free_part(&big(b)).unwrap().to_i64().unwrap();
    let n = if p == 2 { 5 } else { 3 };
    let m = p.pow(n);
    let v = |x: i64| -> u32 {
        let mut x = x.rem_euclid(m);
        if x == 0 {
            return n;
        }
        let mut k = 0;
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        k
    };
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                if x % p == 0 && y % p == 0 && z % p == 0 {
                    continue;
                }
                let f = (z * z - a * x * x - b * y * y).rem_euclid(m);
                let grad = [2 * z, -2 * a * x, -2 * b * y]
                    .map(v)
                    .into_iter()
                    .min()
                    .unwrap();
                if 2 * grad < n && v(f) > 2 * grad {
                    return 1;
                }
            }
        }
    }
    -1
}

/// `(a, b)_∞`.
pub fn hilbert_real(a: i64, b: i64) -> i8 {
    if a < 0 && b < 0 {
        -1
    } else {
        1
    }
}

// ----------------------------------------------------------------- defect

/// Largest `v(a − b²)` over `b = m/p^j` (`m mod p^(cap+2j)`), capped;
/// `None` when the cap is reached (zero defect). Fractional `b` only help
/// when `v(a) < 0`.
pub fn defect_oracle(a: &Rat, p: i64, cap: i64) -> Option<i64> {
    let pb = big(p);
    let mut best = i64::MIN;
    let jmax = (-v_rat(a, &pb)).max(0) as u32;
    for j in 0..=jmax {
        let den = p.pow(j);
        let modulus = p.pow((cap + 2 * j as i64) as u32);
        for m in 0..modulus {
            let b = Rat::new(big(m), big(den));
            let d = a - &b * &b;
            let val = if d.is_zero() {
                cap
            } else {
                v_rat(&d, &pb).min(cap)
            };
            best = best.max(val);
        }
    }
    if best >= cap {
        None
    } else {
        Some(best)
    }
}

// ----------------------------------------------------------- discriminant

/// `|det(trd(eᵣ·eₛ))|` from the algebra multiplication.
pub fn trace_gram_det(h: &Algebra, basis: &[Quat]) -> Rat {
    let m: Vec<Vec<Rat>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| h.trd(&h.mul(x, y))).collect())
        .collect();
    det(&m).abs()
}

fn det(m: &[Vec<Rat>]) -> Rat {
    // cofactor expansion; 4×4 at most
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = Rat::zero();
    for c in 0..m.len() {
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][c] * det(&minor);
        total = if c % 2 == 0 {
            total + term
        } else {
            total - term
        };
    }
    total
}

/// Reduced discriminant as `sqrt(|det trace Gram|)`.
pub fn disc_oracle(o: &Order4) -> IdealZ {
    let d = trace_gram_det(o.algebra(), &o.elements());
    assert!(d.is_integer(), "order trace Gram must be integral");
    let n = d.to_integer();
    let r = n.sqrt();
    assert_eq!(&r * &r, n, "trace Gram determinant must be a square");
    IdealZ::new(r)
}

// -------------------------------------------------------------- orders

/// Coset representatives of `L/O` for lattices `O ⊆ L`, by the triangular
/// form of `O` in `L`-coordinates.
pub fn cosets(l: &IntegralLattice4, o: &IntegralLattice4) -> Vec<Quat> {
    let coords: Vec<Vec<BigInt>> = o
        .elements()
        .iter()
        .map(|e| {
            l.coordinates(e)
                .iter()
                .map(|c| {
                    assert!(c.is_integer());
                    c.to_integer()
                })
                .collect()
        })
        .collect();
    let h = hnf_upper(&coords);
    let diag: Vec<u64> = (0..4).map(|i| h[i][i].abs().to_u64().unwrap()).collect();
    let size: u64 = diag.iter().product();
    assert!(size <= 1 << 20, "quotient too large for the oracle");
    let basis = l.elements();
    let mut out = Vec::with_capacity(size as usize);
    for mut k in 0..size {
        let mut x = Quat::zero();
        for i in 0..4 {
            let c = k % diag[i];
            k /= diag[i];
            x = x + basis[i].scale(&rat_int(c as i64));
        }
        out.push(x);
    }
    out
}

/// All ‡-stable orders `O' ⊋ O` with `[O' : O] ∈ {p, p²}`. Such an `O'`
/// lies in `W = O^♯ ∩ p⁻²O`, so it suffices to run over the subgroups of
/// `W/O` of order `p` and `p²`: by lines and planes of the `𝔽_p`-space when
/// `W/O` has exponent `p`, otherwise by listing its elements.
pub fn dagger_superorders(o: &Order4, inv: &Involution, p: i64) -> Vec<IntegralLattice4> {
    superorders(o, inv, p, false)
}

/// [`dagger_superorders`] by listing all of `W/O`, whatever its size.
pub fn dagger_superorders_listing(o: &Order4, inv: &Involution, p: i64) -> Vec<IntegralLattice4> {
    superorders(o, inv, p, true)
}

fn superorders(o: &Order4, inv: &Involution, p: i64, by_elements: bool) -> Vec<IntegralLattice4> {
    let h = o.algebra();
    let pp = rat_int(p * p);
    let window = o
        .lattice()
        .trace_dual()
        .intersect(&o.lattice().scale(&(Rat::one() / &pp)).unwrap())
        .unwrap();
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    let mut consider = |gens: &[&Quat]| {
        let mut vs = o.elements();
        vs.extend(gens.iter().map(|g| (*g).clone()));
        let l = IntegralLattice4::canonicalize(h, &vs).unwrap();
        let idx = l.index_of(o.lattice());
        if idx != rat_int(p) && idx != pp {
            return;
        }
        if !seen.insert(format!("{:?}", l.basis())) {
            return;
        }
        if l.is_order() && l.is_dagger_stable(inv).unwrap() {
            found.push(l);
        }
    };
    let torsion = window
        .intersect(&o.lattice().scale(&rat_frac_i(1, p)).unwrap())
        .unwrap();
    if torsion != window || by_elements {
        let reps = cosets(&window, o.lattice());
        for (k, g) in reps.iter().enumerate() {
            consider(&[g]);
            for g2 in &reps[..k] {
                consider(&[g, g2]);
            }
        }
        return found;
    }
    let basis = elementary_basis(&window, o.lattice(), p);
    let combo = |c: &[i64]| {
        let mut x = Quat::zero();
        for (b, k) in basis.iter().zip(c) {
            x = x + b.scale(&rat_int(*k));
        }
        x
    };
    let r = basis.len();
    let lines = echelon_rows(r, 1, p);
    assert!(lines.len() <= 1 << 16, "too many lines for the oracle");
    for rows in &lines {
        consider(&[&combo(&rows[0])]);
    }
    for rows in echelon_rows(r, 2, p) {
        consider(&[&combo(&rows[0]), &combo(&rows[1])]);
    }
    found
}

fn rat_frac_i(n: i64, d: i64) -> Rat {
    Rat::new(big(n), big(d))
}

/// Elements of `l` whose images form an `𝔽_p`-basis of `l/o`, for `l/o`
/// elementary abelian.
fn elementary_basis(l: &IntegralLattice4, o: &IntegralLattice4, p: i64) -> Vec<Quat> {
    let coords: Vec<Vec<BigInt>> = o
        .elements()
        .iter()
        .map(|e| l.coordinates(e).iter().map(|c| c.to_integer()).collect())
        .collect();
    let hm = hnf_upper(&coords);
    let basis = l.elements();
    (0..4)
        .filter(|&i| {
            let d = hm[i][i].abs();
            assert!(d == big(1) || d == big(p));
            d == big(p)
        })
        .map(|i| basis[i].clone())
        .collect()
}

/// Reduced row echelon `k × r` matrices over `𝔽_p` of rank `k`: one per
/// `k`-dimensional subspace.
fn echelon_rows(r: usize, k: usize, p: i64) -> Vec<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    let pivots: Vec<Vec<usize>> = match k {
        1 => (0..r).map(|a| vec![a]).collect(),
        2 => (0..r)
            .flat_map(|a| (a + 1..r).map(move |b| vec![a, b]))
            .collect(),
        _ => unreachable!(),
    };
    for piv in pivots {
        // free positions: right of the row's pivot, not another pivot column
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|row| {
                let piv = piv.clone();
                (piv[row] + 1..r)
                    .filter(move |c| !piv.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for mut n in 0..total {
            let mut m = vec![vec![0i64; r]; k];
            for (row, &c) in piv.iter().enumerate() {
                m[row][c] = 1;
            }
            for &(row, c) in &free {
                m[row][c] = (n % p as u64) as i64;
                n /= p as u64;
            }
            out.push(m);
        }
    }
    out
}

// -------------------------------------------------------- local lattices

pub fn mat2(entries: [[(i64, i64); 2]; 2]) -> Mat2 {
    entries.map(|r| r.map(|(n, d)| Rat::new(big(n), big(d))))
}

fn gram(lambda: &Rat, basis: &Mat2) -> Mat2 {
    let col = |c: usize| [basis[0][c].clone(), basis[1][c].clone()];
    let b = |v: &[Rat; 2], w: &[Rat; 2]| lambda * &v[0] * &w[0] + &v[1] * &w[1];
    let (v1, v2) = (col(0), col(1));
    [[b(&v1, &v1), b(&v1, &v2)], [b(&v2, &v1), b(&v2, &v2)]]
}

/// Norm valuation `min(v(G₁₁), v(G₂₂), v(2) + v(G₁₂))`.
fn norm_valuation(p: &BigInt, g: &Mat2) -> i64 {
    let v = |x: &Rat| {
        if x.is_zero() {
            i64::MAX / 2
        } else {
            v_rat(x, p)
        }
    };
    let two = if *p == big(2) { 1 } else { 0 };
    v(&g[0][0]).min(v(&g[1][1])).min(v(&g[0][1]) + two)
}

/// Every superlattice `Λ' ⊋ Λ` with `[Λ' : Λ] ≤ p²`: the cyclic extensions
/// `Λ + 𝔬·w/p²` and `p⁻¹Λ`. Bases are columns.
pub fn superlattices(l: &LocalQuadLattice2) -> Vec<Mat2> {
    let p = l.prime().to_i64().unwrap();
    let b = l.basis().clone();
    let mut out = vec![b.clone().map(|r| r.map(|x| x / rat_int(p)))];
    let p2 = p * p;
    for c1 in 0..p2 {
        for c2 in 0..p2 {
            if c1 == 0 && c2 == 0 {
                continue;
            }
            let w = [
                (&b[0][0] * rat_int(c1) + &b[0][1] * rat_int(c2)) / rat_int(p2),
                (&b[1][0] * rat_int(c1) + &b[1][1] * rat_int(c2)) / rat_int(p2),
            ];
            out.push(span_with(&b, &w, p));
        }
    }
    out
}

/// Column basis of `Λ + 𝔬w` where `w` has exact denominator dividing `p²`.
fn span_with(b: &Mat2, w: &[Rat; 2], p: i64) -> Mat2 {
    // coordinates of w in Λ: (c₁, c₂)/p^k with one cᵢ a unit; swap that
    // basis vector for w
    let binv = inv2(b);
    let c = [
        &binv[0][0] * &w[0] + &binv[0][1] * &w[1],
        &binv[1][0] * &w[0] + &binv[1][1] * &w[1],
    ];
    let pb = big(p);
    let unit_at = |x: &Rat| {
        !x.is_zero()
            && v_rat(x, &pb)
                == c.iter()
                    .filter(|y| !y.is_zero())
                    .map(|y| v_rat(y, &pb))
                    .min()
                    .unwrap()
    };
    let keep = if unit_at(&c[0]) { 1 } else { 0 };
    let mut out = b.clone();
    for r in 0..2 {
        out[r][1 - keep] = w[r].clone();
    }
    out
}

fn inv2(m: &Mat2) -> Mat2 {
    let d = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
    [
        [&m[1][1] / &d, -(&m[0][1] / &d)],
        [-(&m[1][0] / &d), &m[0][0] / &d],
    ]
}

/// `Λ` is `p^a`-maximal by brute force over superlattices of index ≤ p².
pub fn maximal_oracle(l: &LocalQuadLattice2, a: i64) -> bool {
    let p = l.prime();
    assert!(norm_valuation(p, &gram(l.lambda(), l.basis())) >= a);
    superlattices(l)
        .iter()
        .all(|s| norm_valuation(p, &gram(l.lambda(), s)) < a)
}

/// Product of 2×2 matrices, for similitude searches.
pub fn mul2(a: &Mat2, b: &Mat2) -> Mat2 {
    let r = mat_mul(
        &a.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        &b.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    );
    [
        [r[0][0].clone(), r[0][1].clone()],
        [r[1][0].clone(), r[1][1].clone()],
    ]
}

/// Proper and improper similitudes `(a b; −bλ a)·diag(±1, 1)` with
/// `0 ≤ a, b < bound`.
pub fn similitude_box(lambda: &Rat, bound: i64) -> Vec<Mat2> {
    let flip = mat2([[(-1, 1), (0, 1)], [(0, 1), (1, 1)]]);
    let mut out = Vec::new();
    for a in 0..bound {
        for b in 0..bound {
            let (ar, br) = (rat_int(a), rat_int(b));
            let g: Mat2 = [[ar.clone(), br.clone()], [-(&br * lambda), ar]];
            if inverse(&g.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).is_none() {
                continue;
            }
            out.push(mul2(&g, &flip));
            out.push(g);
        }
    }
    out
}

// --------------------------------------------------------------- random

pub fn random_pure<R: Rng>(rng: &mut R, r: i64) -> Quat {
    loop {
        let u = Quat::new(
            rat_int(0),
            rat_int(rng.gen_range(-r..=r)),
            rat_int(rng.gen_range(-r..=r)),
            rat_int(rng.gen_range(-r..=r)),
        );
        if !u.is_zero() {
            return u;
        }
    }
}

pub fn random_nonzero<R: Rng>(rng: &mut R, r: i64) -> i64 {
    loop {
        let x = rng.gen_range(-r..=r);
        if x != 0 {
            return x;
        }
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}
