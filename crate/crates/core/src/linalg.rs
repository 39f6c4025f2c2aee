//! Dense exact linear algebra on small matrices (rows are vectors).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{pow_big, pow_rat, unit_residue};
use crate::Rat;

pub type RatMatrix = Vec<Vec<Rat>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<Rat>]) -> RatMatrix {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len())
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> RatMatrix {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|c| {
                    row.iter()
                        .zip(b.iter())
                        .fold(Rat::zero(), |acc, (x, brow)| acc + x * &brow[c])
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[Rat], m: &[Vec<Rat>]) -> Vec<Rat> {
    (0..m[0].len())
        .map(|c| {
            v.iter()
                .zip(m.iter())
                .fold(Rat::zero(), |acc, (x, row)| acc + x * &row[c])
        })
        .collect()
}

pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rat::zero();
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        let pv = a[c][c].clone();
        det *= &pv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &pv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

pub fn inverse(m: &[Vec<Rat>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m.to_vec();
    let mut inv = identity(n);
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(piv, c);
        inv.swap(piv, c);
        let pv = a[c][c].clone();
        for k in 0..n {
            a[c][k] /= &pv;
            inv[c][k] /= &pv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
                let t = &f * &inv[c][k];
                inv[r][k] -= t;
            }
        }
    }
    Some(inv)
}

/// Rows of `(Mᵀ)⁻¹`: the dual basis under the standard dot product.
pub fn dual_basis(m: &[Vec<Rat>]) -> Option<RatMatrix> {
    inverse(m).map(|inv| transpose(&inv))
}

pub fn lcm_of_denominators<'a>(entries: impl Iterator<Item = &'a Rat>) -> BigInt {
    entries.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Row-style Hermite normal form over ℤ: rows form an upper echelon basis of
/// the row span, pivots positive, entries above each pivot in `[0, pivot)`.
/// Zero rows are dropped.
pub fn hnf_upper(rows: &[Vec<BigInt>]) -> IntMatrix {
    let mut a: IntMatrix = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if a.is_empty() {
        return a;
    }
    let ncols = a[0].len();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            if a[r][c].is_zero() {
                a.swap(r, i);
                continue;
            }
            let g = a[r][c].extended_gcd(&a[i][c]);
            let (s, t) = (g.x, g.y);
            let ar = &a[r][c] / &g.gcd;
            let ai = &a[i][c] / &g.gcd;
            for k in c..ncols {
                let x = a[r][k].clone();
                let y = a[i][k].clone();
                a[r][k] = &s * &x + &t * &y;
                a[i][k] = &ar * &y - &ai * &x;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for k in c..ncols {
                a[r][k] = -a[r][k].clone();
            }
        }
        let piv = a[r][c].clone();
        for i in 0..r {
            let q = a[i][c].div_floor(&piv);
            if q.is_zero() {
                continue;
            }
            for k in c..ncols {
                let t = &q * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    a
}

/// Lower-triangular Hermite form: row `i` has its pivot in column `i` and
/// zeros to the right, each column's entries below the pivot reduced into
/// `[0, pivot)`. Obtained from [`hnf_upper`] by reversing columns and rows.
pub fn hnf_lower(rows: &[Vec<BigInt>]) -> IntMatrix {
    let rev: IntMatrix = rows
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    let mut h = hnf_upper(&rev);
    for row in h.iter_mut() {
        row.reverse();
    }
    h.reverse();
    h
}

/// Rank of an integer matrix modulo a prime, together with a reduced row
/// echelon basis of its row space over 𝔽_p.
pub fn row_space_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x % p).collect())
        .collect();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod_u64(a[r][c], p);
        for k in 0..ncols {
            a[r][k] = mul_mod(a[r][k], inv, p);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for k in 0..ncols {
                    a[i][k] = (a[i][k] + p - mul_mod(f, a[r][k], p)) % p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Basis of the kernel `{c : c·M ≡ 0 (mod p)}` of an `r × n` matrix.
pub fn left_kernel_mod_p(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let r = m.len();
    if r == 0 {
        return vec![];
    }
    let n = m[0].len();
    // Solve Mᵀ c = 0: row-reduce the n × r transpose.
    let t: Vec<Vec<u64>> = (0..n)
        .map(|c| (0..r).map(|i| m[i][c] % p).collect())
        .collect();
    let red = row_space_mod_p(&t, p);
    let pivots: Vec<usize> = red
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).unwrap())
        .collect();
    let mut basis = Vec::new();
    for free in (0..r).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; r];
        v[free] = 1;
        for (row, &pc) in red.iter().zip(pivots.iter()) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    let g = (a as i128).extended_gcd(&(p as i128));
    debug_assert_eq!(g.gcd, 1);
    g.x.rem_euclid(p as i128) as u64
}

/// Echelon form of a lattice over ℤ localized at `p`.
///
/// Rows are rational; row `i` has a pivot `p^kᵢ` in column `i` and zeros to
/// the left, and each entry above a pivot is replaced by its canonical
/// residue modulo the pivot (a `p`-adic digit string with `p`-power
/// denominator). Two generating sets span the same local lattice iff their
/// echelon forms agree. Returns `None` when the span is not full rank.
pub fn local_echelon(rows: &[Vec<Rat>], p: &BigInt) -> Option<RatMatrix> {
    let mut a: RatMatrix = rows.to_vec();
    let ncols = a.first()?.len();
    let mut pivots = Vec::with_capacity(ncols);
    for c in 0..ncols {
        let r = c;
        let best = (r..a.len())
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| local_val(&a[i][c], p))?;
        a.swap(r, best);
        let k = local_val(&a[r][c], p);
        let scale = pow_rat(p, k) / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &scale;
        }
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for col in c..ncols {
                let t = &f * &a[r][col];
                a[i][col] -= t;
            }
        }
        pivots.push(k);
    }
    a.truncate(ncols);
    for c in 0..ncols {
        let k = pivots[c];
        for i in 0..c {
            let x = a[i][c].clone();
            let res = local_residue(&x, p, k);
            if res == x {
                continue;
            }
            let f = (&x - &res) / &a[c][c];
            for col in c..ncols {
                let t = &f * &a[c][col];
                a[i][col] -= t;
            }
        }
    }
    Some(a)
}

fn local_val(x: &Rat, p: &BigInt) -> i64 {
    crate::exactnum::valuation_int(x.numer(), p) as i64
        - crate::exactnum::valuation_int(x.denom(), p) as i64
}

/// Canonical representative of `x` modulo `p^k ℤ_(p)`.
fn local_residue(x: &Rat, p: &BigInt, k: i64) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let e = local_val(x, p);
    if e >= k {
        return Rat::zero();
    }
    let unit = x / pow_rat(p, e);
    let modulus = pow_big(p, (k - e) as u32);
    Rat::from_integer(unit_residue(&unit, &modulus)) * pow_rat(p, e)
}
