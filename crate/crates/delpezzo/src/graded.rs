//! Exact rank computations for graded multiplication maps in a
//! polynomial ring with four variables.
//!
//! The workhorse certifies ranks with modular arithmetic: a rank over a
//! prime field is a lower bound for the rank over Q (a nonzero minor mod
//! p is nonzero over Q), and a modular rank of explicitly constructed
//! kernel vectors bounds the kernel from below, hence the rank from
//! above. When the two bounds meet, the rank is exact; otherwise a
//! fraction-free integer elimination settles it.

use crate::multipoly::MultiPoly;
use crate::scalar::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::collections::BTreeMap;

pub const PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

/// Exponent vectors of total degree d in `nvars` variables, in
/// lexicographic order; empty for negative degrees encoded by usize
/// callers.
pub fn monomials(nvars: usize, d: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(k: usize, rem: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if k + 1 == cur.len() {
            cur[k] = rem as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[k] = e as u16;
            rec(k + 1, rem - e, cur, out);
        }
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Monomial count of degree d in 4 variables: C(d + 3, 3), zero for
/// negative d.
pub fn dim_degree(d: i64) -> i64 {
    binom(d + 3, 3)
}

fn modinv(a: u64, p: u64) -> u64 {
    // Fermat: p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rat_mod(r: &Rat, p: u64) -> Option<u64> {
    let pm = BigInt::from(p);
    let num = ((r.numer() % &pm) + &pm) % &pm;
    let den = ((r.denom() % &pm) + &pm) % &pm;
    let d = den.to_u64()?;
    if d == 0 {
        return None;
    }
    let n = num.to_u64()?;
    Some(n * modinv(d, p) % p)
}

fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for c in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = modinv(m[rank][c], p);
        for j in c..ncols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        let prow = m[rank].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != rank && r[c] != 0 {
                let f = r[c];
                for j in c..ncols {
                    r[j] = (r[j] + (p - f) * prow[j] % p) % p;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over Q by fraction-free integer elimination with row
/// primitivization. Used as the exact fallback.
fn rank_exact(rows: Vec<Vec<BigInt>>) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(primitivize)
        .collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for c in 0..ncols {
        // sparsest pivot row among those with nonzero entry in column c
        let mut best: Option<(usize, usize)> = None;
        for i in rank..m.len() {
            if !m[i][c].is_zero() {
                let nnz = m[i].iter().filter(|x| !x.is_zero()).count();
                if best.is_none_or(|(_, b)| nnz < b) {
                    best = Some((i, nnz));
                }
            }
        }
        let Some((pr, _)) = best else { continue };
        m.swap(rank, pr);
        let (head, tail) = m.split_at_mut(rank + 1);
        let prow = head[rank].clone();
        for r in tail.iter_mut() {
            if !r[c].is_zero() {
                let a = prow[c].clone();
                let b = r[c].clone();
                for j in 0..ncols {
                    r[j] = &r[j] * &a - &prow[j] * &b;
                }
                *r = primitivize(std::mem::take(r));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn primitivize(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &row {
        g = g.gcd(x);
        if g == BigInt::from(1) {
            return row;
        }
    }
    if g.is_zero() || g == BigInt::from(1) {
        return row;
    }
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
    row
}

fn clear_row(coeffs: &BTreeMap<usize, Rat>, ncols: usize) -> Vec<BigInt> {
    use num_traits::One;
    let mut den = BigInt::one();
    for c in coeffs.values() {
        den = den.lcm(c.denom());
    }
    let mut out = vec![BigInt::zero(); ncols];
    for (&j, c) in coeffs {
        out[j] = c.numer() * (&den / c.denom());
    }
    out
}

/// A sparse rational matrix given by rows of (column, value) maps, with
/// certified exact rank computation.
pub struct GradedMatrix {
    pub ncols: usize,
    pub rows: Vec<BTreeMap<usize, Rat>>,
}

impl GradedMatrix {
    pub fn rank_lower_bound_mod_p(&self) -> usize {
        'prime: for &p in &PRIMES {
            let mut dense = Vec::with_capacity(self.rows.len());
            for row in &self.rows {
                let mut v = vec![0u64; self.ncols];
                for (&j, c) in row {
                    match rat_mod(c, p) {
                        Some(x) => v[j] = x,
                        None => continue 'prime,
                    }
                }
                dense.push(v);
            }
            return rank_mod_p(&dense, p);
        }
        0
    }

    pub fn rank_exact(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .map(|r| clear_row(r, self.ncols))
            .collect();
        rank_exact(rows)
    }
}

/// Multiplication rows of a generator in degree d: one row per monomial
/// of degree d - deg(g), with columns indexed into the degree-d basis.
pub fn multiplication_rows(
    g: &MultiPoly,
    d: usize,
    basis_index: &BTreeMap<Vec<u16>, usize>,
) -> Vec<BTreeMap<usize, Rat>> {
    let Some(dg) = g.total_degree() else {
        return Vec::new();
    };
    let dg = dg as usize;
    if d < dg {
        return Vec::new();
    }
    let mut rows = Vec::new();
    for m in monomials(4, d - dg) {
        let mut row = BTreeMap::new();
        for (e, c) in g.terms() {
            let key: Vec<u16> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
            let j = basis_index[&key];
            let entry = row.entry(j).or_insert_with(Rat::zero);
            *entry += c;
        }
        row.retain(|_, v: &mut Rat| !v.is_zero());
        rows.push(row);
    }
    rows
}
