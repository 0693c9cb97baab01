//! Univariate exact polynomial helpers over the rationals: Euclidean gcd,
//! Yun squarefree decomposition, and Kronecker factorization into rational
//! irreducibles. Degrees in this crate never exceed 12, so Kronecker's
//! interpolation search is entirely adequate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{rat_int, Rat};

/// Dense univariate polynomial; `coeffs[k]` multiplies z^k. The zero
/// polynomial is the empty list; otherwise the leading coefficient is
/// nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rat::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * rat_int(k as i64 + 1))
                .collect(),
        )
    }

    /// Euclidean division: self = q * div + r with deg r < deg div.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut q = vec![
            Rat::zero();
            self.coeffs
                .len()
                .saturating_sub(div.coeffs.len())
                .saturating_add(1)
        ];
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let f = rem.leading().unwrap() * &lead_inv;
            let shift = dr - dd;
            q[shift] = f.clone();
            let mut new = rem.coeffs.clone();
            for (k, c) in div.coeffs.iter().enumerate() {
                new[k + shift] -= &f * c;
            }
            rem = UniPoly::from_coeffs(new);
        }
        (UniPoly::from_coeffs(q), rem)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: pairwise-coprime monic squarefree
    /// parts with their multiplicities, the product of part^mult matching
    /// the input up to a nonzero constant. Parts of multiplicity m with
    /// trivial content are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        assert!(!self.is_zero());
        let f = self.monic();
        if f.degree() == Some(0) {
            return Vec::new();
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut mult = 1u32;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), mult));
            }
            b = b.div_rem(&a).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            mult += 1;
        }
        out
    }
}

/// Clear denominators and content: returns the primitive integer
/// coefficient vector of a nonzero polynomial, with positive leading
/// coefficient.
fn primitive_int(p: &UniPoly) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for c in &p.coeffs {
        den = den.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
    }
    if ints.last().is_some_and(|c| c.is_negative()) {
        for c in ints.iter_mut() {
            *c = -&*c;
        }
    }
    ints
}

fn divisors_with_sign(n: &BigInt) -> Vec<BigInt> {
    use num_traits::ToPrimitive;
    let n = n.abs();
    let mut small = Vec::new();
    let mut big = Vec::new();
    if let Some(nu) = n.to_u64() {
        let mut d = 1u64;
        while d.saturating_mul(d) <= nu {
            if nu % d == 0 {
                small.push(BigInt::from(d));
                let q = nu / d;
                if q != d {
                    big.push(BigInt::from(q));
                }
            }
            d += 1;
        }
    } else {
        let mut d = BigInt::one();
        loop {
            let dsq = &d * &d;
            if dsq > n {
                break;
            }
            if (&n % &d).is_zero() {
                small.push(d.clone());
                let q = &n / &d;
                if q != d {
                    big.push(q);
                }
            }
            d += 1;
        }
    }
    big.reverse();
    small.extend(big);
    let mut out = Vec::with_capacity(small.len() * 2);
    for d in small {
        out.push(d.clone());
        out.push(-d);
    }
    out
}

/// Degree multiset of the irreducible factors of f modulo p, by
/// distinct-degree factorization over the prime field; `None` when p
/// divides the leading coefficient or f is not squarefree mod p.
///
/// Polynomials over the prime field are coefficient vectors with
/// nonzero leading entry; the zero polynomial is [0].
fn degree_pattern_mod_p(ints: &[BigInt], p: u64) -> Option<Vec<usize>> {
    let pm = BigInt::from(p);
    let f: Vec<u64> = ints
        .iter()
        .map(|c| {
            use num_traits::ToPrimitive;
            (((c % &pm) + &pm) % &pm).to_u64().unwrap()
        })
        .collect();
    let n = f.len() - 1;
    if f[n] == 0 {
        return None;
    }
    let trim = |mut r: Vec<u64>| -> Vec<u64> {
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
        r
    };
    let is_zero = |r: &[u64]| r.len() == 1 && r[0] == 0;
    let rem = |a: &[u64], m: &[u64]| -> Vec<u64> {
        debug_assert!(!is_zero(m));
        let dm = m.len() - 1;
        if dm == 0 {
            return vec![0];
        }
        let inv = pow_mod_u64(m[dm], p - 2, p);
        let mut r = trim(a.to_vec());
        while r.len() > dm {
            let lead = *r.last().unwrap() % p;
            if lead != 0 {
                let c = lead * inv % p;
                let shift = r.len() - 1 - dm;
                for (k, &mc) in m.iter().enumerate() {
                    let t = c * mc % p;
                    let idx = shift + k;
                    r[idx] = (r[idx] + p - t) % p;
                }
            }
            r.pop();
            r = trim(r);
        }
        trim(r)
    };
    let mulmod = |a: &[u64], b: &[u64], m: &[u64]| -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m)
    };
    let gcd_p = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !is_zero(&y) {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        x
    };
    let divide = |num: &[u64], den: &[u64]| -> Vec<u64> {
        // exact division over the prime field
        let inv = pow_mod_u64(*den.last().unwrap(), p - 2, p);
        let mut r = num.to_vec();
        let mut quot = vec![0u64; num.len() - den.len() + 1];
        while r.len() >= den.len() && !is_zero(&r) {
            let lead = *r.last().unwrap();
            let shift = r.len() - den.len();
            let c = lead * inv % p;
            quot[shift] = c;
            for (k, &gc) in den.iter().enumerate() {
                let t = c * gc % p;
                r[shift + k] = (r[shift + k] + p - t) % p;
            }
            r.pop();
            r = trim(r);
        }
        trim(quot)
    };
    // squarefree check: gcd(f, f') constant
    let df: Vec<u64> = (1..=n).map(|k| (k as u64 % p) * f[k] % p).collect();
    let df = trim(df);
    if is_zero(&df) {
        return None;
    }
    let g = gcd_p(&f, &df);
    if g.len() > 1 {
        return None;
    }
    // distinct-degree: h = x; repeat h <- h^p mod rest; gcd(h - x, rest)
    let mut pattern = Vec::new();
    let mut rest = f.clone();
    let mut h = rem(&[0u64, 1], &rest); // x mod rest
    let mut d = 0usize;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            pattern.push(rest.len() - 1);
            break;
        }
        // h = h^p mod rest
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, &rest);
            }
            base = mulmod(&base, &base, &rest);
            e >>= 1;
        }
        h = acc;
        // gcd(h - x, rest)
        let mut hx = h.clone();
        if hx.len() < 2 {
            hx.resize(2, 0);
        }
        hx[1] = (hx[1] + p - 1) % p;
        let hx = trim(hx);
        let g = if is_zero(&hx) { rest.clone() } else { gcd_p(&rest, &hx) };
        if g.len() > 1 {
            let deg = g.len() - 1;
            for _ in 0..deg / d {
                pattern.push(d);
            }
            rest = divide(&rest, &g);
            if rest.len() - 1 == 0 {
                break;
            }
            h = rem(&h, &rest);
        }
    }
    Some(pattern)
}

fn pow_mod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Degrees a rational factor can have, from subset sums of modular
/// degree patterns intersected over several primes. Always contains 0
/// and the full degree.
fn feasible_factor_degrees(ints: &[BigInt], n: usize) -> Vec<bool> {
    let mut feasible = vec![true; n + 1];
    let mut used = 0;
    for &p in &[5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        if used == 4 {
            break;
        }
        let Some(pattern) = degree_pattern_mod_p(ints, p) else {
            continue;
        };
        used += 1;
        // subset sums of the pattern
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for d in pattern {
            for s in (0..=n.saturating_sub(d)).rev() {
                if sums[s] {
                    sums[s + d] = true;
                }
            }
        }
        for k in 0..=n {
            feasible[k] = feasible[k] && sums[k];
        }
    }
    feasible
}

/// Smallest-degree monic rational factor of a squarefree polynomial with
/// nonzero constant term, or `None` when irreducible. Kronecker's method
/// finds the factor: a degree-k factor is determined by its values at
/// k+1 integer points, which divide the corresponding values of the
/// input. Modular degree patterns prune the search to feasible degrees.
fn kronecker_smallest_factor(p: &UniPoly) -> Option<UniPoly> {
    let n = p.degree().unwrap();
    if n <= 1 {
        return None;
    }
    let ints = primitive_int(p);
    let pz = UniPoly::from_coeffs(ints.iter().map(|c| Rat::from_integer(c.clone())).collect());
    let feasible = feasible_factor_degrees(&ints, n);

    // Degree-1 factors via the rational root theorem.
    if feasible[1] {
        let c0 = &ints[0];
        let cl = &ints[n];
        for r in divisors_with_sign(c0) {
            for s in divisors_with_sign(cl) {
                if s.is_negative() {
                    continue;
                }
                if r.gcd(&s) != BigInt::one() {
                    continue;
                }
                let root = Rat::new(r.clone(), s.clone());
                if Zero::is_zero(&pz.eval(&root)) {
                    return Some(UniPoly::from_coeffs(vec![-root, Rat::one()]));
                }
            }
        }
    }

    // Higher-degree factors by interpolation; points are chosen among
    // 0, 1, -1, 2, -2, 3, -3 preferring the fewest divisor candidates.
    let all_points: Vec<i64> = vec![0, 1, -1, 2, -2, 3, -3];
    let evaluations: Vec<(i64, BigInt)> = all_points
        .iter()
        .map(|&x| {
            let v = pz.eval(&rat_int(x));
            debug_assert!(v.denom().is_one());
            (x, v.numer().clone())
        })
        .collect();
    if evaluations.iter().any(|(_, v)| v.is_zero()) {
        // an integer root escaped the feasibility filter only if the
        // rational-root scan was pruned; rerun it unconditionally
        for (x, v) in &evaluations {
            if v.is_zero() {
                return Some(UniPoly::from_coeffs(vec![rat_int(-x), Rat::one()]));
            }
        }
    }
    let mut divisor_lists: Vec<(i64, Vec<BigInt>)> = evaluations
        .iter()
        .map(|(x, v)| (*x, divisors_with_sign(v)))
        .collect();
    divisor_lists.sort_by_key(|(x, d)| (d.len(), x.abs(), *x < 0));
    for k in 2..=(n / 2) {
        if !feasible[k] {
            continue;
        }
        let chosen = &divisor_lists[..=k];
        let xs: Vec<i64> = chosen.iter().map(|(x, _)| *x).collect();
        let mut idx = vec![0usize; k + 1];
        'outer: loop {
            // fix the first value positive: factors come in +/- pairs
            let candidate_vals: Vec<BigInt> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| chosen[i].1[j].clone())
                .collect();
            if !candidate_vals[0].is_negative() {
                if let Some(q) = interpolate_integer_poly(&xs, &candidate_vals, k) {
                    if q.degree() == Some(k) && q.divides(&pz) {
                        return Some(q.monic());
                    }
                }
            }
            for pos in (0..=k).rev() {
                idx[pos] += 1;
                if idx[pos] < chosen[pos].1.len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
    None
}

/// Lagrange interpolation through (xs[i], vals[i]); returns the polynomial
/// only if all coefficients are integers (a rational factor of an integer
/// polynomial is proportional to an integer one).
fn interpolate_integer_poly(xs: &[i64], vals: &[BigInt], deg: usize) -> Option<UniPoly> {
    let mut acc = UniPoly::zero();
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = UniPoly::constant(Rat::one());
        let mut denom = Rat::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_coeffs(vec![rat_int(-xj), Rat::one()]));
            denom *= rat_int(xi - xj);
        }
        let w = Rat::from_integer(vals[i].clone()) / denom;
        acc = acc.add(&basis.scale(&w));
    }
    if acc.degree() != Some(deg) {
        return None;
    }
    if acc.coeffs.iter().all(|c| c.denom().is_one()) {
        Some(acc)
    } else {
        None
    }
}

/// Complete factorization of a squarefree polynomial with nonzero constant
/// term into monic rational irreducibles.
pub fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut rest = p.monic();
    while rest.degree().unwrap_or(0) >= 1 {
        match kronecker_smallest_factor(&rest) {
            Some(f) => {
                rest = rest.div_rem(&f).0;
                out.push(f);
            }
            None => {
                out.push(rest.clone());
                break;
            }
        }
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| format!("{:?}", a.coeffs).cmp(&format!("{:?}", b.coeffs)))
    });
    out
}
