//! Homogeneous binary forms in (u, v) over the rationals.
//!
//! A nonzero form of degree d is stored as d+1 coefficients, entry i
//! multiplying u^i v^(d-i). The zero form is flagged explicitly by an
//! empty coefficient list and carries no degree. Factorization works
//! through the decomposition f = u^a v^b g with g(z,1) of full degree
//! and nonzero constant term, reducing every question to univariate
//! arithmetic in z = u/v.

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, rat_int, Rat};
use crate::unipoly::{factor_squarefree, UniPoly};
use num_traits::{One, Zero};
use std::fmt;

pub const FACTOR_DEGREE_LIMIT: usize = 12;

#[derive(Clone, PartialEq, Debug)]
pub struct BinaryForm {
    coeffs: Vec<Rat>,
}

impl BinaryForm {
    pub fn zero() -> Self {
        BinaryForm { coeffs: Vec::new() }
    }

    /// Build from coefficients of u^i v^(d-i), i = 0..=d. An all-zero list
    /// collapses to the zero form.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        if coeffs.iter().all(Zero::is_zero) {
            BinaryForm::zero()
        } else {
            BinaryForm { coeffs }
        }
    }

    pub fn constant(c: Rat) -> Self {
        BinaryForm::from_coeffs(vec![c])
    }

    /// c * u^i v^j.
    pub fn monomial(c: Rat, i: usize, j: usize) -> Self {
        let mut v = vec![Rat::zero(); i + j + 1];
        v[i] = c;
        BinaryForm::from_coeffs(v)
    }

    /// a*u + b*v.
    pub fn linear(a: Rat, b: Rat) -> Self {
        BinaryForm::from_coeffs(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Homogeneous degree; `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, u_power: usize) -> Rat {
        self.coeffs.get(u_power).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn eval(&self, u: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut up = Rat::one();
        let d = match self.degree() {
            None => return acc,
            Some(d) => d,
        };
        // sum c_i u^i v^(d-i)
        let mut upows = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            upows.push(up.clone());
            up *= u;
        }
        let mut vp = Rat::one();
        for i in (0..=d).rev() {
            acc += &self.coeffs[i] * &upows[i] * &vp;
            vp *= v;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self.degree(), other.degree()) {
            (None, _) => other.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "cannot add binary forms of different degrees");
                BinaryForm::from_coeffs(
                    self.coeffs
                        .iter()
                        .zip(&other.coeffs)
                        .map(|(x, y)| x + y)
                        .collect(),
                )
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if Zero::is_zero(c) {
            return BinaryForm::zero();
        }
        BinaryForm::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BinaryForm::zero();
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
        BinaryForm::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm::constant(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading coefficient: the nonzero coefficient of the highest u-power.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.iter().rev().find(|c| !Zero::is_zero(*c))
    }

    /// Scale so the leading coefficient (highest u-power) is one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => BinaryForm::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Split off monomial factors: f = u^a v^b g(u,v) where g has nonzero
    /// coefficients at both ends; returns (a, b, g(z,1) as a univariate).
    fn strip_monomials(&self) -> (usize, usize, UniPoly) {
        assert!(!self.is_zero());
        let d = self.degree().unwrap();
        let lo = self.coeffs.iter().position(|c| !Zero::is_zero(c)).unwrap();
        let hi = self.coeffs.iter().rposition(|c| !Zero::is_zero(c)).unwrap();
        // coefficient of u^i for i in lo..=hi; u-power a = lo, v-power b = d - hi
        let core = UniPoly::from_coeffs(self.coeffs[lo..=hi].to_vec());
        (lo, d - hi, core)
    }

    fn from_unipoly(p: &UniPoly, u_shift: usize, v_shift: usize) -> Self {
        if p.is_zero() {
            return BinaryForm::zero();
        }
        let mut coeffs = vec![Rat::zero(); u_shift + p.coeffs.len() + v_shift];
        for (k, c) in p.coeffs.iter().enumerate() {
            coeffs[u_shift + k] = c.clone();
        }
        BinaryForm::from_coeffs(coeffs)
    }

    /// Homogenize a univariate polynomial to its own degree.
    pub fn homogenize(p: &UniPoly) -> Self {
        BinaryForm::from_unipoly(p, 0, 0)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if other.is_zero() {
            return true;
        }
        let (a1, b1, p1) = self.strip_monomials();
        let (a2, b2, p2) = other.strip_monomials();
        a1 <= a2 && b1 <= b2 && p1.divides(&p2)
    }

    pub fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero());
        if self.is_zero() {
            return BinaryForm::zero();
        }
        let (a1, b1, p1) = self.strip_monomials();
        let (a2, b2, p2) = other.strip_monomials();
        assert!(a2 <= a1 && b2 <= b1);
        let (q, r) = p1.div_rem(&p2);
        assert!(r.is_zero(), "not an exact division");
        BinaryForm::from_unipoly(&q, a1 - a2, b1 - b2)
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.degree() {
            None => return write!(f, "0"),
            Some(d) => d,
        };
        let mut parts = Vec::new();
        for i in (0..=d).rev() {
            let c = &self.coeffs[i];
            if Zero::is_zero(c) {
                continue;
            }
            let mono = match (i, d - i) {
                (0, 0) => String::new(),
                (a, 0) => pow_str("u", a),
                (0, b) => pow_str("v", b),
                (a, b) => format!("{}*{}", pow_str("u", a), pow_str("v", b)),
            };
            let term = if mono.is_empty() {
                fmt_rat(c)
            } else if c.is_one() {
                mono
            } else if (-c.clone()).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{}", fmt_rat(c), mono)
            };
            parts.push(term);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

fn pow_str(x: &str, e: usize) -> String {
    if e == 1 {
        x.to_string()
    } else {
        format!("{x}^{e}")
    }
}

/// Monic greatest common divisor of two binary forms.
pub fn poly_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    if f.is_zero() {
        return Ok(g.monic());
    }
    if g.is_zero() {
        return Ok(f.monic());
    }
    let (a1, b1, p1) = f.strip_monomials();
    let (a2, b2, p2) = g.strip_monomials();
    let core = p1.gcd(&p2);
    Ok(BinaryForm::from_unipoly(&core, a1.min(a2), b1.min(b2)).monic())
}

/// Squarefree decomposition: pairwise-coprime monic squarefree factors with
/// multiplicities; the product of factor^multiplicity equals the input up
/// to a nonzero rational.
pub fn squarefree_decompose(f: &BinaryForm) -> Result<Vec<(BinaryForm, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let (a, b, core) = f.strip_monomials();
    let mut by_mult: std::collections::BTreeMap<u32, BinaryForm> = std::collections::BTreeMap::new();
    let mut push = |m: u32, part: BinaryForm| {
        by_mult
            .entry(m)
            .and_modify(|acc| *acc = acc.mul(&part))
            .or_insert(part);
    };
    if a > 0 {
        push(a as u32, BinaryForm::monomial(Rat::one(), 1, 0));
    }
    if b > 0 {
        push(b as u32, BinaryForm::monomial(Rat::one(), 0, 1));
    }
    for (part, mult) in core.squarefree_decomposition() {
        push(mult, BinaryForm::homogenize(&part));
    }
    Ok(by_mult.into_iter().map(|(m, p)| (p.monic(), m)).collect())
}

/// Complete factorization into monic irreducible binary forms over the
/// rationals (Kronecker interpolation on each squarefree part). The degree
/// of the input is capped at `FACTOR_DEGREE_LIMIT`.
pub fn factor_rational(f: &BinaryForm) -> Result<Vec<(BinaryForm, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroDiscriminant);
    }
    let d = f.degree().unwrap();
    if d > FACTOR_DEGREE_LIMIT {
        return Err(Error::DegreeBound(d, FACTOR_DEGREE_LIMIT));
    }
    let (a, b, core) = f.strip_monomials();
    let mut out: Vec<(BinaryForm, u32)> = Vec::new();
    if a > 0 {
        out.push((BinaryForm::monomial(Rat::one(), 1, 0), a as u32));
    }
    if b > 0 {
        out.push((BinaryForm::monomial(Rat::one(), 0, 1), b as u32));
    }
    for (part, mult) in core.squarefree_decomposition() {
        for irr in factor_squarefree(&part) {
            out.push((BinaryForm::homogenize(&irr).monic(), mult));
        }
    }
    out.sort_by_key(|(p, m)| (p.degree(), *m, format!("{p}")));
    Ok(out)
}

/// Exact determinant of a square matrix whose (i, j) entry is the linear
/// binary form `a[i][j] u + b[i][j] v`, by signed permutation expansion.
/// For 6x6 inputs this is 720 products of six linear forms.
pub fn det_linear_pencil(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> BinaryForm {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n));
    assert_eq!(b.len(), n);
    assert!(b.iter().all(|r| r.len() == n));
    let mut total = BinaryForm::zero();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p, sign| {
        let mut prod = BinaryForm::constant(rat_int(sign as i64));
        for (i, &j) in p.iter().enumerate() {
            let entry = BinaryForm::linear(a[i][j].clone(), b[i][j].clone());
            if entry.is_zero() {
                return;
            }
            prod = prod.mul(&entry);
        }
        total = if total.is_zero() {
            prod
        } else if prod.is_zero() {
            std::mem::take(&mut total)
        } else {
            // pad degrees: both are degree n here
            total.add(&prod)
        };
    });
    total
}

impl Default for BinaryForm {
    fn default() -> Self {
        BinaryForm::zero()
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize], i32)) {
    let n = p.len();
    if k == n {
        let mut sign = 1i32;
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                t = p[t];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        visit(p, sign);
        return;
    }
    for i in k..n {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}
