//! Exact field scalars: arbitrary-precision rationals and the degree-4
//! cyclotomic extension generated by a primitive 5th root of unity.
//!
//! Rationals are stored in lowest terms with positive denominator (the
//! `num_rational` normal form). Cyclotomic elements are reduced
//! representatives of degree <= 3 modulo z^4 + z^3 + z^2 + z + 1.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse an exact rational written as "p", "-p" or "p/q".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::BadNumber(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Render a rational as "p/q", or plain "p" when the denominator is one.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Minimal field interface shared by the rationals and the cyclotomic
/// extension. All operations are exact; arithmetic goes through the
/// standard operator traits.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        rat_int(n)
    }
}

/// Element of Q(zeta_5), stored as c0 + c1 z + c2 z^2 + c3 z^3 with
/// z^4 = -(z^3 + z^2 + z + 1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyc5 {
    c: [Rat; 4],
}

impl Cyc5 {
    pub fn new(c: [Rat; 4]) -> Self {
        Cyc5 { c }
    }

    pub fn from_rat(r: Rat) -> Self {
        Cyc5::new([r, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    /// The primitive 5th root of unity z.
    pub fn zeta() -> Self {
        Cyc5::new([Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()])
    }

    /// z^k for any integer exponent.
    pub fn zeta_pow(k: i64) -> Self {
        let mut acc = Cyc5::one();
        let e = k.rem_euclid(5);
        for _ in 0..e {
            acc = acc * Cyc5::zeta();
        }
        acc
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.c
    }

    /// Reduce a coefficient list of z^0..z^k (k <= 7 suffices for products
    /// of reduced representatives) modulo the 5th cyclotomic polynomial.
    fn reduce(mut v: Vec<Rat>) -> Self {
        while v.len() > 4 {
            let top = v.pop().unwrap();
            if !top.is_zero() {
                let k = v.len(); // the removed term was z^k, k >= 4
                if k >= 5 {
                    // z^5 = 1
                    v[k - 5] += top;
                } else {
                    // z^4 = -(1 + z + z^2 + z^3)
                    for item in v.iter_mut().take(4) {
                        *item -= top.clone();
                    }
                }
            }
        }
        while v.len() < 4 {
            v.push(Rat::zero());
        }
        Cyc5::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }
}

impl Add for Cyc5 {
    type Output = Cyc5;
    fn add(self, rhs: Cyc5) -> Cyc5 {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        Cyc5::new(c)
    }
}

impl Sub for Cyc5 {
    type Output = Cyc5;
    fn sub(self, rhs: Cyc5) -> Cyc5 {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        Cyc5::new(c)
    }
}

impl Mul for Cyc5 {
    type Output = Cyc5;
    fn mul(self, rhs: Cyc5) -> Cyc5 {
        let mut v = vec![Rat::zero(); 7];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] += a * b;
            }
        }
        Cyc5::reduce(v)
    }
}

impl Neg for Cyc5 {
    type Output = Cyc5;
    fn neg(self) -> Cyc5 {
        Cyc5::new(self.c.map(|x| -x))
    }
}

impl Zero for Cyc5 {
    fn zero() -> Self {
        Cyc5::from_rat(Rat::zero())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for Cyc5 {
    fn one() -> Self {
        Cyc5::from_rat(Rat::one())
    }
}

impl fmt::Display for Cyc5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if var.is_empty() {
                parts.push(fmt_rat(c));
            } else if c.is_one() {
                parts.push(var);
            } else if (-c.clone()).is_one() {
                parts.push(format!("-{var}"));
            } else {
                parts.push(format!("{}*{}", fmt_rat(c), var));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
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

impl Field for Cyc5 {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Solve (self * x) = 1 as a 4x4 rational linear system in the
        // coefficients of x, via the multiplication-by-self matrix.
        let mut cols = Vec::with_capacity(4);
        for k in 0..4 {
            let mut basis = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
            basis[k] = Rat::one();
            cols.push(self.clone() * Cyc5::new(basis));
        }
        let mut m = vec![vec![Rat::zero(); 5]; 4];
        for (r, row) in m.iter_mut().enumerate() {
            for (k, col) in cols.iter().enumerate() {
                row[k] = col.c[r].clone();
            }
            row[4] = if r == 0 { Rat::one() } else { Rat::zero() };
        }
        let mut piv_row = 0usize;
        for col in 0..4 {
            let Some(p) = (piv_row..4).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(piv_row, p);
            let inv = m[piv_row][col].clone().recip();
            for k in col..5 {
                m[piv_row][k] = m[piv_row][k].clone() * inv.clone();
            }
            for r in 0..4 {
                if r != piv_row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..5 {
                        let delta = f.clone() * m[piv_row][k].clone();
                        m[r][k] = m[r][k].clone() - delta;
                    }
                }
            }
            piv_row += 1;
        }
        if piv_row < 4 {
            return None;
        }
        Some(Cyc5::new([
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ]))
    }
    fn from_int(n: i64) -> Self {
        Cyc5::from_rat(rat_int(n))
    }
}

/// Parse a cyclotomic element written as a polynomial in z, e.g.
/// "1/2*z^3 - z + 2". Plain rationals parse as constants.
pub fn parse_cyc5(s: &str) -> Result<Cyc5> {
    let bad = || Error::BadNumber(s.to_string());
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.is_empty() && !cur.ends_with('/') && !cur.ends_with('*') {
            terms.push(cur.clone());
            cur.clear();
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    let mut acc = Cyc5::zero();
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1i64, b.to_string()),
            None => (1i64, t.trim_start_matches('+').to_string()),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let (coef_str, pow) = if let Some(idx) = body.find('z') {
            let (c, zpart) = body.split_at(idx);
            let c = c.trim_end_matches('*');
            let pow = if let Some(p) = zpart.strip_prefix("z^") {
                p.parse::<u32>().map_err(|_| bad())?
            } else if zpart == "z" {
                1
            } else {
                return Err(bad());
            };
            (if c.is_empty() { "1" } else { c }.to_string(), pow)
        } else {
            (body, 0)
        };
        if pow > 3 {
            return Err(Error::BadNumber(format!(
                "{s}: exponent {pow} exceeds the reduced degree 3"
            )));
        }
        let coef = parse_rat(&coef_str)? * rat_int(sign);
        let mut c = [Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()];
        c[pow as usize] = coef;
        acc = acc + Cyc5::new(c);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normal_form() {
        let a = rat(2, -4);
        assert_eq!(a, rat(-1, 2));
        assert_eq!(fmt_rat(&a), "-1/2");
        assert_eq!(fmt_rat(&rat(6, 3)), "2");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["15/194", "-8", "0", "2/4"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn zeta_has_order_five() {
        let z = Cyc5::zeta();
        let mut p = Cyc5::one();
        for _ in 0..5 {
            p = p * z.clone();
        }
        assert_eq!(p, Cyc5::one());
        // 1 + z + z^2 + z^3 + z^4 = 0
        let mut s = Cyc5::zero();
        for k in 0..5 {
            s = s + Cyc5::zeta_pow(k);
        }
        assert!(s.is_zero());
    }

    #[test]
    fn cyc5_field_axioms_spotcheck() {
        let z = Cyc5::zeta();
        let a = z.clone() + Cyc5::from_int(2);
        let b = z.clone() * z.clone() - Cyc5::from_int(1);
        assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        let ai = a.inv().unwrap();
        assert_eq!(a * ai, Cyc5::one());
        // a/a = 1 for several nonzero a
        for k in 1..5 {
            let a = Cyc5::zeta_pow(k) + Cyc5::from_int(k);
            let ai = a.inv().unwrap();
            assert_eq!(a * ai, Cyc5::one());
        }
        assert!(Cyc5::zero().inv().is_none());
    }

    #[test]
    fn parse_cyc5_terms() {
        let e = parse_cyc5("1/2*z^3 - z + 2").unwrap();
        assert_eq!(e.coeffs()[0], rat_int(2));
        assert_eq!(e.coeffs()[1], rat_int(-1));
        assert_eq!(e.coeffs()[3], rat(1, 2));
        assert_eq!(parse_cyc5("-3/4").unwrap().coeffs()[0], rat(-3, 4));
        assert!(parse_cyc5("z^4").is_err());
    }
}
