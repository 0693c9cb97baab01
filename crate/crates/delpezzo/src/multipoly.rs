//! Sparse multivariate polynomials over the rationals with named variables.
//! Terms are kept in a BTreeMap keyed by exponent vectors, so iteration
//! order (and hence all derived output) is deterministic.

use crate::scalar::{fmt_rat, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Debug)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn vars_named(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn constant(vars: Arc<Vec<String>>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !Zero::is_zero(&c) {
            let n = p.nvars();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn var(vars: Arc<Vec<String>>, index: usize) -> Self {
        let mut p = MultiPoly::zero(vars);
        let n = p.nvars();
        assert!(index < n);
        let mut e = vec![0u16; n];
        e[index] = 1;
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn monomial(vars: Arc<Vec<String>>, exps: Vec<u16>, c: Rat) -> Self {
        let mut p = MultiPoly::zero(vars);
        assert_eq!(exps.len(), p.nvars());
        if !Zero::is_zero(&c) {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(
            *self.vars, *other.vars,
            "polynomials from different rings"
        );
    }

    fn insert(&mut self, e: Vec<u16>, c: Rat) {
        if Zero::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if Zero::is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if Zero::is_zero(k) {
            return MultiPoly::zero(self.vars.clone());
        }
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::constant(self.vars.clone(), Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute each variable by a polynomial of another ring.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.nvars());
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .expect("at least one variable");
        let mut acc = MultiPoly::zero(target.clone());
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(target.clone(), c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    t = t.mul(img);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = MultiPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.insert(f, c * crate::scalar::rat_int(e[i] as i64));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            let mono = mono.join("*");
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

    #[test]
    fn arithmetic_identities() {
        let vars = MultiPoly::vars_named(&["x", "y", "z"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let y = MultiPoly::var(vars.clone(), 1);
        let z = MultiPoly::var(vars.clone(), 2);
        let a = x.add(&y).mul(&z);
        let b = x.mul(&z).add(&y.mul(&z));
        assert_eq!(a, b); // distributivity
        assert_eq!(x.mul(&y), y.mul(&x)); // commutativity
        assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z))); // associativity
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn no_zero_terms_stored() {
        let vars = MultiPoly::vars_named(&["x", "y"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let p = x.sub(&x);
        assert!(p.is_zero());
        assert_eq!(p.terms().count(), 0);
    }

    #[test]
    fn eval_matches_expansion() {
        let vars = MultiPoly::vars_named(&["x", "y"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let y = MultiPoly::var(vars.clone(), 1);
        let p = x.pow(2).add(&x.mul(&y).scale(&rat_int(3)));
        let val = p.eval(&[rat_int(2), rat_int(-1)]);
        assert_eq!(val, rat_int(4 - 6));
    }

    #[test]
    fn derivative_product_rule_spot() {
        let vars = MultiPoly::vars_named(&["x", "y"]);
        let x = MultiPoly::var(vars.clone(), 0);
        let y = MultiPoly::var(vars.clone(), 1);
        let p = x.pow(2).mul(&y);
        assert_eq!(p.derivative(0), x.mul(&y).scale(&rat_int(2)));
        assert_eq!(p.derivative(1), x.pow(2));
    }
}
