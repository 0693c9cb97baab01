//! Hilbert-Mumford weights of a (pencil, line) pair under diagonal
//! one-parameter subgroups of SL(6).
//!
//! The line contributes max{-r_i - r_j} over nonvanishing Pluecker
//! coordinates p_ij; the pencil contributes max{r_i + r_j + r_k + r_l}
//! over nonvanishing 2x2 minors of its 2x21 coefficient matrix in the
//! monomial basis x_i x_j. The signs differ between the two formulas;
//! they are validated against the worked affine values 2 - 4t, -8 + 4t
//! and -t in the tests.

use crate::error::{Error, Result};
use crate::line::ProjLine;
use crate::quadric::Pencil;
use crate::scalar::{rat_int, Field, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Diagonal one-parameter subgroup of SL(6): an integer weight vector
/// summing to zero and not identically zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OnePS {
    r: [i64; 6],
}

impl OnePS {
    pub fn new(r: [i64; 6]) -> Result<Self> {
        if r.iter().sum::<i64>() != 0 || r.iter().all(|&x| x == 0) {
            return Err(Error::BadOneParameterSubgroup);
        }
        Ok(OnePS { r })
    }

    pub fn weights(&self) -> &[i64; 6] {
        &self.r
    }

    /// Scale a rational direction with zero coordinate sum to the
    /// primitive integer vector on the same ray.
    pub fn from_rational_direction(v: &[Rat]) -> Result<Self> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, ToPrimitive};
        if v.len() != 6 {
            return Err(Error::BadOneParameterSubgroup);
        }
        let mut lcm = BigInt::one();
        for c in v {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if !g.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &g;
            }
        }
        let r: Vec<i64> = ints
            .iter()
            .map(|c| c.to_i64().ok_or(Error::BadOneParameterSubgroup))
            .collect::<Result<_>>()?;
        OnePS::new([r[0], r[1], r[2], r[3], r[4], r[5]])
    }

    pub fn negated(&self) -> Self {
        OnePS {
            r: self.r.map(|x| -x),
        }
    }

    /// Conjugate by a coordinate permutation: entry i of the result is
    /// the weight of the coordinate that permutes to position i.
    pub fn permuted(&self, perm: &[usize; 6]) -> Self {
        let mut r = [0i64; 6];
        for (i, &p) in perm.iter().enumerate() {
            r[i] = self.r[p];
        }
        OnePS { r }
    }
}

/// The finite torus data of a pair: index pairs with nonzero Pluecker
/// coordinate of the line, and index 4-multisets (sorted) arising from
/// nonvanishing 2x2 minors of the pencil's coefficient matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StateSet {
    pub line_states: BTreeSet<(usize, usize)>,
    pub pencil_states: BTreeSet<[usize; 4]>,
}

/// Pencil states alone (no line involved).
pub fn pencil_states<F: Field>(pencil: &Pencil<F>) -> BTreeSet<[usize; 4]> {
    let ca = pencil.gen_a().coeff_vector();
    let cb = pencil.gen_b().coeff_vector();
    let monomials: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i..6).map(move |j| (i, j)))
        .collect();
    let mut out = BTreeSet::new();
    for a in 0..21 {
        for b in (a + 1)..21 {
            let minor = ca[a].clone() * cb[b].clone() - ca[b].clone() * cb[a].clone();
            if minor.is_zero() {
                continue;
            }
            let (i, j) = monomials[a];
            let (k, l) = monomials[b];
            let mut key = [i, j, k, l];
            key.sort_unstable();
            out.insert(key);
        }
    }
    out
}

impl StateSet {
    pub fn of(pencil: &Pencil<Rat>, line: &ProjLine) -> Self {
        StateSet {
            line_states: line.states().into_iter().collect(),
            pencil_states: pencil_states(pencil),
        }
    }
}

/// max over line states of -(r_i + r_j); 0 for an empty state set or the
/// zero weight vector by convention.
pub fn mu_line_raw(states: &BTreeSet<(usize, usize)>, r: &[i64; 6]) -> i64 {
    states
        .iter()
        .map(|&(i, j)| -(r[i] + r[j]))
        .max()
        .unwrap_or(0)
}

/// max over pencil states of r_i + r_j + r_k + r_l.
pub fn mu_pencil_raw(states: &BTreeSet<[usize; 4]>, r: &[i64; 6]) -> i64 {
    states
        .iter()
        .map(|s| s.iter().map(|&i| r[i]).sum::<i64>())
        .max()
        .unwrap_or(0)
}

pub fn mu_line(line: &ProjLine, lam: &OnePS) -> i64 {
    let states: BTreeSet<(usize, usize)> = line.states().into_iter().collect();
    mu_line_raw(&states, lam.weights())
}

pub fn mu_pencil(pencil: &Pencil<Rat>, lam: &OnePS) -> i64 {
    mu_pencil_raw(&pencil_states(pencil), lam.weights())
}

/// The t-weight mu_pencil + t * mu_line; affine in t with integer slope
/// and intercept.
pub fn mu_t(pencil: &Pencil<Rat>, line: &ProjLine, lam: &OnePS, t: &Rat) -> Rat {
    use num_traits::Signed;
    assert!(!t.is_negative(), "t must be nonnegative");
    rat_int(mu_pencil(pencil, lam)) + t * rat_int(mu_line(line, lam))
}

/// mu_t from a precomputed state set.
pub fn mu_t_states(states: &StateSet, r: &[i64; 6], t: &Rat) -> Rat {
    rat_int(mu_pencil_raw(&states.pencil_states, r))
        + t * rat_int(mu_line_raw(&states.line_states, r))
}
