//! Exact rational linear programming by two-phase primal simplex with
//! Bland's rule. Problems here are tiny (tens of rows), so a dense
//! tableau over BigRational is simple and fast enough, and termination
//! is guaranteed by the pivoting rule. The final reduced costs of the
//! artificial columns recover the dual vector, which the torus module
//! uses as a minimizing direction.

use crate::scalar::Rat;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult {
    Optimal { x: Vec<Rat>, value: Rat },
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        x: Vec<Rat>,
        value: Rat,
        /// Dual multipliers of the equality rows (signs relative to the
        /// rows as given).
        duals: Vec<Rat>,
    },
    Infeasible,
    Unbounded,
}

/// Minimize c.x subject to A x = b, x >= 0.
pub fn solve_eq_form(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpResult {
    match solve_eq_form_with_duals(a, b, c) {
        LpOutcome::Optimal { x, value, .. } => LpResult::Optimal { x, value },
        LpOutcome::Infeasible => LpResult::Infeasible,
        LpOutcome::Unbounded => LpResult::Unbounded,
    }
}

/// Minimize c.x subject to A x = b, x >= 0, also returning the dual
/// vector of the equality rows at the optimum.
///
/// Rows with negative b are flipped internally; artificial variables are
/// driven out in phase one.
pub fn solve_eq_form_with_duals(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> LpOutcome {
    let m = a.len();
    let n = if m == 0 { c.len() } else { a[0].len() };
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), m);
    assert_eq!(c.len(), n);

    // tableau: columns 0..n structural, n..n+m artificial, last column rhs
    let cols = n + m + 1;
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        flipped[i] = flip;
        let mut row: Vec<Rat> = Vec::with_capacity(cols);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i {
                Rat::from_integer(1.into())
            } else {
                Rat::zero()
            });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // phase one: minimize the sum of artificials
    let mut obj: Vec<Rat> = vec![Rat::zero(); cols];
    for j in n..n + m {
        obj[j] = Rat::from_integer(1.into());
    }
    reduce_objective(&mut obj, &t, &basis);
    if simplex(&mut t, &mut basis, &mut obj, n + m) == Exit::Unbounded {
        unreachable!("phase-one objective is bounded below by zero");
    }
    let phase1 = -obj.last().unwrap().clone();
    if !phase1.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive remaining artificials out of the basis where possible
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, &mut obj, i, j);
            }
            // a fully zero structural row is redundant; its artificial
            // stays basic at value zero and never reenters
        }
    }

    // phase two
    let mut obj2: Vec<Rat> = vec![Rat::zero(); cols];
    obj2[..n].clone_from_slice(c);
    reduce_objective(&mut obj2, &t, &basis);
    match simplex(&mut t, &mut basis, &mut obj2, n) {
        Exit::Unbounded => LpOutcome::Unbounded,
        Exit::Optimal => {
            let mut x = vec![Rat::zero(); n];
            for (i, &bj) in basis.iter().enumerate() {
                if bj < n {
                    x[bj] = t[i][cols - 1].clone();
                }
            }
            let value = -obj2.last().unwrap().clone();
            // reduced cost of artificial i is -pi_i for the flipped rows
            let duals: Vec<Rat> = (0..m)
                .map(|i| {
                    let pi = -obj2[n + i].clone();
                    if flipped[i] {
                        -pi
                    } else {
                        pi
                    }
                })
                .collect();
            LpOutcome::Optimal { x, value, duals }
        }
    }
}

#[derive(PartialEq)]
enum Exit {
    Optimal,
    Unbounded,
}

fn reduce_objective(obj: &mut [Rat], t: &[Vec<Rat>], basis: &[usize]) {
    for (i, &bj) in basis.iter().enumerate() {
        if !obj[bj].is_zero() {
            let f = obj[bj].clone();
            for (o, v) in obj.iter_mut().zip(&t[i]) {
                *o -= &f * v;
            }
        }
    }
}

fn pivot(t: &mut [Vec<Rat>], basis: &mut [usize], obj: &mut [Rat], row: usize, col: usize) {
    let inv = t[row][col].clone().recip();
    for v in t[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (o, p) in obj.iter_mut().zip(&pivot_row) {
            *o -= &f * p;
        }
    }
    basis[row] = col;
}

/// Bland's rule: entering variable is the lowest-index negative reduced
/// cost; leaving row is the ratio-test minimum with lowest basis index on
/// ties. Only columns < allowed_cols may enter.
fn simplex(t: &mut [Vec<Rat>], basis: &mut [usize], obj: &mut [Rat], allowed_cols: usize) -> Exit {
    let cols = obj.len();
    loop {
        let Some(enter) = (0..allowed_cols).find(|&j| obj[j].is_negative()) else {
            return Exit::Optimal;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = row[cols - 1].clone() / row[enter].clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else {
            return Exit::Unbounded;
        };
        pivot(t, basis, obj, row, enter);
    }
}
