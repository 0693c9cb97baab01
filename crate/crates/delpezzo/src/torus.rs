//! Exact torus (semi)stability of a (pencil, line) pair at a parameter t.
//!
//! The t-weight mu^t(r) = max over pencil states <v, r> + t * max over
//! line states <w, r> is the support function of the Minkowski sum
//! Conv(V_P) + t Conv(V_L) at r. Its minimum over the box [-1,1]^6
//! intersected with {sum r = 0} is an exact rational LP in l1-regression
//! form: the minimum equals -min |z - sigma*(1,..,1)|_1 over z in the
//! Minkowski sum, so torus-semistability (minimum zero) is exactly the
//! feasibility of convex multipliers making all six coordinates of z
//! equal. All optimizations over the optimal face (stability checks,
//! canonical directions, lexicographic refinements) are solved through
//! hand-dualized programs with eight rows, so the cost scales with the
//! number of states only linearly.

use crate::error::Result;
use crate::line::ProjLine;
use crate::lp::{solve_eq_form_with_duals, LpOutcome};
use crate::quadric::Pencil;
use crate::scalar::{rat_int, Rat};
use crate::weights::{mu_line_raw, mu_pencil_raw, OnePS, StateSet};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TorusStatus {
    /// mu^t > 0 for every nontrivial diagonal 1-PS.
    Stable,
    /// mu^t >= 0 with equality away from zero.
    Semistable,
    /// Some diagonal 1-PS has negative weight.
    Unstable,
}

/// Convex multipliers witnessing torus semistability: the combination of
/// state vectors sum_v x_v v + t sum_w y_w w has all six coordinates
/// equal to `level`.
#[derive(Clone, PartialEq, Debug)]
pub struct SsWitness {
    pub pencil_multipliers: Vec<([usize; 4], Rat)>,
    pub line_multipliers: Vec<((usize, usize), Rat)>,
    pub level: Rat,
}

impl SsWitness {
    /// Re-verify: multipliers are nonnegative, sum to one on each side,
    /// and the combination has all coordinates equal to the level.
    pub fn verify(&self, t: &Rat) -> bool {
        let mut z = vec![Rat::zero(); 6];
        let mut sx = Rat::zero();
        let mut sy = Rat::zero();
        for (s, x) in &self.pencil_multipliers {
            if x.is_negative() {
                return false;
            }
            sx += x;
            for &i in s {
                z[i] += x;
            }
        }
        for ((i, j), y) in &self.line_multipliers {
            if y.is_negative() {
                return false;
            }
            sy += y;
            z[*i] -= t * y;
            z[*j] -= t * y;
        }
        sx.is_one() && sy.is_one() && z.iter().all(|c| *c == self.level)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TorusVerdict {
    pub status: TorusStatus,
    pub t: Rat,
    /// Minimum of mu^t over the box [-1,1]^6 with zero coordinate sum.
    pub min_value: Rat,
    /// A canonical nonzero optimal direction, cleared to coprime
    /// integers: present for Unstable (a destabilizer) and Semistable
    /// (a direction attaining zero).
    pub direction: Option<OnePS>,
    pub ss_witness: Option<SsWitness>,
}

struct Sizes {
    np: usize,
    nl: usize,
}

/// The l1-form LP: minimize sum(p_i + n_i) over
///     sum_v x_v v + t * sum_w y_w w - sigma * 1 = p - n,
///     sum x = 1, sum y = 1, all variables >= 0 except sigma (split).
/// Column order: x[np], y[nl], sigma+, sigma-, p[6], n[6].
fn l1_problem(states: &StateSet, t: &Rat) -> (Vec<Vec<Rat>>, Vec<Rat>, Vec<Rat>, Sizes) {
    let pstates: Vec<&[usize; 4]> = states.pencil_states.iter().collect();
    let lstates: Vec<&(usize, usize)> = states.line_states.iter().collect();
    let np = pstates.len();
    let nl = lstates.len();
    let ncols = np + nl + 2 + 12;
    let mut rows = vec![vec![Rat::zero(); ncols]; 8];
    let mut rhs = vec![Rat::zero(); 8];
    for (k, s) in pstates.iter().enumerate() {
        for &i in s.iter() {
            rows[i][k] += Rat::one();
        }
        rows[6][k] = Rat::one();
    }
    for (k, (i, j)) in lstates.iter().enumerate() {
        rows[*i][np + k] -= t;
        rows[*j][np + k] -= t;
        rows[7][np + k] = Rat::one();
    }
    for i in 0..6 {
        rows[i][np + nl] = -Rat::one(); // sigma+
        rows[i][np + nl + 1] = Rat::one(); // sigma-
        rows[i][np + nl + 2 + i] = -Rat::one(); // p_i
        rows[i][np + nl + 8 + i] = Rat::one(); // n_i
    }
    rhs[6] = Rat::one();
    rhs[7] = Rat::one();
    let mut obj = vec![Rat::zero(); ncols];
    for k in 0..12 {
        obj[np + nl + 2 + k] = Rat::one();
    }
    (rows, rhs, obj, Sizes { np, nl })
}

/// Minimum of mu^t over the box, a minimizing direction (as a rational
/// box vector), and the semistability witness when the minimum is zero.
fn min_mu_box(states: &StateSet, t: &Rat) -> (Rat, Vec<Rat>, Option<SsWitness>) {
    let (rows, rhs, obj, sz) = l1_problem(states, t);
    let out = solve_eq_form_with_duals(&rows, &rhs, &obj);
    let LpOutcome::Optimal { x, value, duals } = out else {
        unreachable!("the l1 problem is feasible and bounded");
    };
    let min_value = -value;
    let r: Vec<Rat> = duals[..6].to_vec();
    debug_assert!(r.iter().sum::<Rat>().is_zero());
    debug_assert!(r.iter().all(|c| c.abs() <= Rat::one()));
    let witness = if min_value.is_zero() {
        let sigma = x[sz.np + sz.nl].clone() - x[sz.np + sz.nl + 1].clone();
        let pm: Vec<([usize; 4], Rat)> = states
            .pencil_states
            .iter()
            .zip(&x[..sz.np])
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (*s, v.clone()))
            .collect();
        let lm: Vec<((usize, usize), Rat)> = states
            .line_states
            .iter()
            .zip(&x[sz.np..sz.np + sz.nl])
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (*s, v.clone()))
            .collect();
        Some(SsWitness {
            pencil_multipliers: pm,
            line_multipliers: lm,
            level: sigma,
        })
    } else {
        None
    };
    (min_value, r, witness)
}

/// Linear optimization over the optimal face
///   F = { (r, alpha, beta) : <v,r> <= alpha, <w,r> <= beta,
///         alpha + t beta <= bound, r in [-1,1]^6, sum r = 0 }
/// intersected with accumulated equalities, solved through the dual so
/// the tableau has eight rows regardless of the number of states.
/// Objectives and equality rows are vectors over (r0..r5, alpha, beta).
struct FaceLp<'a> {
    states: &'a StateSet,
    t: Rat,
    bound: Rat,
    extras: Vec<([Rat; 8], Rat)>,
}

impl<'a> FaceLp<'a> {
    fn new(states: &'a StateSet, t: &Rat, bound: &Rat) -> Self {
        FaceLp {
            states,
            t: t.clone(),
            bound: bound.clone(),
            extras: Vec::new(),
        }
    }

    fn add_eq(&mut self, coeffs: [Rat; 8], rhs: Rat) {
        self.extras.push((coeffs, rhs));
    }

    /// Maximize c . (r, alpha, beta) over the restricted face; returns
    /// the maximum and an optimal point.
    fn maximize(&self, c: &[Rat; 8]) -> (Rat, [Rat; 8]) {
        let np = self.states.pencil_states.len();
        let nl = self.states.line_states.len();
        let ne = self.extras.len();
        // columns: x[np], y[nl], s, p[6], n[6], sigma+-, (mu_k+-) * ne
        let ncols = np + nl + 1 + 12 + 2 + 2 * ne;
        let mut rows = vec![vec![Rat::zero(); ncols]; 8];
        for (k, s) in self.states.pencil_states.iter().enumerate() {
            for &i in s.iter() {
                rows[i][k] += Rat::one();
            }
            rows[6][k] = -Rat::one(); // alpha row
        }
        for (k, (i, j)) in self.states.line_states.iter().enumerate() {
            rows[*i][np + k] -= Rat::one();
            rows[*j][np + k] -= Rat::one();
            rows[7][np + k] = -Rat::one(); // beta row
        }
        let s_col = np + nl;
        rows[6][s_col] = Rat::one();
        rows[7][s_col] = self.t.clone();
        for j in 0..6 {
            rows[j][s_col + 1 + j] = Rat::one(); // p_j
            rows[j][s_col + 7 + j] = -Rat::one(); // n_j
        }
        let sig = s_col + 13;
        for j in 0..6 {
            rows[j][sig] = Rat::one();
            rows[j][sig + 1] = -Rat::one();
        }
        for (k, (g, _)) in self.extras.iter().enumerate() {
            let col = sig + 2 + 2 * k;
            for (j, row) in rows.iter_mut().enumerate() {
                row[col] = g[j].clone();
                row[col + 1] = -g[j].clone();
            }
        }
        let b: Vec<Rat> = c.to_vec();
        let mut obj = vec![Rat::zero(); ncols];
        obj[s_col] = self.bound.clone();
        for j in 0..12 {
            obj[s_col + 1 + j] = Rat::one();
        }
        for (k, (_, h)) in self.extras.iter().enumerate() {
            let col = sig + 2 + 2 * k;
            obj[col] = h.clone();
            obj[col + 1] = -h.clone();
        }
        match solve_eq_form_with_duals(&rows, &b, &obj) {
            LpOutcome::Optimal { value, duals, .. } => {
                let z: [Rat; 8] = duals.try_into().expect("eight rows");
                (value, z)
            }
            other => unreachable!("face program is solvable: {other:?}"),
        }
    }

    fn maximize_r(&self, c: &[Rat; 6]) -> (Rat, [Rat; 8]) {
        let mut full = [
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ];
        full[..6].clone_from_slice(c);
        self.maximize(&full)
    }

    fn pin_r(&mut self, i: usize, value: Rat) {
        let mut g: [Rat; 8] = Default::default();
        g[i] = Rat::one();
        self.add_eq(g, value);
    }
}

fn unit_obj(i: usize, sign: i64) -> [Rat; 6] {
    let mut c = [
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
        Rat::zero(),
    ];
    c[i] = rat_int(sign);
    c
}

/// Lexicographically extreme r over the restricted face: optimize the
/// coordinates in index order, pinning each optimum before the next.
fn lex_point(lp: &mut FaceLp, sign: i64) -> [Rat; 6] {
    let mut out: [Rat; 6] = Default::default();
    for i in 0..6 {
        let (v, _) = lp.maximize_r(&unit_obj(i, sign));
        let coord = if sign >= 0 { v } else { -v };
        lp.pin_r(i, coord.clone());
        out[i] = coord;
    }
    out
}

/// Canonical optimal direction: restrict to the optimal face, refine to
/// the sub-face with the most negative line weight (the steepest slope
/// in t), then take the midpoint of the lexicographic minimum and
/// maximum.
fn canonical_direction(states: &StateSet, t: &Rat, min_value: &Rat) -> Option<OnePS> {
    let base = FaceLp::new(states, t, min_value);
    // minimize beta: maximize -beta
    let mut cbeta: [Rat; 8] = Default::default();
    cbeta[7] = -Rat::one();
    let (neg_beta_min, _) = base.maximize(&cbeta);
    let beta_min = -neg_beta_min;
    let refine = |lp: &mut FaceLp| {
        let mut g: [Rat; 8] = Default::default();
        g[7] = Rat::one();
        lp.add_eq(g, beta_min.clone());
    };
    let mut lo_lp = FaceLp::new(states, t, min_value);
    refine(&mut lo_lp);
    let lo = lex_point(&mut lo_lp, 1);
    let mut hi_lp = FaceLp::new(states, t, min_value);
    refine(&mut hi_lp);
    let hi = lex_point(&mut hi_lp, -1);
    let two = rat_int(2);
    let mid: Vec<Rat> = lo.iter().zip(&hi).map(|(a, b)| (a + b) / &two).collect();
    for cand in [mid, lo.to_vec(), hi.to_vec()] {
        if cand.iter().any(|c| !c.is_zero()) {
            return OnePS::from_rational_direction(&cand).ok();
        }
    }
    None
}

/// Decide torus (semi)stability of the pair at parameter t >= 0 over the
/// diagonal maximal torus in the given coordinates.
pub fn torus_verdict(pencil: &Pencil<Rat>, line: &ProjLine, t: &Rat) -> Result<TorusVerdict> {
    let states = StateSet::of(pencil, line);
    Ok(torus_verdict_states(&states, t))
}

pub fn torus_verdict_states(states: &StateSet, t: &Rat) -> TorusVerdict {
    let (min_value, _r, witness) = min_mu_box(states, t);
    if min_value.is_negative() {
        let direction = canonical_direction(states, t, &min_value);
        debug_assert!(direction.is_some(), "negative minimum has a witness");
        if let Some(d) = &direction {
            debug_assert!(crate::weights::mu_t_states(states, d.weights(), t).is_negative());
        }
        return TorusVerdict {
            status: TorusStatus::Unstable,
            t: t.clone(),
            min_value,
            direction,
            ss_witness: None,
        };
    }
    // the minimum is zero (r = 0 always attains 0): stable exactly when
    // the optimal face is the origin; any nonzero face point has some
    // positive coordinate since the coordinates sum to zero
    let face = FaceLp::new(states, t, &min_value);
    let mut only_zero = true;
    for i in 0..6 {
        let (maxi, _) = face.maximize_r(&unit_obj(i, 1));
        if !maxi.is_zero() {
            only_zero = false;
            break;
        }
    }
    if only_zero {
        TorusVerdict {
            status: TorusStatus::Stable,
            t: t.clone(),
            min_value,
            direction: None,
            ss_witness: witness,
        }
    } else {
        let direction = canonical_direction(states, t, &min_value);
        TorusVerdict {
            status: TorusStatus::Semistable,
            t: t.clone(),
            min_value,
            direction,
            ss_witness: witness,
        }
    }
}

/// Minimum of mu^t over integer directions scaled to the box [-1,1]^6
/// (an exact LP), with the lexicographically smallest optimal point of
/// the optimal face, cleared to coprime integers. The direction is
/// `None` exactly when the minimum 0 is attained only at the origin.
pub fn worst_torus_1ps(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
    t: &Rat,
) -> Result<(Option<OnePS>, Rat)> {
    let states = StateSet::of(pencil, line);
    let (min_value, _, _) = min_mu_box(&states, t);
    let mut lp = FaceLp::new(&states, t, &min_value);
    let lo = lex_point(&mut lp, 1);
    let dir = if lo.iter().all(|c| c.is_zero()) {
        None
    } else {
        Some(OnePS::from_rational_direction(&lo)?)
    };
    Ok((dir, min_value))
}

/// Brute-force oracle: minimum of mu^t over integer vectors with zero sum
/// and coordinates bounded by `bound`, together with the minimizers.
/// Exponential in the bound; used by tests and acceptance checks.
pub fn enumerate_min(states: &StateSet, t: &Rat, bound: i64) -> (Rat, Vec<[i64; 6]>) {
    let mut best: Option<Rat> = None;
    let mut arg = Vec::new();
    let lo = -bound;
    let hi = bound;
    let mut r = [0i64; 6];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        partial: i64,
        lo: i64,
        hi: i64,
        r: &mut [i64; 6],
        states: &StateSet,
        t: &Rat,
        best: &mut Option<Rat>,
        arg: &mut Vec<[i64; 6]>,
    ) {
        if k == 5 {
            let last = -partial;
            if last < lo || last > hi {
                return;
            }
            r[5] = last;
            let v = rat_int(mu_pencil_raw(&states.pencil_states, r))
                + t * rat_int(mu_line_raw(&states.line_states, r));
            match best {
                Some(b) if v > *b => {}
                Some(b) if v == *b => arg.push(*r),
                _ => {
                    *best = Some(v);
                    arg.clear();
                    arg.push(*r);
                }
            }
            return;
        }
        for x in lo..=hi {
            r[k] = x;
            rec(k + 1, partial + x, lo, hi, r, states, t, best, arg);
        }
    }
    rec(0, 0, lo, hi, &mut r, states, t, &mut best, &mut arg);
    (best.expect("nonempty enumeration"), arg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::line::coordinate_line;
    use crate::quadric::quadric_from_terms;
    use crate::scalar::rat;

    fn half_pair() -> Pencil<Rat> {
        Pencil::new(
            quadric_from_terms(&[(0, 2, 1), (1, 3, 1)]),
            quadric_from_terms(&[(0, 4, 1), (1, 5, 1)]),
        )
        .unwrap()
    }

    fn singular_pair() -> Pencil<Rat> {
        Pencil::new(
            quadric_from_terms(&[(0, 2, 1), (1, 3, 1)]),
            quadric_from_terms(&[(1, 4, 1)]),
        )
        .unwrap()
    }

    /// Reference face maximizer by direct enumeration over a fine
    /// rational grid of the box; only for cross-checking small cases.
    fn face_max_reference(states: &StateSet, t: &Rat, bound: &Rat, i: usize) -> Rat {
        let steps = 4i64;
        let mut best: Option<Rat> = None;
        let mut r = [0i64; 6];
        #[allow(clippy::too_many_arguments)]
        fn rec(
            k: usize,
            sum: i64,
            steps: i64,
            r: &mut [i64; 6],
            states: &StateSet,
            t: &Rat,
            bound: &Rat,
            i: usize,
            best: &mut Option<Rat>,
        ) {
            if k == 5 {
                let last = -sum;
                if last.abs() > steps {
                    return;
                }
                r[5] = last;
                let scale = rat(1, steps);
                let rv: Vec<Rat> = r.iter().map(|&x| rat_int(x) * &scale).collect();
                let mu = {
                    let mp = states
                        .pencil_states
                        .iter()
                        .map(|s| s.iter().map(|&j| rv[j].clone()).sum::<Rat>())
                        .max()
                        .unwrap();
                    let ml = states
                        .line_states
                        .iter()
                        .map(|&(a, b)| -(rv[a].clone() + rv[b].clone()))
                        .max()
                        .unwrap();
                    mp + t * ml
                };
                if mu <= *bound {
                    let cand = rv[i].clone();
                    if best.as_ref().is_none_or(|b| cand > *b) {
                        *best = Some(cand);
                    }
                }
                return;
            }
            for x in -steps..=steps {
                r[k] = x;
                rec(k + 1, sum + x, steps, r, states, t, bound, i, best);
            }
        }
        rec(0, 0, steps, &mut r, states, t, bound, i, &mut best);
        best.expect("origin is feasible when bound >= 0")
    }

    #[test]
    fn face_maximizer_agrees_with_grid_reference() {
        let l = coordinate_line(0, 1);
        let states = StateSet::of(&half_pair(), &l);
        let t = rat(1, 2);
        let (min_value, _, _) = min_mu_box(&states, &t);
        assert!(min_value.is_zero());
        let face = FaceLp::new(&states, &t, &min_value);
        for i in 0..6 {
            let (lp_max, z) = face.maximize_r(&unit_obj(i, 1));
            let grid_max = face_max_reference(&states, &t, &min_value, i);
            // the grid is a subset of the face, so it bounds from below
            assert!(grid_max <= lp_max, "i = {i}");
            // and the LP's optimal point is feasible with the claimed value
            assert_eq!(z[i], lp_max);
            let rv = &z[..6];
            assert!(rv.iter().sum::<Rat>().is_zero());
            let mu = rat_int(0).max(Rat::zero())
                + states
                    .pencil_states
                    .iter()
                    .map(|s| s.iter().map(|&j| rv[j].clone()).sum::<Rat>())
                    .max()
                    .unwrap()
                + t.clone()
                    * states
                        .line_states
                        .iter()
                        .map(|&(a, b)| -(rv[a].clone() + rv[b].clone()))
                        .max()
                        .unwrap();
            assert!(mu <= min_value, "optimal point stays on the face");
        }
    }

    #[test]
    fn half_pair_semistable_at_half() {
        let v = torus_verdict(&half_pair(), &coordinate_line(0, 1), &rat(1, 2)).unwrap();
        assert_eq!(v.status, TorusStatus::Semistable);
        assert!(v.min_value.is_zero());
        // the canonical zero direction is the wall-crossing 1-PS
        assert_eq!(v.direction.unwrap().weights(), &[2, 2, -1, -1, -1, -1]);
        let w = v.ss_witness.unwrap();
        assert!(w.verify(&rat(1, 2)));
    }

    #[test]
    fn half_pair_unstable_above_half() {
        for t in [rat(3, 4), rat(51, 100), rat(9, 10), rat(1, 1), rat(5, 2)] {
            let v = torus_verdict(&half_pair(), &coordinate_line(0, 1), &t).unwrap();
            assert_eq!(v.status, TorusStatus::Unstable, "t = {t}");
            let d = v.direction.unwrap();
            assert_eq!(d.weights(), &[2, 2, -1, -1, -1, -1], "t = {t}");
            assert!(crate::weights::mu_t(&half_pair(), &coordinate_line(0, 1), &d, &t).is_negative());
        }
    }

    #[test]
    fn half_pair_unstable_below_half() {
        // wall behavior: destabilized on both sides of t = 1/2
        let v = torus_verdict(&half_pair(), &coordinate_line(0, 1), &rat(1, 4)).unwrap();
        assert_eq!(v.status, TorusStatus::Unstable);
        let d = v.direction.unwrap();
        assert!(
            crate::weights::mu_t(&half_pair(), &coordinate_line(0, 1), &d, &rat(1, 4))
                .is_negative()
        );
    }

    #[test]
    fn singular_pair_unstable_any_positive_t() {
        for t in [rat(1, 100), rat(1, 10), rat(15, 194), rat(1, 2)] {
            let v = torus_verdict(&singular_pair(), &coordinate_line(0, 1), &t).unwrap();
            assert_eq!(v.status, TorusStatus::Unstable);
            let d = v.direction.unwrap();
            assert!(
                crate::weights::mu_t(&singular_pair(), &coordinate_line(0, 1), &d, &t)
                    .is_negative()
            );
        }
    }

    #[test]
    fn worst_direction_value_matches_enumeration_signs() {
        let l = coordinate_line(0, 1);
        for (p, t) in [
            (half_pair(), rat(1, 2)),
            (half_pair(), rat(3, 4)),
            (singular_pair(), rat(1, 10)),
        ] {
            let states = StateSet::of(&p, &l);
            let (lp_min, _, _) = min_mu_box(&states, &t);
            let (enum_min, _) = enumerate_min(&states, &t, 3);
            assert_eq!(lp_min.is_negative(), enum_min.is_negative());
            assert_eq!(lp_min.is_zero(), enum_min.is_zero());
        }
    }

    #[test]
    fn worst_1ps_values() {
        let l = coordinate_line(0, 1);
        // value 0 at the wall
        let (dir, v) = worst_torus_1ps(&half_pair(), &l, &rat(1, 2)).unwrap();
        assert!(v.is_zero());
        assert!(dir.is_some());
        // singular pair at t = 1/10: minimum at most -1/10
        let (dir, v) = worst_torus_1ps(&singular_pair(), &l, &rat(1, 10)).unwrap();
        assert!(v <= rat(-1, 10));
        let d = dir.unwrap();
        assert!(crate::weights::mu_t(&singular_pair(), &l, &d, &rat(1, 10)).is_negative());
    }

    #[test]
    fn smooth_pair_negative_above_the_wall() {
        // beyond t = 1/2 even smooth pairs are destabilized; the scaled
        // wall direction bounds the minimum by 1 - 2t
        let p = Pencil::new(
            quadric_from_terms(&[(0, 2, 1), (1, 3, 1), (4, 4, 1), (5, 5, -1)]),
            quadric_from_terms(&[(0, 4, 1), (1, 5, 1), (2, 2, 1), (3, 3, 1)]),
        )
        .unwrap();
        let l = coordinate_line(0, 1);
        let t = rat(3, 5);
        let (dir, value) = worst_torus_1ps(&p, &l, &t).unwrap();
        assert!(value <= rat(1, 1) - rat(2, 1) * &t);
        let d = dir.unwrap();
        assert!(crate::weights::mu_t(&p, &l, &d, &t).is_negative());
    }

    #[test]
    fn stable_case_has_no_direction() {
        // a pair whose torus minimum is 0 only at the origin: generic
        // standard pair with dense states
        let p = Pencil::new(
            quadric_from_terms(&[(0, 2, 1), (1, 3, 1), (4, 4, 1), (5, 5, -1)]),
            quadric_from_terms(&[(0, 4, 1), (1, 5, 1), (2, 2, 1), (3, 3, 1)]),
        )
        .unwrap();
        let l = coordinate_line(0, 1);
        let t = rat(15, 194);
        let v = torus_verdict(&p, &l, &t).unwrap();
        assert_eq!(v.status, TorusStatus::Stable);
        assert!(v.direction.is_none());
        let (dir, val) = worst_torus_1ps(&p, &l, &t).unwrap();
        assert!(val.is_zero());
        assert!(dir.is_none());
        // enumeration confirms strict positivity away from zero
        let states = StateSet::of(&p, &l);
        let (m, args) = enumerate_min(&states, &t, 2);
        assert!(m.is_zero());
        assert_eq!(args, vec![[0i64; 6]]);
    }
}
