//! Stability verdicts for (pencil, line) pairs: the catalog of
//! destabilizing one-parameter subgroups in adapted frames, the rule
//! pipeline for a parameter t in (0, 1/2], the K-stability verdict at
//! the ledger threshold t0 = 15/194, and wall scans over a t grid.
//!
//! Verdict contract: an Unstable verdict always carries a destabilizer
//! whose weight re-evaluates negative; torus semistability in a single
//! frame is necessary but not sufficient for semistability under the
//! full group, so such outcomes are reported as Undetermined.

use crate::chow::cm_coefficients;
use crate::error::{Error, Result};
use crate::line::{line_in_pencil, rational_singular_points, LineSingularities, ProjLine};
use crate::matrix::{Mat, QMat};
use crate::quadric::Pencil;
use crate::scalar::{fmt_rat, rat, Rat};
use crate::segre::{classify_pencil, PencilVerdict};
use crate::torus::{torus_verdict, SsWitness, TorusStatus};
use crate::weights::{mu_t, OnePS};
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Stable,
    Semistable,
    Polystable,
    Unstable,
    Undetermined,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Stable => "Stable",
            Status::Semistable => "Semistable",
            Status::Polystable => "Polystable",
            Status::Unstable => "Unstable",
            Status::Undetermined => "Undetermined",
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum Certificate {
    /// A one-parameter subgroup with negative t-weight. When a frame is
    /// present, the weight is evaluated on the pair transformed by it.
    Destabilizer {
        one_ps: OnePS,
        frame: Option<QMat>,
        weight: Rat,
    },
    /// Convex multipliers witnessing torus semistability in the ambient
    /// coordinates.
    SemistableLp(SsWitness),
    /// A rule citation for verdicts certified by the classification
    /// criteria rather than a single 1-PS.
    Rule(String),
}

#[derive(Clone, PartialEq, Debug)]
pub struct Verdict {
    pub status: Status,
    pub t: Rat,
    pub certificate: Option<Certificate>,
    pub trail: Vec<String>,
}

/// Re-evaluate a verdict's certificate against the pair it was issued
/// for. Unstable certificates must re-evaluate to the stored negative
/// weight; semistability witnesses must verify their convex identity.
pub fn verify_certificate(pencil: &Pencil<Rat>, line: &ProjLine, v: &Verdict) -> bool {
    match &v.certificate {
        None => v.status != Status::Unstable,
        Some(Certificate::Rule(_)) => true,
        Some(Certificate::SemistableLp(w)) => w.verify(&v.t),
        Some(Certificate::Destabilizer {
            one_ps,
            frame,
            weight,
        }) => {
            let (p, l) = match frame {
                None => (pencil.clone(), line.clone()),
                Some(g) => match (pencil.apply_transform(g), line.apply_transform(g)) {
                    (Ok(p), Ok(l)) => (p, l),
                    _ => return false,
                },
            };
            let m = mu_t(&p, &l, one_ps, &v.t);
            m == *weight && m.is_negative()
        }
    }
}

/// Build the substitution matrix sending a covector to the coordinate
/// x_index: rows of m are the covector followed by greedily chosen
/// standard covectors; the substitution is m^(-1).
fn frame_covector_to_coordinate(cov: &[Rat], index: usize, dim: usize) -> QMat {
    let mut chosen: Vec<Vec<Rat>> = vec![cov.to_vec()];
    for k in 0..dim {
        if chosen.len() == dim {
            break;
        }
        let mut e = vec![Rat::zero(); dim];
        e[k] = Rat::one();
        let mut trial = chosen.clone();
        trial.push(e);
        if QMat::from_rows(trial.clone()).unwrap().rank() == chosen.len() + 1 {
            chosen = trial;
        }
    }
    // order the rows so the covector lands at `index`
    let mut ordered: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    let mut rest = chosen[1..].to_vec();
    for k in 0..dim {
        if k == index {
            ordered.push(chosen[0].clone());
        } else {
            ordered.push(rest.remove(0));
        }
    }
    let m = QMat::from_rows(ordered).unwrap();
    m.inverse().expect("rows are independent")
}

fn embed_block(g4: &QMat) -> QMat {
    let mut g = Mat::identity(6);
    for i in 0..4 {
        for j in 0..4 {
            g.set(i + 2, j + 2, g4.get(i, j).clone());
        }
    }
    g
}

fn try_certificate(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
    lam: OnePS,
    frame: QMat,
    t: &Rat,
) -> Option<(OnePS, QMat, Rat)> {
    let p = pencil.apply_transform(&frame).ok()?;
    let l = line.apply_transform(&frame).ok()?;
    let w = mu_t(&p, &l, &lam, t);
    if w.is_negative() {
        Some((lam, frame, w))
    } else {
        None
    }
}

fn permutations_lex(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    rec(n, &mut cur, &mut vec![false; n], &mut out);
    out
}

/// Try the cataloged destabilizers in frames adapted to the detected
/// structure. Returns the first certificate (1-PS, frame, negative
/// weight); the weight re-evaluates on the pair transformed by the
/// frame.
///
/// Catalog, in detection order:
///   shared hyperplane (not a complete intersection) -> (-5,1,1,1,1,1);
///   rational singular point on the line -> (1,0,-1,0,0,0);
///   t > 1/2 -> (2,2,-1,-1,-1,-1);
///   degenerate or multiplicity >= 4 discriminant -> (2,-2,1,-1,0,0)
///   and (1,-3,3,-5,5,-1) over all index permutations.
pub fn catalog_destabilize(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
    t: &Rat,
) -> Result<Option<(OnePS, QMat, Rat)>> {
    if !line_in_pencil(line, pencil) {
        return Err(Error::LineNotInBaseLocus);
    }
    let std = crate::standard_form::standardize_pair(pencil, line)?;
    let g0 = std.transform.clone();

    // shared hyperplane: both generators divisible by one linear form
    let (is_ci, witness) = pencil.is_complete_intersection();
    if !is_ci {
        let cov = witness.expect("failed test carries its witness");
        let frame = frame_covector_to_coordinate(&cov, 0, 6);
        let lam = OnePS::new([-5, 1, 1, 1, 1, 1]).expect("valid weights");
        if let Some(cert) = try_certificate(pencil, line, lam, frame, t) {
            return Ok(Some(cert));
        }
    }

    // singular point of the base locus on the line, at a rational
    // parameter: move it to e0, the gradient direction to x2
    let sing = rational_singular_points(pencil, line);
    if let Ok(points) = &sing {
        for pt in points {
            if let Some(cert) = singular_point_certificate(pencil, line, &g0, pt, t) {
                return Ok(Some(cert));
            }
        }
    }
    // line inside the singular locus: the wall 1-PS destabilizes
    if let Ok((LineSingularities::WholeLine, _)) = crate::line::singularities_on_line(pencil, line)
    {
        let lam = OnePS::new([2, 2, -1, -1, -1, -1]).expect("valid weights");
        if let Some(cert) = try_certificate(pencil, line, lam, g0.clone(), t) {
            return Ok(Some(cert));
        }
    }

    // beyond the wall every pair is destabilized by the same 1-PS
    if *t > rat(1, 2) {
        let lam = OnePS::new([2, 2, -1, -1, -1, -1]).expect("valid weights");
        if let Some(cert) = try_certificate(pencil, line, lam, g0.clone(), t) {
            return Ok(Some(cert));
        }
    }

    // degenerate or multiplicity >= 4 discriminant: permuted frames of
    // the two remaining catalog vectors
    let disc = pencil.discriminant();
    let needs_catalog = disc.is_zero()
        || crate::binary_form::factor_rational(&disc)
            .map(|fs| fs.iter().any(|(_, m)| *m >= 4))
            .unwrap_or(false);
    if needs_catalog {
        for base in [[2i64, -2, 1, -1, 0, 0], [1, -3, 3, -5, 5, -1]] {
            for perm in permutations_lex(6) {
                let mut r = [0i64; 6];
                for (i, &p) in perm.iter().enumerate() {
                    r[i] = base[p];
                }
                let Ok(lam) = OnePS::new(r) else { continue };
                if let Some(cert) = try_certificate(pencil, line, lam, g0.clone(), t) {
                    return Ok(Some(cert));
                }
            }
        }
    }
    Ok(None)
}

fn singular_point_certificate(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
    g0: &QMat,
    point: &[Rat],
    t: &Rat,
) -> Option<(OnePS, QMat, Rat)> {
    // coordinates after g0: line = span(e0, e1); express the singular
    // point there and move it to e0 by a GL(2) block
    let g0i = g0.inverse()?;
    let q = g0i.mul_vec(point);
    if q[2..].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let (a, b) = (q[0].clone(), q[1].clone());
    let mut g2 = Mat::identity(6);
    if a.is_zero() && b.is_zero() {
        return None;
    }
    // columns: new e0 = (a, b), new e1 completes it
    g2.set(0, 0, a.clone());
    g2.set(1, 0, b.clone());
    if a.is_zero() {
        g2.set(0, 1, Rat::one());
        g2.set(1, 1, Rat::zero());
    } else {
        g2.set(0, 1, Rat::zero());
        g2.set(1, 1, Rat::one());
    }
    let g02 = g0.matmul(&g2);
    let moved = pencil.apply_transform(&g02).ok()?;
    // gradients at e0 span at most a line; its direction lives in x2..x5
    let e0: Vec<Rat> = (0..6)
        .map(|k| if k == 0 { Rat::one() } else { Rat::zero() })
        .collect();
    let ga = moved.gen_a().gram().mul_vec(&e0);
    let gb = moved.gen_b().gram().mul_vec(&e0);
    let grad = if ga.iter().any(|c| !c.is_zero()) { ga } else { gb };
    let g3 = if grad.iter().all(|c| c.is_zero()) {
        Mat::identity(6)
    } else {
        debug_assert!(grad[0].is_zero() && grad[1].is_zero());
        embed_block(&frame_covector_to_coordinate(&grad[2..], 0, 4))
    };
    let frame = g02.matmul(&g3);
    let lam = OnePS::new([1, 0, -1, 0, 0, 0]).expect("valid weights");
    try_certificate(pencil, line, lam, frame, t)
}

/// The rule pipeline for a pair at t in (0, 1/2]. Every Unstable verdict
/// carries a re-verifiable certificate; torus outcomes that are merely
/// necessary conditions are downgraded to Undetermined.
pub fn pair_verdict(pencil: &Pencil<Rat>, line: &ProjLine, t: &Rat) -> Result<Verdict> {
    if !(t.is_positive() && *t <= rat(1, 2)) {
        return Err(Error::ParameterOutOfRange(fmt_rat(t)));
    }
    if !line_in_pencil(line, pencil) {
        return Err(Error::LineNotInBaseLocus);
    }
    let mut trail = Vec::new();
    let t0 = cm_coefficients().t0;

    // rule 1: complete intersection
    let (is_ci, _) = pencil.is_complete_intersection();
    if !is_ci {
        trail.push("rule 1: base locus is not a complete intersection (the generators share a hyperplane)".to_string());
        if let Some((lam, frame, weight)) = catalog_destabilize(pencil, line, t)? {
            trail.push(format!(
                "destabilized by {:?} in an adapted frame, weight {}",
                lam.weights(),
                fmt_rat(&weight)
            ));
            return Ok(Verdict {
                status: Status::Unstable,
                t: t.clone(),
                certificate: Some(Certificate::Destabilizer {
                    one_ps: lam,
                    frame: Some(frame),
                    weight,
                }),
                trail,
            });
        }
        unreachable!("a shared hyperplane always yields the (-5,1,1,1,1,1) certificate");
    }
    trail.push("rule 1: base locus is a complete intersection".to_string());

    // rule 2: singular point on the line
    let (sing, generically_smooth) = crate::line::singularities_on_line(pencil, line)?;
    match &sing {
        LineSingularities::None => {
            trail.push("rule 2: the base locus is smooth along the line".to_string());
        }
        LineSingularities::Points(fs) => {
            trail.push(format!(
                "rule 2: singular points on the line at parameter factors {}",
                fs.iter()
                    .map(|(f, m)| format!("({f})^{m}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            if let Some((lam, frame, weight)) = catalog_destabilize(pencil, line, t)? {
                trail.push(format!(
                    "destabilized by {:?} in an adapted frame, weight {}",
                    lam.weights(),
                    fmt_rat(&weight)
                ));
                return Ok(Verdict {
                    status: Status::Unstable,
                    t: t.clone(),
                    certificate: Some(Certificate::Destabilizer {
                        one_ps: lam,
                        frame: Some(frame),
                        weight,
                    }),
                    trail,
                });
            }
            trail.push(
                "no rational-frame certificate found (irrational singular parameters); falling through to the torus check"
                    .to_string(),
            );
            return torus_fallback(pencil, line, t, trail);
        }
        LineSingularities::WholeLine => {
            trail.push("rule 2: the line lies in the singular locus".to_string());
            let _ = generically_smooth;
            if let Some((lam, frame, weight)) = catalog_destabilize(pencil, line, t)? {
                trail.push(format!(
                    "destabilized by {:?}, weight {}",
                    lam.weights(),
                    fmt_rat(&weight)
                ));
                return Ok(Verdict {
                    status: Status::Unstable,
                    t: t.clone(),
                    certificate: Some(Certificate::Destabilizer {
                        one_ps: lam,
                        frame: Some(frame),
                        weight,
                    }),
                    trail,
                });
            }
            return torus_fallback(pencil, line, t, trail);
        }
    }

    // rule 3: discriminant degenerate or with a root of multiplicity >= 4,
    // in the proved range t < 1/10
    let class = classify_pencil(pencil);
    let disc_unstable = matches!(
        class.verdict,
        PencilVerdict::Unstable | PencilVerdict::DegenerateDiscriminant
    );
    if disc_unstable && *t < rat(1, 10) {
        trail.push(format!(
            "rule 3: the pencil is discriminant-unstable (profile {:?}) and t < 1/10",
            class.root_profile
        ));
        if let Some((lam, frame, weight)) = catalog_destabilize(pencil, line, t)? {
            trail.push(format!(
                "destabilized by {:?} in an adapted frame, weight {}",
                lam.weights(),
                fmt_rat(&weight)
            ));
            return Ok(Verdict {
                status: Status::Unstable,
                t: t.clone(),
                certificate: Some(Certificate::Destabilizer {
                    one_ps: lam,
                    frame: Some(frame),
                    weight,
                }),
                trail,
            });
        }
        trail.push("catalog produced no certificate; falling through to the torus check".to_string());
        return torus_fallback(pencil, line, t, trail);
    }

    // rule 4: smooth base locus in the no-wall range (0, t0]
    if class.verdict == PencilVerdict::Stable && *t <= t0 {
        trail.push(format!(
            "rule 4: squarefree discriminant (smooth base locus), line in the smooth locus, and t <= t0 = {}; no walls in (0, t0]",
            fmt_rat(&t0)
        ));
        return Ok(Verdict {
            status: Status::Stable,
            t: t.clone(),
            certificate: Some(Certificate::Rule(
                "smooth complete intersection with a line; stable throughout (0, t0]".to_string(),
            )),
            trail,
        });
    }

    // rule 5: torus check in the ambient frame, downgraded when only
    // necessary
    trail.push(format!(
        "rule 5: no classification rule applies at t = {} (pencil verdict {:?})",
        fmt_rat(t),
        class.verdict
    ));
    torus_fallback(pencil, line, t, trail)
}

fn torus_fallback(
    pencil: &Pencil<Rat>,
    line: &ProjLine,
    t: &Rat,
    mut trail: Vec<String>,
) -> Result<Verdict> {
    let tv = torus_verdict(pencil, line, t)?;
    match tv.status {
        TorusStatus::Unstable => {
            let lam = tv.direction.expect("unstable torus verdict has a direction");
            let weight = mu_t(pencil, line, &lam, t);
            trail.push(format!(
                "torus check: destabilized by the diagonal 1-PS {:?}, weight {}",
                lam.weights(),
                fmt_rat(&weight)
            ));
            Ok(Verdict {
                status: Status::Unstable,
                t: t.clone(),
                certificate: Some(Certificate::Destabilizer {
                    one_ps: lam,
                    frame: None,
                    weight,
                }),
                trail,
            })
        }
        TorusStatus::Semistable => {
            trail.push(
                "torus check: semistable for the diagonal torus in this frame; this is necessary but not sufficient for semistability, so the verdict is Undetermined"
                    .to_string(),
            );
            Ok(Verdict {
                status: Status::Undetermined,
                t: t.clone(),
                certificate: tv.ss_witness.map(Certificate::SemistableLp),
                trail,
            })
        }
        TorusStatus::Stable => {
            trail.push(
                "torus check: stable for the diagonal torus in this frame; this is necessary but not sufficient for stability, so the verdict is Undetermined"
                    .to_string(),
            );
            Ok(Verdict {
                status: Status::Undetermined,
                t: t.clone(),
                certificate: tv.ss_witness.map(Certificate::SemistableLp),
                trail,
            })
        }
    }
}

/// The K-stability verdict: the pair verdict at the CM threshold
/// t0 = 15/194, imported from the intersection ledger.
pub fn k_stability_verdict(pencil: &Pencil<Rat>, line: &ProjLine) -> Result<Verdict> {
    let cm = cm_coefficients();
    let mut v = pair_verdict(pencil, line, &cm.t0)?;
    v.trail.insert(
        0,
        format!(
            "t0 = {} from the CM ledger (a = {}, b = {}); K-(semi/poly)stability of the blow-up is equivalent to t0-GIT (semi/poly)stability of the pair",
            fmt_rat(&cm.t0),
            fmt_rat(&cm.a),
            fmt_rat(&cm.b)
        ),
    );
    Ok(v)
}

#[derive(Clone, Debug)]
pub struct WallScan {
    pub rows: Vec<(Rat, Verdict)>,
    /// Indices i such that `rows[i]` and `rows[i+1]` have different statuses.
    pub changes: Vec<usize>,
}

/// Pair verdicts over a grid of t values in (0, 1/2], flagging adjacent
/// status changes.
pub fn wall_scan(pencil: &Pencil<Rat>, line: &ProjLine, ts: &[Rat]) -> Result<WallScan> {
    for t in ts {
        if !(t.is_positive() && *t <= rat(1, 2)) {
            return Err(Error::ParameterOutOfRange(fmt_rat(t)));
        }
    }
    let mut rows = Vec::with_capacity(ts.len());
    for t in ts {
        rows.push((t.clone(), pair_verdict(pencil, line, t)?));
    }
    let changes = rows
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].1.status != w[1].1.status)
        .map(|(i, _)| i)
        .collect();
    Ok(WallScan { rows, changes })
}

/// Convenience: exact threshold used by the verdicts, re-exported for
/// callers that only need the number.
pub fn k_threshold() -> Rat {
    cm_coefficients().t0
}
