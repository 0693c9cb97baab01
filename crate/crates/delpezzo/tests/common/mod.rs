//! Shared random generators for the property tests; everything is seeded
//! so failures reproduce.

use delpezzo::matrix::QMat;
use delpezzo::multipoly::MultiPoly;
use delpezzo::quadric::{Pencil, QuadraticForm};
use delpezzo::scalar::{rat_int, Rat};
use delpezzo::standard_form::residual_vars;
use delpezzo::Mat;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[allow(dead_code)]
pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

#[allow(dead_code)]
pub fn random_binary_form(rng: &mut ChaCha8Rng, degree: usize) -> delpezzo::BinaryForm {
    loop {
        let coeffs: Vec<Rat> = (0..=degree).map(|_| rat_int(small_int(rng, 9))).collect();
        let f = delpezzo::BinaryForm::from_coeffs(coeffs);
        if !f.is_zero() {
            return f;
        }
    }
}

#[allow(dead_code)]
pub fn random_gl6(rng: &mut ChaCha8Rng) -> QMat {
    loop {
        let rows: Vec<Vec<Rat>> = (0..6)
            .map(|_| (0..6).map(|_| rat_int(small_int(rng, 2))).collect())
            .collect();
        let m = Mat::from_rows(rows).unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A random linear form in the residual variables x2..x5.
#[allow(dead_code)]
pub fn random_linear(rng: &mut ChaCha8Rng, bound: i64) -> MultiPoly {
    let vars = residual_vars();
    let mut p = MultiPoly::zero(vars.clone());
    for k in 0..4 {
        let c = small_int(rng, bound);
        if c != 0 {
            let mut e = vec![0u16; 4];
            e[k] = 1;
            p = p.add(&MultiPoly::monomial(vars.clone(), e, rat_int(c)));
        }
    }
    p
}

/// A random quadratic form in x2..x5 with at most `terms` monomials.
#[allow(dead_code)]
pub fn random_quadratic(rng: &mut ChaCha8Rng, terms: usize, bound: i64) -> MultiPoly {
    let vars = residual_vars();
    let mut p = MultiPoly::zero(vars.clone());
    for _ in 0..terms {
        let i = rng.gen_range(0..4usize);
        let j = rng.gen_range(i..4usize);
        let c = small_int(rng, bound);
        if c != 0 {
            let mut e = vec![0u16; 4];
            e[i] += 1;
            e[j] += 1;
            p = p.add(&MultiPoly::monomial(vars.clone(), e, rat_int(c)));
        }
    }
    p
}

/// A random pair in standard form (the line span(e0, e1) always lies in
/// the base locus).
#[allow(dead_code)]
pub fn random_standard_pair(rng: &mut ChaCha8Rng) -> Option<Pencil<Rat>> {
    let a = delpezzo::standard_form::assemble_standard(
        &random_linear(rng, 3),
        &random_linear(rng, 3),
        &random_quadratic(rng, 2, 3),
    );
    let b = delpezzo::standard_form::assemble_standard(
        &random_linear(rng, 3),
        &random_linear(rng, 3),
        &random_quadratic(rng, 2, 3),
    );
    Pencil::new(a, b).ok()
}

/// Rejection-sample a standard pair whose discriminant is squarefree of
/// degree 6 (a smooth base locus).
#[allow(dead_code)]
pub fn random_smooth_pair(rng: &mut ChaCha8Rng) -> Pencil<Rat> {
    loop {
        let Some(p) = random_standard_pair(rng) else {
            continue;
        };
        let d = p.discriminant();
        if d.degree() != Some(6) {
            continue;
        }
        let parts = delpezzo::squarefree_decompose(&d).unwrap();
        if parts.len() == 1 && parts[0].1 == 1 {
            return p;
        }
    }
}

/// A random pair singular at a rational point of the line: the standard
/// normalization with the first linear form of the second generator
/// removed.
#[allow(dead_code)]
pub fn random_singular_on_line_pair(rng: &mut ChaCha8Rng) -> Option<Pencil<Rat>> {
    let vars = residual_vars();
    let a = delpezzo::standard_form::assemble_standard(
        &random_linear(rng, 2),
        &random_linear(rng, 2),
        &random_quadratic(rng, 2, 2),
    );
    let b = delpezzo::standard_form::assemble_standard(
        &MultiPoly::zero(vars),
        &random_linear(rng, 2),
        &random_quadratic(rng, 2, 2),
    );
    let p = Pencil::new(a, b).ok()?;
    // require an actual singular point on the line
    let l = delpezzo::coordinate_line(0, 1);
    match delpezzo::singularities_on_line(&p, &l) {
        Ok((delpezzo::LineSingularities::Points(_), _)) => Some(p),
        Ok((delpezzo::LineSingularities::WholeLine, _)) => Some(p),
        _ => None,
    }
}

/// A random shared-hyperplane (non-complete-intersection) pair
/// containing span(e0, e1).
#[allow(dead_code)]
pub fn random_degenerate_pair(rng: &mut ChaCha8Rng) -> Option<Pencil<Rat>> {
    // Q = x0 * l, Q' = x0 * l' with l, l' in x2..x5
    let mk = |l: &MultiPoly| {
        let vars = residual_vars();
        delpezzo::standard_form::assemble_standard(l, &MultiPoly::zero(vars.clone()), &MultiPoly::zero(vars))
    };
    let a = mk(&random_linear(rng, 2));
    let b = mk(&random_linear(rng, 2));
    Pencil::new(a, b).ok()
}

/// A random quadratic form on all six coordinates (not necessarily
/// containing any particular line).
#[allow(dead_code)]
pub fn random_quadric6(rng: &mut ChaCha8Rng, terms: usize, bound: i64) -> QuadraticForm<Rat> {
    loop {
        let mut list = Vec::new();
        for _ in 0..terms {
            let i = rng.gen_range(0..6usize);
            let j = rng.gen_range(i..6usize);
            let c = small_int(rng, bound);
            if c != 0 {
                list.push((i, j, c));
            }
        }
        if !list.is_empty() {
            return delpezzo::quadric_from_terms(&list);
        }
    }
}
