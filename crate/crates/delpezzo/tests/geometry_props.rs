//! Randomized covariance properties of pencils, lines and the Segre
//! classification, and the cyclotomic automorphism check.

mod common;

use common::{random_gl6, random_smooth_pair, random_standard_pair, small_int};
use delpezzo::scalar::{rat_int, Cyc5, Rat};
use delpezzo::{
    classify_pencil, coordinate_line, line_in_pencil, quadric_from_terms, segre_symbol,
    singularities_on_line, standardize_pair, Mat, Pencil, QuadraticForm,
};
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn discriminant_transforms_by_det_squared() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let base = Pencil::new(
        quadric_from_terms(&[(0, 2, 1), (1, 3, 1), (4, 4, 1), (5, 5, -1)]),
        quadric_from_terms(&[(0, 4, 1), (1, 5, 1), (2, 2, 1), (3, 3, 1)]),
    )
    .unwrap();
    for _ in 0..20 {
        let g = random_gl6(&mut rng);
        let moved = base.apply_transform(&g).unwrap();
        let d0 = base.discriminant();
        let d1 = moved.discriminant();
        let factor = g.det();
        let scale = &factor * &factor;
        assert_eq!(d1, d0.scale(&scale));
    }
}

#[test]
fn classification_invariant_under_transform_and_generator_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut checked = 0;
    while checked < 12 {
        let Some(p) = random_standard_pair(&mut rng) else {
            continue;
        };
        checked += 1;
        let class = classify_pencil(&p);
        // coordinate change
        let g = random_gl6(&mut rng);
        let moved = p.apply_transform(&g).unwrap();
        assert_eq!(classify_pencil(&moved).verdict, class.verdict);
        assert_eq!(classify_pencil(&moved).root_profile, class.root_profile);
        // generator change in GL(2)
        let (a, b, c, d) = loop {
            let (a, b, c, d) = (
                small_int(&mut rng, 2),
                small_int(&mut rng, 2),
                small_int(&mut rng, 2),
                small_int(&mut rng, 2),
            );
            if a * d - b * c != 0 {
                break (a, b, c, d);
            }
        };
        let qa = p.gen_a().scale(&rat_int(a)).add(&p.gen_b().scale(&rat_int(b)));
        let qb = p.gen_a().scale(&rat_int(c)).add(&p.gen_b().scale(&rat_int(d)));
        let regen = Pencil::new(qa, qb).unwrap();
        assert_eq!(classify_pencil(&regen).verdict, class.verdict);
        assert_eq!(classify_pencil(&regen).root_profile, class.root_profile);
    }
}

#[test]
fn segre_block_sizes_weighted_sum_is_six() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let p = random_smooth_pair(&mut rng);
        let s = segre_symbol(&p).unwrap();
        assert_eq!(s.weighted_size(), 6);
    }
}

#[test]
fn conjugated_distinct_diagonal_pencils_have_linear_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        // diagonal pencil with distinct eigenvalues, conjugated by GL(6)
        let mut eigen: Vec<i64> = Vec::new();
        while eigen.len() < 6 {
            let e = small_int(&mut rng, 12);
            if !eigen.contains(&e) {
                eigen.push(e);
            }
        }
        let a = quadric_from_terms(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1), (4, 4, 1), (5, 5, 1)]);
        let b = quadric_from_terms(&[
            (0, 0, eigen[0]),
            (1, 1, eigen[1]),
            (2, 2, eigen[2]),
            (3, 3, eigen[3]),
            (4, 4, eigen[4]),
            (5, 5, eigen[5]),
        ]);
        let p = Pencil::new(a, b)
            .unwrap()
            .apply_transform(&random_gl6(&mut rng))
            .unwrap();
        let s = segre_symbol(&p).unwrap();
        assert!(s.all_blocks_linear());
        assert_eq!(
            s.groups.iter().map(|g| g.blocks.iter().sum::<u32>() * g.factor.degree().unwrap() as u32).sum::<u32>(),
            6
        );
    }
}

#[test]
fn line_containment_and_singularities_covariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut checked = 0;
    while checked < 10 {
        let Some(p) = random_standard_pair(&mut rng) else {
            continue;
        };
        let l = coordinate_line(0, 1);
        if !line_in_pencil(&l, &p) {
            continue;
        }
        checked += 1;
        let g = random_gl6(&mut rng);
        let pm = p.apply_transform(&g).unwrap();
        let lm = l.apply_transform(&g).unwrap();
        assert!(line_in_pencil(&lm, &pm));
        let (s0, smooth0) = singularities_on_line(&p, &l).unwrap();
        let (s1, smooth1) = singularities_on_line(&pm, &lm).unwrap();
        assert_eq!(smooth0, smooth1);
        // verdict kind is invariant (the parameter factors change by the
        // induced coordinate change on the line)
        assert_eq!(
            std::mem::discriminant(&s0),
            std::mem::discriminant(&s1)
        );
    }
}

#[test]
fn standardize_round_trip_on_random_images() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..10 {
        let p = random_smooth_pair(&mut rng);
        let l = coordinate_line(0, 1);
        let g = random_gl6(&mut rng);
        let pm = p.apply_transform(&g).unwrap();
        let lm = l.apply_transform(&g).unwrap();
        let sp = standardize_pair(&pm, &lm).unwrap();
        let std_pencil = sp.reconstruct().unwrap();
        assert!(std_pencil.equal_as_spans(&pm.apply_transform(&sp.transform).unwrap()));
        let back = std_pencil.apply_transform(&sp.transform.inverse().unwrap()).unwrap();
        assert!(back.equal_as_spans(&pm));
        let moved_line = lm.apply_transform(&sp.transform).unwrap();
        assert!(moved_line.same_line(&coordinate_line(0, 1)));
    }
}

#[test]
fn pluecker_relations_for_random_lines() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for _ in 0..30 {
        let p: Vec<Rat> = (0..6).map(|_| rat_int(small_int(&mut rng, 4))).collect();
        let q: Vec<Rat> = (0..6).map(|_| rat_int(small_int(&mut rng, 4))).collect();
        if let Ok(l) = delpezzo::line_from_points(&p, &q) {
            assert!(l.pluecker_relations_hold());
        }
    }
}

/// The pencil of the order-5 cyclotomic example: sum of squares and the
/// zeta-weighted sum over the first five coordinates.
fn cyclotomic_pencil() -> Pencil<Cyc5> {
    let mut ga = Mat::zero(6, 6);
    for i in 0..6 {
        ga.set(i, i, Cyc5::one());
    }
    let mut gb = Mat::zero(6, 6);
    for i in 0..5 {
        gb.set(i, i, Cyc5::zeta_pow(i as i64));
    }
    Pencil::new(
        QuadraticForm::from_gram(ga).unwrap(),
        QuadraticForm::from_gram(gb).unwrap(),
    )
    .unwrap()
}

#[test]
fn cyclotomic_cycle_preserves_the_pencil() {
    let p = cyclotomic_pencil();
    // substitution x_i -> x_(i+1 mod 5), x5 fixed: row i of g is e_(i+1)
    let mut g = Mat::zero(6, 6);
    for i in 0..5 {
        g.set(i, (i + 1) % 5, Cyc5::one());
    }
    g.set(5, 5, Cyc5::one());
    assert!(p.preserved_by(&g).unwrap());
    // sign flips preserve any diagonal pencil
    let mut flip = Mat::identity(6);
    flip.set(0, 0, -Cyc5::one());
    assert!(p.preserved_by(&flip).unwrap());
}

#[test]
fn cyclotomic_scaled_cycle_with_fixed_last_coordinate_does_not() {
    // the same 5-cycle scaled by zeta^3 on the first five coordinates
    // only: the sum of squares acquires zeta^6 = zeta on x0..x4 but not
    // on x5, which is incompatible with the span
    let p = cyclotomic_pencil();
    let z3 = Cyc5::zeta_pow(3);
    let mut g = Mat::zero(6, 6);
    for i in 0..5 {
        g.set(i, (i + 1) % 5, z3.clone());
    }
    g.set(5, 5, Cyc5::one());
    assert!(!p.preserved_by(&g).unwrap());
    // scaling all six coordinates by zeta^3 restores preservation (the
    // transformation is projectively the plain cycle)
    let mut g_all = Mat::zero(6, 6);
    for i in 0..5 {
        g_all.set(i, (i + 1) % 5, z3.clone());
    }
    g_all.set(5, 5, z3.clone());
    assert!(p.preserved_by(&g_all).unwrap());
}

#[test]
fn cyclotomic_second_generator_is_eigenvector_of_the_cycle() {
    // under the plain cycle the zeta-weighted generator rescales by a
    // root of unity while the sum of squares is fixed
    let p = cyclotomic_pencil();
    let mut g = Mat::zero(6, 6);
    for i in 0..5 {
        g.set(i, (i + 1) % 5, Cyc5::one());
    }
    g.set(5, 5, Cyc5::one());
    let moved = p.apply_transform(&g).unwrap();
    // moved gen_a equals gen_a
    assert_eq!(moved.gen_a().gram(), p.gen_a().gram());
    // moved gen_b equals zeta^4 * gen_b
    let scaled = p.gen_b().scale(&Cyc5::zeta_pow(4));
    assert_eq!(moved.gen_b().gram(), scaled.gram());
}
