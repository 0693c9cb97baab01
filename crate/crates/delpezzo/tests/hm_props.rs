//! The torus linear program against the brute-force enumeration oracle,
//! and certificate soundness for random verdicts.

mod common;

use common::{random_degenerate_pair, random_singular_on_line_pair, random_smooth_pair};
use delpezzo::scalar::rat;
use delpezzo::torus::enumerate_min;
use delpezzo::weights::StateSet;
use delpezzo::{
    coordinate_line, pair_verdict, torus_verdict, verify_certificate, Pencil, Rat, Status,
    TorusStatus,
};
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mixed_pairs(seed: u64, count: usize) -> Vec<Pencil<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let pick = out.len() % 3;
        let p = match pick {
            0 => Some(random_smooth_pair(&mut rng)),
            1 => random_singular_on_line_pair(&mut rng),
            _ => random_degenerate_pair(&mut rng),
        };
        if let Some(p) = p {
            out.push(p);
        }
    }
    out
}

#[test]
fn lp_sign_matches_exhaustive_enumeration() {
    let l = coordinate_line(0, 1);
    let pairs = mixed_pairs(31, 12);
    for (k, p) in pairs.iter().enumerate() {
        for t in [rat(1, 10), rat(15, 194)] {
            let states = StateSet::of(p, &l);
            let v = torus_verdict(p, &l, &t).unwrap();
            let (m, _) = enumerate_min(&states, &t, 3);
            match v.status {
                TorusStatus::Unstable => {
                    assert!(m.is_negative(), "pair {k} at t={t}: lp unstable, enum {m}")
                }
                _ => assert!(!m.is_negative(), "pair {k} at t={t}: lp nonneg, enum {m}"),
            }
            // and the LP minimum is a lower bound for the integer
            // enumeration after scaling into the box
            if v.min_value.is_negative() {
                assert!(m.is_negative());
            }
        }
    }
}

#[test]
fn transformed_smooth_pair_remains_torus_stable() {
    // a coordinate change makes every Pluecker coordinate and most
    // pencil minors nonzero; the LP still certifies strict positivity
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let p = random_smooth_pair(&mut rng);
    let l = coordinate_line(0, 1);
    let rows: Vec<Vec<Rat>> = vec![
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, 0, 0, 1],
        vec![1, 0, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 1, 0],
        vec![1, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 0, 1, 1],
    ]
    .into_iter()
    .map(|r| r.into_iter().map(delpezzo::rat_int).collect())
    .collect();
    let g = delpezzo::QMat::from_rows(rows).unwrap();
    assert!(g.inverse().is_some());
    let pm = p.apply_transform(&g).unwrap();
    let lm = l.apply_transform(&g).unwrap();
    assert!(lm.states().len() >= 12, "dense line states");
    let t = delpezzo::rat(15, 194);
    let v = torus_verdict(&pm, &lm, &t).unwrap();
    assert_eq!(v.status, TorusStatus::Stable);
}

#[test]
fn verdict_certificates_reverify() {
    let l = coordinate_line(0, 1);
    let pairs = mixed_pairs(32, 9);
    for p in &pairs {
        for t in [rat(1, 12), rat(15, 194), rat(2, 5)] {
            let v = pair_verdict(p, &l, &t).unwrap();
            assert!(verify_certificate(p, &l, &v), "t = {t}, verdict {:?}", v.status);
            if v.status == Status::Unstable {
                assert!(v.certificate.is_some());
            }
        }
    }
}

#[test]
fn torus_semistable_witnesses_verify() {
    let l = coordinate_line(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..6 {
        let p = random_smooth_pair(&mut rng);
        let t = rat(15, 194);
        let v = torus_verdict(&p, &l, &t).unwrap();
        match v.status {
            TorusStatus::Unstable => {
                let d = v.direction.unwrap();
                assert!(delpezzo::mu_t(&p, &l, &d, &t).is_negative());
            }
            _ => {
                let w = v.ss_witness.expect("witness accompanies semistability");
                assert!(w.verify(&t));
            }
        }
    }
}

#[test]
fn singular_pairs_destabilized_with_certificates() {
    let l = coordinate_line(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut n = 0;
    while n < 6 {
        let Some(p) = random_singular_on_line_pair(&mut rng) else {
            continue;
        };
        n += 1;
        for t in [rat(1, 100), rat(15, 194), rat(1, 3)] {
            let v = pair_verdict(&p, &l, &t).unwrap();
            assert_eq!(v.status, Status::Unstable, "t = {t}");
            assert!(verify_certificate(&p, &l, &v));
        }
    }
}

#[test]
fn decided_verdicts_are_frame_invariant() {
    // statuses decided by the structural rules (complete intersection,
    // singularities, discriminant, the no-wall range) are invariant
    // under simultaneous coordinate changes; only torus-decided outcomes
    // may degrade between frames, and Stable/structurally-Unstable never do
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let l = coordinate_line(0, 1);
    let g_rows: Vec<Vec<Rat>> = vec![
        vec![1, 0, 1, 0, 0, 1],
        vec![1, 1, 0, 0, 1, 0],
        vec![0, 1, 1, 1, 0, 0],
        vec![0, 0, 1, 1, 1, 0],
        vec![0, 1, 0, 0, 1, 1],
        vec![1, 0, 0, 1, 0, 1],
    ]
    .into_iter()
    .map(|r| r.into_iter().map(delpezzo::rat_int).collect())
    .collect();
    let g = delpezzo::QMat::from_rows(g_rows).unwrap();
    assert!(g.inverse().is_some());
    let t = delpezzo::rat(15, 194);
    for _ in 0..4 {
        let p = random_smooth_pair(&mut rng);
        let v0 = pair_verdict(&p, &l, &t).unwrap();
        assert_eq!(v0.status, Status::Stable);
        let pm = p.apply_transform(&g).unwrap();
        let lm = l.apply_transform(&g).unwrap();
        let v1 = pair_verdict(&pm, &lm, &t).unwrap();
        assert_eq!(v1.status, Status::Stable);
    }
    let mut n = 0;
    while n < 4 {
        let Some(p) = random_singular_on_line_pair(&mut rng) else {
            continue;
        };
        n += 1;
        let pm = p.apply_transform(&g).unwrap();
        let lm = l.apply_transform(&g).unwrap();
        let v1 = pair_verdict(&pm, &lm, &t).unwrap();
        assert_eq!(v1.status, Status::Unstable);
        assert!(verify_certificate(&pm, &lm, &v1));
    }
}

#[test]
fn degenerate_pairs_unstable_in_proved_range() {
    let l = coordinate_line(0, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let mut n = 0;
    while n < 6 {
        let Some(p) = random_degenerate_pair(&mut rng) else {
            continue;
        };
        n += 1;
        let t = rat(1, 20);
        let v = pair_verdict(&p, &l, &t).unwrap();
        assert_eq!(v.status, Status::Unstable);
        assert!(verify_certificate(&p, &l, &v));
    }
}
