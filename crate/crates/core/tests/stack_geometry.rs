use std::collections::BTreeMap;

use meandro::stack_geometry::*;
use meandro::{Error, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn residual_membership_trivial_cases() {
    let p = Perforation::roots_of_unity(0.1, 2.0, 1.5).unwrap();
    assert_eq!(
        p.residual_membership(c(0.0, 0.0), 1000, 0.0),
        Membership::In
    );
    assert_eq!(
        p.residual_membership(c(1.0, 0.0), 1000, 0.0),
        Membership::Out {
            sheet: 1,
            pole: c(1.0, 0.0)
        }
    );
    // on the unit circle the tail cannot be discharged
    let z = C64::from_polar(1.0, std::f64::consts::TAU * 2f64.sqrt());
    assert_eq!(
        p.residual_membership(z, 100, 0.0),
        Membership::Unknown { verified_to: 100 }
    );
}

#[test]
fn residual_membership_off_circle_matches_direct_scan() {
    let p = Perforation::roots_of_unity(0.05, 2.0, 1.5).unwrap();
    let z = C64::from_polar(1.05, std::f64::consts::TAU * 2f64.sqrt());
    let verdict = p.residual_membership(z, 100_000, 0.0);
    // oracle: brute force over every root for n <= 2000, and |z| - 1 beyond
    let mut oracle_in = true;
    for n in 1..=2000usize {
        let r = 0.05 / (n * n) as f64;
        if (0..n).any(|k| (z - root_of_unity(n, k)).norm() < r) {
            oracle_in = false;
        }
    }
    assert!(oracle_in && 0.05 >= 0.05 / (2001.0f64 * 2001.0));
    assert_eq!(verdict, Membership::In);
}

#[test]
fn residual_membership_meander_tail() {
    let p = Perforation::meander(0.1, 2.0, 1.5).unwrap();
    assert_eq!(p.residual_membership(c(0.1, 0.0), 50, 0.0), Membership::In);
    assert!(matches!(
        p.residual_membership(c(-0.5, 0.001), 50, 0.0),
        Membership::Out { sheet: 2, .. }
    ));
    // near the accumulation point the tail is inconclusive at a small cutoff
    assert_eq!(
        p.residual_membership(c(-1e-4, 1e-9), 10, 0.0),
        Membership::Unknown { verified_to: 10 }
    );
}

#[test]
fn explicit_radii_cannot_discharge_a_tail() {
    let table: BTreeMap<usize, f64> = (1..=5).map(|n| (n, 0.01)).collect();
    let p = Perforation::new(
        PoleFamily::RootsOfUnity,
        RadiusFunction::explicit(table, 1.5).unwrap(),
    )
    .unwrap();
    assert_eq!(
        p.residual_membership(c(0.0, 0.0), 5, 0.0),
        Membership::Unknown { verified_to: 5 }
    );
}

#[test]
fn cauchy_check_meander_verified() {
    let p = Perforation::meander(0.1, 2.0, 1.5).unwrap();
    assert_eq!(p.cauchy_radius_check(100), CauchyStatus::VerifiedTo(100));
    let p = p.with_cauchy_check(100);
    assert_eq!(p.cauchy, CauchyStatus::VerifiedTo(100));
}

/// Independent pairwise scan over every pole pair on sheets `<= cutoff`.
fn pairwise_oracle(c0: f64, lambda: f64, cutoff: usize) -> f64 {
    let mut poles = Vec::new();
    for n in 1..=cutoff {
        for k in 0..n {
            poles.push((root_of_unity(n, k), lambda * c0 / (n * n) as f64));
        }
    }
    let mut slack = f64::INFINITY;
    for i in 0..poles.len() {
        for j in i + 1..poles.len() {
            let d = (poles[i].0 - poles[j].0).norm();
            if d > 1e-12 {
                slack = slack.min(d - poles[i].1 - poles[j].1);
            }
        }
    }
    slack
}

#[test]
fn cauchy_check_qlog_against_pairwise_scan() {
    for &(c0, expect_refuted) in &[(0.4, false), (0.7, true), (0.05, false)] {
        let p = Perforation::roots_of_unity(c0, 2.0, 1.5).unwrap();
        let status = p.cauchy_radius_check(6);
        let slack = pairwise_oracle(c0, 1.5, 6);
        assert_eq!(slack <= 0.0, expect_refuted, "c = {c0}, slack {slack}");
        match status {
            CauchyStatus::Refuted { gap, required, .. } => {
                assert!(expect_refuted);
                assert!(gap <= required);
            }
            CauchyStatus::VerifiedTo(6) => assert!(!expect_refuted),
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn cauchy_check_tiny_radius_single_pole_sheets() {
    let poles: BTreeMap<usize, Vec<C64>> = (1..=30)
        .map(|n| (n, vec![c(n as f64 * 0.37 % 1.0, 0.2)]))
        .collect();
    let table = (1..=30).map(|n| (n, 1e-6)).collect();
    let p = Perforation::new(
        PoleFamily::Explicit(poles),
        RadiusFunction::explicit(table, 1.5).unwrap(),
    )
    .unwrap();
    assert_eq!(p.cauchy_radius_check(30), CauchyStatus::VerifiedTo(30));
}

#[test]
fn shrink_check_single_pole() {
    let poles = BTreeMap::from([(1usize, vec![c(0.0, 0.0)])]);
    let table = BTreeMap::from([(1usize, 0.1)]);
    let p = Perforation::new(
        PoleFamily::Explicit(poles),
        RadiusFunction::explicit(table, 1.5).unwrap(),
    )
    .unwrap();
    let report = p
        .shrink_check(
            &Region::disc(c(0.0, 0.0), 1.0),
            &Region::disc(c(0.0, 0.0), 2.0),
            1,
            1024,
        )
        .unwrap();
    assert!(report.clearance >= 0.05 - 1e-9);
}

#[test]
fn shrink_check_qlog_sheets() {
    let p = Perforation::roots_of_unity(0.05, 2.0, 1.5).unwrap();
    let u = Region::disc(c(0.0, 0.0), 1.2);
    let v = Region::disc(c(0.0, 0.0), 1.8);
    for n in 1..=20 {
        let report = p.shrink_check(&u, &v, n, 1024).unwrap();
        let r = 0.05 / (n * n) as f64;
        assert!(report.clearance >= 0.5 * r - 1e-9);
        // oracle: the clearance on the inflated circle equals eps r exactly
        assert!((report.clearance - 0.5 * r).abs() < 1e-9);
    }
}

#[test]
fn shrink_check_detects_overlapping_inflated_discs() {
    let poles = BTreeMap::from([(1usize, vec![c(0.0, 0.0), c(0.15, 0.0)])]);
    let table = BTreeMap::from([(1usize, 0.1)]);
    let p = Perforation::new(
        PoleFamily::Explicit(poles),
        RadiusFunction::explicit(table, 1.5).unwrap(),
    )
    .unwrap();
    let err = p
        .shrink_check(
            &Region::disc(c(0.0, 0.0), 1.0),
            &Region::disc(c(0.0, 0.0), 2.0),
            1,
            1024,
        )
        .unwrap_err();
    assert!(matches!(err, Error::MarginViolated { .. }));
}

#[test]
fn shrink_check_requires_huygens_margin() {
    let p = Perforation::roots_of_unity(0.05, 2.0, 1.5).unwrap();
    let err = p
        .shrink_check(
            &Region::disc(c(0.0, 0.0), 1.5),
            &Region::disc(c(0.0, 0.0), 1.8),
            3,
            1024,
        )
        .unwrap_err();
    assert!(matches!(err, Error::HuygensTooSmall { .. }));
}

#[test]
fn diophantine_validation() {
    assert!(RadiusFunction::diophantine(0.0, 2.0, 1.5).is_err());
    assert!(RadiusFunction::diophantine(0.1, 0.5, 1.5).is_err());
    assert!(RadiusFunction::diophantine(0.1, 2.0, 1.0).is_err());
    let r = RadiusFunction::diophantine(0.1, 2.0, 1.5).unwrap();
    assert_eq!(r.value(10), Some(0.1 / 100.0));
    assert_eq!(r.epsilon(), 0.5);
}

#[test]
fn duplicate_explicit_poles_rejected() {
    let poles = BTreeMap::from([(2usize, vec![c(0.3, 0.0), c(0.3, 0.0)])]);
    let table = BTreeMap::from([(2usize, 0.01)]);
    assert!(Perforation::new(
        PoleFamily::Explicit(poles),
        RadiusFunction::explicit(table, 1.5).unwrap()
    )
    .is_err());
}

proptest! {
    #[test]
    fn angle_rounding_matches_brute_force(n in 1usize..=512, re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let z = c(re, im);
        let fast = nearest_root_of_unity(n, z);
        let brute = (0..n)
            .map(|k| root_of_unity(n, k))
            .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm()))
            .unwrap();
        prop_assert!(((fast - z).norm() - (brute - z).norm()).abs() < 1e-12);
    }

    #[test]
    fn membership_monotone_in_margin(re in -1.5f64..1.5, im in -1.5f64..1.5, m in 0.0f64..2.0, t in 0.0f64..1.0) {
        let p = Perforation::roots_of_unity(0.1, 2.0, 1.5).unwrap();
        let z = c(re, im);
        if p.residual_membership(z, 200, m) == Membership::In {
            prop_assert_eq!(p.residual_membership(z, 200, m * t), Membership::In);
        }
    }

    #[test]
    fn huygens_monotone_under_shrinking_outer_disc(
        ux in -0.3f64..0.3, ur in 0.05f64..0.3, wr in 1.0f64..2.0, extra in 0.0f64..1.0
    ) {
        let u = Region::disc(c(ux, 0.1), ur);
        let w = Region::disc(c(0.0, 0.0), wr);
        let v = Region::disc(c(0.0, 0.0), wr + extra);
        prop_assert!(huygens_distance(&u, &v).unwrap() >= huygens_distance(&u, &w).unwrap());
    }
}
