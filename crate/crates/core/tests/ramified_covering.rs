use std::collections::BTreeMap;

use meandro::gevrey_asymptotics::gevrey_fit;
use meandro::models::{MeanderModel, QLogModel};
use meandro::numeric::Envelope;
use meandro::ramified_covering::*;
use meandro::series_engine::{derivative_sum, evaluate_sum, taylor_jet, SimplePole, TermSequence};
use meandro::stack_geometry::{Perforation, PoleFamily, RadiusFunction};
use meandro::{Error, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `x^n / (1 + n^2 z)`: poles `-1/n^2`, Taylor coefficients at 0 of size `(2k)!`.
struct SquareMeander {
    x: f64,
    c: f64,
    perforation: Perforation,
}

impl SquareMeander {
    fn new() -> Self {
        let poles: BTreeMap<usize, Vec<C64>> = (1..=4000)
            .map(|n| (n, vec![c(-1.0 / (n * n) as f64, 0.0)]))
            .collect();
        let radius = RadiusFunction::diophantine(0.1, 4.0, 1.5).unwrap();
        SquareMeander {
            x: 0.5,
            c: 0.1,
            perforation: Perforation::new(PoleFamily::Explicit(poles), radius).unwrap(),
        }
    }
}

impl TermSequence for SquareMeander {
    fn perforation(&self) -> &Perforation {
        &self.perforation
    }
    fn term(&self, n: usize, z: C64) -> C64 {
        let n2 = (n * n) as f64;
        self.x.powi(n as i32) / (1.0 + n2 * z)
    }
    fn derivative(&self, n: usize, k: usize, z: C64) -> C64 {
        meandro::series_engine::simple_pole_derivative(&self.simple_poles(n).unwrap(), k, z)
    }
    fn poles(&self, n: usize) -> Vec<C64> {
        vec![c(-1.0 / (n * n) as f64, 0.0)]
    }
    // |1 + n^2 z| >= n^2 r_n off the disc
    fn norm_bound(&self, n: usize) -> f64 {
        self.x.powi(n as i32) * (n as f64).powi(2) / self.c
    }
    fn envelope(&self) -> Option<Envelope> {
        Some(Envelope::new(1.0 / self.c, 2.0, self.x))
    }
    fn simple_poles(&self, n: usize) -> Option<Vec<SimplePole>> {
        let n2 = (n * n) as f64;
        Some(vec![SimplePole {
            residue: c(self.x.powi(n as i32) / n2, 0.0),
            pole: c(-1.0 / n2, 0.0),
        }])
    }
}

#[test]
fn induced_radii_examples() {
    let (s, rho) = induced_radii(0.01, 2).unwrap();
    assert!((rho - 0.01 / 3.0).abs() < 1e-18);
    assert!((s - 2.0 * 0.01f64.powf(1.5) / 3.0).abs() < 1e-17);
    assert!((s / rho - 2.0 * 0.01f64.sqrt()).abs() <= 4.0 * f64::EPSILON);

    let (s, rho) = induced_radii(1e-3, 3).unwrap();
    assert!((rho - 1e-3 / 7.0).abs() < 1e-19);
    assert!((s - 3.0 * 1e-3f64.powf(5.0 / 3.0) / 7.0).abs() < 1e-18);

    assert_eq!(induced_radii(0.2, 1).unwrap(), (0.2, 0.2));
    assert!(matches!(
        induced_radii(0.0, 2),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        induced_radii(1.5, 2),
        Err(Error::InvalidParameter(_))
    ));
    assert!(matches!(
        induced_radii(0.1, 0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn degree_one_margins_vanish() {
    let rep = inclusion_check(c(0.5, 0.2), 0.05, 1, 512).unwrap();
    assert!(rep.passed);
    assert!(rep.inner_margin.abs() < 1e-15 && rep.outer_margin.abs() < 1e-15);
}

#[test]
fn inclusions_hold_on_admissible_grid() {
    for beta in [2u32, 3] {
        for r in [1e-2, 1e-3] {
            for modulus in [0.2, 0.5, 0.9, 1.0] {
                for arg in [0.0, 0.7, 2.0, -2.5] {
                    let omega = C64::from_polar(modulus, arg);
                    match inclusion_check(omega, r, beta, 1024) {
                        Ok(rep) => {
                            assert!(rep.passed, "beta {beta} r {r} omega {omega}: {rep:?}");
                            assert!(rep.outer_margin > 0.0 && rep.inner_margin > 0.0);
                        }
                        // only the cell with |omega|^3 = 0.008 < r is excluded
                        Err(Error::HypothesisViolated(_)) => {
                            assert!(beta == 3 && r == 1e-2 && modulus == 0.2)
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}

#[test]
fn hypotheses_are_enforced() {
    assert!(matches!(
        inclusion_check(c(1.1, 0.0), 1e-3, 2, 64),
        Err(Error::HypothesisViolated(_))
    ));
    // r >= |eta|
    assert!(matches!(
        inclusion_check(c(0.05, 0.0), 1e-2, 2, 64),
        Err(Error::HypothesisViolated(_))
    ));
    // 0 in D(omega, rho)
    assert!(matches!(
        inclusion_check(c(0.01, 0.0), 0.05, 1, 64),
        Err(Error::HypothesisViolated(_))
    ));
    // without the gate the inner inclusion can fail
    let rep = inclusion_margins(c(0.2, 0.0), 1e-2, 3, 1024).unwrap();
    assert!(rep.inner_margin.is_finite());
}

#[test]
fn pullback_radius_inverts_inner_radius() {
    for beta in 1..=4u32 {
        for r in [1e-1, 1e-3, 1e-6] {
            let rho = pullback_radius(r, beta);
            let big_r = rho * (2f64.powi(beta as i32) - 1.0);
            let (s, rho2) = induced_radii(big_r, beta).unwrap();
            assert!((s - r).abs() <= 1e-12 * r);
            assert!((rho2 - rho).abs() <= 1e-12 * rho);
        }
    }
}

#[test]
fn degree_one_pullback_is_identity() {
    let base = MeanderModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
    let p = pullback_model(&base, 1).unwrap();
    assert_eq!(
        p.perforation().radius.diophantine_params(),
        Some((0.1, 2.0))
    );
    for z in [c(0.3, 0.1), c(-0.7, 0.4), c(2.0, -1.0)] {
        let a = evaluate_sum(&base, z, 1e-13).unwrap().value;
        let b = evaluate_sum(&p, z, 1e-13).unwrap().value;
        assert_eq!(a, b);
    }
}

#[test]
fn meander_pullback_poles_and_values() {
    let base = MeanderModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
    let p = pullback_model(&base, 2).unwrap();
    for n in [1usize, 4, 9, 10] {
        let mut poles = p.poles(n);
        poles.sort_by(|a, b| a.im.total_cmp(&b.im));
        let h = 1.0 / (n as f64).sqrt();
        assert!((poles[0] - c(0.0, -h)).norm() < 1e-15);
        assert!((poles[1] - c(0.0, h)).norm() < 1e-15);
    }
    let (cp, ap) = p.perforation().radius.diophantine_params().unwrap();
    assert!((ap - 4.0 / 3.0).abs() < 1e-15);
    assert!((cp - (0.15f64).powf(2.0 / 3.0) / 3.0).abs() < 1e-15);

    let f = evaluate_sum(&base, c(0.09, 0.0), 1e-13).unwrap();
    let g = evaluate_sum(&p, c(0.3, 0.0), 1e-13).unwrap();
    assert!((f.value - g.value).norm() <= f.tail_bound + g.tail_bound + 1e-15);
}

#[test]
fn pullback_derivatives_match_finite_differences() {
    let base = MeanderModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
    let p = pullback_model(&base, 3).unwrap();
    let w = c(0.6, 0.35);
    let h = 1e-5;
    for n in [1usize, 2, 7] {
        let fd = (p.term(n, w + h) - p.term(n, w - h)) / (2.0 * h);
        let d = p.derivative(n, 1, w);
        assert!(
            (fd - d).norm() < 1e-8 * (1.0 + d.norm()),
            "n {n}: {fd} vs {d}"
        );
        let fd2 = (p.term(n, w + h) - 2.0 * p.term(n, w) + p.term(n, w - h)) / (h * h);
        let d2 = p.derivative(n, 2, w);
        assert!((fd2 - d2).norm() < 1e-4 * (1.0 + d2.norm()));
    }
    let s = derivative_sum(&p, w, 1, 1e-12).unwrap();
    let fd = (evaluate_sum(&p, w + h, 1e-14).unwrap().value
        - evaluate_sum(&p, w - h, 1e-14).unwrap().value)
        / (2.0 * h);
    assert!((s.value - fd).norm() < 1e-7);
}

#[test]
fn qlog_pullback_is_even() {
    let base = QLogModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
    let p = pullback_model(&base, 2).unwrap();
    let jet = taylor_jet(&p, c(0.0, 0.0), 9, 1e-13).unwrap();
    let base_jet = taylor_jet(&base, c(0.0, 0.0), 4, 1e-13).unwrap();
    for k in 0..=9 {
        if k % 2 == 1 {
            assert!(
                jet.coefficients[k].norm() < 1e-12,
                "a_{k} = {}",
                jet.coefficients[k]
            );
        } else {
            let want = base_jet.coefficients[k / 2];
            assert!((jet.coefficients[k] - want).norm() < 1e-11 * (1.0 + want.norm()));
        }
    }
}

#[test]
fn gevrey_class_drops_by_the_degree() {
    let base = SquareMeander::new();
    let base_jet = taylor_jet(&base, c(0.0, 0.0), 15, 1e-12).unwrap();
    let fit = gevrey_fit(&base_jet.coefficients, (3, 15)).unwrap();
    assert!((fit.alpha - 2.0).abs() < 0.2, "{fit:?}");

    let p = pullback_model(&base, 2).unwrap();
    let jet = taylor_jet(&p, c(0.0, 0.0), 30, 1e-12).unwrap();
    let mut even = jet.coefficients.clone();
    for k in (1..=30).step_by(2) {
        // odd coefficients are cancellation noise of the two conjugate roots
        assert!(even[k].norm() <= 1e-12 * even[k - 1].norm().max(even[k + 1].norm()));
        even[k] = c(0.0, 0.0);
    }
    let fit = gevrey_fit(&even, (6, 30)).unwrap();
    assert!((fit.alpha - 1.0).abs() < 0.2, "{fit:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_commutes_with_evaluation(re in -1.2f64..1.2, im in -1.2f64..1.2, beta in 1u32..4) {
        let base = MeanderModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
        let p = pullback_model(&base, beta).unwrap();
        let w = c(re, im);
        match (evaluate_sum(&p, w, 1e-12), evaluate_sum(&base, w.powi(beta as i32), 1e-12)) {
            (Ok(a), Ok(b)) => prop_assert!((a.value - b.value).norm() <= a.tail_bound + b.tail_bound + 1e-13 * (1.0 + b.value.norm())),
            // the complement of the pulled-back discs maps off the base discs
            (Ok(a), Err(b)) => prop_assert!(false, "{a:?} {b:?}"),
            (Err(Error::PoleProximity { .. }), _) => {}
            (a, b) => prop_assert!(false, "{a:?} {b:?}"),
        }
    }

    #[test]
    fn inclusions_hold_for_random_centres(modulus in 0.3f64..1.0, arg in -3.1f64..3.1, lr in -4.0f64..-2.0, beta in 2u32..5) {
        let r = 10f64.powf(lr);
        let omega = C64::from_polar(modulus, arg);
        prop_assume!(r < modulus.powi(beta as i32));
        let rep = inclusion_check(omega, r, beta, 512).unwrap();
        prop_assert!(rep.passed, "{rep:?}");
    }
}
