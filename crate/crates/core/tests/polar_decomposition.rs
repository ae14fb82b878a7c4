use std::f64::consts::{PI, TAU};

use meandro::models::{MeanderModel, QLogModel};
use meandro::polar_decomposition::*;
use meandro::{Error, C64};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `||phi_k||^2 = 2 ∫_r^{lambda r} rho^(2k+1) d rho` by composite Simpson.
fn simpson_norm(k: i32, r: f64, lambda: f64) -> f64 {
    let n = 20_000;
    let (a, b) = (r, lambda * r);
    let h = (b - a) / n as f64;
    let g = |x: f64| x.powi(2 * k + 1);
    let mut s = g(a) + g(b);
    for i in 1..n {
        s += g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    (2.0 * s * h / 3.0).sqrt()
}

#[test]
fn basis_norm_examples() {
    assert!((basis_norm(-1, 0.37, 2.0) - (2.0 * 2f64.ln()).sqrt()).abs() < 1e-15);
    assert!((basis_norm(-1, 0.37, 2.0) - 1.17741).abs() < 1e-5);
    assert!((basis_norm(0, 1.0, 2.0) - 3f64.sqrt()).abs() < 1e-15);
    let k3 = basis_norm(-3, 1.0, 2.0);
    assert!((k3 - (15.0f64 / 32.0).sqrt()).abs() < 1e-15);
    assert!((k3 - simpson_norm(-3, 1.0, 2.0)).abs() < 1e-10);
}

#[test]
fn basis_norm_is_continuous_at_minus_one() {
    // the k != -1 formula evaluated at k = -1 +- h approaches sqrt(2 log lambda)
    let lambda: f64 = 1.5;
    let formula = |k: f64| ((lambda.powf(2.0 * k + 2.0) - 1.0) / (k + 1.0)).sqrt();
    for h in [1e-4, -1e-4] {
        assert!((formula(-1.0 + h) - basis_norm(-1, 1.0, lambda)).abs() < 1e-4);
    }
}

#[test]
fn quadrature_norms_and_orthogonality() {
    for &lambda in &[1.5, 2.0] {
        for &r in &[0.1, 1.0] {
            let ann = AnnulusSpec::new(c(0.3, -0.2), r, lambda).unwrap();
            for j in -10..=10 {
                let nj = basis_norm(j, r, lambda);
                let pj = |z: C64| (z - ann.center).powi(j);
                let self_ip = inner_product(pj, pj, &ann, 48, 64).re.sqrt();
                assert!(
                    (self_ip - nj).abs() <= 1e-8 * nj,
                    "k={j} lambda={lambda} r={r}"
                );
                assert!((simpson_norm(j, r, lambda) - nj).abs() <= 1e-8 * nj);
                for k in -10..=10 {
                    if k == j {
                        continue;
                    }
                    let ip = inner_product(pj, |z: C64| (z - ann.center).powi(k), &ann, 48, 64);
                    assert!(ip.norm() <= 1e-8 * nj * basis_norm(k, r, lambda));
                }
            }
        }
    }
}

#[test]
fn laurent_of_reciprocal() {
    let ann = AnnulusSpec::new(c(0.0, 0.0), 0.5, 2.0).unwrap();
    let e = laurent_coefficients(|z: C64| 1.0 / z, &ann, -8, 8).unwrap();
    for k in -8..=8 {
        let expect = if k == -1 { 1.0 } else { 0.0 };
        assert!((e.coefficient(k) - expect).norm() < 1e-12, "k={k}");
    }
}

#[test]
fn laurent_residue_of_cubic_sheet() {
    let ann = AnnulusSpec::new(c(1.0, 0.0), 0.05, 1.5).unwrap();
    let e = laurent_coefficients(|z: C64| 1.0 / (z.powi(3) - 1.0), &ann, -4, 4).unwrap();
    assert!((e.coefficient(-1) - 1.0 / 3.0).norm() < 1e-12);
    for k in -4..=-2 {
        assert!(e.coefficient(k).norm() < 1e-12);
    }
}

#[test]
fn polynomial_has_no_negative_part() {
    let ann = AnnulusSpec::new(c(0.2, 0.1), 0.3, 1.5).unwrap();
    let e = laurent_coefficients(|z: C64| z * z + 2.0, &ann, -10, 4).unwrap();
    for k in -10..0 {
        assert!(e.coefficient(k).norm() < 1e-12);
    }
    let p = polar_part(|z: C64| z * z + 2.0, &ann).unwrap();
    assert!(p.coefficients.is_empty());
}

#[test]
fn polar_part_examples() {
    let ann = AnnulusSpec::new(c(0.0, 0.0), 0.5, 2.0).unwrap();
    let p = polar_part(|z: C64| 1.0 / z + z, &ann).unwrap();
    assert_eq!(p.coefficients.len(), 1);
    assert!((p.residue() - 1.0).norm() < 1e-12);

    let x = c(0.5, 0.0);
    let w = C64::from_polar(1.0, TAU / 3.0);
    let ann = AnnulusSpec::new(w, 0.05, 1.5).unwrap();
    let p = polar_part(|z: C64| x.powi(3) / (z.powi(3) - 1.0), &ann).unwrap();
    assert_eq!(p.coefficients.len(), 1);
    assert!((p.residue() - x.powi(3) * w / 3.0).norm() < 1e-12);

    let f = |z: C64| 1.0 / z + 0.5 / (z * z) + 1.0 / (6.0 * z.powi(3));
    for &r in &[0.2, 0.6] {
        let ann = AnnulusSpec::new(c(0.0, 0.0), r, 1.5).unwrap();
        let p = polar_part(f, &ann).unwrap();
        assert_eq!(p.coefficients.len(), 3);
        for (got, want) in p.coefficients.iter().zip([1.0, 0.5, 1.0 / 6.0]) {
            assert!((got - want).norm() < 1e-12);
        }
    }
}

#[test]
fn l2_route_agrees_with_circle_quadrature() {
    let ann = AnnulusSpec::new(c(0.1, 0.0), 0.2, 2.0).unwrap();
    let f = |z: C64| 1.0 / (z - 0.15) + 2.0 / (z - c(0.1, 0.05)).powi(2) + z * z;
    let circle = laurent_coefficients(f, &ann, -4, 4).unwrap();
    let l2 = laurent_coefficients_l2(f, &ann, -4, 4, 64, 256);
    for (k, v) in (-4..=4).zip(&l2) {
        let scale = basis_norm(k, ann.r, ann.lambda);
        assert!((circle.coefficient(k) - v).norm() * scale < 1e-9, "k={k}");
    }
}

#[test]
fn two_radius_consistency_and_reconstruction() {
    let center = c(0.0, 0.0);
    let ann = AnnulusSpec::new(center, 0.3, 2.0).unwrap();
    let f = |z: C64| 1.0 / (z - 0.1) + c(0.5, 1.0) / (z + c(0.05, 0.1)).powi(3) + 1.0 / (z - 3.0);
    let a = laurent_coefficients(f, &ann, -20, 20).unwrap();
    let b = laurent_coefficients_at(f, center, 1.1 * ann.r, -20, 20).unwrap();
    for k in -20..=20 {
        let s = ann.r.powi(k);
        assert!(
            (a.coefficient(k) - b.coefficient(k)).norm() * s < 1e-10,
            "k={k}"
        );
    }
    let recon = laurent_coefficients(f, &ann, -64, 64).unwrap();
    let scale = (0..512)
        .map(|j| f(C64::from_polar(ann.mid_radius(), TAU * j as f64 / 512.0)).norm())
        .fold(0.0, f64::max);
    for j in 0..97 {
        let z = C64::from_polar(ann.mid_radius(), 0.37 + TAU * j as f64 / 97.0);
        assert!((f(z) - recon.evaluate(z)).norm() < 1e-8 * scale);
    }
}

#[test]
fn singularity_on_the_circle_does_not_converge() {
    let ann = AnnulusSpec::new(c(0.0, 0.0), 1.0, 4.0).unwrap();
    let near = c(2.0 + 1e-7, 0.0);
    let err = laurent_coefficients(|z: C64| 1.0 / (z - near), &ann, -2, 2).unwrap_err();
    assert!(matches!(err, Error::NonConvergent { doublings: 6, .. }));
}

#[test]
fn s_lambda_values() {
    // independent summation in closed form per term
    let direct = |l: f64| -> f64 {
        let mut s = PI * (l * l - 1.0) / (2.0 * l.ln()).sqrt() / l;
        for j in 2..4000 {
            let k = -(j as f64);
            s +=
                PI * (l * l - 1.0) * ((k + 1.0) / (l.powf(2.0 * k + 2.0) - 1.0)).sqrt() * l.powf(k);
        }
        s
    };
    for l in [1.5, 2.0] {
        assert!((s_lambda(l) - direct(l)).abs() < 1e-12 * direct(l));
    }
    assert!((s_lambda(2.0) - 10.7797).abs() < 1e-4);
    assert!((s_lambda(1.5) - 12.2597).abs() < 1e-4);
    let s101 = s_lambda(1.01);
    assert!(s101.is_finite() && s101 > 60.0);
    assert!(s_lambda(1.01) > s_lambda(1.1) && s_lambda(1.1) > s_lambda(1.5));
    let ratio = c_lambda(2.0, -100) / (PI * 3.0 * 100f64.sqrt());
    assert!((0.99..=1.01).contains(&ratio));
}

#[test]
fn area_constant_fails_for_a_small_simple_pole() {
    // f = 1/(z - w): |f| = 1/r on the annulus, |f_w| = 1/(lambda r) on the outer circle
    let ann = AnnulusSpec::new(c(0.0, 0.0), 0.05, 1.5).unwrap();
    let f = |z: C64| 1.0 / z;
    let p = polar_part(f, &ann).unwrap();
    let rep = extension_report(f, &p, 512);
    assert!(!rep.area_bound_holds(1e-9));
    assert!(rep.scale_free_bound_holds(1e-9));
    // at r >= 1/(lambda s(lambda)) the area constant suffices
    let ann = AnnulusSpec::new(c(0.0, 0.0), 0.06, 1.5).unwrap();
    let rep = extension_report(f, &polar_part(f, &ann).unwrap(), 512);
    assert!(rep.area_bound_holds(1e-9));
}

#[test]
#[allow(clippy::approx_constant)]
fn fiber_sum_at_one_matches_logarithm() {
    let model = QLogModel::new(c(0.5, 0.0), 0.05, 2.0, 1.5).unwrap();
    let r = fiber_polar_sum(&model, c(1.0, 0.0), c(2.0, 0.0), 1e-13).unwrap();
    assert!((r.value - 2f64.ln()).norm() < 1e-13);
    assert!((r.value.re - 0.693147).abs() < 1e-6);
}

#[test]
fn fiber_sum_single_sheet_meander() {
    let model = MeanderModel::new(c(0.5, 0.0), 0.1, 2.0, 1.5).unwrap();
    let z = c(0.3, 0.4);
    let r = fiber_polar_sum(&model, c(-0.2, 0.0), z, 1e-14).unwrap();
    let term = 0.5f64.powi(5) / (1.0 + 5.0 * z);
    assert!((r.value - term).norm() < 1e-15);
}

#[test]
fn fiber_sum_cube_root_matches_brute_force() {
    let x = c(0.9, 0.0);
    let model = QLogModel::new(x, 0.05, 2.0, 1.5).unwrap();
    let w = C64::from_polar(1.0, TAU / 3.0);
    let z = c(0.2, 1.3);
    let r = fiber_polar_sum(&model, w, z, 1e-12).unwrap();
    let brute: C64 = (1..=1000)
        .map(|j| {
            let n = 3 * j;
            x.powi(n) * w / (n as f64 * (z - w))
        })
        .sum();
    assert!((r.value - brute).norm() < 1e-12);
}

#[test]
fn fiber_sum_inside_removed_disc_is_rejected() {
    let model = QLogModel::new(c(0.5, 0.0), 0.05, 2.0, 1.5).unwrap();
    let err = fiber_polar_sum(&model, c(1.0, 0.0), c(1.01, 0.0), 1e-10).unwrap_err();
    assert!(matches!(err, Error::PoleProximity { sheet: 1, .. }));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scale_free_extension_bound_holds(
        r in 0.01f64..1.0, lambda in 1.2f64..3.0,
        a_re in -1.0f64..1.0, a_im in -1.0f64..1.0, b in -1.0f64..1.0,
        pr in 0.0f64..0.9, pa in 0.0f64..TAU, far in 2.0f64..5.0,
    ) {
        let center = c(0.1, -0.3);
        let inner = center + C64::from_polar(pr * r, pa);
        let outside = center + C64::from_polar(far * lambda * r, pa + 1.0);
        let a = c(a_re, a_im);
        let f = move |z: C64| a / (z - inner) + b / (z - center).powi(2) + 1.0 / (z - outside);
        let ann = AnnulusSpec::new(center, r, lambda).unwrap();
        let p = polar_part(f, &ann).unwrap();
        let rep = extension_report(f, &p, 2048);
        prop_assert!(rep.scale_free_bound_holds(1e-9 * rep.annulus_sup.max(1.0)));
    }
}
