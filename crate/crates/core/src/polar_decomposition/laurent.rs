use std::f64::consts::TAU;

use serde::Serialize;

use super::basis::{basis_norm, inner_product, s_lambda, s_lambda_scale_free, AnnulusSpec};
use crate::{Error, Result, C64};

const MAX_DOUBLINGS: usize = 6;

/// Laurent coefficients `c_k`, `k_min <= k <= k_max`, about `center`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentExpansion {
    pub center: C64,
    pub k_min: i32,
    pub k_max: i32,
    pub coefficients: Vec<C64>,
    /// Trapezoid nodes of the accepted rule and the circle radius used.
    pub nodes: usize,
    pub radius: f64,
}

impl LaurentExpansion {
    pub fn coefficient(&self, k: i32) -> C64 {
        if k < self.k_min || k > self.k_max {
            return C64::new(0.0, 0.0);
        }
        self.coefficients[(k - self.k_min) as usize]
    }

    pub fn evaluate(&self, z: C64) -> C64 {
        let w = z - self.center;
        (self.k_min..=self.k_max)
            .map(|k| self.coefficient(k) * w.powi(k))
            .sum()
    }
}

fn trapezoid(
    f: &dyn Fn(C64) -> C64,
    center: C64,
    radius: f64,
    k_min: i32,
    k_max: i32,
    m: usize,
) -> (Vec<C64>, f64) {
    let values: Vec<(C64, f64)> = (0..m)
        .map(|j| {
            let theta = TAU * j as f64 / m as f64;
            (f(center + C64::from_polar(radius, theta)), theta)
        })
        .collect();
    let scale = values.iter().map(|v| v.0.norm()).fold(0.0, f64::max);
    let coeffs = (k_min..=k_max)
        .map(|k| {
            let s: C64 = values
                .iter()
                .map(|&(v, theta)| v * C64::from_polar(1.0, -(k as f64) * theta))
                .sum();
            s / m as f64 * radius.powi(-k)
        })
        .collect();
    (coeffs, scale)
}

/// `c_k = (1/2 pi i) ∮ f(z) (z - omega)^(-k-1) dz` on `|z - omega| = sqrt(lambda) r`
/// by the trapezoid rule, doubling the node count until successive answers
/// differ by less than `1e-12` of the sampled sup (each `c_k` is compared
/// after scaling by `radius^k`).
pub fn laurent_coefficients<F: Fn(C64) -> C64>(
    f: F,
    ann: &AnnulusSpec,
    k_min: i32,
    k_max: i32,
) -> Result<LaurentExpansion> {
    laurent_coefficients_at(f, ann.center, ann.mid_radius(), k_min, k_max)
}

/// As [`laurent_coefficients`] on the circle of the given radius.
pub fn laurent_coefficients_at<F: Fn(C64) -> C64>(
    f: F,
    center: C64,
    radius: f64,
    k_min: i32,
    k_max: i32,
) -> Result<LaurentExpansion> {
    if k_min > k_max {
        return Err(Error::InvalidParameter(format!(
            "empty window [{k_min}, {k_max}]"
        )));
    }
    let width = (k_max - k_min + 1) as usize;
    let mut m = (2 * width).next_power_of_two().max(64);
    let (mut prev, _) = trapezoid(&f, center, radius, k_min, k_max, m);
    let mut change = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        m *= 2;
        let (next, scale) = trapezoid(&f, center, radius, k_min, k_max, m);
        change = (k_min..=k_max)
            .zip(next.iter().zip(&prev))
            .map(|(k, (a, b))| (a - b).norm() * radius.powi(k))
            .fold(0.0, f64::max);
        let converged = change < 1e-12 * scale || (scale == 0.0 && change == 0.0);
        prev = next;
        if converged && change.is_finite() {
            return Ok(LaurentExpansion {
                center,
                k_min,
                k_max,
                coefficients: prev,
                nodes: m,
                radius,
            });
        }
    }
    Err(Error::NonConvergent {
        doublings: MAX_DOUBLINGS,
        change,
    })
}

/// `c_k = <f, phi_k> / ||phi_k||^2` with the two-dimensional inner product.
pub fn laurent_coefficients_l2<F: Fn(C64) -> C64>(
    f: F,
    ann: &AnnulusSpec,
    k_min: i32,
    k_max: i32,
    radial: usize,
    angular: usize,
) -> Vec<C64> {
    (k_min..=k_max)
        .map(|k| {
            let ip = inner_product(&f, |z| (z - ann.center).powi(k), ann, radial, angular);
            ip / basis_norm(k, ann.r, ann.lambda).powi(2)
        })
        .collect()
}

/// Negative-index part `sum_{j>=1} c_{-j} (z - omega)^(-j)` of a Laurent series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarPart {
    pub annulus: AnnulusSpec,
    /// `c_{-1}, c_{-2}, ...`
    pub coefficients: Vec<C64>,
}

impl PolarPart {
    pub fn evaluate(&self, z: C64) -> C64 {
        let u = 1.0 / (z - self.annulus.center);
        self.coefficients
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| (acc + c) * u)
    }

    pub fn residue(&self) -> C64 {
        self.coefficients.first().copied().unwrap_or_default()
    }
}

/// Polar part on `A(omega; lambda, r)` from the window `[-64, 64]`, cut after
/// the last `c_{-j}` whose term on the outer circle, `|c_{-j}| (lambda r)^(-j)`,
/// reaches `1e-14 * scale` (quadrature noise sits near `1e-16 * scale`).
pub fn polar_part<F: Fn(C64) -> C64>(f: F, ann: &AnnulusSpec) -> Result<PolarPart> {
    let exp = laurent_coefficients(&f, ann, -64, 64)?;
    let scale = (0..256)
        .map(|j| f(ann.center + C64::from_polar(ann.mid_radius(), TAU * j as f64 / 256.0)).norm())
        .fold(0.0, f64::max);
    let negative: Vec<C64> = (1..=64).map(|j| exp.coefficient(-j)).collect();
    let keep = negative
        .iter()
        .enumerate()
        .rposition(|(i, c)| c.norm() * ann.outer().powi(-(i as i32 + 1)) >= 1e-14 * scale)
        .map_or(0, |i| i + 1);
    Ok(PolarPart {
        annulus: *ann,
        coefficients: negative[..keep].to_vec(),
    })
}

/// Sampled extension estimate for a polar part.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionReport {
    /// Sampled `sup |f|` over the closed annulus (both boundary circles).
    pub annulus_sup: f64,
    /// `(radius, sampled sup |f_omega|)` for each exterior circle.
    pub exterior: Vec<(f64, f64)>,
    /// `s(lambda) r |f|`.
    pub area_bound: f64,
    /// `s~(lambda) |f|`.
    pub scale_free_bound: f64,
}

impl ExtensionReport {
    pub fn exterior_sup(&self) -> f64 {
        self.exterior.iter().map(|e| e.1).fold(0.0, f64::max)
    }

    pub fn area_bound_holds(&self, slack: f64) -> bool {
        self.exterior_sup() <= self.area_bound + slack
    }

    pub fn scale_free_bound_holds(&self, slack: f64) -> bool {
        self.exterior_sup() <= self.scale_free_bound + slack
    }
}

/// Samples `|f|` on the annulus boundary and `|f_omega|` on the circles
/// `|z - omega| = lambda r, 2 lambda r, 10 lambda r`, `samples` points each.
pub fn extension_report<F: Fn(C64) -> C64>(
    f: F,
    polar: &PolarPart,
    samples: usize,
) -> ExtensionReport {
    let ann = polar.annulus;
    let circle = |radius: f64, g: &dyn Fn(C64) -> C64| -> f64 {
        (0..samples)
            .map(|j| {
                g(ann.center + C64::from_polar(radius, TAU * j as f64 / samples as f64)).norm()
            })
            .fold(0.0, f64::max)
    };
    let annulus_sup = circle(ann.r, &f).max(circle(ann.outer(), &f));
    let exterior = [1.0, 2.0, 10.0]
        .iter()
        .map(|m| {
            let radius = m * ann.outer();
            (radius, circle(radius, &|z| polar.evaluate(z)))
        })
        .collect();
    ExtensionReport {
        annulus_sup,
        exterior,
        area_bound: s_lambda(ann.lambda) * ann.r * annulus_sup,
        scale_free_bound: s_lambda_scale_free(ann.lambda) * annulus_sup,
    }
}
