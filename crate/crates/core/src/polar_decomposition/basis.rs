use std::f64::consts::{PI, TAU};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// The annulus `r < |z - center| < lambda r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnulusSpec {
    pub center: C64,
    pub r: f64,
    pub lambda: f64,
}

impl AnnulusSpec {
    pub fn new(center: C64, r: f64, lambda: f64) -> Result<Self> {
        if !(r > 0.0 && r.is_finite()) || !(lambda > 1.0 && lambda.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "annulus needs r > 0 and lambda > 1 (got r = {r}, lambda = {lambda})"
            )));
        }
        Ok(AnnulusSpec { center, r, lambda })
    }

    /// Geometric-mean radius `sqrt(lambda) r`.
    pub fn mid_radius(&self) -> f64 {
        self.lambda.sqrt() * self.r
    }

    pub fn outer(&self) -> f64 {
        self.lambda * self.r
    }
}

/// `||phi_k||` for `phi_k = (z - omega)^k` on `A(omega; lambda, r)`:
/// `sqrt((lambda^(2k+2) - 1) / (k + 1)) r^(k+1)`, and `sqrt(2 log lambda)`
/// at `k = -1`, the limit of the first expression.
pub fn basis_norm(k: i32, r: f64, lambda: f64) -> f64 {
    let ln_l = lambda.ln();
    let sq = if k == -1 {
        2.0 * ln_l
    } else {
        let e = (2 * k + 2) as f64;
        (e * ln_l).exp_m1() / (k + 1) as f64
    };
    (sq.ln() * 0.5 + (k + 1) as f64 * r.ln()).exp()
}

/// `C(lambda, k) = pi (lambda^2 - 1) sqrt((k + 1) / (lambda^(2k+2) - 1))`,
/// with its limit `pi (lambda^2 - 1) / sqrt(2 log lambda)` at `k = -1`.
pub fn c_lambda(lambda: f64, k: i32) -> f64 {
    PI * (lambda * lambda - 1.0) / basis_norm(k, 1.0, lambda)
}

/// `s(lambda) = sum_{k<0} C(lambda, k) lambda^k`, summed until a term falls
/// below `1e-16` of the running total.
pub fn s_lambda(lambda: f64) -> f64 {
    let mut total = 0.0;
    let mut k = -1;
    loop {
        let term = c_lambda(lambda, k) * lambda.powi(k);
        total += term;
        if term < 1e-16 * total {
            return total;
        }
        k -= 1;
    }
}

/// `s(lambda) / (pi sqrt(lambda^2 - 1))`: the constant with
/// `sup_{|z - omega| >= lambda r} |f_omega| <= s~(lambda) |f|` for every `r`.
pub fn s_lambda_scale_free(lambda: f64) -> f64 {
    s_lambda(lambda) / (PI * (lambda * lambda - 1.0).sqrt())
}

/// `<f, g> = (1/pi) ∫∫_A f conj(g) dA` by Gauss-Legendre in the radius
/// (`radial` nodes) and the trapezoid rule in the angle (`angular` nodes).
pub fn inner_product<F, G>(f: F, g: G, ann: &AnnulusSpec, radial: usize, angular: usize) -> C64
where
    F: Fn(C64) -> C64,
    G: Fn(C64) -> C64,
{
    let rule = GaussLegendre::new(NonZeroUsize::new(radial.max(1)).unwrap());
    let (a, b) = (ann.r, ann.outer());
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut total = C64::new(0.0, 0.0);
    for &(x, w) in rule.as_node_weight_pairs() {
        let rho = mid + half * x;
        let ring: C64 = (0..angular)
            .map(|j| {
                let z = ann.center + C64::from_polar(rho, TAU * j as f64 / angular as f64);
                f(z) * g(z).conj()
            })
            .sum();
        total += ring * (TAU / angular as f64) * rho * w * half;
    }
    total / PI
}
