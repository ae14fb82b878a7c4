use std::f64::consts::{PI, TAU};

use super::validate_x;
use crate::numeric::Envelope;
use crate::series_engine::{simple_pole_derivative, SimplePole, TermSequence};
use crate::stack_geometry::{root_of_unity, Perforation};
use crate::{Error, Result, C64};

/// Boundary points per removed circle when certifying `sup |f_n|`.
pub const NORM_SAMPLES: usize = 1024;
const NORM_INFLATION: f64 = 1.01;

/// Euler q-logarithm `f_n(z) = x^(n - s) / (z^n - 1)` with poles at the n-th
/// roots of unity.
///
/// `s = 0` gives `L(x, z) = sum x^n / (z^n - 1)`; `s = 1` gives the variant
/// `sum x^(n-1) / (z^n - 1)` whose value at `z = 0` is `-1 / (1 - x)`.
#[derive(Debug, Clone)]
pub struct QLogModel {
    pub x: C64,
    pub shift: u32,
    perforation: Perforation,
    envelope: Option<Envelope>,
}

/// `sum_{k=1}^{n-1} 1 / (2 sin(pi k / n)) <= (n/2)(1 + ln n)`.
fn harmonic_sine_bound(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    0.5 * nf * (1.0 + nf.ln())
}

/// `z^n - 1` without cancellation for `z` close to a root of unity.
fn pow_minus_one(z: C64, n: usize) -> C64 {
    let w = z - 1.0;
    if w.norm() > 0.5 {
        return z.powi(n as i32) - 1.0;
    }
    // n log(1 + w), then expm1
    let ln_abs = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let a = C64::new(ln_abs, z.arg()) * n as f64;
    let half = (a.im * 0.5).sin();
    C64::new(
        a.re.exp_m1() * a.im.cos() - 2.0 * half * half,
        a.re.exp() * a.im.sin(),
    )
}

impl QLogModel {
    pub fn new(x: C64, c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        Self::with_shift(x, 0, c, alpha, lambda)
    }

    /// The `x^(n-1)` numerator variant.
    pub fn shifted(x: C64, c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        Self::with_shift(x, 1, c, alpha, lambda)
    }

    pub fn with_shift(x: C64, shift: u32, c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        validate_x(x)?;
        if shift > 1 {
            return Err(Error::InvalidParameter(format!(
                "numerator shift {shift} not in {{0, 1}}"
            )));
        }
        let perforation = Perforation::roots_of_unity(c, alpha, lambda)?;
        let mut model = QLogModel {
            x,
            shift,
            perforation,
            envelope: None,
        };
        model.envelope = model.analytic_envelope();
        Ok(model)
    }

    fn numerator(&self, n: usize) -> C64 {
        self.x.powi(n as i32 - self.shift as i32)
    }

    /// On `|z - omega| = r` with `r` below half the gap to the other roots,
    /// `|z^n - 1| >= n r (1 - r H_n)`, `H_n = sum_k 1/|omega - omega_k|`.
    /// With `delta = sup_n r_n H_n < 1` this gives
    /// `sup |f_n| <= |x|^(n-s) n^(alpha-1) / (c (1 - delta))`.
    fn analytic_envelope(&self) -> Option<Envelope> {
        let (c, alpha) = self.perforation.radius.diophantine_params()?;
        let delta = if alpha > 1.0 {
            let peak = (1.0 / (alpha - 1.0) - 1.0).exp().ceil().max(2.0) as usize + 1;
            (1..=peak)
                .map(|n| c / (n as f64).powf(alpha) * harmonic_sine_bound(n))
                .fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        if delta >= 1.0 {
            return None;
        }
        let q = self.x.norm();
        let k = NORM_INFLATION * q.powi(-(self.shift as i32)) / (c * (1.0 - delta));
        Some(Envelope::new(k, alpha - 1.0, q))
    }

    /// Sampled `sup |z^n - 1|^(-1)` over the circle `|z - 1| = r_n`; every
    /// removed circle on the sheet is a rotation of this one.
    pub fn sampled_inverse_sup(&self, n: usize, samples: usize) -> f64 {
        let r = self.perforation.radius.value(n).unwrap_or(0.0);
        (0..samples)
            .map(|j| {
                let z = 1.0 + C64::from_polar(r, TAU * j as f64 / samples as f64);
                1.0 / pow_minus_one(z, n).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Fiber polar form `x^(n-s) (1/n) sum_k omega_k / (z - omega_k)`.
    pub fn fiber_form(&self, n: usize, z: C64) -> C64 {
        self.simple_poles(n)
            .unwrap()
            .iter()
            .map(|sp| sp.residue / (z - sp.pole))
            .sum()
    }
}

impl TermSequence for QLogModel {
    fn perforation(&self) -> &Perforation {
        &self.perforation
    }

    fn term(&self, n: usize, z: C64) -> C64 {
        let num = self.numerator(n);
        if z.norm() > 1.0 {
            let w = z.powi(-(n as i32));
            num * w / (1.0 - w)
        } else {
            num / pow_minus_one(z, n)
        }
    }

    fn derivative(&self, n: usize, k: usize, z: C64) -> C64 {
        if k == 0 {
            return self.term(n, z);
        }
        simple_pole_derivative(&self.simple_poles(n).unwrap(), k, z)
    }

    /// Maximum principle: `|f_n|` vanishes at infinity, so its sup over the
    /// perforated sheet is attained on a removed circle. Sampled at
    /// [`NORM_SAMPLES`] points and inflated by 1%.
    fn norm_bound(&self, n: usize) -> f64 {
        NORM_INFLATION * self.numerator(n).norm() * self.sampled_inverse_sup(n, NORM_SAMPLES)
    }

    fn envelope(&self) -> Option<Envelope> {
        self.envelope
    }

    fn simple_poles(&self, n: usize) -> Option<Vec<SimplePole>> {
        let scale = self.numerator(n) / n as f64;
        Some(
            (0..n)
                .map(|k| {
                    let w = root_of_unity(n, k);
                    SimplePole {
                        residue: scale * w,
                        pole: w,
                    }
                })
                .collect(),
        )
    }

    fn residue_at(&self, n: usize, pole: C64) -> Option<C64> {
        let k = (pole.arg() / TAU * n as f64).round();
        let w = C64::from_polar(1.0, TAU * k / n as f64);
        ((w - pole).norm() <= 1e-12 * PI).then(|| self.numerator(n) / n as f64 * w)
    }
}
