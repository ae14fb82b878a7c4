//! Small numerical kernels shared by the summation, quadrature and fitting code:
//! compensated accumulation, log-scaled complex accumulation for terms far
//! outside the `f64` exponent range, and polynomial-times-geometric envelopes
//! with rigorous tail sums.

use crate::C64;

/// Neumaier (improved Kahan) accumulator for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Componentwise Neumaier accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: C64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

/// A complex number stored as `mantissa * exp(ln_scale)`.
///
/// Used where individual terms such as `x^n (n z)^m` over- or underflow `f64`
/// long before the quantity of interest does.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: C64,
    pub ln_scale: f64,
}

impl Scaled {
    pub const ZERO: Scaled = Scaled {
        mantissa: C64 { re: 0.0, im: 0.0 },
        ln_scale: f64::NEG_INFINITY,
    };

    /// `exp(ln_abs) * exp(i arg)`.
    pub fn from_polar_ln(ln_abs: f64, arg: f64) -> Self {
        if ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Scaled {
            mantissa: C64::from_polar(1.0, arg),
            ln_scale: ln_abs,
        }
    }

    pub fn from_complex(z: C64) -> Self {
        if z == C64::new(0.0, 0.0) {
            Self::ZERO
        } else {
            Self::from_polar_ln(z.norm().ln(), z.arg())
        }
    }

    /// `z^m` without overflow.
    pub fn powi(z: C64, m: usize) -> Self {
        if m == 0 {
            return Scaled::from_complex(C64::new(1.0, 0.0));
        }
        if z == C64::new(0.0, 0.0) {
            return Self::ZERO;
        }
        Self::from_polar_ln(m as f64 * z.norm().ln(), m as f64 * z.arg())
    }

    pub fn ln_abs(&self) -> f64 {
        if self.mantissa == C64::new(0.0, 0.0) {
            f64::NEG_INFINITY
        } else {
            self.ln_scale + self.mantissa.norm().ln()
        }
    }

    pub fn scale(self, factor: C64) -> Scaled {
        self * Scaled::from_complex(factor)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == C64::new(0.0, 0.0) || self.ln_scale == f64::NEG_INFINITY
    }

    /// Collapses to an ordinary complex number (may under- or overflow).
    pub fn to_complex(&self) -> C64 {
        if self.is_zero() {
            C64::new(0.0, 0.0)
        } else {
            self.mantissa * self.ln_scale.exp()
        }
    }

    fn normalized(self) -> Scaled {
        let a = self.mantissa.norm();
        if a == 0.0 || !a.is_finite() {
            return self;
        }
        Scaled {
            mantissa: self.mantissa / a,
            ln_scale: self.ln_scale + a.ln(),
        }
    }
}

/// Accumulates [`Scaled`] terms, rescaling the running mantissa to the largest
/// magnitude seen so far.
#[derive(Debug, Clone, Copy)]
pub struct ScaledSum {
    mantissa: ComplexSum,
    ln_scale: f64,
}

impl Default for ScaledSum {
    fn default() -> Self {
        Self {
            mantissa: ComplexSum::new(),
            ln_scale: f64::NEG_INFINITY,
        }
    }
}

impl ScaledSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: Scaled) {
        if term.is_zero() {
            return;
        }
        let t = term.normalized();
        if t.ln_scale > self.ln_scale {
            let shrink = (self.ln_scale - t.ln_scale).exp();
            let current = self.mantissa.value() * shrink;
            self.mantissa = ComplexSum::new();
            self.mantissa.add(current);
            self.ln_scale = t.ln_scale;
        }
        self.mantissa
            .add(t.mantissa * (t.ln_scale - self.ln_scale).exp());
    }

    pub fn value(&self) -> Scaled {
        if self.ln_scale == f64::NEG_INFINITY {
            return Scaled::ZERO;
        }
        Scaled {
            mantissa: self.mantissa.value(),
            ln_scale: self.ln_scale,
        }
        .normalized()
    }
}

/// `ln(exp(a) + exp(b))` without overflow.
pub fn ln_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln k!` as an exact sum of logarithms (log-gamma at integer points).
pub fn ln_factorial(k: usize) -> f64 {
    let mut acc = CompensatedSum::new();
    for i in 2..=k {
        acc.add((i as f64).ln());
    }
    acc.value()
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Upper envelope `K * n^p * q^n` of a norm sequence, valid for every sheet
/// `n >= 1`. `K` is stored as its logarithm so that derivative envelopes with
/// factors like `k!/(eps c)^k` stay representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub ln_scale: f64,
    pub power: f64,
    pub ratio: f64,
}

impl Envelope {
    pub fn new(scale: f64, power: f64, ratio: f64) -> Self {
        Envelope {
            ln_scale: scale.ln(),
            power,
            ratio,
        }
    }

    pub fn ln_term(&self, n: usize) -> f64 {
        let n = n as f64;
        self.ln_scale + self.power * n.ln() + n * self.ratio.ln()
    }

    pub fn term(&self, n: usize) -> f64 {
        self.ln_term(n).exp()
    }

    /// Multiplies the envelope by `exp(ln_factor) * n^extra_power`.
    pub fn scaled(&self, ln_factor: f64, extra_power: f64) -> Envelope {
        Envelope {
            ln_scale: self.ln_scale + ln_factor,
            power: self.power + extra_power,
            ratio: self.ratio,
        }
    }

    /// First sheet from which consecutive terms shrink by a factor below one.
    fn decreasing_from(&self) -> Option<usize> {
        if !(self.ratio < 1.0) {
            return None;
        }
        if self.ratio <= 0.0 {
            return Some(1);
        }
        if self.power <= 0.0 {
            return Some(1);
        }
        // (1 + 1/n)^p q < 1  <=>  n > 1 / (q^(-1/p) - 1)
        let denom = self.ratio.powf(-1.0 / self.power) - 1.0;
        Some((1.0 / denom).floor() as usize + 1)
    }

    /// Logarithm of an upper bound for `sum_{n > after} K n^p q^n`.
    ///
    /// Terms are added explicitly until the consecutive ratio is close to `q`;
    /// the remainder is bounded by a geometric series with that ratio.
    /// Returns `+inf` when `q >= 1`.
    pub fn ln_tail(&self, after: usize) -> f64 {
        if self.ratio <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let Some(start) = self.decreasing_from() else {
            return f64::INFINITY;
        };
        let first = after + 1;
        let kappa_at = |n: usize| (1.0 + 1.0 / n as f64).powf(self.power) * self.ratio;
        // sum explicitly until the ratio bound is within a quarter of the gap
        // to q, which keeps the geometric overshoot below 4/3
        let target = self.ratio + 0.25 * (1.0 - self.ratio);
        let mut acc = f64::NEG_INFINITY;
        let mut n = first;
        while n < start || kappa_at(n) > target {
            acc = ln_add_exp(acc, self.ln_term(n));
            n += 1;
        }
        let kappa = kappa_at(n);
        let geometric = self.ln_term(n) - (1.0 - kappa).ln();
        ln_add_exp(acc, geometric)
    }

    pub fn tail(&self, after: usize) -> f64 {
        self.ln_tail(after).exp()
    }

    /// Meander certificate `K n^p q^n <= A rho^n` for the given `rho` in `(q, 1)`.
    pub fn meander_cert(&self, rho: f64) -> Option<MeanderCert> {
        if !(self.ratio < rho && rho < 1.0) {
            return None;
        }
        let ln_ratio = (self.ratio / rho).ln();
        let ln_value = |n: f64| self.power * n.ln() + n * ln_ratio;
        let mut best = ln_value(1.0);
        if self.power > 0.0 {
            let peak = -self.power / ln_ratio;
            for cand in [peak.floor(), peak.ceil()] {
                if cand >= 1.0 {
                    best = best.max(ln_value(cand));
                }
            }
        }
        Some(MeanderCert {
            a: (self.ln_scale + best).exp(),
            rho,
        })
    }
}

/// Meandromorphy certificate: `norm_bound(n) <= a * rho^n` for all sheets.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MeanderCert {
    pub a: f64,
    pub rho: f64,
}

impl MeanderCert {
    /// `a * rho^(after+1) / (1 - rho)`.
    pub fn tail(&self, after: usize) -> f64 {
        self.a * self.rho.powf(after as f64 + 1.0) / (1.0 - self.rho)
    }

    pub fn envelope(&self) -> Envelope {
        Envelope::new(self.a, 0.0, self.rho)
    }
}

/// Ordinary least squares with an R^2 report. `rows[i]` are the regressors of
/// observation `i`.
pub fn least_squares(rows: &[Vec<f64>], y: &[f64]) -> Option<(Vec<f64>, f64)> {
    let n = rows.len();
    let p = rows.first()?.len();
    if n < p || y.len() != n {
        return None;
    }
    let a = nalgebra::DMatrix::from_fn(n, p, |i, j| rows[i][j]);
    let b = nalgebra::DVector::from_column_slice(y);
    let svd = a.clone().svd(true, true);
    let beta = svd.solve(&b, 1e-14).ok()?;
    let fitted = &a * &beta;
    let mean = y.iter().sum::<f64>() / n as f64;
    let ss_tot: f64 = y.iter().map(|v| (v - mean).powi(2)).sum();
    let ss_res: f64 = y
        .iter()
        .zip(fitted.iter())
        .map(|(v, f)| (v - f).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 {
        if ss_res == 0.0 {
            1.0
        } else {
            0.0
        }
    } else {
        1.0 - ss_res / ss_tot
    };
    Some((beta.iter().copied().collect(), r2))
}

impl std::ops::Mul for Scaled {
    type Output = Scaled;

    fn mul(self, other: Scaled) -> Scaled {
        if self.is_zero() || other.is_zero() {
            return Scaled::ZERO;
        }
        Scaled {
            mantissa: self.mantissa * other.mantissa,
            ln_scale: self.ln_scale + other.ln_scale,
        }
        .normalized()
    }
}
