//! Gevrey-class fits, smallest-term truncation, and flatness and divergence
//! diagnostics for Taylor coefficient sequences.

use serde::Serialize;

use crate::numeric::{least_squares, ln_factorial};
use crate::series_engine::{taylor_truncation, TermSequence};
use crate::{Error, Result, C64};

/// `|a_k| ≈ P C^k (k!)^alpha` fitted over `window`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GevreyFit {
    pub c: f64,
    pub alpha: f64,
    /// The constant `P`.
    pub prefactor: f64,
    /// Coefficient of determination of the log-linear fit.
    pub r2: f64,
    pub window: (usize, usize),
    pub points: usize,
}

/// Least squares of `log |a_k|` on `(1, k, log k!)` for `k` in the inclusive
/// `window`; zero coefficients are skipped.
pub fn gevrey_fit(coeffs: &[C64], window: (usize, usize)) -> Result<GevreyFit> {
    let hi = window.1.min(coeffs.len().saturating_sub(1));
    let mut rows = Vec::new();
    let mut y = Vec::new();
    for (k, a) in coeffs.iter().enumerate().take(hi + 1).skip(window.0) {
        let a = a.norm();
        if a > 0.0 && a.is_finite() {
            rows.push(vec![1.0, k as f64, ln_factorial(k)]);
            y.push(a.ln());
        }
    }
    if rows.len() < 8 {
        return Err(Error::InsufficientData {
            needed: 8,
            got: rows.len(),
        });
    }
    let (beta, r2) = least_squares(&rows, &y).ok_or(Error::InsufficientData {
        needed: 8,
        got: rows.len(),
    })?;
    Ok(GevreyFit {
        c: beta[1].exp(),
        alpha: beta[2],
        prefactor: beta[0].exp(),
        r2,
        window: (window.0, hi),
        points: rows.len(),
    })
}

/// Optimal truncation order `floor((C |w|)^(-1/alpha))`.
pub fn smallest_term_order(c: f64, alpha: f64, w: f64) -> Result<usize> {
    let value = c * w;
    if !(value < 1.0) || !(alpha > 0.0) {
        return Err(Error::OutOfRegime { value });
    }
    Ok(value.powf(-1.0 / alpha).floor() as usize)
}

/// Smallest-term truncation of a Taylor series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallestTerm {
    pub order: usize,
    pub value: C64,
    /// `|z - z0|^(-1/alpha)`; the error is expected to behave like
    /// `A exp(-B * flatness_abscissa)`.
    pub flatness_abscissa: f64,
}

/// `sum_{k<m} a_k (z - z0)^k` with `m = floor((C |z - z0|)^(-1/alpha))`.
pub fn smallest_term_truncation(
    coeffs: &[C64],
    z0: C64,
    z: C64,
    c: f64,
    alpha: f64,
) -> Result<SmallestTerm> {
    let w = z - z0;
    let order = smallest_term_order(c, alpha, w.norm())?;
    if order > coeffs.len() {
        return Err(Error::InsufficientData {
            needed: order,
            got: coeffs.len(),
        });
    }
    let value = coeffs[..order]
        .iter()
        .rev()
        .fold(C64::new(0.0, 0.0), |acc, a| acc * w + a);
    Ok(SmallestTerm {
        order,
        value,
        flatness_abscissa: w.norm().powf(-1.0 / alpha),
    })
}

/// Smallest-term truncation error of a sequence's sum, resolved below `f64`
/// range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmallestTermError {
    pub z: C64,
    pub order: usize,
    /// `ln |S(f)(z) - T_m(z)|`.
    pub ln_error: f64,
    /// `ln` of the certified bound on the unsummed sheets' share of the error.
    pub ln_tail: f64,
}

/// `ln |S(f)(z) - T_m(z)|` at the smallest-term order, from the termwise
/// partial-fraction remainder (see [`taylor_truncation`]).
pub fn smallest_term_error<S: TermSequence + ?Sized>(
    seq: &S,
    z0: C64,
    z: C64,
    c: f64,
    alpha: f64,
) -> Result<SmallestTermError> {
    let order = smallest_term_order(c, alpha, (z - z0).norm())?;
    let t = taylor_truncation(seq, z0, z, order, 1e-6)?;
    Ok(SmallestTermError {
        z,
        order,
        ln_error: t.remainder.ln_abs(),
        ln_tail: t.ln_remainder_tail,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ConvergentLike,
    DivergentLike,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Divergence {
    /// Cauchy-Hadamard estimate `1 / max_{k in window} |a_k|^(1/k)` per window.
    pub window_estimates: Vec<f64>,
    pub radius_estimate: f64,
    pub verdict: Verdict,
}

const WINDOW: usize = 5;

/// Sliding-window Cauchy-Hadamard radius estimates over `a_1, a_2, ...`.
///
/// `DivergentLike` when the estimate strictly decreases over the last three
/// windows and the log-log slope of the estimates against the window end is
/// below `-1/4`; the slope condition separates a radius tending to zero from
/// the slow drift caused by polynomial prefactors.
pub fn divergence_diagnostic(coeffs: &[C64]) -> Result<Divergence> {
    if coeffs.len() < 10 {
        return Err(Error::InsufficientData {
            needed: 10,
            got: coeffs.len(),
        });
    }
    let roots: Vec<f64> = (1..coeffs.len())
        .map(|k| coeffs[k].norm().powf(1.0 / k as f64))
        .collect();
    let estimates: Vec<f64> = roots
        .windows(WINDOW)
        .map(|w| 1.0 / w.iter().copied().fold(0.0, f64::max))
        .collect();
    let last = *estimates.last().unwrap();
    let tail = &estimates[estimates.len().saturating_sub(3)..];
    let decreasing = tail.len() == 3 && tail.windows(2).all(|p| p[1] < p[0]);
    let verdict = if decreasing && log_log_slope(&estimates) < -0.25 {
        Verdict::DivergentLike
    } else {
        Verdict::ConvergentLike
    };
    Ok(Divergence {
        window_estimates: estimates,
        radius_estimate: last,
        verdict,
    })
}

fn log_log_slope(estimates: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = estimates
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_finite() && **e > 0.0)
        .map(|(i, e)| (((i + WINDOW) as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Fit of `log |S(f)(z)| ≈ log A - B |z|^(-1/alpha)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatnessFit {
    pub ln_a: f64,
    pub b: f64,
    pub r2: f64,
    /// `B > 0` and `r2 > 0.99`.
    pub flat: bool,
}

/// Flatness fit from `(|z|, |S(f)(z)|)` pairs.
pub fn flatness_check(values: &[(f64, f64)], alpha: f64) -> Result<FlatnessFit> {
    let logs: Vec<(f64, f64)> = values.iter().map(|&(z, s)| (z, s.ln())).collect();
    flatness_check_ln(&logs, alpha)
}

/// Flatness fit from `(|z|, ln |S(f)(z)|)` pairs, for values below `f64` range.
pub fn flatness_check_ln(values: &[(f64, f64)], alpha: f64) -> Result<FlatnessFit> {
    let pts: Vec<&(f64, f64)> = values.iter().filter(|(_, l)| l.is_finite()).collect();
    if pts.len() < 8 {
        return Err(Error::InsufficientData {
            needed: 8,
            got: pts.len(),
        });
    }
    let rows: Vec<Vec<f64>> = pts
        .iter()
        .map(|(z, _)| vec![1.0, -z.powf(-1.0 / alpha)])
        .collect();
    let y: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (beta, r2) = least_squares(&rows, &y).ok_or(Error::InsufficientData {
        needed: 8,
        got: pts.len(),
    })?;
    Ok(FlatnessFit {
        ln_a: beta[0],
        b: beta[1],
        r2,
        flat: beta[1] > 0.0 && r2 > 0.99,
    })
}
