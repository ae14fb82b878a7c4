use serde::Serialize;

use super::sequence::TermSequence;
use super::sum::{scaled_derivative_sum, SumOptions};
use crate::numeric::{CompensatedSum, ComplexSum, Scaled, ScaledSum};
use crate::{Error, Result, C64};

/// Taylor jet of `S(f)` at `center` together with the data of the uniform
/// remainder estimate `|R_m(z)| <= (C_m / eps^m) |z - center|^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorJet {
    pub center: C64,
    pub order: usize,
    /// `a_0, ..., a_m`, where `a_k = S(f^(k))(center) / k!`.
    pub coefficients: Vec<C64>,
    /// Certified summation tail of each coefficient.
    pub coefficient_tails: Vec<f64>,
    /// `C_m = sum_n norm_bound(n) / r_n^m`.
    pub c_m: f64,
    pub epsilon: f64,
}

impl TaylorJet {
    /// `T_m(z) = sum_{k<m} a_k (z - center)^k`.
    pub fn polynomial(&self, z: C64) -> C64 {
        let w = z - self.center;
        self.coefficients[..self.order]
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, a| acc * w + a)
    }
}

/// `C_m = sum_n norm_bound(n) / r_n^m`, summed with its envelope tail to
/// relative accuracy `1e-13`.
pub fn c_m<S: TermSequence + ?Sized>(seq: &S, m: usize) -> Result<f64> {
    let perf = seq.perforation();
    let (c, alpha) = perf
        .radius
        .diophantine_params()
        .ok_or(Error::DiophantineRequired)?;
    let env = seq
        .envelope()
        .ok_or(Error::DiophantineRequired)?
        .scaled(-(m as f64) * c.ln(), alpha * m as f64);
    let mut acc = CompensatedSum::new();
    let mut n = seq.first_sheet();
    loop {
        let r = perf.radius.value(n).ok_or(Error::DiophantineRequired)?;
        acc.add(seq.norm_bound(n) * (-(m as f64) * r.ln()).exp());
        let tail = env.tail(n);
        if tail <= 1e-13 * acc.value() || n > 10_000_000 {
            return Ok(acc.value() + tail);
        }
        n += 1;
    }
}

/// Coefficients `a_0..a_m` of `S(f)` at `z0`, each summed to absolute
/// tolerance `tol` (relative `1e-15` is also accepted).
pub fn taylor_jet<S: TermSequence + ?Sized>(
    seq: &S,
    z0: C64,
    m: usize,
    tol: f64,
) -> Result<TaylorJet> {
    let perf = seq.perforation();
    perf.radius
        .diophantine_params()
        .ok_or(Error::DiophantineRequired)?;
    let mut coefficients = Vec::with_capacity(m + 1);
    let mut tails = Vec::with_capacity(m + 1);
    let opts = SumOptions {
        tol,
        rel_tol: 1e-15,
        max_terms: 1_000_000,
        keep_partials: false,
    };
    for k in 0..=m {
        let r = scaled_derivative_sum(seq, z0, k, opts)?;
        coefficients.push(r.value);
        tails.push(r.tail_bound);
    }
    Ok(TaylorJet {
        center: z0,
        order: m,
        coefficients,
        coefficient_tails: tails,
        c_m: c_m(seq, m)?,
        epsilon: perf.radius.epsilon(),
    })
}

/// `(C_m / eps^m) |z - center|^m`, valid while the segment from the center to
/// `z` stays in the shrunk perforation.
pub fn remainder_bound(jet: &TaylorJet, z: C64) -> f64 {
    let m = jet.order as f64;
    (jet.c_m.ln() - m * jet.epsilon.ln() + m * (z - jet.center).norm().ln()).exp()
}

/// Truncation of `S(f)(z)` to its order-`m` Taylor polynomial at `z0`, with the
/// remainder `S(f)(z) - T_m(z)` computed termwise from the partial fractions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub polynomial: C64,
    pub remainder: Scaled,
    /// `ln` of a certified bound on the part of the remainder carried by the
    /// sheets that were not summed explicitly.
    pub ln_remainder_tail: f64,
    pub terms_used: usize,
}

/// Computes `T_m(z)` and `R_m(z) = S(f)(z) - T_m(z)` termwise.
///
/// For a simple pole `a / (z - p)` and `d = z0 - p`, `u = -(z - z0)/d`, the
/// order-`m` remainder of the Taylor expansion at `z0` is `(a/d) u^m / (1 - u)`.
/// The remainder is accumulated in log-scaled arithmetic, so values far below
/// `f64` range are resolved. Sheets past the explicit range are bounded by the
/// Cauchy remainder `norm_bound(n) (|z - z0| / (eps r_n))^m`, which requires the
/// segment `[z0, z]` to avoid the inflated discs on those sheets.
pub fn taylor_truncation<S: TermSequence + ?Sized>(
    seq: &S,
    z0: C64,
    z: C64,
    m: usize,
    rel_tol: f64,
) -> Result<Truncation> {
    let perf = seq.perforation();
    let (c, alpha) = perf
        .radius
        .diophantine_params()
        .ok_or(Error::DiophantineRequired)?;
    let w = z - z0;
    let eps = perf.radius.epsilon();
    let env = seq.envelope().ok_or(Error::DiophantineRequired)?;
    if w.norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "z coincides with the expansion point".into(),
        ));
    }
    let rem_env = env.scaled(m as f64 * (w.norm() / (eps * c)).ln(), alpha * m as f64);
    let mut poly = ComplexSum::new();
    let mut remainder = ScaledSum::new();
    let mut n = seq.first_sheet();
    loop {
        let poles = seq.simple_poles(n).ok_or(Error::SimplePolesRequired)?;
        let mut r_n = ScaledSum::new();
        for sp in &poles {
            let d = z0 - sp.pole;
            let u = -w / d;
            let term = Scaled::powi(u, m).scale(sp.residue / d / (C64::new(1.0, 0.0) - u));
            r_n.add(term);
        }
        let r_n = r_n.value();
        poly.add(seq.term(n, z) - r_n.to_complex());
        remainder.add(r_n);
        let used = n + 1 - seq.first_sheet();
        let ln_tail = rem_env.ln_tail(n);
        let ln_poly_tail = crate::numeric::ln_add_exp(env.ln_tail(n), ln_tail);
        let current = remainder.value().ln_abs();
        let poly_ok = ln_poly_tail <= (1e-16 * poly.value().norm()).max(1e-300).ln();
        if (ln_tail <= current + rel_tol.ln() && poly_ok) || used >= 1_000_000 {
            return Ok(Truncation {
                polynomial: poly.value(),
                remainder: remainder.value(),
                ln_remainder_tail: ln_tail,
                terms_used: used,
            });
        }
        n += 1;
    }
}
