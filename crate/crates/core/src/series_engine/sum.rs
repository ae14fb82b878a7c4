use serde::Serialize;

use super::sequence::TermSequence;
use crate::numeric::{ln_factorial, ComplexSum, Envelope};
use crate::{Error, Result, C64};

/// Stopping rule for a series evaluation: stop once the certified tail is
/// below `max(tol, rel_tol * |partial sum|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumOptions {
    pub tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
    pub keep_partials: bool,
}

impl SumOptions {
    pub fn absolute(tol: f64) -> Self {
        SumOptions {
            tol,
            rel_tol: 0.0,
            max_terms: 1_000_000,
            keep_partials: false,
        }
    }
}

impl Default for SumOptions {
    fn default() -> Self {
        SumOptions::absolute(1e-12)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumResult {
    pub value: C64,
    pub terms_used: usize,
    pub tail_bound: f64,
    /// `false` when no envelope or certificate was available and the tail is
    /// a ratio-test estimate.
    pub certified: bool,
    pub partials: Vec<C64>,
}

enum Tail {
    Envelope(Envelope),
    Estimate,
}

impl Tail {
    fn start(&self) -> usize {
        match self {
            Tail::Envelope(env) => decreasing_start(env),
            Tail::Estimate => 0,
        }
    }
}

fn decreasing_start(env: &Envelope) -> usize {
    if env.ratio <= 0.0 || env.power <= 0.0 {
        return 1;
    }
    if env.ratio >= 1.0 {
        return usize::MAX;
    }
    let denom = env.ratio.powf(-1.0 / env.power) - 1.0;
    (1.0 / denom).min(1e15).floor() as usize + 1
}

/// Sums `f_n(z)` (or `f_n^(k)(z) / k!` when `k > 0`) with compensated
/// summation until the tail bound meets the tolerance.
fn run<S: TermSequence + ?Sized>(
    seq: &S,
    z: C64,
    k: usize,
    inflate: f64,
    tail: Tail,
    opts: SumOptions,
) -> Result<SumResult> {
    let perf = seq.perforation();
    let first = seq.first_sheet();
    let start = tail.start();
    let ln_kf = ln_factorial(k);
    let mut acc = ComplexSum::new();
    let mut partials = Vec::new();
    let mut n = first;
    let mut prev_norm = f64::NAN;
    let mut tail_bound;
    loop {
        if let Some((pole, distance, radius)) = perf.violation(n, z, inflate) {
            return Err(Error::PoleProximity {
                sheet: n,
                pole,
                distance,
                radius,
            });
        }
        let t = if k == 0 {
            seq.term(n, z)
        } else {
            seq.derivative(n, k, z) * (-ln_kf).exp()
        };
        acc.add(t);
        if opts.keep_partials {
            partials.push(acc.value());
        }
        let used = n + 1 - first;
        let target = opts.tol.max(opts.rel_tol * acc.value().norm());
        // before the envelope peaks the tail only shrinks slowly; check sparsely
        let check = n + 1 >= start || used.is_multiple_of(64);
        tail_bound = f64::INFINITY;
        if check {
            tail_bound = match &tail {
                Tail::Envelope(env) => env.tail(n),
                Tail::Estimate => {
                    let next = seq.norm_bound(n + 1);
                    let cur = seq.norm_bound(n);
                    let kappa = if cur > 0.0 { next / cur } else { 0.0 };
                    if next == 0.0 {
                        0.0
                    } else if kappa < 1.0 && prev_norm.is_finite() {
                        next / (1.0 - kappa)
                    } else {
                        f64::INFINITY
                    }
                }
            };
            if tail_bound <= target {
                return Ok(SumResult {
                    value: acc.value(),
                    terms_used: used,
                    tail_bound,
                    certified: matches!(tail, Tail::Envelope(_)),
                    partials,
                });
            }
        }
        prev_norm = seq.norm_bound(n);
        if used >= opts.max_terms {
            let tail_bound = match &tail {
                Tail::Envelope(env) => env.tail(n),
                Tail::Estimate => tail_bound,
            };
            return Err(Error::TolUnreachable {
                terms: used,
                tail_bound,
                tol: target,
            });
        }
        n += 1;
    }
}

/// `S(f)(z) = sum_n f_n(z)`, with the tail bounded by the sequence's meander
/// certificate (or envelope).
///
/// Fails with `PoleProximity` if `z` lies inside a removed disc on any sheet
/// that is summed explicitly.
pub fn evaluate_sum<S: TermSequence + ?Sized>(seq: &S, z: C64, tol: f64) -> Result<SumResult> {
    evaluate_sum_with(seq, z, SumOptions::absolute(tol))
}

pub fn evaluate_sum_with<S: TermSequence + ?Sized>(
    seq: &S,
    z: C64,
    opts: SumOptions,
) -> Result<SumResult> {
    let tail = match seq.meander_cert() {
        Some(cert) => Tail::Envelope(cert.envelope()),
        None => match seq.envelope() {
            Some(env) => Tail::Envelope(env),
            None => Tail::Estimate,
        },
    };
    run(seq, z, 0, 1.0, tail, opts)
}

/// Cauchy-estimate envelope for `sup |f_n^(k)| / k!` over the shrunk
/// perforation: `norm_bound(n) / (eps r_n)^k` with `r_n = c / n^alpha`.
pub fn derivative_envelope<S: TermSequence + ?Sized>(seq: &S, k: usize) -> Result<Envelope> {
    let perf = seq.perforation();
    let (c, alpha) = perf
        .radius
        .diophantine_params()
        .ok_or(Error::DiophantineRequired)?;
    let env = seq.envelope().ok_or(Error::DiophantineRequired)?;
    let eps = perf.radius.epsilon();
    let k = k as f64;
    Ok(env.scaled(-k * (eps * c).ln(), alpha * k))
}

/// `S(f^(k))(z0) = sum_n f_n^(k)(z0)`.
///
/// `z0` must stay outside the inflated discs `D(p, lambda r_n)` on every
/// summed sheet; the tail is bounded with Cauchy estimates on those discs.
pub fn derivative_sum<S: TermSequence + ?Sized>(
    seq: &S,
    z0: C64,
    k: usize,
    tol: f64,
) -> Result<SumResult> {
    if k == 0 {
        return evaluate_sum(seq, z0, tol);
    }
    let opts = SumOptions::absolute(tol);
    let scaled = scaled_derivative_sum(seq, z0, k, opts)?;
    let kf = crate::numeric::factorial(k);
    Ok(SumResult {
        value: scaled.value * kf,
        tail_bound: scaled.tail_bound * kf,
        partials: scaled.partials.iter().map(|p| p * kf).collect(),
        ..scaled
    })
}

/// `sum_n f_n^(k)(z0) / k!`, the `k`-th Taylor coefficient of the sum at `z0`.
pub fn scaled_derivative_sum<S: TermSequence + ?Sized>(
    seq: &S,
    z0: C64,
    k: usize,
    opts: SumOptions,
) -> Result<SumResult> {
    let env = derivative_envelope(seq, k)?;
    let lambda = seq.perforation().radius.lambda;
    run(seq, z0, k, lambda, Tail::Envelope(env), opts)
}

/// Sampled `sup |f_n|` over the circle `|z - center| = radius`, `samples`
/// equally spaced points.
pub fn sampled_circle_sup<S: TermSequence + ?Sized>(
    seq: &S,
    n: usize,
    center: C64,
    radius: f64,
    samples: usize,
) -> f64 {
    (0..samples)
        .map(|j| {
            let z =
                center + C64::from_polar(radius, std::f64::consts::TAU * j as f64 / samples as f64);
            seq.term(n, z).norm()
        })
        .fold(0.0, f64::max)
}
