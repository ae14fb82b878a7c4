use crate::numeric::ComplexSum;
use crate::series_engine::{SumResult, TermSequence};
use crate::{Error, Result, C64};

/// `S_omega(f)(z) = sum_n res_n(omega) / (z - omega)`, the sum of the polar
/// parts at `omega` over every sheet carrying `omega` as a simple pole.
///
/// The tail uses `|res_n| <= r_n norm_bound(n)` (Cauchy integral over the
/// removed circle), so sheets beyond `N` contribute at most
/// `sum_{n>N} c n^-alpha norm_bound(n) / |z - omega|`.
pub fn fiber_polar_sum<S: TermSequence + ?Sized>(
    seq: &S,
    omega: C64,
    z: C64,
    tol: f64,
) -> Result<SumResult> {
    let perf = seq.perforation();
    let (c, alpha) = perf
        .radius
        .diophantine_params()
        .ok_or(Error::DiophantineRequired)?;
    let env = seq.envelope().ok_or(Error::DiophantineRequired)?;
    let dist = (z - omega).norm();
    let tail_env = env.scaled((c / dist).ln(), -alpha);
    let mut acc = ComplexSum::new();
    let mut n = seq.first_sheet();
    loop {
        if let Some(res) = seq.residue_at(n, omega) {
            let r = perf.radius.value(n).unwrap_or(0.0);
            if dist < r {
                return Err(Error::PoleProximity {
                    sheet: n,
                    pole: omega,
                    distance: dist,
                    radius: r,
                });
            }
            acc.add(res / (z - omega));
        }
        let used = n + 1 - seq.first_sheet();
        let tail = tail_env.tail(n);
        if tail <= tol {
            return Ok(SumResult {
                value: acc.value(),
                terms_used: used,
                tail_bound: tail,
                certified: true,
                partials: Vec::new(),
            });
        }
        if used >= 10_000_000 {
            return Err(Error::TolUnreachable {
                terms: used,
                tail_bound: tail,
                tol,
            });
        }
        n += 1;
    }
}
