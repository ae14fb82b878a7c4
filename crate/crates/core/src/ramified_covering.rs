//! The covering `phi(w) = w^beta`, the radii it induces and pulled-back term
//! sequences.
//!
//! For `eta = omega^beta` and a radius `r` the covering lemma asserts
//! `D(eta, s) ⊂ phi(D(omega, rho)) ⊂ D(eta, r)` with
//! `s = beta r^(2 - 1/beta) / (2^beta - 1)` and `rho = r / (2^beta - 1)`,
//! under `|omega| <= 1`, `0 ∉ D(omega, rho)` and `r < |eta|`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::numeric::{Envelope, MeanderCert};
use crate::series_engine::{simple_pole_derivative, SimplePole, TermSequence};
use crate::stack_geometry::{complex_roots, Perforation, PoleFamily, RadiusFunction, RadiusKind};
use crate::{Error, Result, C64};

/// `(s, rho)` for the covering of degree `beta` and target radius `r`.
/// `s` is formed as `beta r^(1 - 1/beta) rho`.
pub fn induced_radii(r: f64, beta: u32) -> Result<(f64, f64)> {
    if beta == 0 {
        return Err(Error::InvalidParameter(
            "covering degree must be at least 1".into(),
        ));
    }
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter(format!("radius {r} not in (0, 1]")));
    }
    let b = beta as f64;
    let rho = r / (2f64.powi(beta as i32) - 1.0);
    let s = b * r.powf(1.0 - 1.0 / b) * rho;
    Ok((s, rho))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionReport {
    pub s: f64,
    pub rho: f64,
    /// `rho - max_theta dist(omega, preimage of eta + s e^(i theta))`.
    pub inner_margin: f64,
    /// `r - max_theta |(omega + rho e^(i theta))^beta - eta|`.
    pub outer_margin: f64,
    pub inner_witness: C64,
    pub outer_witness: C64,
    pub passed: bool,
}

/// Sampled margins of both inclusions, without the hypothesis gate.
pub fn inclusion_margins(
    omega: C64,
    r: f64,
    beta: u32,
    n_angles: usize,
) -> Result<InclusionReport> {
    let (s, rho) = induced_radii(r, beta)?;
    let eta = omega.powi(beta as i32);
    let mut inner = (f64::NEG_INFINITY, C64::new(0.0, 0.0));
    let mut outer = (f64::NEG_INFINITY, C64::new(0.0, 0.0));
    for j in 0..n_angles.max(1) {
        let e = C64::from_polar(1.0, TAU * j as f64 / n_angles.max(1) as f64);
        let p = eta + s * e;
        let d = complex_roots(p, beta)
            .into_iter()
            .map(|q| (q - omega).norm())
            .fold(f64::INFINITY, f64::min);
        if d > inner.0 {
            inner = (d, p);
        }
        let q = omega + rho * e;
        let d = (q.powi(beta as i32) - eta).norm();
        if d > outer.0 {
            outer = (d, q);
        }
    }
    let inner_margin = rho - inner.0;
    let outer_margin = r - outer.0;
    // boundary points are formed at magnitude |eta|, so rounding scales with it
    let slack = -8.0 * f64::EPSILON * r.max(eta.norm());
    Ok(InclusionReport {
        s,
        rho,
        inner_margin,
        outer_margin,
        inner_witness: inner.1,
        outer_witness: outer.1,
        passed: inner_margin >= slack && outer_margin >= slack,
    })
}

/// Checks the lemma's hypotheses, then samples `n_angles` boundary points of
/// `D(eta, s)` and `D(omega, rho)`.
pub fn inclusion_check(omega: C64, r: f64, beta: u32, n_angles: usize) -> Result<InclusionReport> {
    let (_, rho) = induced_radii(r, beta)?;
    let eta = omega.powi(beta as i32);
    if omega.norm() > 1.0 {
        return Err(Error::HypothesisViolated(format!(
            "|omega| = {} exceeds 1",
            omega.norm()
        )));
    }
    if omega.norm() <= rho {
        return Err(Error::HypothesisViolated(format!(
            "0 lies in D(omega, rho) (|omega| = {}, rho = {rho})",
            omega.norm()
        )));
    }
    if r >= eta.norm() {
        return Err(Error::HypothesisViolated(format!(
            "r = {r} is not below |eta| = {}",
            eta.norm()
        )));
    }
    inclusion_margins(omega, r, beta, n_angles)
}

/// Radius of the pulled-back disc: the `rho` whose covering image contains
/// `D(eta, r)`, i.e. `rho(R)` with `s(R) = r`.
pub fn pullback_radius(r: f64, beta: u32) -> f64 {
    let b = beta as f64;
    let m = 2f64.powi(beta as i32) - 1.0;
    (m * r / b).powf(b / (2.0 * b - 1.0)) / m
}

/// `F_n(w) = f_n(w^beta)`.
///
/// The perforation removes `D(q, rho'_n)` around every `beta`-th root `q` of a
/// base pole, with `rho'_n = pullback_radius(r_n)`; by the covering lemma the
/// complement maps into the base perforation, so norm bounds carry over
/// unchanged. A `(c, alpha)`-Diophantine base gives a `(c', alpha beta / (2 beta - 1))`
/// Diophantine pullback.
#[derive(Debug, Clone)]
pub struct Pullback<S> {
    pub base: S,
    pub beta: u32,
    perforation: Perforation,
}

pub fn pullback_model<S: TermSequence>(base: S, beta: u32) -> Result<Pullback<S>> {
    if beta == 0 {
        return Err(Error::InvalidParameter(
            "covering degree must be at least 1".into(),
        ));
    }
    let radius = &base.perforation().radius;
    let kind = match &radius.kind {
        RadiusKind::Diophantine { c, alpha } => {
            let b = beta as f64;
            RadiusKind::Diophantine {
                c: pullback_radius(*c, beta),
                alpha: alpha * b / (2.0 * b - 1.0),
            }
        }
        RadiusKind::Explicit(table) => RadiusKind::Explicit(
            table
                .iter()
                .map(|(&n, &r)| (n, pullback_radius(r, beta)))
                .collect::<BTreeMap<_, _>>(),
        ),
    };
    let poles = if beta == 1 {
        base.perforation().poles.clone()
    } else {
        PoleFamily::Ramified {
            base: Box::new(base.perforation().poles.clone()),
            degree: beta,
        }
    };
    let perforation = Perforation::new(
        poles,
        RadiusFunction {
            kind,
            lambda: radius.lambda,
        },
    )?;
    Ok(Pullback {
        base,
        beta,
        perforation,
    })
}

impl<S: TermSequence> TermSequence for Pullback<S> {
    fn perforation(&self) -> &Perforation {
        &self.perforation
    }

    fn first_sheet(&self) -> usize {
        self.base.first_sheet()
    }

    fn term(&self, n: usize, w: C64) -> C64 {
        self.base.term(n, w.powi(self.beta as i32))
    }

    /// From the pulled-back partial fractions; `NaN` if the base sheet has no
    /// simple-pole form.
    fn derivative(&self, n: usize, k: usize, w: C64) -> C64 {
        if k == 0 {
            return self.term(n, w);
        }
        match self.simple_poles(n) {
            Some(poles) => simple_pole_derivative(&poles, k, w),
            None => C64::new(f64::NAN, f64::NAN),
        }
    }

    fn poles(&self, n: usize) -> Vec<C64> {
        self.base
            .poles(n)
            .into_iter()
            .flat_map(|p| complex_roots(p, self.beta))
            .collect()
    }

    fn norm_bound(&self, n: usize) -> f64 {
        self.base.norm_bound(n)
    }

    fn envelope(&self) -> Option<Envelope> {
        self.base.envelope()
    }

    fn meander_cert(&self) -> Option<MeanderCert> {
        self.base.meander_cert()
    }

    /// `a / (w^beta - p) = sum_q (a q / (beta p)) / (w - q)` over the roots `q`
    /// of `q^beta = p`.
    fn simple_poles(&self, n: usize) -> Option<Vec<SimplePole>> {
        let b = self.beta as f64;
        let base = self.base.simple_poles(n)?;
        if base.iter().any(|sp| sp.pole.norm() == 0.0) && self.beta > 1 {
            return None;
        }
        Some(
            base.into_iter()
                .flat_map(|sp| {
                    complex_roots(sp.pole, self.beta)
                        .into_iter()
                        .map(move |q| SimplePole {
                            residue: sp.residue * q / (b * sp.pole),
                            pole: q,
                        })
                })
                .collect(),
        )
    }
}
