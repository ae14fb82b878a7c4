use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::region::{huygens_distance, Region};
use crate::{Error, Result, C64};

/// How disc radii are assigned to poles. Radii are constant on each sheet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadiusKind {
    /// `r_n = c / n^alpha`.
    Diophantine { c: f64, alpha: f64 },
    /// Per-sheet table; sheets missing from the table have no known radius.
    Explicit(BTreeMap<usize, f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusFunction {
    pub kind: RadiusKind,
    /// Margin `lambda > 1`: the inflated radii `lambda * r_n` must still be
    /// pairwise disjoint on each sheet.
    pub lambda: f64,
}

impl RadiusFunction {
    pub fn diophantine(c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Diophantine constant c = {c} must lie in (0, 1] so that r_n <= 1"
            )));
        }
        if !(alpha >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {alpha} must be >= 1"
            )));
        }
        Self::check_lambda(lambda)?;
        Ok(RadiusFunction {
            kind: RadiusKind::Diophantine { c, alpha },
            lambda,
        })
    }

    pub fn explicit(table: BTreeMap<usize, f64>, lambda: f64) -> Result<Self> {
        if let Some((n, r)) = table.iter().find(|(_, r)| !(**r > 0.0 && **r <= 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "explicit radius {r} on sheet {n} must lie in (0, 1]"
            )));
        }
        Self::check_lambda(lambda)?;
        Ok(RadiusFunction {
            kind: RadiusKind::Explicit(table),
            lambda,
        })
    }

    fn check_lambda(lambda: f64) -> Result<()> {
        if lambda > 1.0 && lambda.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "lambda = {lambda} must be > 1"
            )))
        }
    }

    /// `r_n`, or `None` for sheets an explicit table does not cover.
    pub fn value(&self, n: usize) -> Option<f64> {
        match &self.kind {
            RadiusKind::Diophantine { c, alpha } => Some(c / (n.max(1) as f64).powf(*alpha)),
            RadiusKind::Explicit(table) => table.get(&n).copied(),
        }
    }

    pub fn diophantine_params(&self) -> Option<(f64, f64)> {
        match self.kind {
            RadiusKind::Diophantine { c, alpha } => Some((c, alpha)),
            RadiusKind::Explicit(_) => None,
        }
    }

    /// `eps = lambda - 1`.
    pub fn epsilon(&self) -> f64 {
        self.lambda - 1.0
    }

    /// `sup_{n > cutoff} r_n`; unavailable for explicit tables.
    pub fn tail_sup(&self, cutoff: usize) -> Option<f64> {
        match self.kind {
            RadiusKind::Diophantine { c, alpha } => Some(c / ((cutoff + 1) as f64).powf(alpha)),
            RadiusKind::Explicit(_) => None,
        }
    }
}

/// Per-sheet pole sets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PoleFamily {
    /// Sheet `n` carries the `n`-th roots of unity.
    RootsOfUnity,
    /// Sheet `n` carries the single pole `-1/n`.
    Meander,
    /// Finite explicit lists; unlisted sheets carry no poles.
    Explicit(BTreeMap<usize, Vec<C64>>),
    /// All `degree`-th roots of the base family's poles (pullback under `w -> w^degree`).
    Ramified { base: Box<PoleFamily>, degree: u32 },
}

/// Nearest `n`-th root of unity to `z`: index `round(n arg(z) / 2pi)` with
/// ties rounded to even, reduced mod `n`.
pub fn nearest_root_of_unity(n: usize, z: C64) -> C64 {
    let k = (n as f64 * z.arg() / TAU).round_ties_even();
    let k = (k as i64).rem_euclid(n as i64);
    root_of_unity(n, k as usize)
}

pub fn root_of_unity(n: usize, k: usize) -> C64 {
    C64::from_polar(1.0, TAU * k as f64 / n as f64)
}

/// All `degree`-th roots of `p`.
pub fn complex_roots(p: C64, degree: u32) -> Vec<C64> {
    let d = degree as f64;
    let modulus = p.norm().powf(1.0 / d);
    let base = p.arg() / d;
    (0..degree)
        .map(|j| C64::from_polar(modulus, base + TAU * j as f64 / d))
        .collect()
}

impl PoleFamily {
    pub fn poles(&self, n: usize) -> Vec<C64> {
        match self {
            PoleFamily::RootsOfUnity => (0..n).map(|k| root_of_unity(n, k)).collect(),
            PoleFamily::Meander => vec![C64::new(-1.0 / n as f64, 0.0)],
            PoleFamily::Explicit(map) => map.get(&n).cloned().unwrap_or_default(),
            PoleFamily::Ramified { base, degree } => match **base {
                // preimages of the n-th roots of unity are the (n d)-th roots
                PoleFamily::RootsOfUnity => {
                    let m = n * *degree as usize;
                    (0..m).map(|k| root_of_unity(m, k)).collect()
                }
                _ => base
                    .poles(n)
                    .into_iter()
                    .flat_map(|p| complex_roots(p, *degree))
                    .collect(),
            },
        }
    }

    /// Nearest pole on sheet `n`, if the sheet has any.
    pub fn nearest(&self, n: usize, z: C64) -> Option<C64> {
        match self {
            PoleFamily::RootsOfUnity => Some(nearest_root_of_unity(n, z)),
            PoleFamily::Meander => Some(C64::new(-1.0 / n as f64, 0.0)),
            PoleFamily::Ramified { base, degree } if **base == PoleFamily::RootsOfUnity => {
                Some(nearest_root_of_unity(n * *degree as usize, z))
            }
            _ => self
                .poles(n)
                .into_iter()
                .min_by(|a, b| (a - z).norm().total_cmp(&(b - z).norm())),
        }
    }

    /// Lower bound on the distance from `z` to every pole on sheets beyond
    /// `cutoff`; `None` when no such bound is available.
    pub fn tail_distance_lower_bound(&self, z: C64, cutoff: usize) -> Option<f64> {
        match self {
            PoleFamily::RootsOfUnity => Some((z.norm() - 1.0).abs()),
            PoleFamily::Meander => {
                // poles -1/n for n > cutoff lie on the segment [-1/(cutoff+1), 0)
                let left = -1.0 / (cutoff + 1) as f64;
                let x = z.re.clamp(left, 0.0);
                Some((z - C64::new(x, 0.0)).norm())
            }
            PoleFamily::Explicit(map) => {
                if map.range(cutoff + 1..).next().is_none() {
                    Some(f64::INFINITY)
                } else {
                    None
                }
            }
            PoleFamily::Ramified { base, degree } => match **base {
                PoleFamily::RootsOfUnity => Some((z.norm() - 1.0).abs()),
                PoleFamily::Meander => {
                    // preimages of -1/n have modulus n^(-1/d)
                    let outer = ((cutoff + 1) as f64).powf(-1.0 / *degree as f64);
                    Some((z.norm() - outer).max(0.0))
                }
                PoleFamily::Explicit(ref map) => {
                    if map.range(cutoff + 1..).next().is_none() {
                        Some(f64::INFINITY)
                    } else {
                        None
                    }
                }
                PoleFamily::Ramified { .. } => None,
            },
        }
    }
}

/// Outcome of a finite verification that may be extended later.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CauchyStatus {
    VerifiedTo(usize),
    Refuted {
        sheets: (usize, usize),
        poles: (C64, C64),
        gap: f64,
        required: f64,
    },
    Unknown,
}

/// Residual-set membership verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Membership {
    In,
    Out {
        sheet: usize,
        pole: C64,
    },
    /// Every sheet up to `verified_to` passes but the tail could not be discharged.
    Unknown {
        verified_to: usize,
    },
}

/// Report of a successful shrink check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShrinkReport {
    pub sheet: usize,
    pub clearance: f64,
    pub required: f64,
    pub samples: usize,
}

/// A pole family with a radius function: the data defining the perforation
/// `V(r)` of the stacked space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Perforation {
    pub poles: PoleFamily,
    pub radius: RadiusFunction,
    pub cauchy: CauchyStatus,
}

impl Perforation {
    pub fn new(poles: PoleFamily, radius: RadiusFunction) -> Result<Self> {
        if let PoleFamily::Explicit(map) = &poles {
            for (n, list) in map {
                for (i, a) in list.iter().enumerate() {
                    if !(a.re.is_finite() && a.im.is_finite()) {
                        return Err(Error::InvalidParameter(format!(
                            "non-finite pole on sheet {n}"
                        )));
                    }
                    if list[..i].iter().any(|b| (a - b).norm() == 0.0) {
                        return Err(Error::InvalidParameter(format!(
                            "duplicate pole {a} on sheet {n}"
                        )));
                    }
                }
            }
        }
        Ok(Perforation {
            poles,
            radius,
            cauchy: CauchyStatus::Unknown,
        })
    }

    pub fn roots_of_unity(c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        Self::new(
            PoleFamily::RootsOfUnity,
            RadiusFunction::diophantine(c, alpha, lambda)?,
        )
    }

    pub fn meander(c: f64, alpha: f64, lambda: f64) -> Result<Self> {
        Self::new(
            PoleFamily::Meander,
            RadiusFunction::diophantine(c, alpha, lambda)?,
        )
    }

    /// Pole `p` on sheet `n` with `|z - p| < scale * r_n`, if any.
    pub fn violation(&self, n: usize, z: C64, scale: f64) -> Option<(C64, f64, f64)> {
        let r = self.radius.value(n)? * scale;
        let p = self.poles.nearest(n, z)?;
        let d = (z - p).norm();
        (d < r).then_some((p, d, r))
    }

    /// Residual-set membership of `z` with margin: `In` iff `|z - p| >= r_n (1 + margin)`
    /// for every pole on every sheet.
    pub fn residual_membership(&self, z: C64, cutoff: usize, margin: f64) -> Membership {
        let scale = 1.0 + margin;
        for n in 1..=cutoff {
            if let Some(p) = self.poles.nearest(n, z) {
                let Some(r) = self.radius.value(n) else {
                    return Membership::Unknown { verified_to: n - 1 };
                };
                if (z - p).norm() < r * scale {
                    return Membership::Out { sheet: n, pole: p };
                }
            }
        }
        let lower = self.poles.tail_distance_lower_bound(z, cutoff);
        let tail_radius = match self.radius.tail_sup(cutoff) {
            Some(r) => Some(r * scale),
            // explicit radii can only discharge a tail with no poles
            None => (lower == Some(f64::INFINITY)).then_some(0.0),
        };
        match (lower, tail_radius) {
            (Some(d), Some(r)) if d >= r => Membership::In,
            _ => Membership::Unknown {
                verified_to: cutoff,
            },
        }
    }

    /// Checks that the inflated discs `D(p, lambda r_n)` on each sheet `n <= cutoff`
    /// have disjoint closures.
    pub fn lambda_radius_check(&self, cutoff: usize) -> CauchyStatus {
        let lambda = self.radius.lambda;
        for n in 1..=cutoff {
            let Some(r) = self.radius.value(n) else {
                return CauchyStatus::Unknown;
            };
            let required = 2.0 * lambda * r;
            let gap_and_pair = match self.poles {
                PoleFamily::RootsOfUnity if n > 1 => {
                    let gap = 2.0 * (std::f64::consts::PI / n as f64).sin();
                    Some((gap, (root_of_unity(n, 0), root_of_unity(n, 1))))
                }
                PoleFamily::RootsOfUnity | PoleFamily::Meander => None,
                _ => {
                    let poles = self.poles.poles(n);
                    let mut best: Option<(f64, (C64, C64))> = None;
                    for i in 0..poles.len() {
                        for j in i + 1..poles.len() {
                            let d = (poles[i] - poles[j]).norm();
                            if best.is_none_or(|b| d < b.0) {
                                best = Some((d, (poles[i], poles[j])));
                            }
                        }
                    }
                    best
                }
            };
            if let Some((gap, poles)) = gap_and_pair {
                if gap <= required {
                    return CauchyStatus::Refuted {
                        sheets: (n, n),
                        poles,
                        gap,
                        required,
                    };
                }
            }
        }
        CauchyStatus::VerifiedTo(cutoff)
    }

    /// Cauchy radius check up to `cutoff`: the lambda-radius property on each
    /// sheet, and disjointness of the projected inflated discs for every pair
    /// of poles with distinct projections on sheets `n, m <= cutoff`.
    pub fn cauchy_radius_check(&self, cutoff: usize) -> CauchyStatus {
        if let s @ (CauchyStatus::Refuted { .. } | CauchyStatus::Unknown) =
            self.lambda_radius_check(cutoff)
        {
            return s;
        }
        let lambda = self.radius.lambda;
        let mut all: Vec<(usize, C64, f64)> = Vec::new();
        for n in 1..=cutoff {
            let Some(r) = self.radius.value(n) else {
                return CauchyStatus::Unknown;
            };
            all.extend(self.poles.poles(n).into_iter().map(|p| (n, p, lambda * r)));
        }
        // sweep in order of real part so only overlapping x-ranges are compared
        all.sort_by(|a, b| a.1.re.total_cmp(&b.1.re));
        let max_r = all.iter().map(|e| e.2).fold(0.0, f64::max);
        let same = |a: C64, b: C64| (a - b).norm() <= 1e-12 * (1.0 + a.norm());
        for i in 0..all.len() {
            let (n, p, rp) = all[i];
            for &(m, q, rq) in &all[i + 1..] {
                if q.re - p.re > rp + max_r {
                    break;
                }
                if same(p, q) {
                    continue;
                }
                let gap = (p - q).norm();
                let required = rp + rq;
                if gap <= required {
                    return CauchyStatus::Refuted {
                        sheets: (n, m),
                        poles: (p, q),
                        gap,
                        required,
                    };
                }
            }
        }
        CauchyStatus::VerifiedTo(cutoff)
    }

    /// Runs [`Self::cauchy_radius_check`] and records the outcome.
    pub fn with_cauchy_check(mut self, cutoff: usize) -> Self {
        self.cauchy = self.cauchy_radius_check(cutoff);
        self
    }

    /// Sampled form of the shrinking estimate on one sheet: every point of
    /// `U(lambda r)_n` keeps a clearance of at least `eps r_n` from the
    /// complement of `V(r)_n`.
    ///
    /// The minimum of the clearance is attained on the boundary of
    /// `U(lambda r)_n`, i.e. on the boundary of `U` and on the inflated circles
    /// `|z - p| = lambda r_n` inside `U`. Whole inflated circles are sampled, so
    /// overlapping inflated discs (a non-lambda-radius function) surface as a
    /// violation. Sampling starts at `samples` points per component and doubles
    /// until successive minima agree within `1e-10`.
    pub fn shrink_check(
        &self,
        u: &Region,
        v: &Region,
        sheet: usize,
        samples: usize,
    ) -> Result<ShrinkReport> {
        let lambda = self.radius.lambda;
        let eps = lambda - 1.0;
        let r = self
            .radius
            .value(sheet)
            .ok_or_else(|| Error::InvalidParameter(format!("no radius known for sheet {sheet}")))?;
        if r > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "r_{sheet} = {r} exceeds 1"
            )));
        }
        let delta = huygens_distance(u, v)?;
        if delta < eps {
            return Err(Error::HuygensTooSmall {
                distance: delta,
                required: eps,
            });
        }
        let required = eps * r;
        let poles = self.poles.poles(sheet);
        let clearance = |z: C64| -> f64 {
            poles
                .iter()
                .map(|p| (z - p).norm() - r)
                .fold(v.boundary_distance(z), f64::min)
        };
        let inflated = lambda * r;
        let mut count = samples.max(16);
        let mut previous: Option<f64> = None;
        loop {
            let mut worst = f64::INFINITY;
            let mut witness = C64::new(0.0, 0.0);
            let mut visit = |z: C64| {
                let c = clearance(z);
                if c < worst {
                    worst = c;
                    witness = z;
                }
            };
            for z in u.boundary_samples(count) {
                if poles.iter().all(|p| (z - p).norm() >= inflated) {
                    visit(z);
                }
            }
            for p in &poles {
                for j in 0..count {
                    let z = p + C64::from_polar(inflated, TAU * j as f64 / count as f64);
                    if u.contains(z) {
                        visit(z);
                    }
                }
            }
            if worst < required - 1e-9 {
                return Err(Error::MarginViolated {
                    sheet,
                    point: witness,
                    clearance: worst,
                    required,
                });
            }
            if let Some(prev) = previous {
                if (prev - worst).abs() < 1e-10 || count >= 1 << 16 {
                    return Ok(ShrinkReport {
                        sheet,
                        clearance: worst,
                        required,
                        samples: count,
                    });
                }
            }
            previous = Some(worst);
            count *= 2;
        }
    }
}
