use serde::{Deserialize, Serialize};

use crate::{Error, Result, C64};

/// Planar regions used as the open sets `U ⊆ V` of the Cauchy and shrinking
/// estimates. Distances are computed on the closures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Region {
    Disc {
        center: C64,
        radius: f64,
    },
    /// Axis-aligned rectangle with lower-left corner `min` and upper-right `max`.
    Rectangle {
        min: C64,
        max: C64,
    },
    Annulus {
        center: C64,
        inner: f64,
        outer: f64,
    },
}

impl Region {
    pub fn disc(center: C64, radius: f64) -> Self {
        Region::Disc { center, radius }
    }

    pub fn rectangle(min: C64, max: C64) -> Self {
        Region::Rectangle { min, max }
    }

    pub fn annulus(center: C64, inner: f64, outer: f64) -> Self {
        Region::Annulus {
            center,
            inner,
            outer,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Region::Disc { radius, .. } => radius > 0.0 && radius.is_finite(),
            Region::Rectangle { min, max } => max.re > min.re && max.im > min.im,
            Region::Annulus { inner, outer, .. } => inner >= 0.0 && outer > inner,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "degenerate region {self:?}"
            )))
        }
    }

    pub fn contains(&self, z: C64) -> bool {
        self.boundary_distance(z) >= 0.0
    }

    /// Signed distance from `z` to the complement: positive inside, negative outside.
    pub fn boundary_distance(&self, z: C64) -> f64 {
        match *self {
            Region::Disc { center, radius } => radius - (z - center).norm(),
            Region::Rectangle { min, max } => {
                let inside = (z.re - min.re)
                    .min(max.re - z.re)
                    .min(z.im - min.im)
                    .min(max.im - z.im);
                if inside >= 0.0 {
                    inside
                } else {
                    let dx = (min.re - z.re).max(0.0).max(z.re - max.re);
                    let dy = (min.im - z.im).max(0.0).max(z.im - max.im);
                    -(dx * dx + dy * dy).sqrt()
                }
            }
            Region::Annulus {
                center,
                inner,
                outer,
            } => {
                let d = (z - center).norm();
                (d - inner).min(outer - d)
            }
        }
    }

    /// Largest and smallest distance from `p` to a point of the closed region.
    fn distance_range(&self, p: C64) -> (f64, f64) {
        match *self {
            Region::Disc { center, radius } => {
                let d = (p - center).norm();
                ((d - radius).max(0.0), d + radius)
            }
            Region::Rectangle { min, max } => {
                let corners = [min, max, C64::new(min.re, max.im), C64::new(max.re, min.im)];
                let far = corners.iter().map(|c| (c - p).norm()).fold(0.0, f64::max);
                let dx = (min.re - p.re).max(0.0).max(p.re - max.re);
                let dy = (min.im - p.im).max(0.0).max(p.im - max.im);
                ((dx * dx + dy * dy).sqrt(), far)
            }
            Region::Annulus {
                center,
                inner,
                outer,
            } => {
                let d = (p - center).norm();
                let near = if d < inner {
                    inner - d
                } else if d > outer {
                    d - outer
                } else {
                    0.0
                };
                (near, d + outer)
            }
        }
    }

    /// `inf_{z in self} (distance from z to the complement of other)`, negative
    /// when `self` is not contained in `other`.
    fn min_clearance_in(&self, other: &Region) -> f64 {
        match *other {
            Region::Disc { center, radius } => radius - self.distance_range(center).1,
            Region::Annulus {
                center,
                inner,
                outer,
            } => {
                let (near, far) = self.distance_range(center);
                (near - inner).min(outer - far)
            }
            Region::Rectangle { min, max } => {
                let (lo_re, hi_re, lo_im, hi_im) = self.bounding_box();
                (lo_re - min.re)
                    .min(max.re - hi_re)
                    .min(lo_im - min.im)
                    .min(max.im - hi_im)
            }
        }
    }

    fn bounding_box(&self) -> (f64, f64, f64, f64) {
        match *self {
            Region::Disc { center, radius }
            | Region::Annulus {
                center,
                outer: radius,
                ..
            } => (
                center.re - radius,
                center.re + radius,
                center.im - radius,
                center.im + radius,
            ),
            Region::Rectangle { min, max } => (min.re, max.re, min.im, max.im),
        }
    }

    /// `samples` points on each boundary component.
    pub fn boundary_samples(&self, samples: usize) -> Vec<C64> {
        let circle = |c: C64, r: f64| -> Vec<C64> {
            (0..samples)
                .map(|j| c + C64::from_polar(r, std::f64::consts::TAU * j as f64 / samples as f64))
                .collect()
        };
        match *self {
            Region::Disc { center, radius } => circle(center, radius),
            Region::Annulus {
                center,
                inner,
                outer,
            } => {
                let mut pts = circle(center, outer);
                if inner > 0.0 {
                    pts.extend(circle(center, inner));
                }
                pts
            }
            Region::Rectangle { min, max } => {
                let corners = [min, C64::new(max.re, min.im), max, C64::new(min.re, max.im)];
                let per_edge = samples.div_ceil(4).max(1);
                let mut pts = Vec::with_capacity(4 * per_edge);
                for e in 0..4 {
                    let a = corners[e];
                    let b = corners[(e + 1) % 4];
                    for j in 0..per_edge {
                        pts.push(a + (b - a) * (j as f64 / per_edge as f64));
                    }
                }
                pts
            }
        }
    }
}

/// Huygens distance `sup { rho : D(z, rho) ⊆ V for all z in U }`.
///
/// Every supported pair has a closed form: the infimum over `U` of the distance
/// to the complement of `V` is attained at an extreme point of `U` relative to
/// the boundary components of `V`.
pub fn huygens_distance(u: &Region, v: &Region) -> Result<f64> {
    u.validate()?;
    v.validate()?;
    let d = u.min_clearance_in(v);
    if d < 0.0 {
        let point = u
            .boundary_samples(1024)
            .into_iter()
            .find(|z| !v.contains(*z))
            .unwrap_or_else(|| u.boundary_samples(4)[0]);
        return Err(Error::NotContained { point });
    }
    Ok(d)
}

/// Sampled Huygens distance: minimum of the distance-to-complement over
/// boundary samples of `U`, starting at 1024 points per boundary component and
/// doubling until two successive answers agree within `1e-10`.
pub fn huygens_distance_sampled(u: &Region, v: &Region) -> Result<f64> {
    u.validate()?;
    v.validate()?;
    let mut samples = 1024;
    let mut previous: Option<f64> = None;
    loop {
        let mut best = f64::INFINITY;
        for z in u.boundary_samples(samples) {
            let d = v.boundary_distance(z);
            if d < 0.0 {
                return Err(Error::NotContained { point: z });
            }
            best = best.min(d);
        }
        if let Some(prev) = previous {
            if (prev - best).abs() < 1e-10 || samples >= 1 << 22 {
                return Ok(best);
            }
        }
        previous = Some(best);
        samples *= 2;
    }
}
