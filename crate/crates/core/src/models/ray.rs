use serde::Serialize;

use super::QLogModel;
use crate::series_engine::{evaluate_sum, SumResult};
use crate::{Error, C64};

/// One sample of `S` along the ray `z = t e^(i theta)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayPoint {
    pub t: f64,
    pub z: C64,
    pub outcome: Result<SumResult, Error>,
}

impl RayPoint {
    pub fn is_flagged(&self) -> bool {
        self.outcome.is_err()
    }
}

/// Evaluates the q-logarithm sum at `t e^(i theta)` for every `t`; points in a
/// removed disc (or where the tolerance is not reached) are flagged, not skipped.
pub fn ray_trace(model: &QLogModel, theta: f64, t_grid: &[f64], tol: f64) -> Vec<RayPoint> {
    t_grid
        .iter()
        .map(|&t| {
            let z = C64::from_polar(t, theta);
            RayPoint {
                t,
                z,
                outcome: evaluate_sum(model, z, tol),
            }
        })
        .collect()
}

/// `2 pi sqrt 2`, the default ray angle.
pub fn default_ray_angle() -> f64 {
    std::f64::consts::TAU * std::f64::consts::SQRT_2
}
