//! Concrete term sequences: the Poincaré meander, the Euler q-logarithm and
//! the zero-expansion constructions, with Eulerian polynomials, truncated
//! meander curves and ray traces of the q-logarithm.

mod curve;
mod eulerian;
mod meander;
mod qlog;
mod ray;
mod zero_sum;

pub use curve::{
    meander_curve, meander_polynomial, meander_residual, polynomial_roots, CurvePoint,
};
pub use eulerian::{eulerian_generating, eulerian_polynomial, meander_jet_closed_form};
pub use meander::MeanderModel;
pub use qlog::{QLogModel, NORM_SAMPLES};
pub use ray::{default_ray_angle, ray_trace, RayPoint};
pub use zero_sum::{
    all_zero, max_abs, pi_k, pi_k_polynomial, pi_k_rational, pik_polynomial_identity,
    pik_remainder_closed_rational, pik_remainder_rational, pik_term_rational,
    zero_sum_coefficients, zero_sum_coefficients_rational, zero_sum_jet_rational, ZeroSumModel,
    ZeroSumVariant,
};

use crate::{Error, Result, C64};

fn validate_x(x: C64) -> Result<()> {
    let q = x.norm();
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "|x| = {q} must lie in (0, 1)"
        )))
    }
}
