//! Laurent coefficients and polar parts on annuli `A(omega; lambda, r)`.
//!
//! Coefficients come from the trapezoid rule on the mid circle
//! `|z - omega| = sqrt(lambda) r`. The two-dimensional inner product
//! `<f, g> = (1/pi) ∫∫_A f conj(g) dA`, in which the monomials
//! `phi_k = (z - omega)^k` are orthogonal, is kept as an independent route.
//!
//! Two constants bound the polar part `f_omega` on `|z - omega| >= lambda r`
//! in terms of `|f|`, the sup over the annulus:
//! `s(lambda) r |f|` (from `||f|| <= area |f|`) and the scale-free
//! `s~(lambda) |f|` with `s~ = s / (pi sqrt(lambda^2 - 1))` (from
//! `||f|| <= sqrt(area / pi) |f|`). Only the second holds for every radius.

mod basis;
mod fiber;
mod laurent;

pub use basis::{basis_norm, c_lambda, inner_product, s_lambda, s_lambda_scale_free, AnnulusSpec};
pub use fiber::fiber_polar_sum;
pub use laurent::{
    extension_report, laurent_coefficients, laurent_coefficients_at, laurent_coefficients_l2,
    polar_part, ExtensionReport, LaurentExpansion, PolarPart,
};
