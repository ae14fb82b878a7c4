//! Summation of term sequences on a perforated stacked space.
//!
//! A [`TermSequence`] supplies `f_n`, closed-form derivatives and a certified
//! bound on `sup |f_n|` over each perforated sheet. Sums are accumulated with
//! compensated summation and stop when a certified tail bound meets the
//! tolerance. Derivative tails use Cauchy estimates on the inflated discs
//! `D(p, lambda r_n)`: `|f_n^(k)| <= k! |f_n| / (eps r_n)^k` with
//! `eps = lambda - 1`.

mod jet;
mod sequence;
mod sum;

pub use jet::{c_m, remainder_bound, taylor_jet, taylor_truncation, TaylorJet, Truncation};
pub use sequence::{simple_pole_derivative, SimplePole, TermSequence};
pub use sum::{
    derivative_envelope, derivative_sum, evaluate_sum, evaluate_sum_with, sampled_circle_sup,
    scaled_derivative_sum, SumOptions, SumResult,
};
