//! Numerical calculus of series of rational functions whose poles accumulate:
//! sums on perforated stacked domains with certified tails, Taylor jets and
//! remainder bounds, Laurent and polar decompositions on annuli, Gevrey
//! fitting and smallest-term truncation, ramified coverings, and the concrete
//! meander, q-logarithm and zero-expansion families.

// negated comparisons are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gevrey_asymptotics;
pub mod models;
pub mod numeric;
pub mod polar_decomposition;
pub mod ramified_covering;
pub mod series_engine;
pub mod stack_geometry;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;
