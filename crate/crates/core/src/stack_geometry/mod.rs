//! Geometry of the stacked space `N x P`: planar regions and Huygens
//! distances, radius functions, perforations by per-sheet pole families,
//! residual-set membership, and the sampled shrinking estimate.

mod config;
mod perforation;
mod region;

pub use config::{PerforationConfig, PoleSpec, RadiusSpec};
pub use perforation::{
    complex_roots, nearest_root_of_unity, root_of_unity, CauchyStatus, Membership, Perforation,
    PoleFamily, RadiusFunction, RadiusKind, ShrinkReport,
};
pub use region::{huygens_distance, huygens_distance_sampled, Region};
