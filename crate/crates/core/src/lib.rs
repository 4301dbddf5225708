//! Numerical toolkit for metric transformations that arise from collapsing
//! circle actions.
//!
//! The crate is organised by geometric object:
//!
//! - [`warped_metric`]: rotationally symmetric surface metrics
//!   `dρ² + f(ρ)² dθ²` and the circle-quotient transformation of their warp.
//! - [`soliton`]: the radial steady-soliton ODE `f' + A f² = B`, its closed
//!   forms and residual checks for the soliton equation.
//! - [`killing_quotient`]: pointwise quotient metrics built from Killing
//!   vectors and orthogonal projections.
//! - [`su2_geometry`]: the unit quaternions, Berger metrics and the Hopf map.
//! - [`gh_collapse`]: sampled finite quotients and correspondence-distortion
//!   bounds for Gromov–Hausdorff collapse.

pub mod error;
pub mod gh_collapse;
pub mod killing_quotient;
pub mod soliton;
pub mod su2_geometry;
pub mod warped_metric;

pub use error::{Error, Result};

/// Smallest warp value at which `-f''/f` is evaluated numerically.
///
/// Closer to a pole the quotient suffers catastrophic cancellation, so only
/// warps with a closed-form curvature may be evaluated there.
pub const DELTA_CAP: f64 = 1e-4;
