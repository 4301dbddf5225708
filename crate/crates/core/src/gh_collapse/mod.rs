//! Gromov–Hausdorff collapse of `ℤ_p`-quotients of `P × S¹(r)`.
//!
//! `P` is a rotationally symmetric surface discretised on a `(ρ, θ)` grid.
//! Geodesic distances on `P` come from fast marching (or, for comparison,
//! Dijkstra on an 8-neighbour graph); quotient distances minimise the
//! product distance over the group orbit. As `p` grows the sampled quotient
//! approaches the surface carrying the transformed warp, and the distortion
//! of the natural correspondence bounds twice the GH distance.

mod eikonal;
mod experiment;
mod graph;
mod grid;
mod quotient;
mod space;
mod table;

pub use eikonal::{eikonal_distances, fast_marching};
pub use experiment::{collapse_experiment, CircleRow, CollapseConfig, CollapseReport, CollapseRow, GridSize};
pub use graph::{build_surface_graph, dijkstra, surface_distances, SurfaceGraph};
pub use grid::SurfaceGrid;
pub use quotient::{
    circle_arc, natural_correspondence, product_distance, quotient_distance, quotient_space, surface_space,
    GroupAction, ProductPoint, QuotientSpec,
};
pub use space::{distortion, Correspondence, FiniteMetricSpace};
pub use table::{CircleDistance, DistanceTable, GeodesicMethod, SurfaceDistance, SurfacePoint};
