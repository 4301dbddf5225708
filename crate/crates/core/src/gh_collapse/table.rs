use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::eikonal::eikonal_distances;
use super::graph::{graph_on, surface_distances};
use super::grid::SurfaceGrid;
use crate::{Error, Result};

/// How geodesic distances on the surface are approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeodesicMethod {
    /// Fast marching on the grid; converges under refinement.
    #[default]
    Eikonal,
    /// Dijkstra on the 8-neighbour graph.
    Graph,
}

/// Point on a grid row at an arbitrary angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub row: usize,
    pub theta: f64,
}

/// Distance oracle on a rotationally symmetric surface.
pub trait SurfaceDistance: Sync {
    fn distance(&self, a: SurfacePoint, b: SurfacePoint) -> f64;
}

/// Geodesic distances from the `θ = 0` node of selected rows, extended to all
/// angles by rotational symmetry.
///
/// Off-grid angles are interpolated linearly along the target row, and each
/// lookup averages the two directions so that the oracle is exactly
/// symmetric.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    grid: SurfaceGrid,
    slots: BTreeMap<usize, usize>,
    dist: Vec<Vec<f64>>,
}

impl DistanceTable {
    pub fn build(grid: SurfaceGrid, rows: &[usize], method: GeodesicMethod) -> Result<Self> {
        let mut source_rows: Vec<usize> = rows.to_vec();
        source_rows.sort_unstable();
        source_rows.dedup();
        if let Some(&bad) = source_rows.iter().find(|&&r| r >= grid.n_rho()) {
            return Err(Error::InvalidParameter(format!("row {bad} is outside the grid")));
        }
        let sources: Vec<usize> = source_rows.iter().map(|&r| grid.node(r, 0)).collect();
        let (grid, dist) = match method {
            GeodesicMethod::Eikonal => {
                let dist = eikonal_distances(&grid, &sources)?;
                (grid, dist)
            }
            GeodesicMethod::Graph => {
                let graph = graph_on(grid);
                let dist = surface_distances(&graph, &sources)?;
                (graph.grid().clone(), dist)
            }
        };
        let slots = source_rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        Ok(Self { grid, slots, dist })
    }

    pub fn grid(&self) -> &SurfaceGrid {
        &self.grid
    }

    pub fn rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.slots.keys().copied()
    }

    /// Distance from `(from_row, 0)` to `(to_row, dtheta)`.
    pub fn directed(&self, from_row: usize, to_row: usize, dtheta: f64) -> f64 {
        let slot = *self
            .slots
            .get(&from_row)
            .unwrap_or_else(|| panic!("row {from_row} is not tabulated"));
        let table = &self.dist[slot];
        if self.grid.is_pole(to_row) {
            return table[self.grid.node(to_row, 0)];
        }
        let n = self.grid.n_theta();
        let x = dtheta.rem_euclid(TAU) / self.grid.d_theta();
        let j0 = (x.floor() as usize).min(n - 1);
        let t = (x - j0 as f64).clamp(0.0, 1.0);
        let v0 = table[self.grid.node(to_row, j0)];
        if t == 0.0 {
            return v0;
        }
        let v1 = table[self.grid.node(to_row, (j0 + 1) % n)];
        v0 + t * (v1 - v0)
    }
}

impl SurfaceDistance for DistanceTable {
    fn distance(&self, a: SurfacePoint, b: SurfacePoint) -> f64 {
        0.5 * (self.directed(a.row, b.row, b.theta - a.theta)
            + self.directed(b.row, a.row, a.theta - b.theta))
    }
}

/// Round circle of the given radius, as a degenerate surface that ignores
/// rows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleDistance {
    pub radius: f64,
}

impl SurfaceDistance for CircleDistance {
    fn distance(&self, a: SurfacePoint, b: SurfacePoint) -> f64 {
        self.radius * super::quotient::circle_arc(a.theta - b.theta)
    }
}
