use std::f64::consts::TAU;

use crate::warped_metric::RotSymMetric;
use crate::{Error, Result};

const POLE_EPS: f64 = 1e-12;

/// Uniform `(ρ, θ)` grid over a rotationally symmetric surface.
///
/// Rows are `ρ_i = ρ_min + i Δρ` for `i = 0..n_rho` and columns
/// `θ_j = j Δθ`, `Δθ = 2π / n_theta`, wrapping around. An end row where the
/// warp vanishes is a single point of the surface and is stored as one node.
#[derive(Debug, Clone)]
pub struct SurfaceGrid {
    metric: RotSymMetric,
    n_rho: usize,
    n_theta: usize,
    rho: Vec<f64>,
    warp: Vec<f64>,
    pole_first: bool,
    pole_last: bool,
}

impl SurfaceGrid {
    pub fn new(metric: &RotSymMetric, n_rho: usize, n_theta: usize) -> Result<Self> {
        if n_rho < 8 || n_theta < 8 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 8x8 nodes, got {n_rho}x{n_theta}"
            )));
        }
        if !metric.is_bounded() {
            return Err(Error::UnboundedDomain);
        }
        let (lo, hi) = (metric.rho_min(), metric.rho_max());
        let step = (hi - lo) / (n_rho - 1) as f64;
        let rho: Vec<f64> = (0..n_rho)
            .map(|i| if i == n_rho - 1 { hi } else { lo + step * i as f64 })
            .collect();
        let warp: Vec<f64> = rho.iter().map(|&x| metric.warp().jet(x).value).collect();
        let pole_first = warp[0].abs() <= POLE_EPS;
        let pole_last = warp[n_rho - 1].abs() <= POLE_EPS;
        if warp.iter().enumerate().any(|(i, &f)| {
            let end = i == 0 || i == n_rho - 1;
            !(f > 0.0 || (end && f.abs() <= POLE_EPS))
        }) {
            return Err(Error::InvalidParameter(
                "warp must be positive at every interior grid row".into(),
            ));
        }
        Ok(Self {
            metric: metric.clone(),
            n_rho,
            n_theta,
            rho,
            warp,
            pole_first,
            pole_last,
        })
    }

    pub fn metric(&self) -> &RotSymMetric {
        &self.metric
    }

    pub fn n_rho(&self) -> usize {
        self.n_rho
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn d_rho(&self) -> f64 {
        (self.metric.rho_max() - self.metric.rho_min()) / (self.n_rho - 1) as f64
    }

    pub fn d_theta(&self) -> f64 {
        TAU / self.n_theta as f64
    }

    pub fn rho(&self, row: usize) -> f64 {
        self.rho[row]
    }

    pub fn warp_at_row(&self, row: usize) -> f64 {
        self.warp[row]
    }

    pub fn is_pole(&self, row: usize) -> bool {
        (row == 0 && self.pole_first) || (row == self.n_rho - 1 && self.pole_last)
    }

    fn first_regular(&self) -> usize {
        usize::from(self.pole_first)
    }

    fn regular_rows(&self) -> usize {
        self.n_rho - usize::from(self.pole_first) - usize::from(self.pole_last)
    }

    pub fn node_count(&self) -> usize {
        self.regular_rows() * self.n_theta
            + usize::from(self.pole_first)
            + usize::from(self.pole_last)
    }

    /// Node at `(row, col)`, with `col` taken modulo `n_theta`.
    pub fn node(&self, row: usize, col: usize) -> usize {
        if row == 0 && self.pole_first {
            return 0;
        }
        if row == self.n_rho - 1 && self.pole_last {
            return self.node_count() - 1;
        }
        self.first_regular() + (row - self.first_regular()) * self.n_theta + col % self.n_theta
    }

    /// `(row, col)` of a node; poles report column 0.
    pub fn position(&self, node: usize) -> (usize, usize) {
        if self.pole_first && node == 0 {
            return (0, 0);
        }
        if self.pole_last && node == self.node_count() - 1 {
            return (self.n_rho - 1, 0);
        }
        let k = node - self.first_regular();
        (self.first_regular() + k / self.n_theta, k % self.n_theta)
    }

    /// All nodes of a row (a single node for a pole).
    pub fn row_nodes(&self, row: usize) -> Vec<usize> {
        if self.is_pole(row) {
            vec![self.node(row, 0)]
        } else {
            (0..self.n_theta).map(|c| self.node(row, c)).collect()
        }
    }
}
