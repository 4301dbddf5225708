//! First-order fast marching for `|∇u|_g = 1` on a [`SurfaceGrid`].
//!
//! The metric is diagonal in `(ρ, θ)`, so the upwind update at a regular node
//! solves `((u - a)/h_ρ)² + ((u - b)/h_θ)² = 1` with `h_ρ = Δρ`,
//! `h_θ = f(ρ) Δθ`, where `a` and `b` are the smallest accepted neighbours in
//! each direction. Unlike a fixed-stencil graph, the arrival time converges to
//! the geodesic distance as the grid is refined.

use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::graph::Frontier;
use super::grid::SurfaceGrid;
use crate::{Error, Result};

fn upwind(a: f64, h_a: f64, b: f64, h_b: f64) -> f64 {
    if !a.is_finite() {
        return b + h_b;
    }
    if !b.is_finite() {
        return a + h_a;
    }
    let (wa, wb) = (1.0 / (h_a * h_a), 1.0 / (h_b * h_b));
    let qa = wa + wb;
    let qb = -2.0 * (a * wa + b * wb);
    let qc = a * a * wa + b * b * wb - 1.0;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc >= 0.0 {
        let u = (-qb + disc.sqrt()) / (2.0 * qa);
        if u >= a.max(b) {
            return u;
        }
    }
    (a + h_a).min(b + h_b)
}

fn neighbours(grid: &SurfaceGrid, node: usize) -> Vec<usize> {
    let (row, col) = grid.position(node);
    let mut out = Vec::with_capacity(4);
    if grid.is_pole(row) {
        if row > 0 {
            out.extend(grid.row_nodes(row - 1));
        }
        if row + 1 < grid.n_rho() {
            out.extend(grid.row_nodes(row + 1));
        }
        return out;
    }
    if row > 0 {
        out.push(grid.node(row - 1, col));
    }
    if row + 1 < grid.n_rho() {
        out.push(grid.node(row + 1, col));
    }
    let n = grid.n_theta();
    out.push(grid.node(row, (col + 1) % n));
    out.push(grid.node(row, (col + n - 1) % n));
    out
}

fn tentative(grid: &SurfaceGrid, node: usize, value: &[f64], accepted: &[bool]) -> f64 {
    let known = |n: usize| if accepted[n] { value[n] } else { f64::INFINITY };
    let (row, col) = grid.position(node);
    let d_rho = grid.d_rho();
    if grid.is_pole(row) {
        return neighbours(grid, node)
            .into_iter()
            .map(|n| known(n) + d_rho)
            .fold(f64::INFINITY, f64::min);
    }
    let mut a = f64::INFINITY;
    if row > 0 {
        a = a.min(known(grid.node(row - 1, col)));
    }
    if row + 1 < grid.n_rho() {
        a = a.min(known(grid.node(row + 1, col)));
    }
    let n = grid.n_theta();
    let b = known(grid.node(row, (col + 1) % n)).min(known(grid.node(row, (col + n - 1) % n)));
    upwind(a, d_rho, b, grid.warp_at_row(row) * grid.d_theta())
}

/// Arrival times of a front started at `source`.
pub fn fast_marching(grid: &SurfaceGrid, source: usize) -> Vec<f64> {
    let count = grid.node_count();
    let mut value = vec![f64::INFINITY; count];
    let mut accepted = vec![false; count];
    let mut heap = BinaryHeap::new();
    value[source] = 0.0;
    heap.push(Frontier {
        dist: 0.0,
        node: source,
    });
    while let Some(Frontier { node, .. }) = heap.pop() {
        if accepted[node] {
            continue;
        }
        accepted[node] = true;
        for next in neighbours(grid, node) {
            if accepted[next] {
                continue;
            }
            let u = tentative(grid, next, &value, &accepted);
            if u < value[next] {
                value[next] = u;
                heap.push(Frontier { dist: u, node: next });
            }
        }
    }
    value
}

/// Fast-marching distances from each source to every node; one row per
/// source.
pub fn eikonal_distances(grid: &SurfaceGrid, sources: &[usize]) -> Result<Vec<Vec<f64>>> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("at least one source is required".into()));
    }
    if let Some(&bad) = sources.iter().find(|&&s| s >= grid.node_count()) {
        return Err(Error::InvalidParameter(format!("source node {bad} does not exist")));
    }
    let rows: Vec<Vec<f64>> = sources.par_iter().map(|&s| fast_marching(grid, s)).collect();
    for row in &rows {
        if let Some(node) = row.iter().position(|d| !d.is_finite()) {
            return Err(Error::Disconnected { node });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{PI, TAU};

    use super::*;
    use crate::warped_metric::{RotSymMetric, WarpCurve};

    fn grid(warp: WarpCurve, lo: f64, hi: f64, n_rho: usize, n_theta: usize) -> SurfaceGrid {
        SurfaceGrid::new(&RotSymMetric::new(warp, lo, hi).unwrap(), n_rho, n_theta).unwrap()
    }

    fn hyperbolic(r1: f64, r2: f64, dt: f64) -> f64 {
        (r1.cosh() * r2.cosh() - r1.sinh() * r2.sinh() * dt.cos()).acosh()
    }

    #[test]
    fn straight_lines_on_cylinder_are_exact() {
        let g = grid(WarpCurve::Const(1.0), 0.0, 1.0, 33, 64);
        let d = fast_marching(&g, g.node(0, 0));
        assert!((d[g.node(32, 0)] - 1.0).abs() < 1e-12);
        assert!((d[g.node(0, 32)] - PI).abs() < 1e-12);
    }

    #[test]
    fn cylinder_converges_to_flat_distance() {
        let worst = |n: usize| {
            let g = grid(WarpCurve::Const(1.0), 0.0, 1.0, n + 1, 8 * n);
            let d = fast_marching(&g, g.node(0, 0));
            let mut err = 0.0_f64;
            for row in (0..=n).step_by(n / 8) {
                for col in (0..8 * n).step_by(n) {
                    let dt = (TAU * col as f64 / (8 * n) as f64).min(TAU - TAU * col as f64 / (8 * n) as f64);
                    let exact = (g.rho(row).powi(2) + dt * dt).sqrt();
                    err = err.max((d[g.node(row, col)] - exact).abs());
                }
            }
            err
        };
        let (coarse, fine) = (worst(16), worst(64));
        assert!(fine < 0.02, "error {fine}");
        assert!(fine < 0.5 * coarse, "{coarse} -> {fine}");
    }

    #[test]
    fn radial_distance_from_a_pole() {
        let g = grid(WarpCurve::Sinh(1.0), 0.0, 2.0, 41, 48);
        let d = fast_marching(&g, g.node(0, 0));
        for row in 0..41 {
            for col in [0, 7, 30] {
                assert!((d[g.node(row, col)] - g.rho(row)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn hyperbolic_disc_against_law_of_cosines() {
        let g = grid(WarpCurve::Sinh(1.0), 0.0, 2.0, 129, 256);
        let d = eikonal_distances(&g, &[g.node(64, 0)]).unwrap();
        for (row, col) in [(128, 0), (64, 64), (96, 20), (32, 128), (128, 10)] {
            let dt = TAU * col as f64 / 256.0;
            let exact = hyperbolic(g.rho(64), g.rho(row), dt);
            let got = d[0][g.node(row, col)];
            assert!((got - exact).abs() <= 0.03 * exact.max(0.1), "({row},{col}): {got} vs {exact}");
        }
    }

    #[test]
    fn sphere_with_two_poles() {
        let g = grid(WarpCurve::Sin(1.0), 0.0, PI, 65, 64);
        let d = fast_marching(&g, g.node(16, 0));
        let antipode = d[g.node(48, 32)];
        assert!((antipode - PI).abs() < 0.05);
        assert!((d[g.node(64, 0)] - (PI - g.rho(16))).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_sources() {
        let g = grid(WarpCurve::Const(1.0), 0.0, 1.0, 8, 8);
        assert!(eikonal_distances(&g, &[]).is_err());
        assert!(eikonal_distances(&g, &[10_000]).is_err());
    }
}
