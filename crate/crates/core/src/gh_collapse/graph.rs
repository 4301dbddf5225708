use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::grid::SurfaceGrid;
use crate::warped_metric::RotSymMetric;
use crate::{Error, Result};

/// 8-neighbour grid graph of a rotationally symmetric surface.
///
/// An edge between rows `i, i'` and columns `j, j'` has the length of the
/// coordinate segment with the metric frozen at the midpoint row,
/// `sqrt(Δρ² + f(ρ_mid)² Δθ²)`. A pole is joined to every node of the
/// adjacent row by an edge of length `Δρ`.
#[derive(Debug, Clone)]
pub struct SurfaceGraph {
    grid: SurfaceGrid,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl SurfaceGraph {
    pub fn grid(&self) -> &SurfaceGrid {
        &self.grid
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbours(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().map(move |&(b, w)| (a, b, w)))
    }
}

pub fn build_surface_graph(metric: &RotSymMetric, n_rho: usize, n_theta: usize) -> Result<SurfaceGraph> {
    let grid = SurfaceGrid::new(metric, n_rho, n_theta)?;
    Ok(graph_on(grid))
}

pub(crate) fn graph_on(grid: SurfaceGrid) -> SurfaceGraph {
    let (d_rho, d_theta) = (grid.d_rho(), grid.d_theta());
    let warp = grid.metric().warp().clone();
    let mut adjacency = vec![Vec::new(); grid.node_count()];
    for row in 0..grid.n_rho() {
        if grid.is_pole(row) {
            continue;
        }
        for col in 0..grid.n_theta() {
            let here = grid.node(row, col);
            for d_row in [-1_i64, 0, 1] {
                let Some(other_row) = row.checked_add_signed(d_row as isize) else {
                    continue;
                };
                if other_row >= grid.n_rho() {
                    continue;
                }
                if grid.is_pole(other_row) {
                    let pole = grid.node(other_row, 0);
                    adjacency[here].push((pole, d_rho));
                    adjacency[pole].push((here, d_rho));
                    continue;
                }
                for d_col in [-1_i64, 0, 1] {
                    if d_row == 0 && d_col == 0 {
                        continue;
                    }
                    let other_col = (col as i64 + d_col).rem_euclid(grid.n_theta() as i64) as usize;
                    let there = grid.node(other_row, other_col);
                    let mid = 0.5 * (grid.rho(row) + grid.rho(other_row));
                    let f = warp.jet(mid).value;
                    let dr = d_row as f64 * d_rho;
                    let dt = d_col as f64 * d_theta;
                    adjacency[here].push((there, (dr * dr + f * f * dt * dt).sqrt()));
                }
            }
        }
    }
    SurfaceGraph { grid, adjacency }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Frontier {
    pub dist: f64,
    pub node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, ties broken by node for determinism
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Single-source shortest paths.
pub fn dijkstra(graph: &SurfaceGraph, source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; graph.node_count()];
    let mut settled = vec![false; graph.node_count()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Frontier {
        dist: 0.0,
        node: source,
    });
    while let Some(Frontier { dist: d, node }) = heap.pop() {
        if settled[node] {
            continue;
        }
        settled[node] = true;
        for &(next, w) in graph.neighbours(node) {
            let candidate = d + w;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(Frontier {
                    dist: candidate,
                    node: next,
                });
            }
        }
    }
    dist
}

/// Shortest-path distances from each source to every node; one row per
/// source.
pub fn surface_distances(graph: &SurfaceGraph, sources: &[usize]) -> Result<Vec<Vec<f64>>> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("at least one source is required".into()));
    }
    if let Some(&bad) = sources.iter().find(|&&s| s >= graph.node_count()) {
        return Err(Error::InvalidParameter(format!("source node {bad} does not exist")));
    }
    let rows: Vec<Vec<f64>> = sources.par_iter().map(|&s| dijkstra(graph, s)).collect();
    for row in &rows {
        if let Some(node) = row.iter().position(|d| !d.is_finite()) {
            return Err(Error::Disconnected { node });
        }
    }
    Ok(rows)
}
