use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::grid::SurfaceGrid;
use super::quotient::{
    natural_correspondence, quotient_space, surface_space, GroupAction, ProductPoint, QuotientSpec,
};
use super::space::{distortion, Correspondence};
use super::table::{DistanceTable, GeodesicMethod, SurfacePoint};
use crate::warped_metric::{transform_upsilon, RotSymMetric, TransformParams, WarpSpec};
use crate::{Error, Result};

/// Node counts in `(ρ, θ, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSize {
    pub n_rho: usize,
    pub n_theta: usize,
    pub n_s: usize,
}

/// Configuration of a `ℤ_p` collapse run.
///
/// `seed` is accepted so that configs can carry one, but sampling uses a
/// fixed subgrid and never draws random numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollapseConfig {
    pub surface: WarpSpec,
    #[serde(default)]
    pub rho_min: f64,
    pub rho_max: f64,
    pub r: f64,
    pub m1: u32,
    pub m2: u32,
    pub p_values: Vec<u32>,
    pub grid: GridSize,
    pub sample: GridSize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub method: GeodesicMethod,
    /// Also compare the `S¹` quotient, discretised with this many steps.
    #[serde(default)]
    pub circle_steps: Option<u32>,
}

impl CollapseConfig {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.p_values.is_empty() {
            return bad("p_values must not be empty".into());
        }
        if self.p_values.contains(&0) {
            return bad("every p must be at least 1".into());
        }
        let (g, s) = (self.grid, self.sample);
        if g.n_s == 0 {
            return bad("grid.n_s must be at least 1".into());
        }
        if s.n_rho == 0 || s.n_theta == 0 || s.n_s == 0 {
            return bad("sample sizes must be at least 1".into());
        }
        if s.n_rho > g.n_rho || s.n_theta > g.n_theta || s.n_s > g.n_s {
            return bad(format!("sample {s:?} does not fit in grid {g:?}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CollapseRow {
    pub p: u32,
    pub distortion: f64,
    pub gh_upper_bound: f64,
    pub grid_floor_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CircleRow {
    pub steps: u32,
    pub distortion: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollapseReport {
    pub rows: Vec<CollapseRow>,
    /// Distortion between the limit surface sampled on the configured grid
    /// and on the grid refined twice in each direction.
    pub grid_floor_estimate: f64,
    pub circle: Option<CircleRow>,
}

impl CollapseReport {
    /// Whether the distortion column never grows by more than `slack`.
    pub fn is_non_increasing(&self, slack: f64) -> bool {
        self.rows
            .windows(2)
            .all(|w| w[1].distortion <= w[0].distortion + slack)
    }
}

fn subgrid(count: usize, total: usize, closed: bool) -> Vec<usize> {
    if count == 1 {
        return vec![0];
    }
    (0..count)
        .map(|i| {
            if closed {
                (i as f64 * (total - 1) as f64 / (count - 1) as f64).round() as usize
            } else {
                (i as f64 * total as f64 / count as f64).round() as usize % total
            }
        })
        .collect()
}

/// Distortion of the natural correspondence between the sampled
/// `ℤ_p`-quotients of `P × S¹(r)` and the transformed surface, for every `p`
/// in the config.
pub fn collapse_experiment(config: &CollapseConfig) -> Result<CollapseReport> {
    config.validate()?;
    let surface = RotSymMetric::new(config.surface.to_warp()?, config.rho_min, config.rho_max)?;
    let params = TransformParams::rational(config.r, config.m1, config.m2)?;
    let limit = transform_upsilon(&surface, &params)?;
    let (g, s) = (config.grid, config.sample);

    let rows = subgrid(s.n_rho, g.n_rho, true);
    let cols = subgrid(s.n_theta, g.n_theta, false);
    let s_idx = subgrid(s.n_s, g.n_s, false);
    let mut sample = Vec::with_capacity(rows.len() * cols.len() * s_idx.len());
    for &row in &rows {
        for &col in &cols {
            for &k in &s_idx {
                sample.push(ProductPoint {
                    surface: SurfacePoint {
                        row,
                        theta: TAU * col as f64 / g.n_theta as f64,
                    },
                    s: TAU * k as f64 / g.n_s as f64,
                });
            }
        }
    }

    let p_table = DistanceTable::build(SurfaceGrid::new(&surface, g.n_rho, g.n_theta)?, &rows, config.method)?;
    let limit_table = DistanceTable::build(SurfaceGrid::new(&limit, g.n_rho, g.n_theta)?, &rows, config.method)?;
    let fine_rows: Vec<usize> = rows.iter().map(|r| 2 * r).collect();
    let fine_table = DistanceTable::build(
        SurfaceGrid::new(&limit, 2 * g.n_rho - 1, 2 * g.n_theta)?,
        &fine_rows,
        config.method,
    )?;

    let spec = |group| QuotientSpec::new(config.r, config.m1, config.m2, group);
    let (images, correspondence) = natural_correspondence(&sample, &spec(GroupAction::Cyclic(1))?);
    let limit_space = surface_space(&images, &limit_table)?;
    let fine_images: Vec<SurfacePoint> = images
        .iter()
        .map(|p| SurfacePoint { row: 2 * p.row, ..*p })
        .collect();
    let fine_space = surface_space(&fine_images, &fine_table)?;
    let floor = distortion(&limit_space, &fine_space, &Correspondence::identity(images.len()))?;
    log::info!("grid floor estimate {floor:.6e}");

    let mut out = Vec::with_capacity(config.p_values.len());
    for &p in &config.p_values {
        let quotient = quotient_space(&spec(GroupAction::Cyclic(p))?, &sample, &p_table)?;
        let d = distortion(&quotient, &limit_space, &correspondence)?;
        log::info!("p = {p}: distortion {d:.6e}");
        out.push(CollapseRow {
            p,
            distortion: d,
            gh_upper_bound: 0.5 * d,
            grid_floor_estimate: floor,
        });
    }
    let circle = match config.circle_steps {
        Some(steps) => {
            let quotient = quotient_space(&spec(GroupAction::Circle(steps))?, &sample, &p_table)?;
            Some(CircleRow {
                steps,
                distortion: distortion(&quotient, &limit_space, &correspondence)?,
            })
        }
        None => None,
    };
    Ok(CollapseReport {
        rows: out,
        grid_floor_estimate: floor,
        circle,
    })
}
