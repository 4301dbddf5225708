use std::fmt::Write as _;

use collapse_lab::gh_collapse::{collapse_experiment, CollapseConfig};
use collapse_lab::killing_quotient::{quotient_metric_form, HBasis, PointMetric};
use collapse_lab::soliton::{soliton_potential, soliton_residual, solve_warp_ode, SolitonParams};
use collapse_lab::su2_geometry::{best_fit_radius, scan_submersion_radius, HopfStretchSample};
use collapse_lab::warped_metric::{eval_warp, gauss_curvature, transform_upsilon, RotSymMetric};
use collapse_lab::{Error, Result};
use nalgebra::DVector;

use crate::config::{linspace, BergerConfig, QuotientConfig, SolitonConfig, WarpTableConfig};

/// CSV text with a fixed header; floats are written with 17 significant
/// digits so that they parse back to the same double.
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            text: format!("{}\n", header.join(",")),
            columns: header.len(),
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.columns, "row width must match the header");
        let cells: Vec<String> = values.iter().map(|v| float(*v)).collect();
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn raw_row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width must match the header");
        let _ = writeln!(self.text, "{}", cells.join(","));
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn metric_of(config: &WarpTableConfig) -> Result<RotSymMetric> {
    RotSymMetric::new(config.warp_spec().to_warp()?, config.rho_min, config.rho_max)
}

pub fn transform(config: &WarpTableConfig) -> Result<String> {
    let params = config
        .params()?
        .ok_or_else(|| Error::InvalidConfig("transform needs r and kappa (or m1, m2)".into()))?;
    let metric = metric_of(config)?;
    let transformed = transform_upsilon(&metric, &params)?;
    let mut csv = Csv::new(&["rho", "f", "f_transformed"]);
    for rho in config.grid()? {
        csv.row(&[rho, eval_warp(&metric, rho)?.value, eval_warp(&transformed, rho)?.value]);
    }
    Ok(csv.finish())
}

pub fn curvature(config: &WarpTableConfig) -> Result<String> {
    let mut metric = metric_of(config)?;
    if let Some(params) = config.params()? {
        metric = transform_upsilon(&metric, &params)?;
    }
    let mut csv = Csv::new(&["rho", "K"]);
    for rho in config.grid()? {
        csv.row(&[rho, gauss_curvature(&metric, rho)?]);
    }
    Ok(csv.finish())
}

pub fn soliton(config: &SolitonConfig) -> Result<String> {
    let params = SolitonParams::general(config.a_coef, config.b_coef)?;
    let warp = solve_warp_ode(&params, config.rho_max, config.step)?;
    let phi = soliton_potential(&params)?;
    let metric = RotSymMetric::new(warp.clone(), 0.0, config.rho_max)?;
    let mut csv = Csv::new(&["rho", "f", "fprime", "K", "phi", "res1", "res2"]);
    // The pole is skipped: -f''/f is undefined there for sampled warps.
    for rho in linspace(0.0, config.rho_max, config.samples + 1)?.into_iter().skip(1) {
        let f = warp.jet(rho);
        let (res1, res2) = soliton_residual(&warp, &phi, rho)?;
        csv.row(&[
            rho,
            f.value,
            f.d1,
            gauss_curvature(&metric, rho)?,
            phi.jet(rho).value,
            res1,
            res2,
        ]);
    }
    Ok(csv.finish())
}

pub fn quotient(config: &QuotientConfig) -> Result<String> {
    let metric = PointMetric::from_rows(&config.metric)?;
    let h = HBasis::from_rows(&config.h)?;
    let frame: Vec<DVector<f64>> = config
        .frame
        .iter()
        .map(|row| DVector::from_column_slice(row))
        .collect();
    let form = quotient_metric_form(&metric, &h, &frame)?;
    let k = form.dim();
    let header: Vec<String> = (0..k).map(|j| format!("h_{j}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header);
    for i in 0..k {
        let row: Vec<f64> = (0..k).map(|j| form.matrix()[(i, j)]).collect();
        csv.row(&row);
    }
    Ok(csv.finish())
}

pub fn berger(config: &BergerConfig) -> Result<String> {
    let metric = config.metric()?;
    if config.samples == 0 {
        return Err(Error::InvalidConfig("samples must be positive".into()));
    }
    if !(config.radius_min > 0.0 && config.radius_min < config.radius_max && config.radius_steps >= 2) {
        return Err(Error::InvalidConfig(
            "need 0 < radius_min < radius_max and radius_steps >= 2".into(),
        ));
    }
    let sample = HopfStretchSample::draw(&metric, config.samples, config.seed);
    let fit = best_fit_radius(&sample, config.radius_min, config.radius_max, config.radius_steps);
    log::info!("Berger coefficients (A, B, C) = ({}, {}, {})", metric.a, metric.b, metric.c);
    log::info!(
        "best target radius R* = {:.12} with distortion {:.3e}; S^2(2B) would have radius {}",
        fit.radius,
        fit.distortion,
        2.0 * metric.b
    );
    let mut csv = Csv::new(&["target_radius", "max_distortion"]);
    for (radius, distortion) in scan_submersion_radius(
        &sample,
        config.radius_min,
        config.radius_max,
        config.radius_steps,
    ) {
        csv.row(&[radius, distortion]);
    }
    Ok(csv.finish())
}

pub fn collapse(config: &CollapseConfig) -> Result<String> {
    let report = collapse_experiment(config)?;
    if let Some(circle) = report.circle {
        log::info!(
            "circle quotient with {} steps: distortion {:.6e}",
            circle.steps,
            circle.distortion
        );
    }
    let mut csv = Csv::new(&["p", "distortion", "gh_upper_bound", "grid_floor_estimate"]);
    for row in &report.rows {
        csv.raw_row(&[
            row.p.to_string(),
            float(row.distortion),
            float(row.gh_upper_bound),
            float(row.grid_floor_estimate),
        ]);
    }
    Ok(csv.finish())
}
