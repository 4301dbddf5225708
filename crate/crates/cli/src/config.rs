use collapse_lab::su2_geometry::{xi_quotient_metric, BergerMetric, SlopeXi};
use collapse_lab::warped_metric::{TransformParams, WarpFamily, WarpSpec};
use collapse_lab::{Error, Result};
use serde::Deserialize;

fn default_samples() -> usize {
    200
}

/// Warp sampled on `[rho_min, rho_max]`, optionally transformed by `(r, κ)`
/// or `(r, m1/m2)`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WarpTableConfig {
    pub family: WarpFamily,
    #[serde(default)]
    pub a: Option<f64>,
    #[serde(default)]
    pub r: Option<f64>,
    #[serde(default)]
    pub kappa: Option<f64>,
    #[serde(default)]
    pub m1: Option<u32>,
    #[serde(default)]
    pub m2: Option<u32>,
    #[serde(default)]
    pub rho_min: f64,
    pub rho_max: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

impl WarpTableConfig {
    pub fn warp_spec(&self) -> WarpSpec {
        WarpSpec {
            family: self.family,
            a: self.a,
        }
    }

    pub fn params(&self) -> Result<Option<TransformParams>> {
        match (self.r, self.kappa, self.m1, self.m2) {
            (None, None, None, None) => Ok(None),
            (Some(r), Some(kappa), None, None) => TransformParams::new(r, kappa).map(Some),
            (Some(r), None, Some(m1), Some(m2)) => TransformParams::rational(r, m1, m2).map(Some),
            _ => Err(Error::InvalidConfig(
                "give either r and kappa, or r, m1 and m2".into(),
            )),
        }
    }

    pub fn grid(&self) -> Result<Vec<f64>> {
        linspace(self.rho_min, self.rho_max, self.samples)
    }
}

pub fn linspace(lo: f64, hi: f64, samples: usize) -> Result<Vec<f64>> {
    if samples < 2 {
        return Err(Error::InvalidConfig(format!("samples must be at least 2, got {samples}")));
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidConfig(format!("need a finite range lo < hi, got [{lo}, {hi}]")));
    }
    Ok((0..samples)
        .map(|i| {
            if i == samples - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (samples - 1) as f64
            }
        })
        .collect())
}

fn default_b() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonConfig {
    #[serde(rename = "A")]
    pub a_coef: f64,
    #[serde(rename = "B", default = "default_b")]
    pub b_coef: f64,
    pub rho_max: f64,
    pub step: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

/// Rows of the ambient metric, of a basis of `H` and of the frame of `N`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientConfig {
    pub metric: Vec<Vec<f64>>,
    pub h: Vec<Vec<f64>>,
    pub frame: Vec<Vec<f64>>,
}

fn default_radius_min() -> f64 {
    0.05
}

fn default_radius_max() -> f64 {
    4.0
}

fn default_radius_steps() -> usize {
    400
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BergerConfig {
    #[serde(rename = "A", default)]
    pub a: Option<f64>,
    #[serde(rename = "B", default)]
    pub b: Option<f64>,
    #[serde(rename = "C", default)]
    pub c: Option<f64>,
    /// Use the quotient metric of slope `xi` instead of `A, B, C`.
    #[serde(default)]
    pub xi: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_radius_min")]
    pub radius_min: f64,
    #[serde(default = "default_radius_max")]
    pub radius_max: f64,
    #[serde(default = "default_radius_steps")]
    pub radius_steps: usize,
}

impl BergerConfig {
    pub fn metric(&self) -> Result<BergerMetric> {
        match (self.a, self.b, self.c, self.xi) {
            (Some(a), Some(b), Some(c), None) => BergerMetric::new(a, b, c),
            (None, None, None, Some(xi)) => xi_quotient_metric(SlopeXi::new(xi)?),
            _ => Err(Error::InvalidConfig("give either A, B and C, or xi".into())),
        }
    }
}
