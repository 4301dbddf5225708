//! Rotationally symmetric steady gradient solitons.
//!
//! For `g = dρ² + f² dθ²` and a radial potential `φ(ρ)`, the soliton
//! equation `K g = ∇²φ` splits into `-f''/f = φ'' = (f'/f) φ'`, which
//! integrates to the Riccati equation `f' + A f² = B`. A smooth cap at the
//! origin forces `B = 1` and leaves three branches:
//!
//! | `A`        | warp            | potential          |
//! |------------|-----------------|--------------------|
//! | `a² > 0`   | `tanh(aρ)/a`    | `2 ln cosh(aρ)`    |
//! | `0`        | `ρ`             | constant           |
//! | `-a² < 0`  | `tan(aρ)/a`     | `2 ln cos(aρ)`     |

use std::f64::consts::FRAC_PI_2;

use crate::warped_metric::{Jet, RotSymMetric, Tabulated, WarpCurve};
use crate::{Error, Result, DELTA_CAP};

/// Coefficients of `f' + A f² = B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonParams {
    a_coef: f64,
    b_coef: f64,
}

impl SolitonParams {
    /// Smooth-cap branch: `f(0) = 0, f'(0) = 1`, hence `B = 1`.
    pub fn capped(a_coef: f64) -> Result<Self> {
        Self::general(a_coef, 1.0)
    }

    pub fn general(a_coef: f64, b_coef: f64) -> Result<Self> {
        if !(a_coef.is_finite() && b_coef.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "soliton coefficients must be finite, got A = {a_coef}, B = {b_coef}"
            )));
        }
        Ok(Self { a_coef, b_coef })
    }

    pub fn a_coef(&self) -> f64 {
        self.a_coef
    }

    pub fn b_coef(&self) -> f64 {
        self.b_coef
    }

    /// `a = sqrt(|A|)`.
    pub fn scale(&self) -> f64 {
        self.a_coef.abs().sqrt()
    }

    /// First `ρ > 0` at which the solution from `f(0) = 0` blows up, if any.
    pub fn blow_up(&self) -> Option<f64> {
        let ab = self.a_coef * self.b_coef;
        (ab < 0.0).then(|| FRAC_PI_2 / (-ab).sqrt())
    }

    fn rhs(&self, f: f64) -> f64 {
        self.b_coef - self.a_coef * f * f
    }
}

/// Integrates `f' = B - A f²` from `f(0) = 0` with classical fourth-order
/// Runge–Kutta on a uniform grid covering `[0, rho_max]`.
///
/// The step is shrunk slightly so that the grid ends exactly at `rho_max`.
/// Knot slopes are taken from the ODE itself, so the tabulated warp carries
/// fourth-order values and slopes.
pub fn solve_warp_ode(params: &SolitonParams, rho_max: f64, step: f64) -> Result<WarpCurve> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
    }
    if !(rho_max > 0.0 && rho_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "rho_max must be positive and finite, got {rho_max}"
        )));
    }
    if let Some(blow_up) = params.blow_up() {
        if rho_max > blow_up - 10.0 * step {
            return Err(Error::BlowUp { rho_max, blow_up });
        }
    }
    let n = ((rho_max / step).ceil() as usize).max(2);
    let h = rho_max / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    let mut f = 0.0_f64;
    values.push(f);
    for _ in 0..n {
        let k1 = params.rhs(f);
        let k2 = params.rhs(f + 0.5 * h * k1);
        let k3 = params.rhs(f + 0.5 * h * k2);
        let k4 = params.rhs(f + h * k3);
        f += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        values.push(f);
    }
    let slopes = values.iter().map(|&v| params.rhs(v)).collect();
    Ok(WarpCurve::Tabulated(Tabulated::with_slopes(0.0, h, values, slopes)?))
}

/// Closed-form solution of the capped branch.
pub fn closed_form_warp(params: &SolitonParams) -> Result<WarpCurve> {
    if params.b_coef != 1.0 {
        return Err(Error::InvalidParameter(format!(
            "closed forms assume the capped branch B = 1, got B = {}",
            params.b_coef
        )));
    }
    let a = params.scale();
    Ok(if params.a_coef > 0.0 {
        WarpCurve::Tanh(a)
    } else if params.a_coef < 0.0 {
        WarpCurve::Tan(a)
    } else {
        WarpCurve::Linear
    })
}

/// Radial soliton potential `φ(ρ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Potential {
    /// `2 ln cosh(aρ)`, paired with the cigar.
    LogCosh { a: f64 },
    /// `2 ln cos(aρ)`, paired with the exploding soliton.
    LogCos { a: f64 },
}

impl Potential {
    pub fn jet(&self, rho: f64) -> Jet {
        match *self {
            Self::LogCosh { a } => {
                let x = a * rho;
                let t = x.tanh();
                Jet::new(2.0 * x.cosh().ln(), 2.0 * a * t, 2.0 * a * a * (1.0 - t * t))
            }
            Self::LogCos { a } => {
                let x = a * rho;
                let t = x.tan();
                Jet::new(2.0 * x.cos().ln(), -2.0 * a * t, -2.0 * a * a * (1.0 + t * t))
            }
        }
    }
}

/// A radial function known together with its first two derivatives.
pub trait RadialFunction {
    fn jet(&self, rho: f64) -> Jet;
}

impl RadialFunction for Potential {
    fn jet(&self, rho: f64) -> Jet {
        Potential::jet(self, rho)
    }
}

impl<F: Fn(f64) -> Jet> RadialFunction for F {
    fn jet(&self, rho: f64) -> Jet {
        self(rho)
    }
}

pub fn soliton_potential(params: &SolitonParams) -> Result<Potential> {
    let a = params.scale();
    if params.a_coef > 0.0 {
        Ok(Potential::LogCosh { a })
    } else if params.a_coef < 0.0 {
        Ok(Potential::LogCos { a })
    } else {
        Err(Error::TrivialSoliton)
    }
}

fn away_from_pole(warp: &WarpCurve, rho: f64) -> Result<Jet> {
    let j = warp.jet(rho);
    if j.value <= DELTA_CAP {
        return Err(Error::PoleProximity {
            rho,
            value: j.value,
        });
    }
    Ok(j)
}

/// Residuals of `-f''/f = φ''` and `φ'' = (f'/f) φ'`.
pub fn soliton_residual(warp: &WarpCurve, phi: &Potential, rho: f64) -> Result<(f64, f64)> {
    let f = away_from_pole(warp, rho)?;
    let curvature = warp.closed_form_curvature(rho).unwrap_or(-f.d2 / f.value);
    let p = phi.jet(rho);
    Ok(((curvature - p.d2).abs(), (p.d2 - f.d1 / f.value * p.d1).abs()))
}

/// Laplacian of a radial function on a surface of revolution,
/// `Δu = u'' + (f'/f) u'`.
pub fn radial_laplacian(warp: &WarpCurve, u: &impl RadialFunction, rho: f64) -> Result<f64> {
    let f = away_from_pole(warp, rho)?;
    let u = u.jet(rho);
    Ok(u.d2 + f.d1 / f.value * u.d1)
}

/// `|Δ ln(-R) + R|` for the exploding soliton `f = tan ρ` at `rho`.
///
/// `R = 2K` and its derivatives come from the warp's closed-form curvature;
/// the Laplacian is taken with [`radial_laplacian`].
pub fn exploding_identity_residual(rho: f64) -> Result<f64> {
    if !(rho > DELTA_CAP && rho < FRAC_PI_2 - DELTA_CAP) {
        return Err(Error::OutOfDomain {
            rho,
            min: DELTA_CAP,
            max: FRAC_PI_2 - DELTA_CAP,
        });
    }
    let warp = WarpCurve::Tan(1.0);
    let log_minus_r = |x: f64| {
        let k = warp.curvature_jet(x).expect("tan has a closed-form curvature");
        // ln(-R) = ln(-2K); the factor 2 drops out of the derivatives.
        let d1 = k.d1 / k.value;
        Jet::new((-2.0 * k.value).ln(), d1, k.d2 / k.value - d1 * d1)
    };
    let scalar = 2.0 * warp.closed_form_curvature(rho).expect("closed form");
    Ok((radial_laplacian(&warp, &log_minus_r, rho)? + scalar).abs())
}

/// Metric of the capped soliton branch on `[0, rho_max]`.
pub fn soliton_metric(params: &SolitonParams, rho_max: f64) -> Result<RotSymMetric> {
    RotSymMetric::new(closed_form_warp(params)?, 0.0, rho_max)
}
