//! Rotationally symmetric surface metrics `g = dρ² + f(ρ)² dθ²` and the
//! circle-quotient transformation
//!
//! ```text
//! Υ_{r,κ}(dρ² + f² dθ²) = dρ² + r² f² / (κ² f² + r²) dθ².
//! ```
//!
//! `Υ_{r,κ}` is the metric induced on `(P × S¹(r)) / S¹` when the circle acts
//! by rotating `P` with speed `κ` relative to the `S¹(r)` factor. It maps the
//! hyperbolic plane to the cigar, the exploding soliton to the round
//! hemisphere and the unit cylinder to the cylinder of radius `1/√2`.

mod warp;

pub use warp::{Jet, Tabulated, WarpCurve, WarpFamily, WarpSpec};

use crate::{Error, Result, DELTA_CAP};

const CAP_TOLERANCE: f64 = 1e-10;

/// Circle radius `r` and slope `κ` of a diagonal circle action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformParams {
    r: f64,
    kappa: f64,
    ratio: Option<(u32, u32)>,
}

impl TransformParams {
    pub fn new(r: f64, kappa: f64) -> Result<Self> {
        let params = Self {
            r,
            kappa,
            ratio: None,
        };
        params.validate()?;
        Ok(params)
    }

    /// Slope given as the winding pair `κ = m1 / m2`.
    pub fn rational(r: f64, m1: u32, m2: u32) -> Result<Self> {
        if m2 == 0 {
            return Err(Error::InvalidParameter("m2 must be a natural number".into()));
        }
        let params = Self {
            r,
            kappa: f64::from(m1) / f64::from(m2),
            ratio: Some((m1, m2)),
        };
        params.validate()?;
        Ok(params)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.r.is_finite() && self.r > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "circle radius r must be positive, got {}",
                self.r
            )));
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "slope kappa must be nonnegative, got {}",
                self.kappa
            )));
        }
        Ok(())
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn ratio(&self) -> Option<(u32, u32)> {
        self.ratio
    }

    /// `r f / sqrt(κ² f² + r²)` for a single warp value.
    pub fn apply(&self, f: f64) -> f64 {
        self.r * f / (self.kappa * self.kappa * f * f + self.r * self.r).sqrt()
    }
}

/// A warp restricted to the interval `[rho_min, rho_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotSymMetric {
    warp: WarpCurve,
    rho_min: f64,
    rho_max: f64,
    capped_at_origin: bool,
}

impl RotSymMetric {
    pub fn new(warp: WarpCurve, rho_min: f64, rho_max: f64) -> Result<Self> {
        warp.validate()?;
        if rho_min.is_nan() || rho_max.is_nan() || rho_min >= rho_max {
            return Err(Error::InvalidParameter(format!(
                "empty domain [{rho_min}, {rho_max}]"
            )));
        }
        let (lo, hi, hi_closed) = warp.natural_domain();
        let hi_ok = if hi_closed { rho_max <= hi } else { rho_max < hi || hi.is_infinite() };
        if rho_min < lo || !hi_ok {
            return Err(Error::InvalidParameter(format!(
                "[{rho_min}, {rho_max}] is not inside the domain of the warp [{lo}, {hi}]"
            )));
        }
        let capped_at_origin = rho_min == 0.0 && {
            let j = warp.jet(0.0);
            j.value.abs() <= CAP_TOLERANCE && (j.d1 - 1.0).abs() <= CAP_TOLERANCE
        };
        Ok(Self {
            warp,
            rho_min,
            rho_max,
            capped_at_origin,
        })
    }

    /// The warp on its whole natural domain.
    pub fn on_natural_domain(warp: WarpCurve) -> Result<Self> {
        let (lo, hi, closed) = warp.natural_domain();
        if !closed && hi.is_finite() {
            return Err(Error::InvalidParameter(
                "the natural domain is open; choose an explicit rho_max".into(),
            ));
        }
        Self::new(warp, lo.max(0.0), hi)
    }

    pub fn warp(&self) -> &WarpCurve {
        &self.warp
    }

    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    pub fn is_bounded(&self) -> bool {
        self.rho_min.is_finite() && self.rho_max.is_finite()
    }

    /// True when `f(0) = 0` and `f'(0) = 1`, so the metric closes up smoothly
    /// at the origin.
    pub fn capped_at_origin(&self) -> bool {
        self.capped_at_origin
    }

    pub fn contains(&self, rho: f64) -> bool {
        rho >= self.rho_min && rho <= self.rho_max
    }

    fn check(&self, rho: f64) -> Result<()> {
        if self.contains(rho) {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                rho,
                min: self.rho_min,
                max: self.rho_max,
            })
        }
    }
}

/// `(f, f', f'')` at `rho`.
pub fn eval_warp(metric: &RotSymMetric, rho: f64) -> Result<Jet> {
    metric.check(rho)?;
    Ok(metric.warp.jet(rho))
}

/// Gauss curvature `K = -f''/f`.
///
/// Named families (and transforms of them) use their closed form, which stays
/// valid at a smooth pole. Anything else is rejected once `f <= DELTA_CAP`.
pub fn gauss_curvature(metric: &RotSymMetric, rho: f64) -> Result<f64> {
    metric.check(rho)?;
    if let Some(k) = metric.warp.closed_form_curvature(rho) {
        return Ok(k);
    }
    let j = metric.warp.jet(rho);
    if j.value <= DELTA_CAP {
        return Err(Error::PoleProximity {
            rho,
            value: j.value,
        });
    }
    Ok(-j.d2 / j.value)
}

/// Scalar curvature of a surface, `R = 2K`.
pub fn scalar_curvature(metric: &RotSymMetric, rho: f64) -> Result<f64> {
    Ok(2.0 * gauss_curvature(metric, rho)?)
}

fn same_scale(kappa: f64, target: f64) -> bool {
    (kappa - target).abs() <= 1e-14 * kappa.max(target)
}

/// Apply `Υ_{r,κ}` to the warp.
///
/// When the result is again a named family it is returned as one:
/// `Sinh(a) → Tanh(a)` and `Tan(a) → Sin(a)` for `κ = a r`, and constants map
/// to constants. Otherwise the warp is wrapped in [`WarpCurve::Transformed`].
pub fn transform_upsilon(metric: &RotSymMetric, params: &TransformParams) -> Result<RotSymMetric> {
    let (r, kappa) = (params.r, params.kappa);
    let warp = if kappa == 0.0 {
        metric.warp.clone()
    } else {
        match &metric.warp {
            WarpCurve::Sinh(a) if same_scale(kappa, a * r) => WarpCurve::Tanh(*a),
            WarpCurve::Tan(a) if same_scale(kappa, a * r) => WarpCurve::Sin(*a),
            WarpCurve::Const(c) => WarpCurve::Const(params.apply(*c)),
            WarpCurve::Untransformed { base, params: inner } if inner == params => {
                (**base).clone()
            }
            other => WarpCurve::Transformed {
                base: Box::new(other.clone()),
                params: *params,
            },
        }
    };
    RotSymMetric::new(warp, metric.rho_min, metric.rho_max)
}

/// Undo `Υ_{r,κ}`: `f = r f̃ / sqrt(r² - κ² f̃²)`.
///
/// Fails when the given warp reaches the asymptote `r/κ` on the domain, since
/// no warp transforms onto such a curve.
pub fn inverse_transform(metric: &RotSymMetric, params: &TransformParams) -> Result<RotSymMetric> {
    let (r, kappa) = (params.r, params.kappa);
    if kappa == 0.0 {
        return Ok(metric.clone());
    }
    let limit = r / kappa;
    let (sup, attained) = metric.warp.supremum(metric.rho_min, metric.rho_max);
    if sup > limit || (attained && sup >= limit) {
        return Err(Error::NotInRange { value: sup, limit });
    }
    let warp = match &metric.warp {
        WarpCurve::Tanh(a) if same_scale(kappa, a * r) => WarpCurve::Sinh(*a),
        WarpCurve::Sin(a) if same_scale(kappa, a * r) => WarpCurve::Tan(*a),
        WarpCurve::Const(c) => WarpCurve::Const(r * c / (r * r - kappa * kappa * c * c).sqrt()),
        WarpCurve::Transformed { base, params: inner } if inner == params => (**base).clone(),
        other => WarpCurve::Untransformed {
            base: Box::new(other.clone()),
            params: *params,
        },
    };
    RotSymMetric::new(warp, metric.rho_min, metric.rho_max)
}

/// Radius of `(S¹(r1) × S¹(r2)) / S¹` under the slope-`κ` diagonal action.
pub fn quotient_circle_radius(r1: f64, r2: f64, kappa: f64) -> Result<f64> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "circle radii must be positive, got {r1} and {r2}"
        )));
    }
    if kappa.is_nan() || kappa < 0.0 {
        return Err(Error::InvalidParameter(format!("slope must be nonnegative, got {kappa}")));
    }
    Ok((r1 * r1 * r2 * r2 / (kappa * kappa * r1 * r1 + r2 * r2)).sqrt())
}

/// `r/κ`, the radius of the cylinder every transformed warp approaches as
/// `f → ∞`.
pub fn asymptote_radius(params: &TransformParams) -> Result<f64> {
    if params.kappa == 0.0 {
        return Err(Error::NoAsymptote);
    }
    Ok(params.r / params.kappa)
}
