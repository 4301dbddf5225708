use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::TransformParams;
use crate::{Error, Result};

/// Value and first two derivatives of a scalar function of `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(value: f64, d1: f64, d2: f64) -> Self {
        Self { value, d1, d2 }
    }
}

/// Warp function `f` of a rotationally symmetric metric `dρ² + f(ρ)² dθ²`.
///
/// The named families are normalised so that `f(0) = 0, f'(0) = 1` wherever
/// the family vanishes at the origin: `Sinh(a)` is `sinh(aρ)/a`, `Tanh(a)` is
/// `tanh(aρ)/a`, `Tan(a)` is `tan(aρ)/a` and `Sin(a)` is `sin(aρ)/a`.
/// `Const(c)` is the flat cylinder of radius `c` and `Linear` is the flat plane.
#[derive(Debug, Clone, PartialEq)]
pub enum WarpCurve {
    Sinh(f64),
    Tanh(f64),
    Tan(f64),
    Sin(f64),
    Const(f64),
    Linear,
    Tabulated(Tabulated),
    /// `r f / sqrt(κ² f² + r²)` applied to `base`.
    Transformed {
        base: Box<WarpCurve>,
        params: TransformParams,
    },
    /// `r f / sqrt(r² - κ² f²)` applied to `base`, the algebraic inverse of
    /// [`WarpCurve::Transformed`].
    Untransformed {
        base: Box<WarpCurve>,
        params: TransformParams,
    },
}

impl WarpCurve {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Sinh(a) | Self::Tanh(a) | Self::Tan(a) | Self::Sin(a) => {
                if !(a.is_finite() && *a > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "family parameter a must be positive, got {a}"
                    )));
                }
                Ok(())
            }
            Self::Const(c) => {
                if !(c.is_finite() && *c > 0.0) {
                    return Err(Error::InvalidParameter(format!(
                        "cylinder radius must be positive, got {c}"
                    )));
                }
                Ok(())
            }
            Self::Linear | Self::Tabulated(_) => Ok(()),
            Self::Transformed { base, params } | Self::Untransformed { base, params } => {
                params.validate()?;
                base.validate()
            }
        }
    }

    /// Largest interval on which the warp is defined and positive (apart from
    /// a possible zero at the left end). The boolean reports whether the right
    /// end is included.
    pub fn natural_domain(&self) -> (f64, f64, bool) {
        match self {
            Self::Sinh(_) | Self::Tanh(_) | Self::Linear => (0.0, f64::INFINITY, false),
            Self::Tan(a) => (0.0, FRAC_PI_2 / a, false),
            Self::Sin(a) => (0.0, std::f64::consts::PI / a, true),
            Self::Const(_) => (f64::NEG_INFINITY, f64::INFINITY, false),
            Self::Tabulated(t) => (t.start(), t.end(), true),
            Self::Transformed { base, .. } | Self::Untransformed { base, .. } => {
                base.natural_domain()
            }
        }
    }

    pub fn jet(&self, rho: f64) -> Jet {
        match self {
            Self::Sinh(a) => {
                let x = a * rho;
                Jet::new(x.sinh() / a, x.cosh(), a * x.sinh())
            }
            Self::Tanh(a) => {
                let x = a * rho;
                let t = x.tanh();
                let sech2 = 1.0 - t * t;
                Jet::new(t / a, sech2, -2.0 * a * sech2 * t)
            }
            Self::Tan(a) => {
                let x = a * rho;
                let t = x.tan();
                let sec2 = 1.0 + t * t;
                Jet::new(t / a, sec2, 2.0 * a * sec2 * t)
            }
            Self::Sin(a) => {
                let x = a * rho;
                Jet::new(x.sin() / a, x.cos(), -a * x.sin())
            }
            Self::Const(c) => Jet::new(*c, 0.0, 0.0),
            Self::Linear => Jet::new(rho, 1.0, 0.0),
            Self::Tabulated(t) => t.jet(rho),
            Self::Transformed { base, params } => {
                let g = base.jet(rho);
                let (r, k) = (params.r(), params.kappa());
                let e = k * k * g.value * g.value + r * r;
                let se = e.sqrt();
                let phi = r * g.value / se;
                let dphi = r.powi(3) / (e * se);
                let ddphi = -3.0 * r.powi(3) * k * k * g.value / (e * e * se);
                Jet::new(phi, dphi * g.d1, ddphi * g.d1 * g.d1 + dphi * g.d2)
            }
            Self::Untransformed { base, params } => {
                let g = base.jet(rho);
                let (r, k) = (params.r(), params.kappa());
                let d = r * r - k * k * g.value * g.value;
                let sd = d.sqrt();
                let psi = r * g.value / sd;
                let dpsi = r.powi(3) / (d * sd);
                let ddpsi = 3.0 * r.powi(3) * k * k * g.value / (d * d * sd);
                Jet::new(psi, dpsi * g.d1, ddpsi * g.d1 * g.d1 + dpsi * g.d2)
            }
        }
    }

    /// Gauss curvature `-f''/f` in closed form, valid up to and including a
    /// smooth pole. `None` when the warp has no closed form (tabulated data,
    /// or a transform of one).
    pub fn closed_form_curvature(&self, rho: f64) -> Option<f64> {
        match self {
            Self::Sinh(a) => Some(-a * a),
            Self::Tanh(a) => {
                let s = 1.0 / (a * rho).cosh();
                Some(2.0 * a * a * s * s)
            }
            Self::Tan(a) => {
                let s = 1.0 / (a * rho).cos();
                Some(-2.0 * a * a * s * s)
            }
            Self::Sin(a) => Some(a * a),
            Self::Const(_) | Self::Linear => Some(0.0),
            Self::Tabulated(_) => None,
            Self::Transformed { base, params } => {
                let kb = base.closed_form_curvature(rho)?;
                let g = base.jet(rho);
                let (r, k) = (params.r(), params.kappa());
                let e = k * k * g.value * g.value + r * r;
                Some(r * r / e * (kb + 3.0 * k * k * g.d1 * g.d1 / e))
            }
            Self::Untransformed { base, params } => {
                let kb = base.closed_form_curvature(rho)?;
                let g = base.jet(rho);
                let (r, k) = (params.r(), params.kappa());
                let d = r * r - k * k * g.value * g.value;
                Some(r * r / d * (kb - 3.0 * k * k * g.d1 * g.d1 / d))
            }
        }
    }

    /// Curvature together with its first two `ρ`-derivatives, for the named
    /// families only.
    pub fn curvature_jet(&self, rho: f64) -> Option<Jet> {
        match self {
            Self::Sinh(a) => Some(Jet::new(-a * a, 0.0, 0.0)),
            Self::Sin(a) => Some(Jet::new(a * a, 0.0, 0.0)),
            Self::Const(_) | Self::Linear => Some(Jet::new(0.0, 0.0, 0.0)),
            Self::Tanh(a) => {
                let x = a * rho;
                let t = x.tanh();
                let s2 = 1.0 - t * t;
                let a2 = a * a;
                Some(Jet::new(
                    2.0 * a2 * s2,
                    -4.0 * a2 * a * s2 * t,
                    -4.0 * a2 * a2 * (s2 * s2 - 2.0 * s2 * t * t),
                ))
            }
            Self::Tan(a) => {
                let x = a * rho;
                let t = x.tan();
                let s2 = 1.0 + t * t;
                let a2 = a * a;
                Some(Jet::new(
                    -2.0 * a2 * s2,
                    -4.0 * a2 * a * s2 * t,
                    -4.0 * a2 * a2 * s2 * (2.0 * t * t + s2),
                ))
            }
            _ => None,
        }
    }

    /// Supremum of the warp over `[lo, hi]` and whether it is attained.
    pub(crate) fn supremum(&self, lo: f64, hi: f64) -> (f64, bool) {
        let at = |x: f64| self.jet(x).value;
        match self {
            Self::Sinh(_) | Self::Tan(_) | Self::Linear => {
                if hi.is_finite() {
                    (at(hi), true)
                } else {
                    (f64::INFINITY, false)
                }
            }
            Self::Tanh(a) => {
                if hi.is_finite() {
                    (at(hi), true)
                } else {
                    (1.0 / a, false)
                }
            }
            Self::Sin(a) => {
                let peak = FRAC_PI_2 / a;
                if lo <= peak && peak <= hi {
                    (1.0 / a, true)
                } else {
                    (at(lo).max(at(hi)), true)
                }
            }
            Self::Const(c) => (*c, true),
            Self::Tabulated(t) => {
                let lo = lo.max(t.start());
                let hi = hi.min(t.end());
                let inner = t
                    .knots()
                    .filter(|(x, _)| *x >= lo && *x <= hi)
                    .map(|(_, y)| y)
                    .fold(f64::NEG_INFINITY, f64::max);
                (inner.max(at(lo)).max(at(hi)), true)
            }
            Self::Transformed { base, params } => {
                let (s, attained) = base.supremum(lo, hi);
                let (r, k) = (params.r(), params.kappa());
                if s.is_infinite() {
                    if k == 0.0 {
                        (f64::INFINITY, false)
                    } else {
                        (r / k, false)
                    }
                } else {
                    (r * s / (k * k * s * s + r * r).sqrt(), attained)
                }
            }
            Self::Untransformed { base, params } => {
                let (s, attained) = base.supremum(lo, hi);
                let (r, k) = (params.r(), params.kappa());
                let d = r * r - k * k * s * s;
                if d <= 0.0 {
                    (f64::INFINITY, attained)
                } else {
                    (r * s / d.sqrt(), attained)
                }
            }
        }
    }
}

/// Warp known on a uniform grid with slopes at every knot; evaluated by
/// piecewise cubic Hermite interpolation.
///
/// Values between knots are fourth-order accurate when the slopes are exact
/// and second derivatives are second-order accurate. The caller owns the
/// accuracy of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    start: f64,
    step: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl Tabulated {
    pub fn with_slopes(start: f64, step: f64, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tabulated warp needs a positive step, got {step}"
            )));
        }
        if values.len() < 2 || values.len() != slopes.len() {
            return Err(Error::InvalidParameter(format!(
                "tabulated warp needs at least two knots with matching slopes ({} values, {} slopes)",
                values.len(),
                slopes.len()
            )));
        }
        Ok(Self {
            start,
            step,
            values,
            slopes,
        })
    }

    /// Slopes are estimated by fourth-order finite differences, or
    /// second-order ones when fewer than five samples are given.
    pub fn from_samples(start: f64, step: f64, values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "need at least three samples to estimate slopes, got {n}"
            )));
        }
        let v = &values;
        let mut slopes = vec![0.0; n];
        if n < 5 {
            slopes[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * step);
            slopes[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * step);
            for k in 1..n - 1 {
                slopes[k] = (v[k + 1] - v[k - 1]) / (2.0 * step);
            }
        } else {
            let h12 = 12.0 * step;
            slopes[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / h12;
            slopes[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / h12;
            for k in 2..n - 2 {
                slopes[k] = (v[k - 2] - 8.0 * v[k - 1] + 8.0 * v[k + 1] - v[k + 2]) / h12;
            }
            slopes[n - 2] =
                (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5]) / h12;
            slopes[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4]
                + 3.0 * v[n - 5])
                / h12;
        }
        Self::with_slopes(start, step, values, slopes)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn end(&self) -> f64 {
        self.start + self.step * (self.values.len() - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(ρ_k, f_k)` pairs.
    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (self.start + self.step * k as f64, v))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    fn jet(&self, rho: f64) -> Jet {
        let h = self.step;
        let last = self.values.len() - 2;
        let pos = (rho - self.start) / h;
        let k = (pos.floor().max(0.0) as usize).min(last);
        let u = pos - k as f64;
        let (y0, y1) = (self.values[k], self.values[k + 1]);
        let (m0, m1) = (self.slopes[k] * h, self.slopes[k + 1] * h);
        let (u2, u3) = (u * u, u * u * u);
        let value = (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * m1;
        let d1 = ((6.0 * u2 - 6.0 * u) * y0
            + (3.0 * u2 - 4.0 * u + 1.0) * m0
            + (-6.0 * u2 + 6.0 * u) * y1
            + (3.0 * u2 - 2.0 * u) * m1)
            / h;
        let d2 = ((12.0 * u - 6.0) * y0
            + (6.0 * u - 4.0) * m0
            + (-12.0 * u + 6.0) * y1
            + (6.0 * u - 2.0) * m1)
            / (h * h);
        Jet::new(value, d1, d2)
    }
}

/// JSON form of a named warp family: `{"family": "sinh", "a": 1.0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WarpSpec {
    pub family: WarpFamily,
    #[serde(default)]
    pub a: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WarpFamily {
    Sinh,
    Tanh,
    Tan,
    Sin,
    Const,
    Linear,
}

impl WarpSpec {
    pub fn to_warp(&self) -> Result<WarpCurve> {
        let a = || {
            self.a.ok_or_else(|| {
                Error::InvalidParameter(format!("family {:?} needs a parameter \"a\"", self.family))
            })
        };
        let warp = match self.family {
            WarpFamily::Sinh => WarpCurve::Sinh(a()?),
            WarpFamily::Tanh => WarpCurve::Tanh(a()?),
            WarpFamily::Tan => WarpCurve::Tan(a()?),
            WarpFamily::Sin => WarpCurve::Sin(a()?),
            WarpFamily::Const => WarpCurve::Const(a()?),
            WarpFamily::Linear => WarpCurve::Linear,
        };
        warp.validate()?;
        Ok(warp)
    }
}
