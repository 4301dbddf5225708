use std::f64::consts::TAU;

use super::space::{Correspondence, FiniteMetricSpace};
use super::table::{SurfaceDistance, SurfacePoint};
use crate::{Error, Result};

/// Group acting diagonally on `P × S¹(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupAction {
    /// `ℤ_p`, generated by rotation through `2π/p`.
    Cyclic(u32),
    /// `S¹`, approximated by its subgroup of `T` elements.
    Circle(u32),
}

impl GroupAction {
    pub fn order(&self) -> u32 {
        match *self {
            Self::Cyclic(p) | Self::Circle(p) => p,
        }
    }
}

/// A group element `τ` rotates `P` through `m₁ τ` and moves the angle `s` on
/// `S¹(r)` to `s + m₂ τ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientSpec {
    pub r: f64,
    pub m1: u32,
    pub m2: u32,
    pub group: GroupAction,
}

impl QuotientSpec {
    pub fn new(r: f64, m1: u32, m2: u32, group: GroupAction) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter(format!("r must be positive, got {r}")));
        }
        if m2 == 0 {
            return Err(Error::InvalidParameter("m2 must be at least 1".into()));
        }
        match group {
            GroupAction::Cyclic(0) => {
                return Err(Error::InvalidParameter("group order p must be at least 1".into()))
            }
            GroupAction::Circle(t) if t < 8 => {
                return Err(Error::InvalidParameter(format!(
                    "circle discretisation needs at least 8 steps, got {t}"
                )))
            }
            _ => {}
        }
        Ok(Self { r, m1, m2, group })
    }

    pub fn kappa(&self) -> f64 {
        f64::from(self.m1) / f64::from(self.m2)
    }

    /// `(θ shift, s shift)` of every group element, reduced mod `2π` in exact
    /// integer arithmetic.
    pub fn shifts(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = u64::from(self.group.order());
        (0..n).map(move |q| {
            let angle = |m: u32| TAU * ((u64::from(m) * q) % n) as f64 / n as f64;
            (angle(self.m1), angle(self.m2))
        })
    }
}

/// Point `(x, s)` of `P × S¹(r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductPoint {
    pub surface: SurfacePoint,
    pub s: f64,
}

/// Length of the shorter arc of the unit circle between angles `0` and `ds`.
pub fn circle_arc(ds: f64) -> f64 {
    let d = ds.rem_euclid(TAU);
    d.min(TAU - d)
}

/// Riemannian product distance.
pub fn product_distance(d_p: f64, d_s1: f64) -> f64 {
    d_p.hypot(d_s1)
}

/// Distance between the orbits of `a` and `b`: the minimum over group
/// elements `g` of the product distance from `a` to `g·b`.
pub fn quotient_distance<D: SurfaceDistance + ?Sized>(
    spec: &QuotientSpec,
    a: &ProductPoint,
    b: &ProductPoint,
    d_p: &D,
) -> f64 {
    spec.shifts()
        .map(|(dt, ds)| {
            let moved = SurfacePoint {
                theta: b.surface.theta + dt,
                ..b.surface
            };
            product_distance(d_p.distance(a.surface, moved), spec.r * circle_arc(a.s - b.s - ds))
        })
        .fold(f64::INFINITY, f64::min)
}

/// Sends `(x, θ, s)` to `(x, θ - κ s)`, where its circle orbit crosses the
/// slice `s = 0`. Returns the image points and the index correspondence.
pub fn natural_correspondence(
    sample: &[ProductPoint],
    spec: &QuotientSpec,
) -> (Vec<SurfacePoint>, Correspondence) {
    let kappa = spec.kappa();
    let images = sample
        .iter()
        .map(|p| SurfacePoint {
            row: p.surface.row,
            theta: (p.surface.theta - kappa * p.s).rem_euclid(TAU),
        })
        .collect();
    (images, Correspondence::identity(sample.len()))
}

fn product_label(p: &ProductPoint) -> String {
    format!("row={} theta={:.6} s={:.6}", p.surface.row, p.surface.theta, p.s)
}

fn surface_label(p: &SurfacePoint) -> String {
    format!("row={} theta={:.6}", p.row, p.theta)
}

/// Orbit distances between the sample points.
pub fn quotient_space<D: SurfaceDistance + ?Sized>(
    spec: &QuotientSpec,
    sample: &[ProductPoint],
    d_p: &D,
) -> Result<FiniteMetricSpace> {
    FiniteMetricSpace::from_fn(sample.iter().map(product_label).collect(), |i, j| {
        quotient_distance(spec, &sample[i], &sample[j], d_p)
    })
}

/// Distances between points of a single surface.
pub fn surface_space<D: SurfaceDistance + ?Sized>(
    points: &[SurfacePoint],
    d: &D,
) -> Result<FiniteMetricSpace> {
    FiniteMetricSpace::from_fn(points.iter().map(surface_label).collect(), |i, j| {
        d.distance(points[i], points[j])
    })
}
