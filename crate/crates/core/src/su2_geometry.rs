//! `SU(2) = S³` as the unit quaternions, with the left-invariant frame
//! `F_i(q) = q e_i`, Berger metrics `A ω¹² + B ω²² + C ω³²` and the Hopf map.
//!
//! A quaternion `x1 + x2 i + x3 j + x4 k` is identified with `(z, w) ∈ ℂ²` by
//! `q = z + j w`, i.e. `z = x1 + i x2` and `w = x3 - i x4`. With this
//! convention the flow of `F_1`, `q ↦ q (cos t + i sin t)`, multiplies both
//! `z` and `w` by `e^{it}`, so it runs along the fibres of
//! `H(z, w) = (2 Re(z̄ w), 2 Im(z̄ w), |z|² - |w|²)`.

use std::f64::consts::{PI, TAU};
use std::ops::Mul;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::killing_quotient::{transform_killing, KillingVector, PointMetric};
use crate::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-12;
const TANGENCY_TOLERANCE: f64 = 1e-8;

/// Step of the central differences used for the Hopf differential.
pub const HOPF_STEP: f64 = 1e-5;

/// Quaternion `x[0] + x[1] i + x[2] j + x[3] k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion(pub [f64; 4]);

impl Quaternion {
    pub const ONE: Self = Self([1.0, 0.0, 0.0, 0.0]);
    pub const I: Self = Self([0.0, 1.0, 0.0, 0.0]);
    pub const J: Self = Self([0.0, 0.0, 1.0, 0.0]);
    pub const K: Self = Self([0.0, 0.0, 0.0, 1.0]);

    pub fn norm(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, rhs: Quaternion) -> Quaternion {
        let [a1, b1, c1, d1] = self.0;
        let [a2, b2, c2, d2] = rhs.0;
        Quaternion([
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ])
    }
}

fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64; 4], y: &[f64; 4]) -> [f64; 4] {
    [a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2], a * x[3] + y[3]]
}

/// A point of `S³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: Self = Self(Quaternion::ONE);

    /// Accepts coordinates whose norm is 1 within `1e-12`.
    pub fn new(x: [f64; 4]) -> Result<Self> {
        let q = Quaternion(x);
        let n = q.norm();
        if (n * n - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "quaternion has |x|^2 = {}, expected 1",
                n * n
            )));
        }
        Ok(Self(q))
    }

    pub fn normalize(x: [f64; 4]) -> Result<Self> {
        let n = Quaternion(x).norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidParameter("cannot normalise a zero quaternion".into()));
        }
        Ok(Self(Quaternion(x.map(|c| c / n))))
    }

    /// `(z, w)` with `q = z + j w`, each as `(re, im)`.
    pub fn from_complex(z: (f64, f64), w: (f64, f64)) -> Result<Self> {
        Self::new([z.0, z.1, w.0, -w.1])
    }

    /// Uniformly distributed point of `S³`.
    pub fn random(rng: &mut impl Rng) -> Self {
        loop {
            let x: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Ok(q) = Self::normalize(x) {
                return q;
            }
        }
    }

    pub fn coords(&self) -> [f64; 4] {
        self.0 .0
    }

    pub fn z(&self) -> (f64, f64) {
        let x = self.coords();
        (x[0], x[1])
    }

    pub fn w(&self) -> (f64, f64) {
        let x = self.coords();
        (x[2], -x[3])
    }

    /// Point reached after time `t` along the flow of `F_1`.
    pub fn fiber_flow(&self, t: f64) -> Self {
        let rotated = self.0 * Quaternion([t.cos(), t.sin(), 0.0, 0.0]);
        Self(rotated)
    }
}

/// One of the left-invariant fields `F_1, F_2, F_3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftField {
    F1,
    F2,
    F3,
}

impl LeftField {
    pub const ALL: [LeftField; 3] = [LeftField::F1, LeftField::F2, LeftField::F3];

    fn unit(self) -> Quaternion {
        match self {
            Self::F1 => Quaternion::I,
            Self::F2 => Quaternion::J,
            Self::F3 => Quaternion::K,
        }
    }

    /// `F_i` extended to all of ℝ⁴ as `x ↦ x e_i`.
    pub fn at(self, x: &[f64; 4]) -> [f64; 4] {
        (Quaternion(*x) * self.unit()).0
    }

    /// The bracket relations `[F_i, F_j] = 2 ε_ijk F_k`, as `(sign, k)`.
    pub fn bracket(self, other: LeftField) -> Option<(f64, LeftField)> {
        use LeftField::*;
        match (self, other) {
            (F1, F2) => Some((2.0, F3)),
            (F2, F3) => Some((2.0, F1)),
            (F3, F1) => Some((2.0, F2)),
            (F2, F1) => Some((-2.0, F3)),
            (F3, F2) => Some((-2.0, F1)),
            (F1, F3) => Some((-2.0, F2)),
            _ => None,
        }
    }
}

/// `[F_1(q), F_2(q), F_3(q)]`.
pub fn frame_at(q: &UnitQuaternion) -> [[f64; 4]; 3] {
    let x = q.coords();
    LeftField::ALL.map(|f| f.at(&x))
}

/// Finite-difference Lie bracket `[F_i, F_j](q) = DF_j·F_i - DF_i·F_j`
/// compared against the structure constants.
///
/// Derivatives are central differences along curves renormalised onto `S³`,
/// so the deviation decays like `step²`. Returns the largest component-wise
/// deviation.
pub fn bracket_check(q: &UnitQuaternion, i: LeftField, j: LeftField, step: f64) -> f64 {
    let x = q.coords();
    let along = |direction: LeftField, field: LeftField| {
        let d = direction.at(&x);
        let ahead = UnitQuaternion::normalize(axpy(step, &d, &x)).expect("near q");
        let behind = UnitQuaternion::normalize(axpy(-step, &d, &x)).expect("near q");
        let (fa, fb) = (field.at(&ahead.coords()), field.at(&behind.coords()));
        std::array::from_fn::<f64, 4, _>(|c| (fa[c] - fb[c]) / (2.0 * step))
    };
    let dj_fi = along(i, j);
    let di_fj = along(j, i);
    let expected = match i.bracket(j) {
        Some((sign, k)) => k.at(&x).map(|c| sign * c),
        None => [0.0; 4],
    };
    (0..4)
        .map(|c| (dj_fi[c] - di_fj[c] - expected[c]).abs())
        .fold(0.0, f64::max)
}

/// Left-invariant metric `A ω¹⊗ω¹ + B ω²⊗ω² + C ω³⊗ω³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergerMetric {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BergerMetric {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if [a, b, c].iter().all(|v| v.is_finite() && *v > 0.0) {
            Ok(Self { a, b, c })
        } else {
            Err(Error::InvalidMetric(format!(
                "Berger coefficients must be positive, got ({a}, {b}, {c})"
            )))
        }
    }

    pub const fn round() -> Self {
        Self {
            a: 1.0,
            b: 1.0,
            c: 1.0,
        }
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

fn frame_components(q: &UnitQuaternion, v: &[f64; 4]) -> Result<[f64; 3]> {
    let inner = dot(v, &q.coords());
    if inner.abs() > TANGENCY_TOLERANCE {
        return Err(Error::NotTangent { inner });
    }
    Ok(frame_at(q).map(|f| dot(v, &f)))
}

/// Length of a tangent vector at `q` in the Berger metric.
pub fn berger_norm(metric: &BergerMetric, q: &UnitQuaternion, v: &[f64; 4]) -> Result<f64> {
    let c = frame_components(q, v)?;
    Ok((metric.a * c[0] * c[0] + metric.b * c[1] * c[1] + metric.c * c[2] * c[2]).sqrt())
}

/// Hopf map to the unit sphere of ℝ³.
pub fn hopf_map(q: &UnitQuaternion) -> [f64; 3] {
    hopf_raw(&q.coords())
}

fn hopf_raw(x: &[f64; 4]) -> [f64; 3] {
    let (z_re, z_im, w_re, w_im) = (x[0], x[1], x[2], -x[3]);
    // z̄ w
    let re = z_re * w_re + z_im * w_im;
    let im = z_re * w_im - z_im * w_re;
    [
        2.0 * re,
        2.0 * im,
        z_re * z_re + z_im * z_im - w_re * w_re - w_im * w_im,
    ]
}

/// Central-difference differential of the Hopf map along the curve
/// `t ↦ (q + t v)/|q + t v|`.
pub fn hopf_pushforward(q: &UnitQuaternion, v: &[f64; 4], step: f64) -> [f64; 3] {
    let x = q.coords();
    let ahead = UnitQuaternion::normalize(axpy(step, v, &x)).expect("near q");
    let behind = UnitQuaternion::normalize(axpy(-step, v, &x)).expect("near q");
    let (ha, hb) = (hopf_map(&ahead), hopf_map(&behind));
    std::array::from_fn(|c| (ha[c] - hb[c]) / (2.0 * step))
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Euclidean lengths of `dH(v)` for random Berger-unit horizontal vectors.
///
/// Each sample draws a uniform point `q` and a Gaussian combination of the
/// frame, removes its Berger-orthogonal component along `F_1` and rescales
/// it to Berger length one. Deterministic for a fixed seed.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfStretchSample {
    stretches: Vec<f64>,
}

impl HopfStretchSample {
    pub fn draw(metric: &BergerMetric, sample_count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stretches = Vec::with_capacity(sample_count);
        while stretches.len() < sample_count {
            let q = UnitQuaternion::random(&mut rng);
            let frame = frame_at(&q);
            let mut coeffs: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
            // The frame is Berger-orthogonal, so the horizontal part of v
            // just drops its F_1 coefficient.
            coeffs[0] = 0.0;
            let length = (metric.a * coeffs[0] * coeffs[0]
                + metric.b * coeffs[1] * coeffs[1]
                + metric.c * coeffs[2] * coeffs[2])
                .sqrt();
            if length < 1e-8 {
                continue;
            }
            let mut v = [0.0; 4];
            for (k, f) in frame.iter().enumerate() {
                v = axpy(coeffs[k] / length, f, &v);
            }
            stretches.push(norm3(&hopf_pushforward(&q, &v, HOPF_STEP)));
        }
        Self { stretches }
    }

    pub fn stretches(&self) -> &[f64] {
        &self.stretches
    }

    /// `max |R |dH(v)| - 1|` for a round target sphere of radius `R`.
    pub fn distortion(&self, target_radius: f64) -> f64 {
        self.stretches
            .iter()
            .map(|s| (target_radius * s - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Largest deviation of the Hopf map from a Riemannian submersion onto
/// `S²(target_radius)` over random horizontal unit vectors.
pub fn submersion_distortion(
    metric: &BergerMetric,
    target_radius: f64,
    sample_count: usize,
    seed: u64,
) -> f64 {
    HopfStretchSample::draw(metric, sample_count, seed).distortion(target_radius)
}

/// Radius at which the measured distortion is smallest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusFit {
    pub radius: f64,
    pub distortion: f64,
}

/// Distortion on a uniform radius grid over `[lo, hi]`.
pub fn scan_submersion_radius(
    sample: &HopfStretchSample,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Vec<(f64, f64)> {
    let steps = steps.max(2);
    (0..steps)
        .map(|k| {
            let radius = lo + (hi - lo) * k as f64 / (steps - 1) as f64;
            (radius, sample.distortion(radius))
        })
        .collect()
}

/// Grid scan followed by golden-section refinement around the best cell.
/// The distortion is a maximum of absolute affine functions of the radius,
/// hence convex, so the refinement converges to the global minimiser.
pub fn best_fit_radius(sample: &HopfStretchSample, lo: f64, hi: f64, steps: usize) -> RadiusFit {
    let scan = scan_submersion_radius(sample, lo, hi, steps);
    let best = scan
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let mut a = scan[best.saturating_sub(1)].0;
    let mut b = scan[(best + 1).min(scan.len() - 1)].0;
    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    for _ in 0..200 {
        if sample.distortion(c) < sample.distortion(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
        if (b - a).abs() < 1e-14 * b.abs().max(1.0) {
            break;
        }
    }
    let radius = 0.5 * (a + b);
    RadiusFit {
        radius,
        distortion: sample.distortion(radius),
    }
}

/// Slope `ξ` of the circle action generated by `cos ξ F_1 + sin ξ F_4` on
/// `S³ × S¹`, reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeXi(f64);

impl SlopeXi {
    pub fn new(xi: f64) -> Result<Self> {
        if !xi.is_finite() {
            return Err(Error::InvalidParameter(format!("xi must be finite, got {xi}")));
        }
        Ok(Self(xi.rem_euclid(TAU)))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    fn collapses(&self) -> bool {
        self.0.sin().abs() < 1e-12 || (self.0 - PI).abs() < 1e-12
    }
}

/// Berger metric on `(S³ × S¹)/_ξ S¹`: the Killing transformation of the round
/// metric along `F_1` with `r = 1` and effective slope `κ = cot ξ`.
pub fn xi_quotient_metric(xi: SlopeXi) -> Result<BergerMetric> {
    if xi.collapses() {
        return Err(Error::CollapsedQuotient { xi: xi.value() });
    }
    let kappa = (xi.value().cos() / xi.value().sin()).abs();
    let h = transform_killing(
        &PointMetric::identity(3),
        &KillingVector::from_slice(&[1.0, 0.0, 0.0]),
        1.0,
        kappa,
    )?;
    let m = h.matrix();
    BergerMetric::new(m[(0, 0)], m[(1, 1)], m[(2, 2)])
}

/// Berger metric as a [`PointMetric`] in the frame `(F_1, F_2, F_3)`.
pub fn berger_point_metric(metric: &BergerMetric) -> PointMetric {
    PointMetric::new(DMatrix::from_diagonal(&DVector::from_column_slice(
        &metric.coefficients(),
    )))
    .expect("positive diagonal")
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    use super::*;

    fn random_points(n: usize, seed: u64) -> Vec<UnitQuaternion> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| UnitQuaternion::random(&mut rng)).collect()
    }

    #[test]
    fn frame_at_identity() {
        let f = frame_at(&UnitQuaternion::IDENTITY);
        assert_eq!(f, [[0.0, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]);
    }

    #[test]
    fn frame_is_orthonormal_and_tangent() {
        for q in random_points(1000, 1) {
            let f = frame_at(&q);
            for i in 0..3 {
                assert!(dot(&f[i], &q.coords()).abs() <= 1e-12);
                for j in 0..3 {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((dot(&f[i], &f[j]) - expect).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn brackets_hold() {
        use LeftField::*;
        let q = random_points(1, 7)[0];
        assert!(bracket_check(&UnitQuaternion::IDENTITY, F1, F2, 1e-4) <= 1e-7);
        assert!(bracket_check(&q, F2, F3, 1e-4) <= 1e-7);
        assert!(bracket_check(&q, F3, F1, 1e-4) <= 1e-7);
        assert!(bracket_check(&q, F2, F1, 1e-4) <= 1e-7);
        assert!(bracket_check(&q, F2, F2, 1e-4) <= 1e-7);
    }

    #[test]
    fn bracket_error_is_second_order() {
        use LeftField::*;
        let q = random_points(1, 11)[0];
        let coarse = bracket_check(&q, F1, F2, 1e-2);
        let fine = bracket_check(&q, F1, F2, 5e-3);
        let ratio = coarse / fine;
        assert!((ratio - 4.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn berger_norm_examples() {
        let q = random_points(1, 3)[0];
        let f = frame_at(&q);
        let round = BergerMetric::round();
        let v = axpy(0.6, &f[0], &f[1].map(|c| 0.8 * c));
        assert!((berger_norm(&round, &q, &v).unwrap() - 1.0).abs() < 1e-14);
        let kappa = 2.0_f64;
        let berger = BergerMetric::new(1.0 / (kappa * kappa + 1.0), 1.0, 1.0).unwrap();
        let n = berger_norm(&berger, &q, &f[0]).unwrap();
        assert!((n - 1.0 / (kappa * kappa + 1.0).sqrt()).abs() < 1e-14);
        let stretched = BergerMetric::new(1.0, 4.0, 1.0).unwrap();
        let n = berger_norm(&stretched, &q, &f[1].map(|c| 2.0 * c)).unwrap();
        assert!((n - 4.0).abs() < 1e-14);
        assert!(matches!(
            berger_norm(&round, &q, &q.coords()),
            Err(Error::NotTangent { .. })
        ));
    }

    #[test]
    fn hopf_examples() {
        assert_eq!(hopf_map(&UnitQuaternion::IDENTITY), [0.0, 0.0, 1.0]);
        let q = UnitQuaternion::from_complex((FRAC_1_SQRT_2, 0.0), (FRAC_1_SQRT_2, 0.0)).unwrap();
        let h = hopf_map(&q);
        assert!((h[0] - 1.0).abs() < 1e-15 && h[1].abs() < 1e-15 && h[2].abs() < 1e-15);
    }

    #[test]
    fn hopf_lands_on_sphere_and_is_fiber_invariant() {
        for q in random_points(200, 5) {
            let h = hopf_map(&q);
            assert!((norm3(&h).powi(2) - 1.0).abs() <= 1e-12);
            for k in 0..16 {
                let t = TAU * k as f64 / 16.0;
                let moved = hopf_map(&q.fiber_flow(t));
                let d = (0..3).map(|c| (moved[c] - h[c]).abs()).fold(0.0, f64::max);
                assert!(d <= 1e-10);
            }
        }
    }

    #[test]
    fn hopf_pushforward_examples() {
        for q in random_points(20, 9) {
            let f = frame_at(&q);
            assert!(norm3(&hopf_pushforward(&q, &f[0], HOPF_STEP)) < 1e-9);
            assert!((norm3(&hopf_pushforward(&q, &f[1], HOPF_STEP)) - 2.0).abs() < 1e-8);
            assert!((norm3(&hopf_pushforward(&q, &f[2], HOPF_STEP)) - 2.0).abs() < 1e-8);
            assert_eq!(hopf_pushforward(&q, &[0.0; 4], HOPF_STEP), [0.0; 3]);
            // Image is tangent to S² at H(q).
            let h = hopf_map(&q);
            let dh = hopf_pushforward(&q, &f[1], HOPF_STEP);
            assert!((h[0] * dh[0] + h[1] * dh[1] + h[2] * dh[2]).abs() < 1e-8);
        }
    }

    #[test]
    fn submersion_radius_for_berger_b_equals_c() {
        let metric = BergerMetric::new(0.2, 1.0, 1.0).unwrap();
        let sample = HopfStretchSample::draw(&metric, 200, 42);
        let fit = best_fit_radius(&sample, 0.05, 4.0, 400);
        assert!(fit.distortion <= 1e-5);
        assert!((fit.radius - 0.5).abs() < 1e-5);
        assert!(submersion_distortion(&metric, fit.radius, 200, 42) <= 1e-5);
    }

    #[test]
    fn submersion_fails_for_b_not_c() {
        let metric = BergerMetric::new(1.0, 1.0, 2.0).unwrap();
        let sample = HopfStretchSample::draw(&metric, 200, 42);
        let fit = best_fit_radius(&sample, 0.05, 4.0, 400);
        assert!(fit.distortion >= 0.1);
    }

    #[test]
    fn xi_quotients() {
        let m = xi_quotient_metric(SlopeXi::new(FRAC_PI_2).unwrap()).unwrap();
        assert_eq!(m, BergerMetric::round());
        let m = xi_quotient_metric(SlopeXi::new(FRAC_PI_4).unwrap()).unwrap();
        assert!((m.a - 0.5).abs() < 1e-15 && m.b == 1.0 && m.c == 1.0);
        let m = xi_quotient_metric(SlopeXi::new(1e-3).unwrap()).unwrap();
        assert!(m.a < 1e-5);
        assert!(xi_quotient_metric(SlopeXi::new(0.0).unwrap()).is_err());
        assert!(xi_quotient_metric(SlopeXi::new(PI).unwrap()).is_err());
        assert!(xi_quotient_metric(SlopeXi::new(TAU).unwrap()).is_err());
        let m = xi_quotient_metric(SlopeXi::new(3.0 * FRAC_PI_2).unwrap()).unwrap();
        assert_eq!(m, BergerMetric::round());
    }
}
