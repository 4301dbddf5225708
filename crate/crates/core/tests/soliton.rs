use std::f64::consts::FRAC_PI_2;

use collapse_lab::soliton::{
    closed_form_warp, exploding_identity_residual, soliton_potential, soliton_residual, solve_warp_ode,
    SolitonParams,
};
use collapse_lab::warped_metric::{gauss_curvature, scalar_curvature, RotSymMetric, WarpCurve};
use proptest::prelude::*;

fn interior(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (1..=n).map(move |k| lo + (hi - lo) * k as f64 / (n + 1) as f64)
}

#[test]
fn both_pairings_solve_the_soliton_equation() {
    for (a_coef, hi) in [(1.0, 4.0), (-1.0, FRAC_PI_2 - 0.05)] {
        let params = SolitonParams::capped(a_coef).unwrap();
        let warp = closed_form_warp(&params).unwrap();
        let phi = soliton_potential(&params).unwrap();
        for rho in interior(0.0, hi, 50) {
            let (r1, r2) = soliton_residual(&warp, &phi, rho).unwrap();
            assert!(r1 <= 1e-8 && r2 <= 1e-8, "A = {a_coef}, rho = {rho}: {r1}, {r2}");
        }
    }
}

#[test]
fn exploding_identity_holds() {
    for rho in interior(0.0, FRAC_PI_2 - 0.05, 50) {
        assert!(exploding_identity_residual(rho).unwrap() <= 1e-8);
    }
}

#[test]
fn cigar_curvature_is_positive_and_decays() {
    let cigar = RotSymMetric::new(WarpCurve::Tanh(1.0), 0.0, 10.0).unwrap();
    for k in 0..=90 {
        let rho = k as f64 / 10.0;
        let curvature = gauss_curvature(&cigar, rho).unwrap();
        assert!(curvature > 0.0);
        if rho >= 1.0 {
            assert!(curvature < 8.0 * (-2.0 * rho).exp());
        }
    }
}

#[test]
fn numerical_solution_carries_the_same_curvature() {
    let params = SolitonParams::capped(1.0).unwrap();
    let warp = solve_warp_ode(&params, 3.0, 1e-3).unwrap();
    let numeric = RotSymMetric::new(warp, 0.0, 3.0).unwrap();
    let exact = RotSymMetric::new(WarpCurve::Tanh(1.0), 0.0, 3.0).unwrap();
    for rho in interior(0.2, 2.8, 20) {
        let (a, b) = (gauss_curvature(&numeric, rho).unwrap(), gauss_curvature(&exact, rho).unwrap());
        assert!((a - b).abs() < 1e-5, "rho = {rho}: {a} vs {b}");
    }
}

proptest! {
    #[test]
    fn scalar_curvature_is_twice_gauss(a in 0.2..2.0_f64, x in 0.01..0.95_f64) {
        for warp in [WarpCurve::Sinh(a), WarpCurve::Tanh(a), WarpCurve::Tan(a), WarpCurve::Sin(a)] {
            let (_, hi, _) = warp.natural_domain();
            let hi = if hi.is_finite() { hi } else { 5.0 };
            let m = RotSymMetric::new(warp, 0.0, hi * 0.999).unwrap();
            let rho = x * hi;
            prop_assert_eq!(scalar_curvature(&m, rho).unwrap(), 2.0 * gauss_curvature(&m, rho).unwrap());
        }
    }

    #[test]
    fn ode_tracks_closed_forms(a_coef in -0.5..1.5_f64) {
        let params = SolitonParams::capped(a_coef).unwrap();
        let warp = solve_warp_ode(&params, 1.5, 1e-3).unwrap();
        let exact = closed_form_warp(&params).unwrap();
        for rho in interior(0.0, 1.5, 20) {
            let (num, ex) = (warp.jet(rho).value, exact.jet(rho).value);
            prop_assert!((num - ex).abs() <= 1e-10 * ex.max(1.0));
        }
    }
}
