use std::f64::consts::TAU;

use collapse_lab::gh_collapse::{
    circle_arc, quotient_distance, quotient_space, surface_space, CircleDistance, DistanceTable, GeodesicMethod,
    GroupAction, ProductPoint, QuotientSpec, SurfaceDistance, SurfaceGrid, SurfacePoint,
};
use collapse_lab::warped_metric::{quotient_circle_radius, transform_upsilon, RotSymMetric, TransformParams, WarpCurve};
use proptest::prelude::*;

fn sinh_cap(n_rho: usize, n_theta: usize, rows: &[usize], method: GeodesicMethod) -> DistanceTable {
    let m = RotSymMetric::new(WarpCurve::Sinh(1.0), 0.0, 1.5).unwrap();
    DistanceTable::build(SurfaceGrid::new(&m, n_rho, n_theta).unwrap(), rows, method).unwrap()
}

fn sample(rows: &[usize]) -> Vec<ProductPoint> {
    let mut out = Vec::new();
    for &row in rows {
        for j in 0..5 {
            for k in 0..3 {
                out.push(ProductPoint {
                    surface: SurfacePoint {
                        row,
                        theta: TAU * j as f64 / 5.0,
                    },
                    s: TAU * k as f64 / 3.0,
                });
            }
        }
    }
    out
}

#[test]
fn produced_spaces_satisfy_the_metric_axioms() {
    let rows = [0, 8, 16, 24];
    for method in [GeodesicMethod::Graph, GeodesicMethod::Eikonal] {
        let table = sinh_cap(25, 32, &rows, method);
        let pts = sample(&rows);
        for group in [GroupAction::Cyclic(1), GroupAction::Cyclic(5), GroupAction::Circle(64)] {
            let spec = QuotientSpec::new(1.0, 1, 1, group).unwrap();
            let space = quotient_space(&spec, &pts, &table).unwrap();
            for i in 0..space.len() {
                assert_eq!(space.distance(i, i), 0.0);
                for j in 0..space.len() {
                    assert_eq!(space.distance(i, j), space.distance(j, i));
                }
            }
            let violation = space.triangle_violation();
            // Graph distances are exact shortest paths; fast marching and
            // angle interpolation are only approximately metric.
            let budget = match method {
                GeodesicMethod::Graph => 1e-9,
                GeodesicMethod::Eikonal => 0.02,
            };
            assert!(violation <= budget, "{method:?} {group:?}: {violation}");
        }
    }
}

#[test]
fn graph_quotients_with_on_grid_angles_are_exact_metrics() {
    // With every angle and group shift on the grid no interpolation happens.
    let rows = [0, 6, 12];
    let table = sinh_cap(13, 16, &rows, GeodesicMethod::Graph);
    let mut pts = Vec::new();
    for &row in &rows {
        for j in [0, 4, 8, 12] {
            for s in [0.0, TAU / 4.0, TAU / 2.0] {
                pts.push(ProductPoint {
                    surface: SurfacePoint {
                        row,
                        theta: TAU * j as f64 / 16.0,
                    },
                    s,
                });
            }
        }
    }
    for p in [1, 2, 4, 8, 16] {
        let spec = QuotientSpec::new(1.0, 1, 1, GroupAction::Cyclic(p)).unwrap();
        assert!(quotient_space(&spec, &pts, &table).unwrap().triangle_violation() <= 1e-9);
    }
}

#[test]
fn circle_quotient_of_slice_points_approaches_the_limit_surface() {
    let rows = [0, 4, 8, 12];
    let gap = |n: usize| {
        let scaled: Vec<usize> = rows.iter().map(|r| r * n / 12).collect();
        let m = RotSymMetric::new(WarpCurve::Sinh(1.0), 0.0, 1.5).unwrap();
        let limit = transform_upsilon(&m, &TransformParams::new(1.0, 1.0).unwrap()).unwrap();
        let p = DistanceTable::build(SurfaceGrid::new(&m, n + 1, 2 * n).unwrap(), &scaled, GeodesicMethod::Eikonal).unwrap();
        let y = DistanceTable::build(SurfaceGrid::new(&limit, n + 1, 2 * n).unwrap(), &scaled, GeodesicMethod::Eikonal).unwrap();
        let spec = QuotientSpec::new(1.0, 1, 1, GroupAction::Circle(512)).unwrap();
        let mut worst = 0.0_f64;
        for &ra in &scaled {
            for &rb in &scaled {
                for j in 0..8 {
                    let a = SurfacePoint { row: ra, theta: 0.0 };
                    let b = SurfacePoint { row: rb, theta: TAU * j as f64 / 8.0 };
                    let q = quotient_distance(
                        &spec,
                        &ProductPoint { surface: a, s: 0.0 },
                        &ProductPoint { surface: b, s: 0.0 },
                        &p,
                    );
                    worst = worst.max((q - y.distance(a, b)).abs());
                }
            }
        }
        worst
    };
    let (coarse, fine) = (gap(24), gap(96));
    assert!(fine < 0.03, "fine gap {fine}");
    assert!(fine < coarse, "{coarse} -> {fine}");
}

#[test]
fn flat_torus_quotient_is_a_round_circle() {
    let spec = QuotientSpec::new(1.0, 1, 1, GroupAction::Circle(512)).unwrap();
    let radius = quotient_circle_radius(1.0, 1.0, 1.0).unwrap();
    let circle = CircleDistance { radius: 1.0 };
    let pts: Vec<ProductPoint> = (0..24)
        .map(|k| ProductPoint {
            surface: SurfacePoint { row: 0, theta: 0.0 },
            s: TAU * k as f64 / 24.0,
        })
        .collect();
    let quotient = quotient_space(&spec, &pts, &circle).unwrap();
    for i in 0..pts.len() {
        for j in 0..pts.len() {
            let expected = radius * circle_arc(pts[i].s - pts[j].s);
            let got = quotient.distance(i, j);
            assert!((got - expected).abs() <= 0.01 * expected.max(1e-9), "{i},{j}: {got} vs {expected}");
        }
    }
}

#[test]
fn limit_surface_space_is_symmetric() {
    let table = sinh_cap(17, 24, &[0, 8, 16], GeodesicMethod::Eikonal);
    let pts: Vec<SurfacePoint> = [0, 8, 16]
        .iter()
        .flat_map(|&row| (0..6).map(move |j| SurfacePoint { row, theta: 0.37 * j as f64 }))
        .collect();
    let space = surface_space(&pts, &table).unwrap();
    assert!(space.diameter() > 0.0);
    assert!(space.diameter() <= 2.0 * 1.5 + 1e-9);
}

proptest! {
    #[test]
    fn larger_cyclic_groups_shrink_distances(
        p in 1..40_u32,
        m1 in 0..4_u32,
        m2 in 1..4_u32,
        a in (0.0..TAU, 0.0..TAU),
        b in (0.0..TAU, 0.0..TAU),
        radius in 0.2..3.0_f64,
    ) {
        let circle = CircleDistance { radius };
        let small = QuotientSpec::new(1.3, m1, m2, GroupAction::Cyclic(p)).unwrap();
        let big = QuotientSpec::new(1.3, m1, m2, GroupAction::Cyclic(2 * p)).unwrap();
        let pa = ProductPoint { surface: SurfacePoint { row: 0, theta: a.0 }, s: a.1 };
        let pb = ProductPoint { surface: SurfacePoint { row: 0, theta: b.0 }, s: b.1 };
        prop_assert!(quotient_distance(&big, &pa, &pb, &circle) <= quotient_distance(&small, &pa, &pb, &circle));
    }
}
