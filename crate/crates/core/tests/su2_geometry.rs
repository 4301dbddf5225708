use std::f64::consts::{FRAC_PI_2, TAU};

use collapse_lab::killing_quotient::{transform_killing, KillingVector, PointMetric};
use collapse_lab::su2_geometry::{
    berger_norm, frame_at, hopf_map, xi_quotient_metric, BergerMetric, SlopeXi, UnitQuaternion,
};
use proptest::prelude::*;

fn unit_quaternion() -> impl Strategy<Value = UnitQuaternion> {
    prop::array::uniform4(-1.0..1.0_f64)
        .prop_filter("away from zero", |x| x.iter().map(|c| c * c).sum::<f64>() > 1e-3)
        .prop_map(|x| UnitQuaternion::normalize(x).unwrap())
}

proptest! {
    #[test]
    fn xi_quotient_agrees_with_killing_transform(xi in 1e-3..=FRAC_PI_2) {
        let m = xi_quotient_metric(SlopeXi::new(xi).unwrap()).unwrap();
        let kappa = xi.cos() / xi.sin();
        let h = transform_killing(
            &PointMetric::identity(3),
            &KillingVector::from_slice(&[1.0, 0.0, 0.0]),
            1.0,
            kappa,
        )
        .unwrap();
        let expected = [h.matrix()[(0, 0)], h.matrix()[(1, 1)], h.matrix()[(2, 2)]];
        for (got, want) in m.coefficients().iter().zip(expected) {
            prop_assert!((got - want).abs() <= 1e-12);
        }
        prop_assert!((m.a - 1.0 / (kappa * kappa + 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn hopf_map_is_fiber_invariant(q in unit_quaternion(), t in 0.0..TAU) {
        let (h, moved) = (hopf_map(&q), hopf_map(&q.fiber_flow(t)));
        prop_assert!((h.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() <= 1e-12);
        for c in 0..3 {
            prop_assert!((h[c] - moved[c]).abs() <= 1e-10);
        }
    }

    #[test]
    fn berger_norm_scales_frame_components(
        q in unit_quaternion(),
        coeffs in prop::array::uniform3(-2.0..2.0_f64),
        abc in prop::array::uniform3(0.1..5.0_f64),
    ) {
        let metric = BergerMetric::new(abc[0], abc[1], abc[2]).unwrap();
        let f = frame_at(&q);
        let v: [f64; 4] = std::array::from_fn(|k| (0..3).map(|i| coeffs[i] * f[i][k]).sum());
        let expected = (0..3).map(|i| abc[i] * coeffs[i] * coeffs[i]).sum::<f64>().sqrt();
        let got = berger_norm(&metric, &q, &v).unwrap();
        prop_assert!((got - expected).abs() <= 1e-12 * expected.max(1.0));
    }
}
