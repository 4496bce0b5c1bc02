//! Property tests for the homeomorphism catalog at arbitrary in-domain
//! points, not just the maps' own samplers.

use proptest::prelude::*;
use topoatlas_core::euclid;

fn roundtrip_error(map: &euclid::MapSpec, x: &[f64]) -> f64 {
    let y = map.forward(x);
    let back = map.inverse(&y).unwrap();
    back.iter()
        .zip(x)
        .fold(0.0f64, |m, (b, a)| m.max((b - a).abs()))
}

proptest! {
    #[test]
    fn interval_line_round_trips(x in -0.99f64..0.99) {
        let m = euclid::interval_line();
        prop_assert!(roundtrip_error(&m, &[x]) <= 1e-12);
    }

    #[test]
    fn unit_interval_line_round_trips(x in 0.01f64..0.99) {
        let m = euclid::unit_interval_line();
        prop_assert!(roundtrip_error(&m, &[x]) <= 1e-12);
    }

    #[test]
    fn ball2_round_trips(r in 0.0f64..0.98, angle in 0.0f64..(2.0 * std::f64::consts::PI)) {
        let m = euclid::ball_space(2);
        let x = [r * angle.cos(), r * angle.sin()];
        prop_assert!(roundtrip_error(&m, &x) <= 1e-12);
    }

    #[test]
    fn interval_line_is_strictly_increasing(a in -0.99f64..0.99, b in -0.99f64..0.99) {
        prop_assume!((a - b).abs() > 1e-9);
        let m = euclid::interval_line();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(m.forward(&[lo])[0] < m.forward(&[hi])[0]);
    }

    #[test]
    fn cube_sphere_round_trips_on_any_face_point(
        face in 0usize..3,
        sign in prop::bool::ANY,
        u in -1.0f64..1.0,
        v in -1.0f64..1.0,
    ) {
        let mut x = [0.0; 3];
        x[face] = if sign { 1.0 } else { -1.0 };
        let (a, b) = match face {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        x[a] = u;
        x[b] = v;
        let m = euclid::cube_sphere();
        prop_assert!(roundtrip_error(&m, &x) <= 1e-12);
        // Forward images land on the sphere.
        let y = m.forward(&x);
        let norm: f64 = y.iter().map(|c| c * c).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn hemisphere_round_trips(u in -0.7f64..0.7, v in -0.7f64..0.7) {
        prop_assume!(u * u + v * v < 0.98);
        let m = euclid::hemisphere_disc(2);
        let x = m.inverse(&[u, v]).unwrap();
        prop_assert!(roundtrip_error(&m, &x) <= 1e-12);
    }

    #[test]
    fn circle_param_round_trips_everywhere(t in 0.0f64..1.0) {
        let m = euclid::circle_param();
        prop_assert!(roundtrip_error(&m, &[t]) <= 1e-12);
    }
}
