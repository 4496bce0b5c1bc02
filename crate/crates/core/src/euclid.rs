//! Executable catalog of explicit Euclidean (non-)homeomorphisms: interval
//! and ball rescalings, cube/sphere and circle/square radial projections,
//! hemisphere/disc projections, and the circle parametrization whose inverse
//! jumps at the seam.
//!
//! Round trips are verified on deterministically seeded in-domain samples.
//! The discontinuity detector probes an inverse along the codomain curve and
//! measures how far apart the two preimages land.

use std::f64::consts::PI;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::numerics::infinity_norm;
use crate::sample;

type PointFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
type DomainFn = Arc<dyn Fn(&[f64], f64) -> bool + Send + Sync>;
type SamplerFn = Arc<dyn Fn(&mut ChaCha8Rng) -> Vec<f64> + Send + Sync>;
type CurveFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

#[derive(Debug, Error)]
pub enum MapError {
    #[error("map `{0}` has no inverse")]
    NoInverse(String),
    #[error("sampler for `{0}` produced no in-domain points")]
    Sampling(String),
    #[error("unknown map `{0}`; available: {1}")]
    UnknownMap(String, String),
    #[error("map `{0}` does not support the seam probe")]
    UnsupportedProbe(String),
    #[error("approach epsilon {0} outside (0, 0.1)")]
    BadEpsilon(f64),
}

/// Parametrized view of a map whose codomain is a closed curve, used to
/// probe the continuity of the inverse. `codomain_point` walks the curve by
/// a parameter in `[0, 1)`; `domain_param` reads the intrinsic parameter of
/// a domain point back off. `domain_wraps` says whether parameter distance
/// in the domain wraps around (a circle) or not (a half-open interval).
#[derive(Clone)]
pub struct CurveProbe {
    codomain_point: CurveFn,
    domain_param: crate::ScalarFn,
    domain_wraps: bool,
}

/// A coordinate map with an optional inverse, a domain membership predicate
/// (with a margin argument rejecting points near the boundary), and a
/// deterministic in-domain sampler.
#[derive(Clone)]
pub struct MapSpec {
    pub name: String,
    pub dim_in: usize,
    pub dim_out: usize,
    forward: PointFn,
    inverse: Option<PointFn>,
    contains: DomainFn,
    sampler: SamplerFn,
    /// Default boundary margin used by the sampler.
    pub sampling_margin: f64,
    probe: Option<CurveProbe>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RoundTripReport {
    pub map: String,
    pub samples: usize,
    /// Worst `‖f⁻¹(f(x)) − x‖∞` over the samples.
    pub domain_side_max: f64,
    /// Worst `‖f(f⁻¹(y)) − y‖∞ / (1 + ‖y‖∞)` over the images. Images are
    /// unbounded for half the catalog, so the image side is scale-relative.
    pub image_side_max: f64,
    pub max_error: f64,
    pub worst_point: Vec<f64>,
    pub tol: f64,
    pub passed: bool,
}

impl MapSpec {
    pub fn forward(&self, x: &[f64]) -> Vec<f64> {
        (self.forward)(x)
    }

    pub fn inverse(&self, y: &[f64]) -> Result<Vec<f64>, MapError> {
        match &self.inverse {
            Some(inv) => Ok(inv(y)),
            None => Err(MapError::NoInverse(self.name.clone())),
        }
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn contains(&self, x: &[f64], margin: f64) -> bool {
        (self.contains)(x, margin)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (self.sampler)(rng)
    }

    /// Draws in-domain samples and reports the worst round-trip error in
    /// both directions.
    pub fn check_round_trip(
        &self,
        n_samples: usize,
        seed: u64,
        tol: f64,
    ) -> Result<RoundTripReport, MapError> {
        if self.inverse.is_none() {
            return Err(MapError::NoInverse(self.name.clone()));
        }
        let mut rng = sample::rng(seed);
        let mut accepted = 0usize;
        let mut domain_side_max = 0.0f64;
        let mut image_side_max = 0.0f64;
        let mut max_error = 0.0f64;
        let mut worst = Vec::new();
        for _ in 0..n_samples.saturating_mul(50) {
            if accepted == n_samples {
                break;
            }
            let x = self.sample(&mut rng);
            if !self.contains(&x, 0.0) {
                continue;
            }
            accepted += 1;
            let y = self.forward(&x);
            let back = self.inverse(&y)?;
            let e_dom = infinity_norm(
                &back.iter().zip(&x).map(|(b, a)| b - a).collect::<Vec<_>>(),
            );
            let again = self.forward(&back);
            let e_img = infinity_norm(
                &again.iter().zip(&y).map(|(b, a)| b - a).collect::<Vec<_>>(),
            ) / (1.0 + infinity_norm(&y));
            domain_side_max = domain_side_max.max(e_dom);
            image_side_max = image_side_max.max(e_img);
            if e_dom.max(e_img) > max_error || worst.is_empty() {
                max_error = e_dom.max(e_img);
                worst = x;
            }
        }
        if accepted == 0 {
            return Err(MapError::Sampling(self.name.clone()));
        }
        Ok(RoundTripReport {
            map: self.name.clone(),
            samples: accepted,
            domain_side_max,
            image_side_max,
            max_error,
            worst_point: worst,
            tol,
            passed: max_error <= tol,
        })
    }

    /// Probes the inverse at the seam of the codomain curve (parameter 0).
    pub fn detect_inverse_jump(&self, approach_eps: f64) -> Result<f64, MapError> {
        self.detect_inverse_jump_at(0.0, approach_eps)
    }

    /// Evaluates the inverse at the two codomain points `eps` before and
    /// after parameter `t0` and returns the intrinsic distance between the
    /// preimages. A continuous inverse gives `O(eps)`; a value near 1
    /// certifies a jump.
    pub fn detect_inverse_jump_at(&self, t0: f64, approach_eps: f64) -> Result<f64, MapError> {
        if !(approach_eps > 0.0 && approach_eps < 0.1) {
            return Err(MapError::BadEpsilon(approach_eps));
        }
        let probe = self
            .probe
            .as_ref()
            .ok_or_else(|| MapError::UnsupportedProbe(self.name.clone()))?;
        let after = (probe.codomain_point)(wrap_unit(t0 + approach_eps));
        let before = (probe.codomain_point)(wrap_unit(t0 - approach_eps));
        let s_after = (probe.domain_param)(&self.inverse(&after)?);
        let s_before = (probe.domain_param)(&self.inverse(&before)?);
        let d = (s_after - s_before).abs();
        Ok(if probe.domain_wraps { d.min(1.0 - d) } else { d })
    }

    /// Sampled injectivity: no two samples farther apart than `sep` may map
    /// closer together than `tol`.
    pub fn sampled_injectivity(&self, n_samples: usize, seed: u64, sep: f64, tol: f64) -> bool {
        let mut rng = sample::rng(seed);
        let xs: Vec<Vec<f64>> = (0..n_samples).map(|_| self.sample(&mut rng)).collect();
        let ys: Vec<Vec<f64>> = xs.iter().map(|x| self.forward(x)).collect();
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let dx = infinity_norm(
                    &xs[i].iter().zip(&xs[j]).map(|(a, b)| a - b).collect::<Vec<_>>(),
                );
                let dy = infinity_norm(
                    &ys[i].iter().zip(&ys[j]).map(|(a, b)| a - b).collect::<Vec<_>>(),
                );
                if dx > sep && dy < tol {
                    return false;
                }
            }
        }
        true
    }
}

fn wrap_unit(t: f64) -> f64 {
    t.rem_euclid(1.0)
}

fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// `y = x / (1 - |x|²)`, the interval/ball-to-space rescaling.
fn ball_forward(x: &[f64]) -> Vec<f64> {
    let r2: f64 = x.iter().map(|c| c * c).sum();
    x.iter().map(|c| c / (1.0 - r2)).collect()
}

/// `x = 2y / (1 + √(1 + 4|y|²))`.
fn ball_inverse(y: &[f64]) -> Vec<f64> {
    let r2: f64 = y.iter().map(|c| c * c).sum();
    let d = 1.0 + (1.0 + 4.0 * r2).sqrt();
    y.iter().map(|c| 2.0 * c / d).collect()
}

/// `f(x) = x / (1 - x²)` on `(-1, 1)`.
pub fn interval_line() -> MapSpec {
    MapSpec {
        name: "interval-line".into(),
        dim_in: 1,
        dim_out: 1,
        forward: Arc::new(ball_forward),
        inverse: Some(Arc::new(ball_inverse)),
        contains: Arc::new(|x, m| x.len() == 1 && x[0].abs() < 1.0 - m),
        sampler: Arc::new(|rng| vec![sample::uniform(rng, -0.99, 0.99)]),
        sampling_margin: 1e-2,
        probe: None,
    }
}

/// `f(x) = (2x - 1) / (x(x - 1))` on `(0, 1)`. The inverse solves the
/// quadratic `yx² - (y+2)x + 1 = 0`; the root lying in `(0, 1)` is the minus
/// branch, written in the cancellation-free form `x = 2 / (y + 2 + √(y²+4))`.
pub fn unit_interval_line() -> MapSpec {
    MapSpec {
        name: "unit-interval-line".into(),
        dim_in: 1,
        dim_out: 1,
        forward: Arc::new(|x| vec![(2.0 * x[0] - 1.0) / (x[0] * (x[0] - 1.0))]),
        inverse: Some(Arc::new(|y| {
            vec![2.0 / (y[0] + 2.0 + (y[0] * y[0] + 4.0).sqrt())]
        })),
        contains: Arc::new(|x, m| x.len() == 1 && x[0] > m && x[0] < 1.0 - m),
        sampler: Arc::new(|rng| vec![sample::uniform(rng, 0.01, 0.99)]),
        sampling_margin: 1e-2,
        probe: None,
    }
}

/// `F(x) = x / (1 - |x|²)` from the open unit ball of `Rⁿ` onto `Rⁿ`.
pub fn ball_space(n: usize) -> MapSpec {
    MapSpec {
        name: format!("ball-space-{n}"),
        dim_in: n,
        dim_out: n,
        forward: Arc::new(ball_forward),
        inverse: Some(Arc::new(ball_inverse)),
        contains: Arc::new(move |x, m| x.len() == n && norm2(x) < 1.0 - m),
        sampler: Arc::new(move |rng| sample::unit_ball_point(rng, n, 1e-2)),
        sampling_margin: 1e-2,
        probe: None,
    }
}

/// Radial projection of the cube surface `max|x_i| = 1` inward onto the unit
/// sphere, with the outward max-norm projection as inverse.
pub fn cube_sphere() -> MapSpec {
    MapSpec {
        name: "cube-sphere".into(),
        dim_in: 3,
        dim_out: 3,
        forward: Arc::new(|x| {
            let r = norm2(x);
            x.iter().map(|c| c / r).collect()
        }),
        inverse: Some(Arc::new(|x| {
            let r = infinity_norm(x);
            x.iter().map(|c| c / r).collect()
        })),
        contains: Arc::new(|x, _m| x.len() == 3 && (infinity_norm(x) - 1.0).abs() < 1e-9),
        sampler: Arc::new(|rng| {
            // A face, a sign, and two free coordinates.
            let axis = (sample::uniform(rng, 0.0, 3.0)) as usize;
            let sign = if sample::uniform(rng, 0.0, 1.0) < 0.5 { -1.0 } else { 1.0 };
            let mut p = vec![0.0; 3];
            p[axis] = sign;
            for (k, slot) in p.iter_mut().enumerate() {
                if k != axis {
                    *slot = sample::uniform(rng, -1.0, 1.0);
                }
            }
            p
        }),
        sampling_margin: 0.0,
        probe: None,
    }
}

/// Outward radial projection of the unit circle onto the perimeter of the
/// square of side 2, inverse inward. Supports the seam probe (the domain is
/// a circle, so preimage distance wraps).
pub fn circle_square() -> MapSpec {
    let forward: PointFn = Arc::new(|p: &[f64]| {
        let r = infinity_norm(p);
        p.iter().map(|c| c / r).collect()
    });
    let fwd = Arc::clone(&forward);
    MapSpec {
        name: "circle-square".into(),
        dim_in: 2,
        dim_out: 2,
        forward,
        inverse: Some(Arc::new(|p| {
            let r = norm2(p);
            p.iter().map(|c| c / r).collect()
        })),
        contains: Arc::new(|p, _m| p.len() == 2 && (norm2(p) - 1.0).abs() < 1e-9),
        sampler: Arc::new(|rng| {
            let t = sample::uniform(rng, 0.0, 2.0 * PI);
            vec![t.cos(), t.sin()]
        }),
        sampling_margin: 0.0,
        probe: Some(CurveProbe {
            codomain_point: Arc::new(move |t| {
                let a = 2.0 * PI * t;
                fwd(&[a.cos(), a.sin()])
            }),
            domain_param: Arc::new(|p| wrap_unit(p[1].atan2(p[0]) / (2.0 * PI))),
            domain_wraps: true,
        }),
    }
}

/// Vertical projection of the open upper hemisphere of `Sⁿ ⊂ R^{n+1}` onto
/// the open unit disc `Bⁿ`: drop the last coordinate, restore it as
/// `√(1 - Σ x_i²)`.
pub fn hemisphere_disc(n: usize) -> MapSpec {
    MapSpec {
        name: format!("hemisphere-disc-{n}"),
        dim_in: n + 1,
        dim_out: n,
        forward: Arc::new(|x| x[..x.len() - 1].to_vec()),
        inverse: Some(Arc::new(|u| {
            let r2: f64 = u.iter().map(|c| c * c).sum();
            let mut x = u.to_vec();
            x.push((1.0 - r2).sqrt());
            x
        })),
        contains: Arc::new(move |x, m| {
            x.len() == n + 1 && (norm2(x) - 1.0).abs() < 1e-9 && x[n] > m
        }),
        sampler: Arc::new(move |rng| {
            loop {
                let mut p = sample::unit_sphere_point(rng, n + 1);
                p[n] = p[n].abs();
                if p[n] > 1e-2 {
                    return p;
                }
            }
        }),
        sampling_margin: 1e-2,
        probe: None,
    }
}

/// `g(t) = (cos 2πt, sin 2πt)` on `[0, 1)`: continuous and bijective onto the
/// circle, but the inverse jumps at `(1, 0)`. The inverse is atan2-based with
/// range `[0, 1)`, so the seam sits at parameter 0.
pub fn circle_param() -> MapSpec {
    let forward: PointFn = Arc::new(|t: &[f64]| {
        let a = 2.0 * PI * t[0];
        vec![a.cos(), a.sin()]
    });
    let fwd = Arc::clone(&forward);
    MapSpec {
        name: "circle-param".into(),
        dim_in: 1,
        dim_out: 2,
        forward,
        inverse: Some(Arc::new(|p| {
            vec![wrap_unit(p[1].atan2(p[0]) / (2.0 * PI))]
        })),
        contains: Arc::new(|t, m| t.len() == 1 && t[0] >= 0.0 && t[0] < 1.0 - m),
        sampler: Arc::new(|rng| vec![sample::uniform(rng, 0.0, 1.0)]),
        sampling_margin: 0.0,
        probe: Some(CurveProbe {
            codomain_point: Arc::new(move |t| fwd(&[wrap_unit(t)])),
            domain_param: Arc::new(|t| t[0]),
            domain_wraps: false,
        }),
    }
}

/// The identity on `Rⁿ`.
pub fn identity(n: usize) -> MapSpec {
    MapSpec {
        name: format!("identity-{n}"),
        dim_in: n,
        dim_out: n,
        forward: Arc::new(|x| x.to_vec()),
        inverse: Some(Arc::new(|x| x.to_vec())),
        contains: Arc::new(move |x, _m| x.len() == n),
        sampler: Arc::new(move |rng| sample::normal_vec(rng, n)),
        sampling_margin: 0.0,
        probe: None,
    }
}

/// The full catalog, including the dimensional families at n = 1, 2, 3.
pub fn catalog() -> Vec<MapSpec> {
    let mut maps = vec![interval_line(), unit_interval_line()];
    maps.extend((1..=3).map(ball_space));
    maps.push(cube_sphere());
    maps.push(circle_square());
    maps.extend((1..=3).map(hemisphere_disc));
    maps.push(circle_param());
    maps
}

pub fn map_names() -> Vec<String> {
    catalog().iter().map(|m| m.name.clone()).collect()
}

pub fn by_name(name: &str) -> Result<MapSpec, MapError> {
    catalog()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| MapError::UnknownMap(name.to_owned(), map_names().join(", ")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn interval_line_values() {
        let m = interval_line();
        assert_eq!(m.forward(&[0.0]), vec![0.0]);
        assert_relative_eq!(m.forward(&[0.5])[0], 0.5 / 0.75, epsilon = 1e-15);
    }

    #[test]
    fn ball_space_fixes_origin() {
        let m = ball_space(2);
        assert_eq!(m.inverse(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn catalog_round_trips() {
        for m in catalog() {
            let report = m.check_round_trip(2000, 0, 1e-12).unwrap();
            assert!(
                report.passed,
                "{}: max error {:.3e} at {:?}",
                report.map, report.max_error, report.worst_point
            );
        }
    }

    #[test]
    fn identity_round_trip_is_exact() {
        let report = identity(3).check_round_trip(100, 0, 0.0).unwrap();
        assert_eq!(report.max_error, 0.0);
    }

    #[test]
    fn cube_sphere_images_are_unit_vectors_and_cube_points() {
        let m = cube_sphere();
        let mut rng = sample::rng(1);
        for _ in 0..200 {
            let x = m.sample(&mut rng);
            let y = m.forward(&x);
            assert_relative_eq!(norm2(&y), 1.0, epsilon = 1e-12);
            let back = m.inverse(&y).unwrap();
            assert_relative_eq!(infinity_norm(&back), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn hemisphere_inverse_restores_positive_height() {
        let m = hemisphere_disc(2);
        let x = m.inverse(&[0.3, -0.4]).unwrap();
        assert_relative_eq!(x[2], (1.0f64 - 0.25).sqrt(), epsilon = 1e-15);
        assert!(x[2] > 0.0);
    }

    #[test]
    fn seam_jump_magnitudes() {
        let jump = circle_param().detect_inverse_jump(1e-3).unwrap();
        assert_relative_eq!(jump, 0.998, epsilon = 1e-9);
        // The jump tends to 1 as the approach tightens.
        let closer = circle_param().detect_inverse_jump(1e-5).unwrap();
        assert_relative_eq!(closer, 1.0 - 2e-5, epsilon = 1e-9);
        // The same probe on a genuine homeomorphism stays O(eps), at the
        // seam and elsewhere.
        let square = circle_square();
        assert!(square.detect_inverse_jump(1e-3).unwrap() < 1e-2);
        assert!(square.detect_inverse_jump_at(0.37, 1e-3).unwrap() < 1e-2);
    }

    #[test]
    fn jump_epsilon_is_validated() {
        assert!(matches!(
            circle_param().detect_inverse_jump(0.5),
            Err(MapError::BadEpsilon(_))
        ));
    }

    #[test]
    fn probe_unsupported_on_plain_maps() {
        assert!(matches!(
            interval_line().detect_inverse_jump(1e-3),
            Err(MapError::UnsupportedProbe(_))
        ));
    }

    #[test]
    fn ball_magnitude_is_radially_monotone() {
        let m = ball_space(3);
        let mut rng = sample::rng(7);
        for _ in 0..200 {
            let dir = sample::unit_sphere_point(&mut rng, 3);
            let r1 = sample::uniform(&mut rng, 0.0, 0.98);
            let r2 = sample::uniform(&mut rng, 0.0, 0.98);
            let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
            if hi - lo < 1e-9 {
                continue;
            }
            let f_lo = norm2(&m.forward(&dir.iter().map(|c| c * lo).collect::<Vec<_>>()));
            let f_hi = norm2(&m.forward(&dir.iter().map(|c| c * hi).collect::<Vec<_>>()));
            assert!(f_lo < f_hi);
        }
    }

    #[test]
    fn catalog_maps_are_injective_on_samples() {
        for m in catalog() {
            assert!(m.sampled_injectivity(300, 3, 1e-6, 1e-9), "{}", m.name);
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(by_name("cube-sphere").is_ok());
        assert!(matches!(by_name("moebius"), Err(MapError::UnknownMap(..))));
    }
}
