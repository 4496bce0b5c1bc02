//! Maps between manifolds expressed in coordinates: the composite
//! `ψ ∘ f ∘ φ⁻¹`, its smoothness proxy, and the check that the expression
//! is independent of the chart choice (different choices are conjugate by
//! transition functions).

use serde::Serialize;

use super::chart::Chart;
use super::manifold::ManifoldSpec;
use super::AtlasError;
use crate::config::VerifyConfig;
use crate::numerics::{infinity_norm, refined_jacobian};
use crate::sample;

/// A map between manifolds, given on ambient representations.
#[derive(Clone)]
pub struct ManifoldMap {
    pub name: String,
    pub source: String,
    pub target: String,
    map: crate::PointFn,
}

impl ManifoldMap {
    pub fn new(
        name: impl Into<String>,
        source: &ManifoldSpec,
        target: &ManifoldSpec,
        map: crate::PointFn,
    ) -> Self {
        Self {
            name: name.into(),
            source: source.name.clone(),
            target: target.name.clone(),
            map,
        }
    }

    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        (self.map)(p)
    }
}

/// Materializes the coordinate expression `ψ ∘ f ∘ φ⁻¹` of `f` for a source
/// chart `φ` and target chart `ψ`.
pub fn coord_expression(
    f: &ManifoldMap,
    src_chart: &Chart,
    dst_chart: &Chart,
) -> impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static {
    let f = f.clone();
    let src = src_chart.clone();
    let dst = dst_chart.clone();
    move |u: &[f64]| dst.forward(&f.apply(&src.inverse(u)))
}

#[derive(Debug, Clone, Serialize)]
pub struct SmoothMapReport {
    pub map: String,
    pub samples_checked: usize,
    /// Worst Richardson gap of the coordinate expression.
    pub max_richardson_gap: f64,
    /// Worst relative disagreement between two chart choices, compared via
    /// conjugation by the transition functions.
    pub chart_independence_gap: f64,
    pub chart_pairs_compared: usize,
    pub passed: bool,
}

/// Applies the finite-difference smoothness proxy to the coordinate
/// expressions of `f` and verifies chart independence: for any two valid
/// chart choices, the direct expression matches the first expression
/// conjugated by the source and target transitions.
pub fn check_smooth_map(
    f: &ManifoldMap,
    source: &ManifoldSpec,
    target: &ManifoldSpec,
    cfg: &VerifyConfig,
) -> Result<SmoothMapReport, AtlasError> {
    let mut rng = sample::rng(cfg.seed);
    let mut checked = 0usize;
    let mut compared = 0usize;
    let mut max_gap = 0.0f64;
    let mut max_conj = 0.0f64;
    for _ in 0..cfg.samples {
        let p = source.sample_point(&mut rng);
        let q = f.apply(&p);
        // Every chart pair whose domains comfortably hold p and f(p).
        let valid: Vec<(usize, usize)> = (0..source.charts().len())
            .flat_map(|i| (0..target.charts().len()).map(move |k| (i, k)))
            .filter(|&(i, k)| {
                source.charts()[i].contains(&p, cfg.margin)
                    && target.charts()[k].contains(&q, cfg.margin)
            })
            .collect();
        let Some(&(i0, k0)) = valid.first() else {
            continue;
        };
        checked += 1;
        let expr0 = coord_expression(f, &source.charts()[i0], &target.charts()[k0]);
        let u0 = source.charts()[i0].forward(&p);
        let probe = refined_jacobian(&expr0, &u0, target.dim, cfg.fd_step);
        if probe.is_finite() {
            max_gap = max_gap.max(probe.richardson_gap);
        } else {
            max_gap = f64::INFINITY;
        }
        for &(i, k) in &valid[1..] {
            let u = source.charts()[i].forward(&p);
            let direct = coord_expression(f, &source.charts()[i], &target.charts()[k])(&u);
            // Route through the first chart pair instead.
            let to_first = source.transition_by_index(i0, i).apply(&u);
            let through = target
                .transition_by_index(k, k0)
                .apply(&expr0(&to_first));
            let gap = infinity_norm(
                &through
                    .iter()
                    .zip(&direct)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            ) / (1.0 + infinity_norm(&direct));
            max_conj = max_conj.max(gap);
            compared += 1;
        }
    }
    if checked == 0 {
        return Err(AtlasError::EmptyDomain(format!(
            "no sampled point lands in a chart pair for `{}`",
            f.name
        )));
    }
    Ok(SmoothMapReport {
        map: f.name.clone(),
        samples_checked: checked,
        max_richardson_gap: max_gap,
        chart_independence_gap: max_conj,
        chart_pairs_compared: compared,
        passed: max_gap <= cfg.fd_tol && max_conj <= cfg.transition_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::zoo;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn quick() -> VerifyConfig {
        VerifyConfig::default().with_samples(200)
    }

    #[test]
    fn identity_on_sphere_in_one_chart_is_identity() {
        let sphere = zoo::sphere_stereo();
        let f = ManifoldMap::new("id", &sphere, &sphere, Arc::new(|p: &[f64]| p.to_vec()));
        let (_, north) = sphere.chart("north").unwrap();
        let expr = coord_expression(&f, north, north);
        let u = [0.3, -0.8];
        let v = expr(&u);
        assert_relative_eq!(v[0], u[0], epsilon = 1e-12);
        assert_relative_eq!(v[1], u[1], epsilon = 1e-12);
    }

    #[test]
    fn antipodal_map_across_poles_negates_coordinates() {
        // The antipode swaps the poles, so its expression from the north
        // chart to the south chart is coordinate negation: σ₂(-P) = -σ₁(P).
        let sphere = zoo::sphere_stereo();
        let f = ManifoldMap::new(
            "antipodal",
            &sphere,
            &sphere,
            Arc::new(|p: &[f64]| p.iter().map(|c| -c).collect()),
        );
        let (_, north) = sphere.chart("north").unwrap();
        let (_, south) = sphere.chart("south").unwrap();
        let expr = coord_expression(&f, north, south);
        for u in [[0.3, 0.5], [2.0, -1.0], [-0.7, 0.1]] {
            let v = expr(&u);
            assert_relative_eq!(v[0], -u[0], epsilon = 1e-12);
            assert_relative_eq!(v[1], -u[1], epsilon = 1e-12);
        }
    }

    #[test]
    fn height_function_in_north_chart_matches_closed_form() {
        let sphere = zoo::sphere_stereo();
        let line = zoo::euclidean(1);
        let f = ManifoldMap::new("height", &sphere, &line, Arc::new(|p: &[f64]| vec![p[2]]));
        let (_, north) = sphere.chart("north").unwrap();
        let (_, id) = line.chart("id").unwrap();
        let expr = coord_expression(&f, north, id);
        for u in [[0.2, 0.4], [1.5, -0.3]] {
            let rho = u[0] * u[0] + u[1] * u[1];
            let expected = -(1.0 - rho) / (1.0 + rho);
            assert_relative_eq!(expr(&u)[0], expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn antipodal_map_passes_smoothness_and_chart_independence() {
        let sphere = zoo::sphere_stereo();
        let f = ManifoldMap::new(
            "antipodal",
            &sphere,
            &sphere,
            Arc::new(|p: &[f64]| p.iter().map(|c| -c).collect()),
        );
        let report = check_smooth_map(&f, &sphere, &sphere, &quick()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.chart_pairs_compared > 0);
    }

    #[test]
    fn height_function_is_smooth_across_atlases() {
        let sphere = zoo::sphere_hemispheres();
        let line = zoo::euclidean(1);
        let f = ManifoldMap::new("height", &sphere, &line, Arc::new(|p: &[f64]| vec![p[2]]));
        let report = check_smooth_map(&f, &sphere, &line, &quick()).unwrap();
        assert!(report.passed, "{report:?}");
    }
}
