//! Sampled verification of chart compatibility, atlas covering, and atlas
//! equivalence.

use serde::Serialize;

use super::manifold::ManifoldSpec;
use super::AtlasError;
use crate::config::VerifyConfig;
use crate::numerics::infinity_norm;
use crate::sample;

/// How many violation witnesses a report keeps (the count is exact).
const MAX_WITNESSES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// `T_ij ∘ T_ji` strayed from the identity.
    RoundTrip,
    /// A transition Jacobian determinant fell below the floor.
    DeterminantFloor,
    /// The finite-difference Jacobians at steps h and h/2 disagree: the
    /// transition does not look differentiable at this point.
    Smoothness,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatViolation {
    pub kind: ViolationKind,
    /// Coordinates (in the from-chart of the flagged direction) of the
    /// offending sample.
    pub point: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibilityReport {
    pub pair: (String, String),
    pub overlap_samples: usize,
    /// Set when the overlap produced fewer than the configured minimum of
    /// samples (but more than zero). A warning, not a failure.
    pub thin_overlap: bool,
    pub roundtrip_max_error: Option<f64>,
    pub min_abs_det: Option<f64>,
    pub max_richardson_gap: Option<f64>,
    pub smoothness_ok: bool,
    pub violation_count: usize,
    pub violations: Vec<CompatViolation>,
    pub passed: bool,
}

impl CompatibilityReport {
    fn vacuous(pair: (String, String)) -> Self {
        Self {
            pair,
            overlap_samples: 0,
            thin_overlap: false,
            roundtrip_max_error: None,
            min_abs_det: None,
            max_richardson_gap: None,
            smoothness_ok: true,
            violation_count: 0,
            violations: Vec::new(),
            passed: true,
        }
    }

    fn push_violation(&mut self, kind: ViolationKind, point: &[f64], value: f64) {
        self.violation_count += 1;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(CompatViolation {
                kind,
                point: point.to_vec(),
                value,
            });
        }
    }
}

/// Checks the compatibility of charts `i` and `j` on sampled overlap points:
/// round trip of the two transitions, non-vanishing Jacobian determinants,
/// and the finite-difference smoothness proxy in both directions.
///
/// An empty overlap is vacuously compatible.
pub fn check_compatibility(
    manifold: &ManifoldSpec,
    i: &str,
    j: &str,
    cfg: &VerifyConfig,
) -> Result<CompatibilityReport, AtlasError> {
    let forward = manifold.transition(i, j)?;
    let backward = forward.reversed();
    let samples = forward.sample_overlap(cfg);
    let mut report = CompatibilityReport::vacuous((i.to_owned(), j.to_owned()));
    if samples.is_empty() {
        return Ok(report);
    }
    report.overlap_samples = samples.len();
    report.thin_overlap = samples.len() < cfg.thin_threshold();
    let mut roundtrip_max = 0.0f64;
    let mut min_det = f64::INFINITY;
    let mut max_gap = 0.0f64;
    for u in &samples {
        let v = forward.apply(u);
        let back = backward.apply(&v);
        let err = if back.iter().all(|x| x.is_finite()) {
            infinity_norm(&back.iter().zip(u).map(|(b, a)| b - a).collect::<Vec<_>>())
        } else {
            f64::INFINITY
        };
        roundtrip_max = roundtrip_max.max(err);
        if err > cfg.transition_tol {
            report.push_violation(ViolationKind::RoundTrip, u, err);
        }
        for (t, at) in [(&forward, u), (&backward, &v)] {
            let probe = t.fd_jacobian(at, cfg.fd_step);
            if !probe.is_finite() {
                report.push_violation(ViolationKind::Smoothness, at, f64::INFINITY);
                continue;
            }
            max_gap = max_gap.max(probe.richardson_gap);
            if probe.richardson_gap > cfg.fd_tol {
                report.push_violation(ViolationKind::Smoothness, at, probe.richardson_gap);
            }
            let det = probe.jacobian.determinant().abs();
            min_det = min_det.min(det);
            if det < cfg.det_floor {
                report.push_violation(ViolationKind::DeterminantFloor, at, det);
            }
        }
    }
    report.roundtrip_max_error = Some(roundtrip_max);
    report.min_abs_det = if min_det.is_finite() { Some(min_det) } else { None };
    report.max_richardson_gap = Some(max_gap);
    report.smoothness_ok = !report
        .violations
        .iter()
        .any(|v| v.kind == ViolationKind::Smoothness);
    report.passed = report.violation_count == 0;
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct AtlasReport {
    pub manifold: String,
    /// How many sampled ambient points were tested for coverage.
    pub covering_checked: usize,
    pub covering_failure_count: usize,
    /// Up to a handful of uncovered sample points.
    pub covering_failures: Vec<Vec<f64>>,
    /// Worst chart round trip `φ⁻¹(φ(P))` over covered samples.
    pub chart_roundtrip_max: f64,
    pub pairs: Vec<CompatibilityReport>,
    pub passed: bool,
    pub config: VerifyConfig,
}

/// Verifies the two atlas axioms on samples: the chart domains cover the
/// manifold (with the configured margin) and every pair of charts is
/// compatible. Chart round trips are checked along the way.
pub fn verify_atlas(manifold: &ManifoldSpec, cfg: &VerifyConfig) -> AtlasReport {
    let mut rng = sample::rng(cfg.seed);
    let mut covering_failures = Vec::new();
    let mut covering_failure_count = 0usize;
    let mut roundtrip_max = 0.0f64;
    for _ in 0..cfg.samples {
        let p = manifold.sample_point(&mut rng);
        match manifold.covering_chart(&p, cfg.margin) {
            None => {
                covering_failure_count += 1;
                if covering_failures.len() < 8 {
                    covering_failures.push(p);
                }
            }
            Some((_, chart)) => {
                let back = chart.inverse(&chart.forward(&p));
                let err = infinity_norm(
                    &back.iter().zip(&p).map(|(b, a)| b - a).collect::<Vec<_>>(),
                );
                roundtrip_max = roundtrip_max.max(err);
            }
        }
    }
    let ids = manifold.chart_ids();
    let mut pairs = Vec::new();
    for a in 0..ids.len() {
        for b in a + 1..ids.len() {
            let report = check_compatibility(manifold, &ids[a], &ids[b], cfg)
                .expect("chart ids come from the atlas");
            pairs.push(report);
        }
    }
    let passed = covering_failure_count == 0
        && roundtrip_max <= cfg.chart_roundtrip_tol
        && pairs.iter().all(|p| p.passed);
    AtlasReport {
        manifold: manifold.name.clone(),
        covering_checked: cfg.samples,
        covering_failure_count,
        covering_failures,
        chart_roundtrip_max: roundtrip_max,
        pairs,
        passed,
        config: cfg.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub atlas_a: AtlasReport,
    pub atlas_b: AtlasReport,
    /// Verification of the union atlas; the cross pairs are what decide
    /// equivalence.
    pub union_atlas: AtlasReport,
    pub equivalent: bool,
}

/// Two atlases on the same underlying manifold are equivalent iff their
/// union is an atlas. Both inputs must verify on their own; the union check
/// then adds every cross pair. Charts from `b` appear primed in the union
/// report to keep ids unique.
pub fn atlases_equivalent(
    a: &ManifoldSpec,
    b: &ManifoldSpec,
    cfg: &VerifyConfig,
) -> Result<EquivalenceReport, AtlasError> {
    if a.dim != b.dim || a.ambient_dim != b.ambient_dim {
        return Err(AtlasError::Dimension(format!(
            "atlases live on different representations: {}x{} vs {}x{}",
            a.dim, a.ambient_dim, b.dim, b.ambient_dim
        )));
    }
    let report_a = verify_atlas(a, cfg);
    let report_b = verify_atlas(b, cfg);
    let mut charts = a.charts().to_vec();
    charts.extend(b.charts().iter().map(|c| {
        let mut c = c.clone();
        c.id = format!("{}'", c.id);
        c
    }));
    let union = ManifoldSpec::new(
        format!("{}|{}", a.name, b.name),
        a.dim,
        a.ambient_dim,
        charts,
        a.sampler(),
    );
    let union_report = verify_atlas(&union, cfg);
    let equivalent = report_a.passed && report_b.passed && union_report.passed;
    Ok(EquivalenceReport {
        atlas_a: report_a,
        atlas_b: report_b,
        union_atlas: union_report,
        equivalent,
    })
}
