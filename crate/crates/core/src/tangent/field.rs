//! Vector fields as per-chart component functions, the Lie derivative of a
//! function along a field, and the consistency check that the per-chart
//! expressions describe one field (components transform contravariantly
//! across overlaps).

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::scalar::ScalarField;
use super::vector::{apply, change_chart, TangentVector};
use super::TangentError;
use crate::atlas::ManifoldSpec;
use crate::config::VerifyConfig;
use crate::sample;

type ComponentsFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// Margin preferred when picking the evaluation chart for a point, so later
/// finite-difference stencils stay inside the chart.
const CHART_SELECT_MARGIN: f64 = 0.05;

#[derive(Clone)]
pub struct VectorField {
    pub manifold: String,
    components: BTreeMap<String, ComponentsFn>,
}

impl VectorField {
    pub fn new(manifold: impl Into<String>) -> Self {
        Self {
            manifold: manifold.into(),
            components: BTreeMap::new(),
        }
    }

    /// Adds the component functions of the field in one chart (coordinate
    /// point → component array).
    pub fn with_chart(mut self, chart_id: impl Into<String>, f: ComponentsFn) -> Self {
        self.components.insert(chart_id.into(), f);
        self
    }

    pub fn components_in(&self, chart_id: &str, u: &[f64]) -> Option<Vec<f64>> {
        self.components.get(chart_id).map(|f| f(u))
    }

    pub fn charts(&self) -> Vec<&str> {
        self.components.keys().map(|s| s.as_str()).collect()
    }

    /// The zero field on every chart of a manifold.
    pub fn zero(manifold: &ManifoldSpec) -> Self {
        let dim = manifold.dim;
        let mut field = Self::new(manifold.name.clone());
        for id in manifold.chart_ids() {
            field = field.with_chart(id, Arc::new(move |_: &[f64]| vec![0.0; dim]));
        }
        field
    }
}

impl std::fmt::Debug for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("VectorField")
            .field("manifold", &self.manifold)
            .field("charts", &self.charts())
            .finish()
    }
}

/// The tangent vector assigned by the field at `p`, read off in the first
/// chart (atlas order) that has components and contains the point — with a
/// small interior margin preferred, falling back to the bare domain.
pub fn field_eval(
    field: &VectorField,
    p: &[f64],
    manifold: &ManifoldSpec,
) -> Result<TangentVector, TangentError> {
    for margin in [CHART_SELECT_MARGIN, 0.0] {
        for chart in manifold.charts() {
            if !chart.contains(p, margin) {
                continue;
            }
            let Some(components) = field.components_in(&chart.id, &chart.forward(p)) else {
                continue;
            };
            return TangentVector::new(manifold, &chart.id, p.to_vec(), components);
        }
    }
    Err(TangentError::Uncovered)
}

/// The Lie derivative of `f` along the field: the scalar field
/// `P ↦ X_P(f)`. Points that no component-carrying chart covers evaluate
/// to NaN.
pub fn lie_derivative(
    field: &VectorField,
    f: &ScalarField,
    manifold: &ManifoldSpec,
) -> ScalarField {
    let field = field.clone();
    let f = f.clone();
    let manifold = manifold.clone();
    ScalarField::ambient(
        field.manifold.clone(),
        Arc::new(move |p: &[f64]| {
            field_eval(&field, p, &manifold)
                .and_then(|v| apply(&v, &f, &manifold))
                .unwrap_or(f64::NAN)
        }),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldConsistencyReport {
    pub field_manifold: String,
    pub samples_checked: usize,
    pub overlaps_compared: usize,
    pub max_gap: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Verifies on sampled overlap points that the per-chart component
/// expressions agree: components read in chart `j` and pushed through
/// `change_chart` into chart `i` must match the components read directly in
/// chart `i`, within `tol` relative to the component size.
pub fn check_field_consistency(
    field: &VectorField,
    manifold: &ManifoldSpec,
    cfg: &VerifyConfig,
    tol: f64,
) -> Result<FieldConsistencyReport, TangentError> {
    let mut rng = sample::rng(cfg.seed);
    let mut checked = 0usize;
    let mut compared = 0usize;
    let mut max_gap = 0.0f64;
    let charts = manifold.charts();
    for _ in 0..cfg.samples {
        let p = manifold.sample_point(&mut rng);
        let covering: Vec<usize> = (0..charts.len())
            .filter(|&k| {
                charts[k].contains(&p, cfg.margin)
                    && field.components_in(&charts[k].id, &charts[k].forward(&p)).is_some()
            })
            .collect();
        if covering.len() < 2 {
            continue;
        }
        checked += 1;
        for a in 0..covering.len() {
            for b in a + 1..covering.len() {
                let (i, j) = (covering[a], covering[b]);
                let u_i = charts[i].forward(&p);
                let direct = field
                    .components_in(&charts[i].id, &u_i)
                    .expect("chart filtered for components");
                let v_j = TangentVector::new(
                    manifold,
                    &charts[j].id,
                    p.clone(),
                    field
                        .components_in(&charts[j].id, &charts[j].forward(&p))
                        .expect("chart filtered for components"),
                )?;
                let pushed = change_chart(&v_j, &charts[i].id, manifold)?;
                let scale = 1.0 + direct.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                let gap = direct
                    .iter()
                    .zip(&pushed.components)
                    .fold(0.0f64, |m, (d, p)| m.max((d - p).abs()))
                    / scale;
                max_gap = max_gap.max(gap);
                compared += 1;
            }
        }
    }
    if checked == 0 {
        return Err(TangentError::Uncovered);
    }
    Ok(FieldConsistencyReport {
        field_manifold: field.manifold.clone(),
        samples_checked: checked,
        overlaps_compared: compared,
        max_gap,
        tol,
        passed: max_gap <= tol,
    })
}
