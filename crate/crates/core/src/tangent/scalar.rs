//! Real-valued functions on a manifold, given on the ambient representation.
//! Per-chart expressions `f ∘ φ⁻¹` are formed on demand; analytic per-chart
//! gradients may be attached and take precedence over finite differences.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::TangentError;
use crate::atlas::ManifoldSpec;

type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;
type GradientFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

#[derive(Clone)]
pub struct ScalarField {
    pub manifold: String,
    eval: EvalFn,
    partials: BTreeMap<String, GradientFn>,
}

impl ScalarField {
    /// A field given as an ambient function.
    pub fn ambient(manifold: impl Into<String>, eval: EvalFn) -> Self {
        Self {
            manifold: manifold.into(),
            eval,
            partials: BTreeMap::new(),
        }
    }

    /// Attaches the analytic gradient of `f ∘ φ⁻¹` for one chart.
    pub fn with_partials(mut self, chart_id: impl Into<String>, grad: GradientFn) -> Self {
        self.partials.insert(chart_id.into(), grad);
        self
    }

    pub fn constant(manifold: impl Into<String>, c: f64) -> Self {
        Self::ambient(manifold, Arc::new(move |_| c))
    }

    /// The i-th coordinate projection of a chart, `P ↦ φ(P)_i`.
    pub fn coordinate(
        manifold: &ManifoldSpec,
        chart_id: &str,
        i: usize,
    ) -> Result<Self, TangentError> {
        let (_, chart) = manifold.chart(chart_id)?;
        if i >= chart.dim {
            return Err(TangentError::ComponentsLength {
                expected: chart.dim,
                got: i,
            });
        }
        let chart = chart.clone();
        Ok(Self::ambient(
            manifold.name.clone(),
            Arc::new(move |p| chart.forward(p)[i]),
        ))
    }

    pub fn eval(&self, p: &[f64]) -> f64 {
        (self.eval)(p)
    }

    pub fn analytic_partials(&self, chart_id: &str, u: &[f64]) -> Option<Vec<f64>> {
        self.partials.get(chart_id).map(|g| g(u))
    }

    /// Pointwise product of two fields.
    pub fn product(&self, other: &ScalarField) -> ScalarField {
        let (f, g) = (Arc::clone(&self.eval), Arc::clone(&other.eval));
        ScalarField::ambient(self.manifold.clone(), Arc::new(move |p| f(p) * g(p)))
    }

    /// Pointwise linear combination `a·f + b·g`.
    pub fn linear(&self, a: f64, other: &ScalarField, b: f64) -> ScalarField {
        let (f, g) = (Arc::clone(&self.eval), Arc::clone(&other.eval));
        ScalarField::ambient(
            self.manifold.clone(),
            Arc::new(move |p| a * f(p) + b * g(p)),
        )
    }
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("manifold", &self.manifold)
            .field("analytic_charts", &self.partials.keys().collect::<Vec<_>>())
            .finish()
    }
}
