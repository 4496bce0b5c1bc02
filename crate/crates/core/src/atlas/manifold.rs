//! Manifold specifications: a named atlas of charts over an ambient point
//! representation, a deterministic point sampler, and transition functions
//! between chart coordinates with analytic or finite-difference Jacobians.

use std::sync::Arc;

use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;

use super::chart::Chart;
use super::AtlasError;
use crate::config::VerifyConfig;
use crate::numerics::{refined_jacobian, JacobianProbe};
use crate::sample;

pub(crate) type SamplerFn = Arc<dyn Fn(&mut ChaCha8Rng) -> Vec<f64> + Send + Sync>;
pub(crate) type TransitionJacobianFn =
    Arc<dyn Fn(usize, usize, &[f64]) -> Option<DMatrix<f64>> + Send + Sync>;

#[derive(Clone)]
pub struct ManifoldSpec {
    pub name: String,
    /// Manifold dimension (each chart maps into `R^dim`).
    pub dim: usize,
    /// Length of the ambient point representation.
    pub ambient_dim: usize,
    charts: Vec<Chart>,
    sampler: SamplerFn,
    /// Documentation flag: the catalog entries are connected by
    /// construction; the verifier does not attempt to prove it.
    pub is_connected_claim: bool,
    /// Closed-form Jacobian of `transition(i, j)` at from-chart coordinates,
    /// when the catalog knows one.
    analytic_transition_jacobian: Option<TransitionJacobianFn>,
}

impl ManifoldSpec {
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        ambient_dim: usize,
        charts: Vec<Chart>,
        sampler: SamplerFn,
    ) -> Self {
        Self {
            name: name.into(),
            dim,
            ambient_dim,
            charts,
            sampler,
            is_connected_claim: true,
            analytic_transition_jacobian: None,
        }
    }

    pub fn with_analytic_transition_jacobian(mut self, f: TransitionJacobianFn) -> Self {
        self.analytic_transition_jacobian = Some(f);
        self
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    pub fn chart(&self, id: &str) -> Result<(usize, &Chart), AtlasError> {
        self.charts
            .iter()
            .position(|c| c.id == id)
            .map(|i| (i, &self.charts[i]))
            .ok_or_else(|| AtlasError::UnknownChart {
                manifold: self.name.clone(),
                chart: id.to_owned(),
                available: self.chart_ids().join(", "),
            })
    }

    pub fn chart_ids(&self) -> Vec<String> {
        self.charts.iter().map(|c| c.id.clone()).collect()
    }

    /// A deterministic ambient point covering the manifold in distribution.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        (self.sampler)(rng)
    }

    pub(crate) fn sampler(&self) -> SamplerFn {
        Arc::clone(&self.sampler)
    }

    /// First chart (in atlas order) containing `p` at the given margin.
    pub fn covering_chart(&self, p: &[f64], margin: f64) -> Option<(usize, &Chart)> {
        self.charts
            .iter()
            .enumerate()
            .find(|(_, c)| c.contains(p, margin))
    }

    /// The same atlas restricted to the named charts, e.g. to probe a
    /// deliberately truncated covering.
    pub fn with_charts(&self, ids: &[&str]) -> Result<ManifoldSpec, AtlasError> {
        let mut charts = Vec::with_capacity(ids.len());
        for id in ids {
            charts.push(self.chart(id)?.1.clone());
        }
        let mut m = self.clone();
        m.charts = charts;
        Ok(m)
    }

    /// The transition function `φ_i ∘ φ_j⁻¹` taking chart-`j` coordinates to
    /// chart-`i` coordinates on the overlap of their domains.
    pub fn transition<'m>(&'m self, to: &str, from: &str) -> Result<Transition<'m>, AtlasError> {
        let (to_idx, _) = self.chart(to)?;
        let (from_idx, _) = self.chart(from)?;
        Ok(Transition {
            manifold: self,
            to_idx,
            from_idx,
        })
    }

    pub(crate) fn transition_by_index(&self, to_idx: usize, from_idx: usize) -> Transition<'_> {
        Transition {
            manifold: self,
            to_idx,
            from_idx,
        }
    }
}

impl std::fmt::Debug for ManifoldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ManifoldSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("ambient_dim", &self.ambient_dim)
            .field("charts", &self.chart_ids())
            .finish()
    }
}

/// How a transition Jacobian was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum JacobianMode {
    Analytic,
    FiniteDifference,
}

#[derive(Debug, Clone)]
pub struct JacobianEstimate {
    pub matrix: DMatrix<f64>,
    pub mode: JacobianMode,
    /// Relative disagreement of the `h` and `h/2` finite-difference
    /// estimates; `None` for analytic Jacobians.
    pub richardson_gap: Option<f64>,
}

/// A transition function between two charts of one manifold.
pub struct Transition<'m> {
    manifold: &'m ManifoldSpec,
    to_idx: usize,
    from_idx: usize,
}

impl<'m> Transition<'m> {
    pub fn from_chart(&self) -> &Chart {
        &self.manifold.charts()[self.from_idx]
    }

    pub fn to_chart(&self) -> &Chart {
        &self.manifold.charts()[self.to_idx]
    }

    /// Maps from-chart coordinates to to-chart coordinates.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        self.to_chart().forward(&self.from_chart().inverse(u))
    }

    pub fn reversed(&self) -> Transition<'m> {
        Transition {
            manifold: self.manifold,
            to_idx: self.from_idx,
            from_idx: self.to_idx,
        }
    }

    pub fn analytic_jacobian(&self, u: &[f64]) -> Option<DMatrix<f64>> {
        self.manifold
            .analytic_transition_jacobian
            .as_ref()
            .and_then(|f| f(self.to_idx, self.from_idx, u))
    }

    pub fn fd_jacobian(&self, u: &[f64], step: f64) -> JacobianProbe {
        let dim = self.manifold.dim;
        refined_jacobian(|x| self.apply(x), u, dim, step)
    }

    /// Analytic Jacobian when the catalog provides one, otherwise the
    /// refined central-difference estimate with its Richardson gap.
    pub fn jacobian(&self, u: &[f64], step: f64) -> JacobianEstimate {
        match self.analytic_jacobian(u) {
            Some(matrix) => JacobianEstimate {
                matrix,
                mode: JacobianMode::Analytic,
                richardson_gap: None,
            },
            None => {
                let probe = self.fd_jacobian(u, step);
                JacobianEstimate {
                    matrix: probe.jacobian,
                    mode: JacobianMode::FiniteDifference,
                    richardson_gap: Some(probe.richardson_gap),
                }
            }
        }
    }

    /// Deterministic overlap samples, expressed in from-chart coordinates.
    ///
    /// Ambient proposals come from the manifold sampler and are kept when
    /// they sit at least `margin` inside both chart domains (and satisfy the
    /// coordinate floor, when one is configured). At most `cfg.samples`
    /// points are accepted, from at most 50× as many proposals.
    pub fn sample_overlap(&self, cfg: &VerifyConfig) -> Vec<Vec<f64>> {
        let mut rng = sample::rng(cfg.seed);
        let mut accepted = Vec::new();
        let (from, to) = (self.from_chart(), self.to_chart());
        for _ in 0..cfg.samples.saturating_mul(50) {
            if accepted.len() == cfg.samples {
                break;
            }
            let p = self.manifold.sample_point(&mut rng);
            if !from.contains(&p, cfg.margin) || !to.contains(&p, cfg.margin) {
                continue;
            }
            let u = from.forward(&p);
            if let Some(floor) = cfg.coord_floor {
                if u.iter().any(|c| c.abs() < floor) {
                    continue;
                }
            }
            accepted.push(u);
        }
        accepted
    }
}
