//! Tangent vectors and their action on functions.
//!
//! A vector is stored as components against the natural basis of one chart.
//! Applying it to a function computes `Σ vⁱ ∂ᵢ(f ∘ φ⁻¹)` at the point's
//! coordinates; changing charts multiplies the components by the Jacobian of
//! the transition into the target chart (the contravariant law, i.e. the
//! inverse of how the basis vectors themselves transform).

use serde::Serialize;

use super::scalar::ScalarField;
use super::TangentError;
use crate::atlas::ManifoldSpec;
use crate::numerics::{central_gradient, FD_STEP};

/// Step for gradients of `f ∘ φ⁻¹`. Finer than the transition-Jacobian step:
/// chart inverses with square roots (hemisphere charts near their rim)
/// otherwise leak more truncation error than the 1e-6 chart-invariance
/// budget allows, while rounding noise at 1e-6 steps stays near 1e-10.
const SCALAR_FD_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub manifold: String,
    /// Ambient representation of the base point.
    pub point: Vec<f64>,
    pub chart_id: String,
    pub components: Vec<f64>,
}

impl TangentVector {
    pub fn new(
        manifold: &ManifoldSpec,
        chart_id: &str,
        point: Vec<f64>,
        components: Vec<f64>,
    ) -> Result<Self, TangentError> {
        let (_, chart) = manifold.chart(chart_id)?;
        if !chart.contains(&point, 0.0) {
            return Err(TangentError::PointNotInChart {
                chart: chart_id.to_owned(),
            });
        }
        if components.len() != manifold.dim {
            return Err(TangentError::ComponentsLength {
                expected: manifold.dim,
                got: components.len(),
            });
        }
        Ok(Self {
            manifold: manifold.name.clone(),
            point,
            chart_id: chart_id.to_owned(),
            components,
        })
    }

    /// The i-th natural basis vector of a chart at a point.
    pub fn basis(
        manifold: &ManifoldSpec,
        chart_id: &str,
        point: Vec<f64>,
        i: usize,
    ) -> Result<Self, TangentError> {
        let mut components = vec![0.0; manifold.dim];
        components[i] = 1.0;
        Self::new(manifold, chart_id, point, components)
    }

    /// `a·v + b·w` for vectors at the same point in the same chart.
    pub fn linear_combination(
        a: f64,
        v: &TangentVector,
        b: f64,
        w: &TangentVector,
    ) -> Result<TangentVector, TangentError> {
        if v.manifold != w.manifold || v.chart_id != w.chart_id || v.point != w.point {
            return Err(TangentError::Mismatch);
        }
        let components = v
            .components
            .iter()
            .zip(&w.components)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(TangentVector {
            components,
            ..v.clone()
        })
    }
}

/// The vector applied as a derivation: `Σᵢ vⁱ ∂ᵢ(f ∘ φ⁻¹)` at `φ(P)`.
/// Analytic partials are used when the field carries them for this chart.
pub fn apply(
    v: &TangentVector,
    f: &ScalarField,
    manifold: &ManifoldSpec,
) -> Result<f64, TangentError> {
    let (_, chart) = manifold.chart(&v.chart_id)?;
    let u = chart.forward(&v.point);
    let partials = match f.analytic_partials(&v.chart_id, &u) {
        Some(g) => g,
        None => {
            let chart = chart.clone();
            central_gradient(|x| f.eval(&chart.inverse(x)), &u, SCALAR_FD_STEP)
        }
    };
    if partials.iter().any(|g| !g.is_finite()) {
        return Err(TangentError::StencilFailure);
    }
    Ok(v.components
        .iter()
        .zip(&partials)
        .map(|(c, g)| c * g)
        .sum())
}

/// Re-expresses the vector in another chart containing its point. The new
/// components are `J · v` where `J` is the Jacobian of the transition from
/// the current chart into the target chart, evaluated at the current
/// coordinates (analytic when the manifold provides it).
pub fn change_chart(
    v: &TangentVector,
    target_chart: &str,
    manifold: &ManifoldSpec,
) -> Result<TangentVector, TangentError> {
    let (_, target) = manifold.chart(target_chart)?;
    if !target.contains(&v.point, 0.0) {
        return Err(TangentError::PointNotInChart {
            chart: target_chart.to_owned(),
        });
    }
    let (_, source) = manifold.chart(&v.chart_id)?;
    let transition = manifold.transition(target_chart, &v.chart_id)?;
    let u = source.forward(&v.point);
    let estimate = transition.jacobian(&u, FD_STEP);
    if estimate.matrix.iter().any(|x| !x.is_finite()) {
        return Err(TangentError::StencilFailure);
    }
    let components: Vec<f64> = (0..manifold.dim)
        .map(|i| {
            (0..manifold.dim)
                .map(|j| estimate.matrix[(i, j)] * v.components[j])
                .sum()
        })
        .collect();
    Ok(TangentVector {
        manifold: v.manifold.clone(),
        point: v.point.clone(),
        chart_id: target_chart.to_owned(),
        components,
    })
}

/// Outcome of a pointwise derivation identity check.
#[derive(Debug, Clone, Serialize)]
pub struct DerivationCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub tol: f64,
    pub passed: bool,
}

impl DerivationCheck {
    fn evaluate(lhs: f64, rhs: f64, tol: f64) -> Self {
        let gap = (lhs - rhs).abs();
        Self {
            lhs,
            rhs,
            gap,
            tol,
            passed: gap <= tol * (1.0 + lhs.abs()),
        }
    }
}

/// Leibniz rule: `v(f·g) = v(f)·g(P) + v(g)·f(P)`.
pub fn check_leibniz(
    v: &TangentVector,
    f: &ScalarField,
    g: &ScalarField,
    manifold: &ManifoldSpec,
    tol: f64,
) -> Result<DerivationCheck, TangentError> {
    let lhs = apply(v, &f.product(g), manifold)?;
    let rhs = apply(v, f, manifold)? * g.eval(&v.point) + apply(v, g, manifold)? * f.eval(&v.point);
    Ok(DerivationCheck::evaluate(lhs, rhs, tol))
}

/// Chain rule: `v(h(g₁,…,g_k)) = Σᵢ (∂h/∂gᵢ) v(gᵢ)`, with the outer partials
/// taken at `(g₁(P),…,g_k(P))`.
pub fn check_chain_rule(
    v: &TangentVector,
    outer: crate::ScalarFn,
    inner: &[ScalarField],
    manifold: &ManifoldSpec,
    tol: f64,
) -> Result<DerivationCheck, TangentError> {
    let g_at_p: Vec<f64> = inner.iter().map(|g| g.eval(&v.point)).collect();
    let composite_field = {
        let inner = inner.to_vec();
        let outer = std::sync::Arc::clone(&outer);
        ScalarField::ambient(
            v.manifold.clone(),
            std::sync::Arc::new(move |p: &[f64]| {
                let args: Vec<f64> = inner.iter().map(|g| g.eval(p)).collect();
                outer(&args)
            }),
        )
    };
    let lhs = apply(v, &composite_field, manifold)?;
    let outer_grad = central_gradient(|args| outer(args), &g_at_p, SCALAR_FD_STEP);
    let mut rhs = 0.0;
    for (i, g) in inner.iter().enumerate() {
        rhs += outer_grad[i] * apply(v, g, manifold)?;
    }
    Ok(DerivationCheck::evaluate(lhs, rhs, tol))
}
