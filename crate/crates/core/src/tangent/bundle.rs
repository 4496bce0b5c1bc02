//! The tangent bundle as a manifold: points are pairs `(P, w)` of a base
//! point and an ambient tangent vector, and each base chart induces the
//! bundle chart `(P, w) ↦ (φ(P), dφ(P)·w)` into `R^{2n}`. The induced
//! transitions are `(u, y) ↦ (T(u), J_T(u)·y)`, linear in the fiber.
//!
//! Building bundle charts requires closed-form chart differentials; stacking
//! finite differences of finite differences would not meet the chart
//! round-trip tolerance.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;

use super::TangentError;
use crate::atlas::{AtlasError, Chart, ManifoldSpec};
use crate::sample;

fn matvec(m: &nalgebra::DMatrix<f64>, v: &[f64]) -> Vec<f64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum())
        .collect()
}

/// The bundle chart induced by one base chart.
pub fn bundle_chart(manifold: &ManifoldSpec, chart_id: &str) -> Result<Chart, TangentError> {
    let (_, base) = manifold.chart(chart_id)?;
    if !base.has_differentials() {
        return Err(TangentError::Atlas(AtlasError::MissingDifferentials {
            manifold: manifold.name.clone(),
            chart: chart_id.to_owned(),
        }));
    }
    let n = manifold.dim;
    let amb = manifold.ambient_dim;
    let fwd_chart = base.clone();
    let inv_chart = base.clone();
    let dom_chart = base.clone();
    let coord_chart = base.clone();
    Ok(Chart::new(
        format!("{chart_id}_T"),
        2 * n,
        Arc::new(move |pw: &[f64]| {
            let (p, w) = pw.split_at(amb);
            let mut out = fwd_chart.forward(p);
            let d = fwd_chart.d_forward(p).expect("differentials checked");
            out.extend(matvec(&d, w));
            out
        }),
        Arc::new(move |uy: &[f64]| {
            let (u, y) = uy.split_at(n);
            let mut out = inv_chart.inverse(u);
            let d = inv_chart.d_inverse(u).expect("differentials checked");
            out.extend(matvec(&d, y));
            out
        }),
        Arc::new(move |pw: &[f64], m| dom_chart.contains(&pw[..amb], m)),
        Arc::new(move |uy: &[f64], m| coord_chart.coord_contains(&uy[..n], m)),
    ))
}

/// The tangent bundle of a manifold, a `2n`-dimensional manifold whose atlas
/// is induced chart by chart. The sampler draws a base point and a Gaussian
/// fiber vector expressed through the first covering chart.
pub fn tangent_bundle(manifold: &ManifoldSpec) -> Result<ManifoldSpec, TangentError> {
    let mut charts = Vec::with_capacity(manifold.charts().len());
    for chart in manifold.charts() {
        charts.push(bundle_chart(manifold, &chart.id)?);
    }
    let base = manifold.clone();
    let n = manifold.dim;
    let sampler = Arc::new(move |rng: &mut ChaCha8Rng| {
        let p = base.sample_point(rng);
        let (_, chart) = base
            .covering_chart(&p, 0.05)
            .or_else(|| base.covering_chart(&p, 0.0))
            .expect("sampler output must be covered");
        let coeffs = sample::normal_vec(rng, n);
        let d = chart
            .d_inverse(&chart.forward(&p))
            .expect("differentials checked");
        let mut pw = p.clone();
        pw.extend(matvec(&d, &coeffs));
        pw
    });
    Ok(ManifoldSpec::new(
        format!("{}-tangent", manifold.name),
        2 * manifold.dim,
        2 * manifold.ambient_dim,
        charts,
        sampler,
    ))
}
