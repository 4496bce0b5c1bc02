//! A chart is a coordinate homeomorphism from an open piece of a manifold
//! (points given in an ambient representation) onto an open domain of `Rⁿ`.

use std::sync::Arc;

use nalgebra::DMatrix;

pub(crate) type PointFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;
pub(crate) type PredicateFn = Arc<dyn Fn(&[f64], f64) -> bool + Send + Sync>;
pub(crate) type MatrixFn = Arc<dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync>;

#[derive(Clone)]
pub struct Chart {
    pub id: String,
    /// Dimension of the coordinate image.
    pub dim: usize,
    forward: PointFn,
    inverse: PointFn,
    domain: PredicateFn,
    coord_domain: PredicateFn,
    d_forward: Option<MatrixFn>,
    d_inverse: Option<MatrixFn>,
}

impl Chart {
    pub fn new(
        id: impl Into<String>,
        dim: usize,
        forward: PointFn,
        inverse: PointFn,
        domain: PredicateFn,
        coord_domain: PredicateFn,
    ) -> Self {
        Self {
            id: id.into(),
            dim,
            forward,
            inverse,
            domain,
            coord_domain,
            d_forward: None,
            d_inverse: None,
        }
    }

    /// Attaches closed-form ambient differentials: `d_forward` is the
    /// `dim × ambient_dim` derivative of the coordinate map, `d_inverse` the
    /// `ambient_dim × dim` derivative of its inverse. Needed to build tangent
    /// bundle charts without stacking finite differences.
    pub fn with_differentials(mut self, d_forward: MatrixFn, d_inverse: MatrixFn) -> Self {
        self.d_forward = Some(d_forward);
        self.d_inverse = Some(d_inverse);
        self
    }

    /// Coordinates of an ambient point.
    pub fn forward(&self, p: &[f64]) -> Vec<f64> {
        (self.forward)(p)
    }

    /// Ambient point of a coordinate tuple.
    pub fn inverse(&self, u: &[f64]) -> Vec<f64> {
        (self.inverse)(u)
    }

    /// Whether the ambient point lies in the chart domain, at least `margin`
    /// inside its boundary.
    pub fn contains(&self, p: &[f64], margin: f64) -> bool {
        (self.domain)(p, margin)
    }

    /// Whether a coordinate tuple lies in the image of the chart.
    pub fn coord_contains(&self, u: &[f64], margin: f64) -> bool {
        (self.coord_domain)(u, margin)
    }

    pub fn d_forward(&self, p: &[f64]) -> Option<DMatrix<f64>> {
        self.d_forward.as_ref().map(|f| f(p))
    }

    pub fn d_inverse(&self, u: &[f64]) -> Option<DMatrix<f64>> {
        self.d_inverse.as_ref().map(|f| f(u))
    }

    pub fn has_differentials(&self) -> bool {
        self.d_forward.is_some() && self.d_inverse.is_some()
    }

    /// Identity chart on `Rⁿ`.
    pub fn euclidean(n: usize) -> Self {
        Chart::new(
            "id",
            n,
            Arc::new(|p: &[f64]| p.to_vec()),
            Arc::new(|u: &[f64]| u.to_vec()),
            Arc::new(|_: &[f64], _| true),
            Arc::new(|_: &[f64], _| true),
        )
        .with_differentials(
            Arc::new(move |_: &[f64]| DMatrix::identity(n, n)),
            Arc::new(move |_: &[f64]| DMatrix::identity(n, n)),
        )
    }
}

impl std::fmt::Debug for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Chart")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("has_differentials", &self.has_differentials())
            .finish()
    }
}
