//! Central finite differences with step refinement. The Richardson gap
//! between the `h` and `h/2` estimates doubles as the smoothness proxy used
//! by the atlas verifier: a composite whose estimates refuse to converge is
//! flagged as non-differentiable at that point.

use nalgebra::DMatrix;

/// Default relative step for central differences. Each coordinate is stepped
/// by `step * (1 + |u_k|)`.
pub const FD_STEP: f64 = 1e-5;

pub fn infinity_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_abs_entry(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()))
}

/// Central-difference gradient of a scalar function.
pub fn central_gradient<F>(f: F, u: &[f64], step: f64) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let mut grad = Vec::with_capacity(u.len());
    let mut x = u.to_vec();
    for k in 0..u.len() {
        let h = step * (1.0 + u[k].abs());
        x[k] = u[k] + h;
        let fp = f(&x);
        x[k] = u[k] - h;
        let fm = f(&x);
        x[k] = u[k];
        grad.push((fp - fm) / (2.0 * h));
    }
    grad
}

/// Central-difference Jacobian (`out_dim` rows, `u.len()` columns).
pub fn central_jacobian<F>(f: F, u: &[f64], out_dim: usize, step: f64) -> DMatrix<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = u.len();
    let mut jac = DMatrix::zeros(out_dim, n);
    let mut x = u.to_vec();
    for k in 0..n {
        let h = step * (1.0 + u[k].abs());
        x[k] = u[k] + h;
        let fp = f(&x);
        x[k] = u[k] - h;
        let fm = f(&x);
        x[k] = u[k];
        for i in 0..out_dim {
            jac[(i, k)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// A finite-difference Jacobian estimate at steps `h` and `h/2`.
#[derive(Debug, Clone)]
pub struct JacobianProbe {
    /// The `h/2` estimate (the more accurate one).
    pub jacobian: DMatrix<f64>,
    /// Largest entrywise disagreement between the two estimates, relative to
    /// `1 + max |entry|`.
    pub richardson_gap: f64,
}

impl JacobianProbe {
    pub fn is_finite(&self) -> bool {
        self.richardson_gap.is_finite() && self.jacobian.iter().all(|x| x.is_finite())
    }
}

pub fn refined_jacobian<F>(f: F, u: &[f64], out_dim: usize, step: f64) -> JacobianProbe
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let coarse = central_jacobian(&f, u, out_dim, step);
    let fine = central_jacobian(&f, u, out_dim, step / 2.0);
    let gap = max_abs_entry(&(&coarse - &fine)) / (1.0 + max_abs_entry(&fine));
    JacobianProbe {
        jacobian: fine,
        richardson_gap: gap,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gradient_of_quadratic() {
        let f = |x: &[f64]| x[0] * x[0] + 3.0 * x[1];
        let g = central_gradient(f, &[0.0, 0.0], FD_STEP);
        assert_relative_eq!(g[0], 0.0, epsilon = 1e-9);
        assert_relative_eq!(g[1], 3.0, epsilon = 1e-9);
    }

    #[test]
    fn jacobian_of_linear_map_is_exact() {
        let f = |x: &[f64]| vec![2.0 * x[0] + x[1], -x[0]];
        let probe = refined_jacobian(f, &[1.0, -2.0], 2, FD_STEP);
        assert_relative_eq!(probe.jacobian[(0, 0)], 2.0, epsilon = 1e-10);
        assert_relative_eq!(probe.jacobian[(0, 1)], 1.0, epsilon = 1e-10);
        assert_relative_eq!(probe.jacobian[(1, 0)], -1.0, epsilon = 1e-10);
        assert!(probe.richardson_gap < 1e-10);
    }

    #[test]
    fn richardson_gap_blows_up_on_cube_root_near_zero() {
        let f = |x: &[f64]| vec![x[0].cbrt()];
        let near = refined_jacobian(f, &[1e-6], 1, FD_STEP);
        let far = refined_jacobian(f, &[1.0], 1, FD_STEP);
        assert!(near.richardson_gap > 1e-2);
        assert!(far.richardson_gap < 1e-10);
    }
}
