//! The builtin manifold zoo: Euclidean spaces, graphs of functions, the
//! sphere with hemisphere and stereographic atlases, the real projective
//! plane in homogeneous coordinates, products (circle, cylinder, torus),
//! and the deliberately incompatible pair of charts on the real line used
//! as a negative control.

use std::sync::Arc;

use nalgebra::DMatrix;

use super::chart::Chart;
use super::manifold::ManifoldSpec;
use super::AtlasError;
use crate::sample;

/// Attaches the chain-rule transition Jacobian `dφ_i · dφ_j⁻¹` when every
/// chart carries closed-form differentials.
fn with_chain_jacobians(spec: ManifoldSpec) -> ManifoldSpec {
    if !spec.charts().iter().all(|c| c.has_differentials()) {
        return spec;
    }
    let charts: Vec<Chart> = spec.charts().to_vec();
    spec.with_analytic_transition_jacobian(Arc::new(move |to, from, u| {
        let p = charts[from].inverse(u);
        if p.iter().any(|x| !x.is_finite()) {
            return None;
        }
        let d_inv = charts[from].d_inverse(u)?;
        let d_fwd = charts[to].d_forward(&p)?;
        Some(d_fwd * d_inv)
    }))
}

/// `Rⁿ` with the single identity chart.
pub fn euclidean(n: usize) -> ManifoldSpec {
    let spec = ManifoldSpec::new(
        format!("euclidean-{n}"),
        n,
        n,
        vec![Chart::euclidean(n)],
        Arc::new(move |rng| sample::normal_vec(rng, n)),
    );
    with_chain_jacobians(spec)
}

/// The graph `{(x, f(x))} ⊂ R^{n+1}` of a function `f: Rⁿ → R`, with the
/// single chart that drops the last coordinate. `grad` supplies `∇f` for
/// the chart differentials when available.
pub fn graph_manifold(
    name: impl Into<String>,
    n: usize,
    f: crate::ScalarFn,
    grad: Option<crate::PointFn>,
) -> ManifoldSpec {
    let f_fwd = Arc::clone(&f);
    let f_sample = Arc::clone(&f);
    let mut chart = Chart::new(
        "graph",
        n,
        Arc::new(move |p: &[f64]| p[..p.len() - 1].to_vec()),
        Arc::new(move |u: &[f64]| {
            let mut p = u.to_vec();
            p.push(f_fwd(u));
            p
        }),
        Arc::new(|_: &[f64], _| true),
        Arc::new(|_: &[f64], _| true),
    );
    if let Some(grad) = grad {
        chart = chart.with_differentials(
            Arc::new(move |_: &[f64]| {
                let mut m = DMatrix::zeros(n, n + 1);
                m.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
                m
            }),
            Arc::new(move |u: &[f64]| {
                let mut m = DMatrix::zeros(n + 1, n);
                m.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
                let g = grad(u);
                for k in 0..n {
                    m[(n, k)] = g[k];
                }
                m
            }),
        );
    }
    let spec = ManifoldSpec::new(
        name,
        n,
        n + 1,
        vec![chart],
        Arc::new(move |rng| {
            let x = sample::normal_vec(rng, n);
            let mut p = x.clone();
            p.push(f_sample(&x));
            p
        }),
    );
    with_chain_jacobians(spec)
}

/// The graph of `f(x) = x²` over the line.
pub fn graph_parabola() -> ManifoldSpec {
    graph_manifold(
        "graph-parabola",
        1,
        Arc::new(|x: &[f64]| x[0] * x[0]),
        Some(Arc::new(|x: &[f64]| vec![2.0 * x[0]])),
    )
}

/// One hemisphere chart of the unit 2-sphere: project away the coordinate
/// `axis` on the open half `sign·x_axis > 0`.
fn hemisphere_chart(axis: usize, sign: f64) -> Chart {
    let kept: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let (k1, k2) = (kept[0], kept[1]);
    let id = format!("x{}{}", axis + 1, if sign > 0.0 { "+" } else { "-" });
    Chart::new(
        id,
        2,
        Arc::new(move |p: &[f64]| vec![p[k1], p[k2]]),
        Arc::new(move |u: &[f64]| {
            // NaN outside the open disc; callers treat that as a stencil
            // failure rather than silently landing on the equator.
            let w = (1.0 - u[0] * u[0] - u[1] * u[1]).sqrt();
            let mut p = [0.0; 3];
            p[k1] = u[0];
            p[k2] = u[1];
            p[axis] = sign * w;
            p.to_vec()
        }),
        Arc::new(move |p: &[f64], m| sign * p[axis] > m),
        Arc::new(move |u: &[f64], m| u[0] * u[0] + u[1] * u[1] < 1.0 - m * m),
    )
    .with_differentials(
        Arc::new(move |_: &[f64]| {
            let mut d = DMatrix::zeros(2, 3);
            d[(0, k1)] = 1.0;
            d[(1, k2)] = 1.0;
            d
        }),
        Arc::new(move |u: &[f64]| {
            let w = (1.0 - u[0] * u[0] - u[1] * u[1]).sqrt();
            let mut d = DMatrix::zeros(3, 2);
            d[(k1, 0)] = 1.0;
            d[(k2, 1)] = 1.0;
            d[(axis, 0)] = -sign * u[0] / w;
            d[(axis, 1)] = -sign * u[1] / w;
            d
        }),
    )
}

/// The unit sphere `S² ⊂ R³` covered by the six vertical hemisphere
/// projections, in the order x3+, x3-, x2+, x2-, x1+, x1-.
pub fn sphere_hemispheres() -> ManifoldSpec {
    let charts = vec![
        hemisphere_chart(2, 1.0),
        hemisphere_chart(2, -1.0),
        hemisphere_chart(1, 1.0),
        hemisphere_chart(1, -1.0),
        hemisphere_chart(0, 1.0),
        hemisphere_chart(0, -1.0),
    ];
    let spec = ManifoldSpec::new(
        "sphere-hemispheres",
        2,
        3,
        charts,
        Arc::new(|rng| sample::unit_sphere_point(rng, 3)),
    );
    with_chain_jacobians(spec)
}

/// Stereographic chart from the pole `(0, 0, pole)`; `pole = 1` projects
/// from the north pole onto the equator plane, `pole = -1` from the south.
fn stereo_chart(pole: f64) -> Chart {
    let id = if pole > 0.0 { "north" } else { "south" };
    Chart::new(
        id,
        2,
        Arc::new(move |p: &[f64]| {
            let d = 1.0 - pole * p[2];
            vec![p[0] / d, p[1] / d]
        }),
        Arc::new(move |u: &[f64]| {
            let rho = u[0] * u[0] + u[1] * u[1];
            let d = 1.0 + rho;
            vec![2.0 * u[0] / d, 2.0 * u[1] / d, pole * (rho - 1.0) / d]
        }),
        Arc::new(move |p: &[f64], m| pole * p[2] < 1.0 - m),
        Arc::new(move |u: &[f64], m| {
            m <= 0.0 || u[0] * u[0] + u[1] * u[1] < (2.0 - m) / m
        }),
    )
    .with_differentials(
        Arc::new(move |p: &[f64]| {
            let d = 1.0 - pole * p[2];
            let mut j = DMatrix::zeros(2, 3);
            j[(0, 0)] = 1.0 / d;
            j[(0, 2)] = pole * p[0] / (d * d);
            j[(1, 1)] = 1.0 / d;
            j[(1, 2)] = pole * p[1] / (d * d);
            j
        }),
        Arc::new(move |u: &[f64]| {
            let (a, b) = (u[0], u[1]);
            let rho = a * a + b * b;
            let d2 = (1.0 + rho) * (1.0 + rho);
            let mut j = DMatrix::zeros(3, 2);
            j[(0, 0)] = 2.0 * (1.0 + rho - 2.0 * a * a) / d2;
            j[(0, 1)] = -4.0 * a * b / d2;
            j[(1, 0)] = -4.0 * a * b / d2;
            j[(1, 1)] = 2.0 * (1.0 + rho - 2.0 * b * b) / d2;
            j[(2, 0)] = pole * 4.0 * a / d2;
            j[(2, 1)] = pole * 4.0 * b / d2;
            j
        }),
    )
}

/// The unit sphere covered by the two stereographic projections.
pub fn sphere_stereo() -> ManifoldSpec {
    let spec = ManifoldSpec::new(
        "sphere-stereo",
        2,
        3,
        vec![stereo_chart(1.0), stereo_chart(-1.0)],
        Arc::new(|rng| sample::unit_sphere_point(rng, 3)),
    );
    with_chain_jacobians(spec)
}

/// Canonical representative of a projective class: unit norm with the first
/// nonzero coordinate positive.
pub fn projective_normalize(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
    let mut u: Vec<f64> = v.iter().map(|c| c / norm).collect();
    if let Some(first) = u.iter().find(|c| c.abs() > 1e-12) {
        if *first < 0.0 {
            for c in &mut u {
                *c = -*c;
            }
        }
    }
    u
}

fn projective_chart(i: usize) -> Chart {
    let others: Vec<usize> = (0..3).filter(|&k| k != i).collect();
    let (p, q) = (others[0], others[1]);
    Chart::new(
        format!("u{}", i + 1),
        2,
        Arc::new(move |x: &[f64]| vec![x[p] / x[i], x[q] / x[i]]),
        Arc::new(move |u: &[f64]| {
            let mut rep = [0.0; 3];
            rep[i] = 1.0;
            rep[p] = u[0];
            rep[q] = u[1];
            projective_normalize(&rep)
        }),
        Arc::new(move |x: &[f64], m| x[i].abs() > m),
        Arc::new(|_: &[f64], _| true),
    )
}

/// The real projective plane: classes of rays through the origin of `R³`,
/// represented by canonical unit triples, with the three ratio charts on
/// `x^i ≠ 0`. Transition Jacobians come from exact quotient-rule forms.
pub fn projective_plane() -> ManifoldSpec {
    let spec = ManifoldSpec::new(
        "projective-plane",
        2,
        3,
        vec![projective_chart(0), projective_chart(1), projective_chart(2)],
        Arc::new(|rng| projective_normalize(&sample::unit_sphere_point(rng, 3))),
    );
    spec.with_analytic_transition_jacobian(Arc::new(|to, from, u| {
        if to == from {
            return Some(DMatrix::identity(2, 2));
        }
        // Representative with 1 in slot `from` and the coordinates in the
        // remaining slots, ascending; its dependence on (a, b) is linear.
        let from_others: Vec<usize> = (0..3).filter(|&k| k != from).collect();
        let mut rep = [0.0; 3];
        rep[from] = 1.0;
        rep[from_others[0]] = u[0];
        rep[from_others[1]] = u[1];
        let d_rep = |slot: usize, wrt: usize| -> f64 {
            if slot == from_others[wrt] {
                1.0
            } else {
                0.0
            }
        };
        let ri = rep[to];
        if ri.abs() < 1e-12 {
            return None;
        }
        let to_others: Vec<usize> = (0..3).filter(|&k| k != to).collect();
        let mut j = DMatrix::zeros(2, 2);
        for (row, &slot) in to_others.iter().enumerate() {
            for wrt in 0..2 {
                // quotient rule for rep[slot] / rep[to]
                j[(row, wrt)] = (d_rep(slot, wrt) * ri - rep[slot] * d_rep(to, wrt)) / (ri * ri);
            }
        }
        Some(j)
    }))
}

/// The real line carrying both the identity chart and the cube chart
/// `x ↦ x³`. Each chart alone is an atlas; together they are *not*
/// compatible (the transition `y ↦ y^{1/3}` is not differentiable at 0),
/// which makes this the standard negative control.
pub fn real_line_cubic() -> ManifoldSpec {
    let id_chart = Chart::new(
        "id",
        1,
        Arc::new(|p: &[f64]| p.to_vec()),
        Arc::new(|u: &[f64]| u.to_vec()),
        Arc::new(|_: &[f64], _| true),
        Arc::new(|_: &[f64], _| true),
    );
    let cubic_chart = Chart::new(
        "cubic",
        1,
        Arc::new(|p: &[f64]| vec![p[0] * p[0] * p[0]]),
        Arc::new(|u: &[f64]| vec![u[0].cbrt()]),
        Arc::new(|_: &[f64], _| true),
        Arc::new(|_: &[f64], _| true),
    );
    ManifoldSpec::new(
        "real-line-cubic",
        1,
        1,
        vec![id_chart, cubic_chart],
        Arc::new(|rng| vec![sample::standard_normal(rng)]),
    )
}

fn angle_chart(id: &str, shifted: bool) -> Chart {
    // theta0 covers angles in (-π, π); theta1 covers (0, 2π).
    let angle = move |p: &[f64]| -> f64 {
        let t = p[1].atan2(p[0]);
        if shifted && t <= 0.0 {
            t + 2.0 * std::f64::consts::PI
        } else {
            t
        }
    };
    let in_range = move |t: f64, m: f64| -> bool {
        if shifted {
            t > m && t < 2.0 * std::f64::consts::PI - m
        } else {
            t.abs() < std::f64::consts::PI - m
        }
    };
    Chart::new(
        id,
        1,
        Arc::new(move |p: &[f64]| vec![angle(p)]),
        Arc::new(|u: &[f64]| vec![u[0].cos(), u[0].sin()]),
        Arc::new(move |p: &[f64], m| in_range(angle(p), m)),
        Arc::new(move |u: &[f64], m| in_range(u[0], m)),
    )
    .with_differentials(
        Arc::new(|p: &[f64]| {
            let r2 = p[0] * p[0] + p[1] * p[1];
            DMatrix::from_row_slice(1, 2, &[-p[1] / r2, p[0] / r2])
        }),
        Arc::new(|u: &[f64]| DMatrix::from_column_slice(2, 1, &[-u[0].sin(), u[0].cos()])),
    )
}

/// The unit circle with two angle charts, θ ∈ (-π, π) and θ ∈ (0, 2π); the
/// transitions shift by ±2π on the two overlap components.
pub fn circle() -> ManifoldSpec {
    let spec = ManifoldSpec::new(
        "circle",
        1,
        2,
        vec![angle_chart("theta0", false), angle_chart("theta1", true)],
        Arc::new(|rng| {
            let t = sample::uniform(rng, 0.0, 2.0 * std::f64::consts::PI);
            vec![t.cos(), t.sin()]
        }),
    );
    with_chain_jacobians(spec)
}

/// Product manifold: ambient representations concatenate, charts are pairs
/// of factor charts (id `a*b`), and differentials assemble blockwise.
pub fn product(
    name: impl Into<String>,
    a: &ManifoldSpec,
    b: &ManifoldSpec,
) -> ManifoldSpec {
    let (amb_a, amb_b) = (a.ambient_dim, b.ambient_dim);
    let (dim_a, dim_b) = (a.dim, b.dim);
    let mut charts = Vec::new();
    for ca in a.charts() {
        for cb in b.charts() {
            let (ca, cb) = (ca.clone(), cb.clone());
            let id = format!("{}*{}", ca.id, cb.id);
            let (ca_f, cb_f) = (ca.clone(), cb.clone());
            let (ca_i, cb_i) = (ca.clone(), cb.clone());
            let (ca_d, cb_d) = (ca.clone(), cb.clone());
            let (ca_c, cb_c) = (ca.clone(), cb.clone());
            let mut chart = Chart::new(
                id,
                dim_a + dim_b,
                Arc::new(move |p: &[f64]| {
                    let mut u = ca_f.forward(&p[..amb_a]);
                    u.extend(cb_f.forward(&p[amb_a..]));
                    u
                }),
                Arc::new(move |u: &[f64]| {
                    let mut p = ca_i.inverse(&u[..dim_a]);
                    p.extend(cb_i.inverse(&u[dim_a..]));
                    p
                }),
                Arc::new(move |p: &[f64], m| {
                    ca_d.contains(&p[..amb_a], m) && cb_d.contains(&p[amb_a..], m)
                }),
                Arc::new(move |u: &[f64], m| {
                    ca_c.coord_contains(&u[..dim_a], m) && cb_c.coord_contains(&u[dim_a..], m)
                }),
            );
            if ca.has_differentials() && cb.has_differentials() {
                let (ca_df, cb_df) = (ca.clone(), cb.clone());
                let (ca_di, cb_di) = (ca.clone(), cb.clone());
                chart = chart.with_differentials(
                    Arc::new(move |p: &[f64]| {
                        let da = ca_df.d_forward(&p[..amb_a]).expect("checked");
                        let db = cb_df.d_forward(&p[amb_a..]).expect("checked");
                        block_diag(&da, &db)
                    }),
                    Arc::new(move |u: &[f64]| {
                        let da = ca_di.d_inverse(&u[..dim_a]).expect("checked");
                        let db = cb_di.d_inverse(&u[dim_a..]).expect("checked");
                        block_diag(&da, &db)
                    }),
                );
            }
            charts.push(chart);
        }
    }
    let (sa, sb) = (a.sampler(), b.sampler());
    let spec = ManifoldSpec::new(
        name,
        dim_a + dim_b,
        amb_a + amb_b,
        charts,
        Arc::new(move |rng| {
            let mut p = sa(rng);
            p.extend(sb(rng));
            p
        }),
    );
    with_chain_jacobians(spec)
}

fn block_diag(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
    m.view_mut((0, 0), (a.nrows(), a.ncols())).copy_from(a);
    m.view_mut((a.nrows(), a.ncols()), (b.nrows(), b.ncols()))
        .copy_from(b);
    m
}

/// `S¹ × R`.
pub fn cylinder() -> ManifoldSpec {
    product("cylinder", &circle(), &euclidean(1))
}

/// The k-torus, a product of k circles.
pub fn torus(k: usize) -> Result<ManifoldSpec, AtlasError> {
    if k < 2 {
        return Err(AtlasError::Dimension(
            "torus needs at least two circle factors".into(),
        ));
    }
    let mut spec = circle();
    for _ in 1..k {
        spec = product("torus", &spec, &circle());
    }
    spec.name = format!("torus-{k}");
    Ok(spec)
}

pub const BUILTIN_NAMES: &[&str] = &[
    "euclidean-1",
    "euclidean-2",
    "euclidean-3",
    "graph-parabola",
    "sphere-hemispheres",
    "sphere-stereo",
    "projective-plane",
    "real-line-cubic",
    "circle",
    "cylinder",
    "torus-2",
    "torus-3",
];

pub fn builtin(name: &str) -> Result<ManifoldSpec, AtlasError> {
    match name {
        "euclidean-1" => Ok(euclidean(1)),
        "euclidean-2" => Ok(euclidean(2)),
        "euclidean-3" => Ok(euclidean(3)),
        "graph-parabola" => Ok(graph_parabola()),
        "sphere-hemispheres" => Ok(sphere_hemispheres()),
        "sphere-stereo" => Ok(sphere_stereo()),
        "projective-plane" => Ok(projective_plane()),
        "real-line-cubic" => Ok(real_line_cubic()),
        "circle" => Ok(circle()),
        "cylinder" => Ok(cylinder()),
        "torus-2" => torus(2),
        "torus-3" => torus(3),
        _ => Err(AtlasError::UnknownBuiltin {
            name: name.to_owned(),
            available: BUILTIN_NAMES.join(", "),
        }),
    }
}

/// Which connected component of the general linear group a matrix lies in.
/// `GL_n(R)` itself is disconnected (the determinant separates it), so only
/// the components carry a single flattening chart each.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum GlComponent {
    Plus,
    Minus,
}

pub const GL_SINGULAR_FLOOR: f64 = 1e-12;

pub fn classify_gl_component(
    matrix: &DMatrix<f64>,
    singular_floor: f64,
) -> Result<GlComponent, AtlasError> {
    if !matrix.is_square() {
        return Err(AtlasError::Dimension("matrix must be square".into()));
    }
    let det = matrix.clone().determinant();
    if det.abs() <= singular_floor {
        return Err(AtlasError::SingularMatrix { det });
    }
    Ok(if det > 0.0 {
        GlComponent::Plus
    } else {
        GlComponent::Minus
    })
}

/// Row-major flattening: the chart identifying `M_{n,k}(R)` with `R^{nk}`.
pub fn matrix_chart_coords(matrix: &DMatrix<f64>) -> Vec<f64> {
    let mut coords = Vec::with_capacity(matrix.nrows() * matrix.ncols());
    for i in 0..matrix.nrows() {
        for j in 0..matrix.ncols() {
            coords.push(matrix[(i, j)]);
        }
    }
    coords
}
