//! Numeric invariants of the transition-function machinery: closed forms,
//! Jacobian reciprocity, and agreement between analytic and
//! finite-difference derivatives across the zoo.

use nalgebra::DMatrix;
use topoatlas_core::atlas::zoo;
use topoatlas_core::atlas::ManifoldSpec;
use topoatlas_core::numerics::{max_abs_entry, FD_STEP};
use topoatlas_core::VerifyConfig;

fn cfg(samples: usize) -> VerifyConfig {
    VerifyConfig::default().with_samples(samples)
}

/// Builtins whose transitions carry analytic Jacobians.
fn analytic_zoo() -> Vec<ManifoldSpec> {
    ["euclidean-2", "sphere-hemispheres", "sphere-stereo", "projective-plane", "circle", "cylinder", "torus-2"]
        .iter()
        .map(|n| zoo::builtin(n).unwrap())
        .collect()
}

#[test]
fn analytic_and_fd_jacobians_agree_on_all_transitions() {
    for manifold in analytic_zoo() {
        let ids = manifold.chart_ids();
        for i in &ids {
            for j in &ids {
                if i == j {
                    continue;
                }
                let t = manifold.transition(i, j).unwrap();
                for u in t.sample_overlap(&cfg(100)) {
                    let exact = t
                        .analytic_jacobian(&u)
                        .unwrap_or_else(|| panic!("{}: {i}/{j} analytic", manifold.name));
                    let fd = t.fd_jacobian(&u, FD_STEP).jacobian;
                    let gap = max_abs_entry(&(&exact - &fd)) / (1.0 + max_abs_entry(&exact));
                    assert!(
                        gap <= 1e-5,
                        "{} {i}<-{j} at {u:?}: gap {gap:.3e}",
                        manifold.name
                    );
                }
            }
        }
    }
}

#[test]
fn opposite_transitions_have_reciprocal_jacobians() {
    for manifold in analytic_zoo() {
        let ids = manifold.chart_ids();
        for i in &ids {
            for j in &ids {
                if i == j {
                    continue;
                }
                let forward = manifold.transition(i, j).unwrap();
                let backward = forward.reversed();
                for u in forward.sample_overlap(&cfg(60)) {
                    let v = forward.apply(&u);
                    let j_fwd = forward.fd_jacobian(&u, FD_STEP).jacobian;
                    let j_back = backward.fd_jacobian(&v, FD_STEP).jacobian;
                    // Determinants multiply to one.
                    let det_product = j_fwd.determinant() * j_back.determinant();
                    assert!(
                        (det_product - 1.0).abs() <= 1e-4,
                        "{} {i}/{j}: det product {det_product}",
                        manifold.name
                    );
                    // And the matrices are mutual inverses.
                    let product = &j_fwd * &j_back;
                    let eye = DMatrix::<f64>::identity(manifold.dim, manifold.dim);
                    let gap = max_abs_entry(&(&product - &eye));
                    assert!(
                        gap <= 1e-5,
                        "{} {i}/{j} at {u:?}: J_ij J_ji - I = {gap:.3e}",
                        manifold.name
                    );
                }
            }
        }
    }
}

#[test]
fn hemisphere_transition_determinant_closed_form() {
    // For the transition from the x2+ chart (coordinates (x1, x3)) into the
    // x3+ chart, det J = -x3 / sqrt(1 - x1² - x3²).
    let sphere = zoo::sphere_hemispheres();
    let t = sphere.transition("x3+", "x2+").unwrap();
    let samples = t.sample_overlap(&cfg(100));
    assert!(samples.len() >= 100);
    for u in samples {
        let (x1, x3) = (u[0], u[1]);
        let expected = -x3 / (1.0 - x1 * x1 - x3 * x3).sqrt();
        let det = t.analytic_jacobian(&u).unwrap().determinant();
        assert!(
            (det - expected).abs() <= 1e-12 * (1.0 + expected.abs()),
            "det {det} vs {expected} at {u:?}"
        );
        let fd_det = t.fd_jacobian(&u, FD_STEP).jacobian.determinant();
        assert!((fd_det - expected).abs() <= 1e-5 * (1.0 + expected.abs()));
    }
    // Spot value quoted from the worked example.
    let det = t.analytic_jacobian(&[0.1, 0.2]).unwrap().determinant();
    assert!((det - (-0.2 / 0.95f64.sqrt())).abs() < 1e-12);
    assert!((det - (-0.205_195)).abs() < 1e-6);
}

#[test]
fn stereographic_transition_matches_plane_inversion() {
    let sphere = zoo::sphere_stereo();
    let t = sphere.transition("north", "south").unwrap();
    for u in t.sample_overlap(&cfg(1000)) {
        let rho = u[0] * u[0] + u[1] * u[1];
        let v = t.apply(&u);
        assert!((v[0] - u[0] / rho).abs() <= 1e-10);
        assert!((v[1] - u[1] / rho).abs() <= 1e-10);
    }
}

#[test]
fn projective_transition_matches_ratio_form() {
    // From the u3 chart, coordinates (a, b) represent the class (a : b : 1);
    // in the u1 chart that class reads (b/a, 1/a) wherever a ≠ 0.
    let rp2 = zoo::projective_plane();
    let t = rp2.transition("u1", "u3").unwrap();
    for u in t.sample_overlap(&cfg(500)) {
        let v = t.apply(&u);
        assert!((v[0] - u[1] / u[0]).abs() <= 1e-10 * (1.0 + (u[1] / u[0]).abs()));
        assert!((v[1] - 1.0 / u[0]).abs() <= 1e-10 * (1.0 + (1.0 / u[0]).abs()));
    }
}

#[test]
fn cross_atlas_transition_matches_worked_form() {
    // Mixing the hemisphere and stereographic atlases: from north-pole
    // stereographic coordinates (ζ, η) into the x2+ hemisphere chart,
    // the composite is (2ζ/(1+ρ), -(1-ρ)/(1+ρ)) with ρ = ζ² + η².
    let hemis = zoo::sphere_hemispheres();
    let stereo = zoo::sphere_stereo();
    let (_, x2p) = hemis.chart("x2+").unwrap();
    let (_, north) = stereo.chart("north").unwrap();
    let mut rng = topoatlas_core::sample::rng(3);
    let mut checked = 0;
    while checked < 300 {
        let p = stereo.sample_point(&mut rng);
        if !north.contains(&p, 0.1) || !x2p.contains(&p, 0.1) {
            continue;
        }
        checked += 1;
        let u = north.forward(&p);
        let composite = x2p.forward(&north.inverse(&u));
        let rho = u[0] * u[0] + u[1] * u[1];
        let expected = [2.0 * u[0] / (1.0 + rho), -(1.0 - rho) / (1.0 + rho)];
        assert!((composite[0] - expected[0]).abs() <= 1e-10);
        assert!((composite[1] - expected[1]).abs() <= 1e-10);
    }
}

#[test]
fn graph_manifold_single_chart_verifies() {
    let g = zoo::graph_parabola();
    let report = topoatlas_core::atlas::verify_atlas(&g, &cfg(300));
    assert!(report.passed, "{report:?}");
}

#[test]
fn euclidean_and_products_verify() {
    for name in ["euclidean-1", "euclidean-3", "circle", "cylinder", "torus-2", "torus-3"] {
        let m = zoo::builtin(name).unwrap();
        let report = topoatlas_core::atlas::verify_atlas(&m, &cfg(200));
        assert!(report.passed, "{name}: {report:?}");
    }
}
