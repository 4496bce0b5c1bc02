//! Commands over the manifold zoo and the homeomorphism catalog.

use std::fmt::Write as _;

use serde_json::json;
use topoatlas_core::atlas::{verify_atlas, zoo, JacobianMode};
use topoatlas_core::euclid;
use topoatlas_core::numerics::FD_STEP;
use topoatlas_core::tangent::{change_chart, TangentVector};
use topoatlas_core::VerifyConfig;

use crate::{parse_coords, Failure, Outcome};

/// A probe jump below this bound is consistent with a continuous inverse;
/// the circle parametrization's seam jump sits near 1.
const SEAM_JUMP_MAX: f64 = 1e-2;

fn config(seed: u64, samples: usize, tol: Option<f64>, coord_floor: Option<f64>) -> VerifyConfig {
    let mut cfg = VerifyConfig::default().with_seed(seed).with_samples(samples);
    if let Some(t) = tol {
        cfg.transition_tol = t;
    }
    cfg.coord_floor = coord_floor;
    cfg
}

pub fn atlas_list() -> Result<Outcome, Failure> {
    let mut text = String::new();
    for name in zoo::BUILTIN_NAMES {
        let m = zoo::builtin(name).expect("listed name");
        writeln!(
            text,
            "{name}: dim {} in R^{}, charts [{}]",
            m.dim,
            m.ambient_dim,
            m.chart_ids().join(", ")
        )
        .unwrap();
    }
    Ok(Outcome {
        passed: true,
        json: json!({
            "command": "atlas list",
            "builtins": zoo::BUILTIN_NAMES,
            "passed": true,
        }),
        text,
    })
}

pub fn atlas_verify(
    name: &str,
    seed: u64,
    samples: usize,
    tol: Option<f64>,
    coord_floor: Option<f64>,
) -> Result<Outcome, Failure> {
    let manifold = zoo::builtin(name).map_err(|e| Failure::usage(e.to_string()))?;
    let cfg = config(seed, samples, tol, coord_floor);
    let report = verify_atlas(&manifold, &cfg);
    let mut text = String::new();
    writeln!(
        text,
        "atlas {name}: {} charts, {} sampled points",
        manifold.charts().len(),
        report.covering_checked
    )
    .unwrap();
    writeln!(
        text,
        "covering: {} failures; chart round-trip max {:.3e} (tol {:.1e})",
        report.covering_failure_count, report.chart_roundtrip_max, cfg.chart_roundtrip_tol
    )
    .unwrap();
    for pair in &report.pairs {
        let status = if pair.passed { "ok" } else { "FAIL" };
        let detail = match pair.overlap_samples {
            0 => "empty overlap (vacuous)".to_owned(),
            _ => format!(
                "{} samples{}, roundtrip {:.3e}, min|detJ| {:.3e}, fd gap {:.3e}",
                pair.overlap_samples,
                if pair.thin_overlap { " (thin)" } else { "" },
                pair.roundtrip_max_error.unwrap_or(0.0),
                pair.min_abs_det.unwrap_or(f64::NAN),
                pair.max_richardson_gap.unwrap_or(0.0),
            ),
        };
        writeln!(text, "  {} | {}: {status} {detail}", pair.pair.0, pair.pair.1).unwrap();
        for v in pair.violations.iter().take(3) {
            writeln!(text, "      {:?} at {:?} (value {:.3e})", v.kind, v.point, v.value).unwrap();
        }
    }
    writeln!(
        text,
        "tolerances: roundtrip {:.1e}, det floor {:.1e}, fd {:.1e}, margin {}",
        cfg.transition_tol, cfg.det_floor, cfg.fd_tol, cfg.margin
    )
    .unwrap();
    writeln!(text, "verdict: {}", if report.passed { "PASS" } else { "FAIL" }).unwrap();
    let passed = report.passed;
    Ok(Outcome {
        passed,
        json: json!({
            "command": "atlas verify",
            "manifold": name,
            "report": report,
            "passed": passed,
        }),
        text,
    })
}

pub fn atlas_transition(name: &str, from: &str, to: &str, point: &str) -> Result<Outcome, Failure> {
    let manifold = zoo::builtin(name).map_err(|e| Failure::usage(e.to_string()))?;
    let u = parse_coords(point)?;
    if u.len() != manifold.dim {
        return Err(Failure::usage(format!(
            "expected {} coordinates, got {}",
            manifold.dim,
            u.len()
        )));
    }
    let transition = manifold
        .transition(to, from)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let (_, from_chart) = manifold.chart(from).expect("validated");
    let (_, to_chart) = manifold.chart(to).expect("validated");
    let ambient = from_chart.inverse(&u);
    let in_overlap = from_chart.coord_contains(&u, 0.0)
        && ambient.iter().all(|x| x.is_finite())
        && to_chart.contains(&ambient, 0.0);
    if !in_overlap {
        return Ok(Outcome {
            passed: false,
            text: format!("point {u:?} is outside the overlap of {from} and {to}\n"),
            json: json!({
                "command": "atlas transition",
                "manifold": name,
                "from": from,
                "to": to,
                "point": u,
                "in_overlap": false,
                "passed": false,
            }),
        });
    }
    let image = transition.apply(&u);
    let estimate = transition.jacobian(&u, FD_STEP);
    let det = estimate.matrix.determinant();
    let jac: Vec<Vec<f64>> = (0..estimate.matrix.nrows())
        .map(|i| (0..estimate.matrix.ncols()).map(|j| estimate.matrix[(i, j)]).collect())
        .collect();
    let mode = match estimate.mode {
        JacobianMode::Analytic => "analytic",
        JacobianMode::FiniteDifference => "finite-difference",
    };
    let mut text = String::new();
    writeln!(text, "{to} ∘ {from}⁻¹ at {u:?} = {image:?}").unwrap();
    writeln!(text, "jacobian ({mode}): {jac:?}").unwrap();
    writeln!(text, "det J = {det}").unwrap();
    if let Some(gap) = estimate.richardson_gap {
        writeln!(text, "fd refinement gap: {gap:.3e}").unwrap();
    }
    writeln!(text, "fd step: {FD_STEP:.1e} (scaled per coordinate)").unwrap();
    Ok(Outcome {
        passed: true,
        json: json!({
            "command": "atlas transition",
            "manifold": name,
            "from": from,
            "to": to,
            "point": u,
            "in_overlap": true,
            "image": image,
            "jacobian": jac,
            "jacobian_mode": mode,
            "det": det,
            "richardson_gap": estimate.richardson_gap,
            "fd_step": FD_STEP,
            "passed": true,
        }),
        text,
    })
}

pub fn tangent_transform(
    name: &str,
    point: &str,
    components: &str,
    from: &str,
    to: &str,
) -> Result<Outcome, Failure> {
    let manifold = zoo::builtin(name).map_err(|e| Failure::usage(e.to_string()))?;
    let p = parse_coords(point)?;
    let comps = parse_coords(components)?;
    if p.len() != manifold.ambient_dim {
        return Err(Failure::usage(format!(
            "expected {} ambient coordinates, got {}",
            manifold.ambient_dim,
            p.len()
        )));
    }
    manifold.chart(to).map_err(|e| Failure::usage(e.to_string()))?;
    let vector = match TangentVector::new(&manifold, from, p, comps) {
        Ok(v) => v,
        Err(topoatlas_core::tangent::TangentError::Atlas(e)) => {
            return Err(Failure::usage(e.to_string()))
        }
        Err(e) => {
            return Ok(Outcome {
                passed: false,
                text: format!("{e}\n"),
                json: json!({
                    "command": "tangent transform",
                    "manifold": name,
                    "error": e.to_string(),
                    "passed": false,
                }),
            })
        }
    };
    match change_chart(&vector, to, &manifold) {
        Ok(moved) => {
            let mut text = String::new();
            writeln!(
                text,
                "components in {from}: {:?} -> components in {to}: {:?}",
                vector.components, moved.components
            )
            .unwrap();
            writeln!(text, "fd step: {FD_STEP:.1e} (analytic Jacobian preferred)").unwrap();
            Ok(Outcome {
                passed: true,
                json: json!({
                    "command": "tangent transform",
                    "manifold": name,
                    "point": vector.point,
                    "from": from,
                    "to": to,
                    "components_in": vector.components,
                    "components_out": moved.components,
                    "fd_step": FD_STEP,
                    "passed": true,
                }),
                text,
            })
        }
        Err(e) => Ok(Outcome {
            passed: false,
            text: format!("{e}\n"),
            json: json!({
                "command": "tangent transform",
                "manifold": name,
                "error": e.to_string(),
                "passed": false,
            }),
        }),
    }
}

pub fn homeo_list() -> Result<Outcome, Failure> {
    let mut text = String::new();
    for m in euclid::catalog() {
        writeln!(text, "{}: R^{} -> R^{}", m.name, m.dim_in, m.dim_out).unwrap();
    }
    Ok(Outcome {
        passed: true,
        json: json!({
            "command": "homeo list",
            "maps": euclid::map_names(),
            "passed": true,
        }),
        text,
    })
}

pub fn homeo_check(name: &str, seed: u64, samples: usize, tol: f64) -> Result<Outcome, Failure> {
    let map = euclid::by_name(name).map_err(|e| Failure::usage(e.to_string()))?;
    let report = map
        .check_round_trip(samples, seed, tol)
        .map_err(|e| Failure::usage(e.to_string()))?;
    // Seam probe where the codomain is a closed curve: a large preimage
    // jump certifies a discontinuous inverse even when round trips pass.
    let seam_jump = map.detect_inverse_jump(1e-3).ok();
    let seam_ok = seam_jump.is_none_or(|j| j <= SEAM_JUMP_MAX);
    let passed = report.passed && seam_ok;
    let mut text = String::new();
    writeln!(
        text,
        "{name}: {} samples, domain-side max {:.3e}, image-side max {:.3e} (tol {:.1e})",
        report.samples, report.domain_side_max, report.image_side_max, tol
    )
    .unwrap();
    if let Some(j) = seam_jump {
        writeln!(
            text,
            "seam probe at eps 1e-3: preimage jump {j:.6} (continuity bound {SEAM_JUMP_MAX:.0e})"
        )
        .unwrap();
    }
    writeln!(text, "verdict: {}", if passed { "PASS" } else { "FAIL" }).unwrap();
    Ok(Outcome {
        passed,
        json: json!({
            "command": "homeo check",
            "map": name,
            "round_trip": report,
            "seam_jump": seam_jump,
            "seam_bound": SEAM_JUMP_MAX,
            "passed": passed,
        }),
        text,
    })
}
