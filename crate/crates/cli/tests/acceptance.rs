//! Acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line (run with `-- --nocapture` to see them all).
//!
//! The enumeration criterion is validated against a brute-force axiom
//! checker written here, deliberately separate from the production
//! verifier's code path.

use std::collections::HashSet;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use topoatlas_core::atlas::{
    atlases_equivalent, verify_atlas, zoo, ManifoldSpec, ViolationKind,
};
use topoatlas_core::sample::ChaCha8Rng;
use topoatlas_core::numerics::{max_abs_entry, FD_STEP};
use topoatlas_core::sample;
use topoatlas_core::tangent::{
    apply, change_chart, check_chain_rule, check_field_consistency, check_leibniz,
    lie_derivative, tangent_bundle, ScalarField, TangentVector, VectorField,
};
use topoatlas_core::topology::{count_topologies, enumerate_topologies, FiniteSpace};
use topoatlas_core::{euclid, VerifyConfig};

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if $cond {
        } else {
            return Err(format!($($arg)+));
        }
    };
}

fn report(id: &str, outcome: Result<(), String>) {
    match outcome {
        Ok(()) => println!("acceptance {id}: PASS"),
        Err(msg) => {
            println!("acceptance {id}: FAIL — {msg}");
            panic!("acceptance {id} failed: {msg}");
        }
    }
}

// ---------------------------------------------------------------------
// Independent oracle: brute-force axiom checking over hash sets, a code
// path disjoint from FiniteSpace::verify.
// ---------------------------------------------------------------------

fn oracle_is_topology(n: usize, family: &[u64]) -> bool {
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let set: HashSet<u64> = family.iter().copied().collect();
    if !set.contains(&0) || !set.contains(&full) {
        return false;
    }
    for &a in &set {
        for &b in &set {
            if !set.contains(&(a | b)) || !set.contains(&(a & b)) {
                return false;
            }
        }
    }
    true
}

fn oracle_count(n: usize) -> u64 {
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let proper: Vec<u64> = (1..full).collect();
    let mut count = 0;
    for pick in 0u64..(1 << proper.len()) {
        let mut family = vec![0, full];
        for (i, &m) in proper.iter().enumerate() {
            if pick >> i & 1 == 1 {
                family.push(m);
            }
        }
        if oracle_is_topology(n, &family) {
            count += 1;
        }
    }
    count
}

#[test]
fn criterion_topology_enumeration() {
    report("topology-enumeration", (|| {
        let expected = [1u64, 1, 4, 29, 355];
        let start = Instant::now();
        for (n, &want) in expected.iter().enumerate() {
            let produced = count_topologies(n).map_err(|e| e.to_string())?;
            ensure!(produced == want, "production count({n}) = {produced}, want {want}");
            let oracle = oracle_count(n);
            ensure!(oracle == want, "oracle count({n}) = {oracle}, want {want}");
        }
        let elapsed = start.elapsed();
        ensure!(
            elapsed.as_secs() < 60,
            "enumeration up to n = 4 took {elapsed:?}, budget 60 s"
        );
        Ok(())
    })());
}

#[test]
fn criterion_paper_counterexamples() {
    report("paper-counterexamples", (|| {
        let labels = |n: usize| -> Vec<String> { (1..=n).map(|i| i.to_string()).collect() };
        let space =
            FiniteSpace::new(labels(3), vec![0b000, 0b001, 0b110, 0b111]).map_err(|e| e.to_string())?;
        ensure!(space.verify().is_topology, "the three-point family must verify");
        let witness = space.hausdorff_violation();
        ensure!(
            witness == Some((1, 2)),
            "Hausdorff witness {witness:?}, want points 2 and 3"
        );
        for n in 2..=4 {
            let trivial = FiniteSpace::trivial(labels(n)).map_err(|e| e.to_string())?;
            ensure!(!trivial.is_hausdorff(), "trivial topology on {n} points must fail Hausdorff");
            let discrete = FiniteSpace::discrete(labels(n)).map_err(|e| e.to_string())?;
            ensure!(discrete.is_hausdorff(), "discrete space on {n} points must be Hausdorff");
            ensure!(!discrete.is_connected(), "discrete space on {n} points must be disconnected");
        }
        Ok(())
    })());
}

#[test]
fn criterion_hausdorff_iff_discrete() {
    report("hausdorff-iff-discrete", (|| {
        for n in 0..=4 {
            for space in enumerate_topologies(n).map_err(|e| e.to_string())? {
                let discrete = space.opens().len() == 1 << n;
                ensure!(
                    space.is_hausdorff() == discrete,
                    "{space}: hausdorff={} discrete={discrete}",
                    space.is_hausdorff()
                );
                if space.is_hausdorff() {
                    for i in 0..n {
                        ensure!(space.is_closed(1 << i), "{space}: singleton {i} not closed");
                    }
                }
            }
        }
        Ok(())
    })());
}

#[test]
fn criterion_homeomorphism_catalog() {
    report("homeomorphism-catalog", (|| {
        let names = [
            "interval-line",
            "ball-space-1",
            "ball-space-2",
            "ball-space-3",
            "cube-sphere",
            "circle-square",
            "hemisphere-disc-1",
            "hemisphere-disc-2",
            "hemisphere-disc-3",
        ];
        for name in names {
            let map = euclid::by_name(name).map_err(|e| e.to_string())?;
            let r = map.check_round_trip(10_000, 0, 1e-12).map_err(|e| e.to_string())?;
            ensure!(
                r.passed,
                "{name}: round-trip max {:.3e} at {:?} (tol 1e-12)",
                r.max_error,
                r.worst_point
            );
        }
        let jump = euclid::circle_param()
            .detect_inverse_jump(1e-3)
            .map_err(|e| e.to_string())?;
        ensure!((jump - 0.998).abs() <= 1e-9, "circle-param jump {jump}, want 0.998 ± 1e-9");
        let control = euclid::circle_square()
            .detect_inverse_jump(1e-3)
            .map_err(|e| e.to_string())?;
        ensure!(control < 1e-2, "circle-square jump {control}, want < 1e-2");
        Ok(())
    })());
}

fn sampled_overlap_points(
    m: &ManifoldSpec,
    a: &str,
    b: &str,
    samples: usize,
) -> Result<Vec<Vec<f64>>, String> {
    let t = m.transition(a, b).map_err(|e| e.to_string())?;
    let pts = t.sample_overlap(&VerifyConfig::default().with_samples(samples));
    if pts.len() < samples {
        return Err(format!("only {} overlap samples for {a}/{b}", pts.len()));
    }
    Ok(pts)
}

#[test]
fn criterion_sphere_atlas_proofs() {
    report("sphere-atlas-proofs", (|| {
        let cfg = VerifyConfig::default();
        let hemis = zoo::sphere_hemispheres();
        let stereo = zoo::sphere_stereo();
        let r = verify_atlas(&hemis, &cfg);
        ensure!(r.passed, "six-hemisphere atlas failed verification");
        let r = verify_atlas(&stereo, &cfg);
        ensure!(r.passed, "stereographic atlas failed verification");
        let eq = atlases_equivalent(&hemis, &stereo, &cfg).map_err(|e| e.to_string())?;
        ensure!(eq.equivalent, "hemisphere and stereographic atlases must be equivalent");

        // σ₁ ∘ σ₂⁻¹ is the plane inversion w ↦ w/|w|².
        let t = stereo.transition("north", "south").map_err(|e| e.to_string())?;
        for u in sampled_overlap_points(&stereo, "north", "south", 1000)? {
            let rho = u[0] * u[0] + u[1] * u[1];
            let v = t.apply(&u);
            ensure!(
                (v[0] - u[0] / rho).abs() <= 1e-10 && (v[1] - u[1] / rho).abs() <= 1e-10,
                "inversion form violated at {u:?}: got {v:?}"
            );
        }

        // φ₁ ∘ φ₃⁻¹ (x¹, x³) = (x¹, √(1 - (x¹)² - (x³)²)).
        let t = hemis.transition("x3+", "x2+").map_err(|e| e.to_string())?;
        for u in sampled_overlap_points(&hemis, "x3+", "x2+", 200)? {
            let v = t.apply(&u);
            let w = (1.0 - u[0] * u[0] - u[1] * u[1]).sqrt();
            ensure!(
                (v[0] - u[0]).abs() <= 1e-10 && (v[1] - w).abs() <= 1e-10,
                "hemisphere transition form violated at {u:?}"
            );
        }

        // φ₃ ∘ σ₁⁻¹ (ζ, η) = (2ζ/(1+ρ), -(1-ρ)/(1+ρ)).
        let (_, x2p) = hemis.chart("x2+").map_err(|e| e.to_string())?;
        let (_, north) = stereo.chart("north").map_err(|e| e.to_string())?;
        let mut rng = sample::rng(cfg.seed);
        let mut checked = 0;
        while checked < 500 {
            let p = stereo.sample_point(&mut rng);
            if !north.contains(&p, cfg.margin) || !x2p.contains(&p, cfg.margin) {
                continue;
            }
            checked += 1;
            let u = north.forward(&p);
            let rho = u[0] * u[0] + u[1] * u[1];
            let got = x2p.forward(&north.inverse(&u));
            let want = [2.0 * u[0] / (1.0 + rho), -(1.0 - rho) / (1.0 + rho)];
            ensure!(
                (got[0] - want[0]).abs() <= 1e-10 && (got[1] - want[1]).abs() <= 1e-10,
                "cross transition form violated at {u:?}"
            );
        }
        Ok(())
    })());
}

#[test]
fn criterion_projective_plane_atlas() {
    report("projective-plane-atlas", (|| {
        let rp2 = zoo::projective_plane();
        let r = verify_atlas(&rp2, &VerifyConfig::default());
        ensure!(r.passed, "projective plane atlas failed verification");
        let t = rp2.transition("u1", "u3").map_err(|e| e.to_string())?;
        for u in sampled_overlap_points(&rp2, "u1", "u3", 500)? {
            // (a, b) represents (a : b : 1); in the u1 chart it reads (b/a, 1/a).
            let v = t.apply(&u);
            let want = [u[1] / u[0], 1.0 / u[0]];
            ensure!(
                (v[0] - want[0]).abs() <= 1e-10 * (1.0 + want[0].abs())
                    && (v[1] - want[1]).abs() <= 1e-10 * (1.0 + want[1].abs()),
                "ratio transition violated at {u:?}"
            );
        }
        Ok(())
    })());
}

#[test]
fn criterion_cubic_negative_control() {
    report("cubic-negative-control", (|| {
        let m = zoo::real_line_cubic();
        let id_atlas = m.with_charts(&["id"]).map_err(|e| e.to_string())?;
        let cubic_atlas = m.with_charts(&["cubic"]).map_err(|e| e.to_string())?;
        let cfg = VerifyConfig::default();
        let eq = atlases_equivalent(&id_atlas, &cubic_atlas, &cfg).map_err(|e| e.to_string())?;
        ensure!(eq.atlas_a.passed && eq.atlas_b.passed, "single-chart atlases must verify");
        ensure!(!eq.equivalent, "the identity and cube charts must not be equivalent");
        let witness = eq
            .union_atlas
            .pairs
            .iter()
            .flat_map(|p| p.violations.iter())
            .find(|v| v.kind == ViolationKind::Smoothness && v.point[0].abs() < 0.01);
        ensure!(
            witness.is_some(),
            "expected a smoothness witness with |coordinate| < 0.01"
        );
        let eq = atlases_equivalent(&id_atlas, &cubic_atlas, &cfg.clone().with_coord_floor(0.1))
            .map_err(|e| e.to_string())?;
        ensure!(
            eq.equivalent,
            "restricted to |coordinate| ≥ 0.1 the pair must look compatible"
        );
        Ok(())
    })());
}

#[test]
fn criterion_jacobian_machinery() {
    report("jacobian-machinery", (|| {
        let cfg = VerifyConfig::default().with_samples(100);
        let with_analytic = [
            "euclidean-2",
            "sphere-hemispheres",
            "sphere-stereo",
            "projective-plane",
            "circle",
            "cylinder",
            "torus-2",
        ];
        for name in with_analytic {
            let m = zoo::builtin(name).map_err(|e| e.to_string())?;
            let ids = m.chart_ids();
            for i in &ids {
                for j in &ids {
                    if i == j {
                        continue;
                    }
                    let t = m.transition(i, j).map_err(|e| e.to_string())?;
                    for u in t.sample_overlap(&cfg) {
                        let exact = t
                            .analytic_jacobian(&u)
                            .ok_or_else(|| format!("{name} {i}/{j}: analytic Jacobian missing"))?;
                        let fd = t.fd_jacobian(&u, FD_STEP).jacobian;
                        let gap = max_abs_entry(&(&exact - &fd)) / (1.0 + max_abs_entry(&exact));
                        ensure!(gap <= 1e-5, "{name} {i}<-{j} at {u:?}: fd gap {gap:.2e}");
                        let v = t.apply(&u);
                        let back = t.reversed().fd_jacobian(&v, FD_STEP).jacobian;
                        let det_product = fd.determinant() * back.determinant();
                        ensure!(
                            (det_product - 1.0).abs() <= 1e-4,
                            "{name} {i}/{j} at {u:?}: det product {det_product}"
                        );
                    }
                }
            }
        }
        // Worked determinant: from the x2+ chart into the x3+ chart,
        // det J = -x³/√(1 - (x¹)² - (x³)²).
        let hemis = zoo::sphere_hemispheres();
        let t = hemis.transition("x3+", "x2+").map_err(|e| e.to_string())?;
        let pts = sampled_overlap_points(&hemis, "x3+", "x2+", 100)?;
        for u in pts.iter().take(100) {
            let expected = -u[1] / (1.0 - u[0] * u[0] - u[1] * u[1]).sqrt();
            let det = t
                .analytic_jacobian(u)
                .ok_or("hemisphere analytic Jacobian missing")?
                .determinant();
            ensure!(
                (det - expected).abs() <= 1e-10 * (1.0 + expected.abs()),
                "determinant form violated at {u:?}: {det} vs {expected}"
            );
        }
        Ok(())
    })());
}

// ---------------------------------------------------------------------
// Randomized tangent-calculus material.
// ---------------------------------------------------------------------

fn random_field(rng: &mut ChaCha8Rng, manifold: &ManifoldSpec) -> ScalarField {
    let n = manifold.ambient_dim;
    let lin: Vec<f64> = (0..n).map(|_| sample::uniform(rng, -1.0, 1.0)).collect();
    let quad: Vec<f64> = (0..n * n).map(|_| sample::uniform(rng, -0.5, 0.5)).collect();
    let wave: Vec<f64> = (0..n).map(|_| sample::uniform(rng, -1.0, 1.0)).collect();
    ScalarField::ambient(
        manifold.name.clone(),
        Arc::new(move |p: &[f64]| {
            let mut v = 0.0;
            for i in 0..p.len() {
                v += lin[i] * p[i];
                for j in 0..p.len() {
                    v += quad[i * p.len() + j] * p[i] * p[j];
                }
            }
            let phase: f64 = wave.iter().zip(p).map(|(w, x)| w * x).sum();
            v + phase.sin()
        }),
    )
}

fn tangent_manifolds() -> Vec<ManifoldSpec> {
    ["euclidean-2", "sphere-stereo", "sphere-hemispheres", "circle", "projective-plane"]
        .iter()
        .map(|n| zoo::builtin(n).unwrap())
        .collect()
}

#[test]
fn criterion_tangent_calculus() {
    report("tangent-calculus", (|| {
        // Basis duality δᵢʲ at 1e-6.
        for (name, chart) in [("euclidean-2", "id"), ("sphere-stereo", "north"), ("sphere-hemispheres", "x3+")] {
            let m = zoo::builtin(name).map_err(|e| e.to_string())?;
            let mut rng = sample::rng(1);
            let mut checked = 0;
            while checked < 20 {
                let p = m.sample_point(&mut rng);
                let (_, c) = m.chart(chart).map_err(|e| e.to_string())?;
                if !c.contains(&p, 0.1) {
                    continue;
                }
                checked += 1;
                for i in 0..m.dim {
                    let e = TangentVector::basis(&m, chart, p.clone(), i).map_err(|e| e.to_string())?;
                    for j in 0..m.dim {
                        let xj = ScalarField::coordinate(&m, chart, j).map_err(|e| e.to_string())?;
                        let d = apply(&e, &xj, &m).map_err(|e| e.to_string())?;
                        let want = if i == j { 1.0 } else { 0.0 };
                        ensure!(
                            (d - want).abs() <= 1e-6,
                            "{name}: duality e_{i}(x^{j}) = {d}"
                        );
                    }
                }
            }
        }
        // Change-of-chart round trip at 1e-9 and chart invariance at 1e-6,
        // 100 random (v, f) per multi-chart manifold.
        for m in tangent_manifolds() {
            if m.charts().len() < 2 {
                continue;
            }
            let mut rng = sample::rng(2);
            let mut checked = 0;
            while checked < 100 {
                let p = m.sample_point(&mut rng);
                let in_charts: Vec<String> = m
                    .charts()
                    .iter()
                    .filter(|c| c.contains(&p, 0.1))
                    .map(|c| c.id.clone())
                    .collect();
                if in_charts.len() < 2 {
                    continue;
                }
                checked += 1;
                let comps: Vec<f64> =
                    (0..m.dim).map(|_| sample::uniform(&mut rng, -2.0, 2.0)).collect();
                let v = TangentVector::new(&m, &in_charts[0], p, comps).map_err(|e| e.to_string())?;
                let roundtrip = change_chart(
                    &change_chart(&v, &in_charts[1], &m).map_err(|e| e.to_string())?,
                    &in_charts[0],
                    &m,
                )
                .map_err(|e| e.to_string())?;
                for k in 0..m.dim {
                    ensure!(
                        (roundtrip.components[k] - v.components[k]).abs()
                            <= 1e-9 * (1.0 + v.components[k].abs()),
                        "{}: change-of-chart round trip drifted",
                        m.name
                    );
                }
                let f = random_field(&mut rng, &m);
                let direct = apply(&v, &f, &m).map_err(|e| e.to_string())?;
                let moved = apply(
                    &change_chart(&v, &in_charts[1], &m).map_err(|e| e.to_string())?,
                    &f,
                    &m,
                )
                .map_err(|e| e.to_string())?;
                ensure!(
                    (direct - moved).abs() <= 1e-6 * (1.0 + direct.abs()),
                    "{}: derivation not chart invariant ({direct} vs {moved})",
                    m.name
                );
            }
        }
        // Leibniz and chain rule (k ≤ 3) at 1e-5 over 100 random triples.
        for m in tangent_manifolds() {
            let mut rng = sample::rng(3);
            for trial in 0..100 {
                let p = loop {
                    let p = m.sample_point(&mut rng);
                    if m.covering_chart(&p, 0.1).is_some() {
                        break p;
                    }
                };
                let chart = m.covering_chart(&p, 0.1).expect("just checked").1.id.clone();
                let comps: Vec<f64> =
                    (0..m.dim).map(|_| sample::uniform(&mut rng, -2.0, 2.0)).collect();
                let v = TangentVector::new(&m, &chart, p, comps).map_err(|e| e.to_string())?;
                let f = random_field(&mut rng, &m);
                let g = random_field(&mut rng, &m);
                let leibniz = check_leibniz(&v, &f, &g, &m, 1e-5).map_err(|e| e.to_string())?;
                ensure!(leibniz.passed, "{} trial {trial}: Leibniz gap {:.2e}", m.name, leibniz.gap);
                let k = trial % 3 + 1;
                let inner: Vec<ScalarField> =
                    (0..k).map(|_| random_field(&mut rng, &m)).collect();
                let coeffs: Vec<f64> =
                    (0..k).map(|_| sample::uniform(&mut rng, -1.0, 1.0)).collect();
                let outer = Arc::new(move |args: &[f64]| {
                    let lin: f64 = args.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
                    lin + args.iter().product::<f64>() + args[0].sin()
                });
                let chain =
                    check_chain_rule(&v, outer, &inner, &m, 1e-5).map_err(|e| e.to_string())?;
                ensure!(chain.passed, "{} trial {trial}: chain gap {:.2e}", m.name, chain.gap);
            }
        }
        // The stereographic tangent bundle is a 4-coordinate atlas.
        let bundle = tangent_bundle(&zoo::sphere_stereo()).map_err(|e| e.to_string())?;
        ensure!(bundle.dim == 4, "bundle dimension {}", bundle.dim);
        let r = verify_atlas(&bundle, &VerifyConfig::default().with_samples(400));
        ensure!(r.passed, "sphere-stereo tangent bundle failed verification");
        Ok(())
    })());
}

#[test]
fn criterion_vector_fields() {
    report("vector-fields", (|| {
        let sphere = zoo::sphere_stereo();
        let rotation = VectorField::new("sphere-stereo")
            .with_chart("north", Arc::new(|u: &[f64]| vec![-u[1], u[0]]))
            .with_chart("south", Arc::new(|u: &[f64]| vec![-u[1], u[0]]));
        let r = check_field_consistency(&rotation, &sphere, &VerifyConfig::default(), 1e-6)
            .map_err(|e| e.to_string())?;
        ensure!(r.passed, "rotation field consistency gap {:.2e}", r.max_gap);
        let height = ScalarField::ambient("sphere-stereo", Arc::new(|p: &[f64]| p[2]));
        let lie = lie_derivative(&rotation, &height, &sphere);
        let mut rng = sample::rng(0);
        for _ in 0..1000 {
            let p = sphere.sample_point(&mut rng);
            let v = lie.eval(&p);
            ensure!(v.is_finite(), "Lie derivative undefined at {p:?}");
            ensure!(v.abs() <= 1e-6, "Lie derivative {v:.3e} at {p:?}");
        }
        Ok(())
    })());
}

#[test]
fn criterion_cli_determinism() {
    report("cli-determinism", (|| {
        let bin = env!("CARGO_BIN_EXE_topoatlas");
        let cases: Vec<Vec<&str>> = vec![
            vec!["--json", "atlas", "verify", "sphere-stereo", "--seed", "11", "--samples", "200"],
            vec!["--json", "homeo", "check", "ball-space-3", "--seed", "4", "--samples", "500"],
            vec!["--json", "topo", "enumerate", "--n", "3"],
        ];
        for args in cases {
            let once = Command::new(bin).args(&args).output().map_err(|e| e.to_string())?;
            let twice = Command::new(bin).args(&args).output().map_err(|e| e.to_string())?;
            ensure!(!once.stdout.is_empty(), "no output for {args:?}");
            ensure!(
                once.stdout == twice.stdout,
                "output of {args:?} differs between same-seed runs"
            );
        }
        Ok(())
    })());
}
