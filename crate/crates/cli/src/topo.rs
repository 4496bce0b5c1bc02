//! Commands over finite topological spaces.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;
use topoatlas_core::topology::{
    count_topologies, enumerate_topologies, FiniteMap, FiniteSpace, Subset,
};

use crate::space_file::{load_space, parse_label_set};
use crate::{Failure, Outcome};

/// Every finite space is compact; this note accompanies the flag so reports
/// do not read as if something nontrivial was decided.
const COMPACTNESS_NOTE: &str =
    "every finite space is compact: an open cover has finitely many distinct members";

fn labels_json(space: &FiniteSpace, mask: Subset) -> serde_json::Value {
    json!(space.labels_of(mask))
}

fn violations_json(space: &FiniteSpace) -> serde_json::Value {
    let report = space.verify();
    json!(report
        .violations
        .iter()
        .map(|v| {
            json!({
                "axiom": v.axiom,
                "witnesses": v.witnesses.iter().map(|&w| labels_json(space, w)).collect::<Vec<_>>(),
            })
        })
        .collect::<Vec<_>>())
}

pub fn check(file: &Path) -> Result<Outcome, Failure> {
    let space = load_space(file)?;
    let report = space.verify();
    let mut text = String::new();
    writeln!(text, "space: {space}").unwrap();
    if report.is_topology {
        writeln!(text, "topology: yes ({} open sets)", space.opens().len()).unwrap();
    } else {
        writeln!(text, "topology: NO").unwrap();
        for v in &report.violations {
            let witnesses: Vec<String> = v
                .witnesses
                .iter()
                .map(|&w| space.format_subset(w))
                .collect();
            writeln!(text, "  violated {:?}: witness {}", v.axiom, witnesses.join(", "))
                .unwrap();
        }
    }
    writeln!(text, "arithmetic: exact bitset operations, no tolerances").unwrap();
    Ok(Outcome {
        passed: report.is_topology,
        json: json!({
            "command": "topo check",
            "file": file.display().to_string(),
            "is_topology": report.is_topology,
            "open_sets": space.opens().len(),
            "violations": violations_json(&space),
            "arithmetic": "exact",
            "passed": report.is_topology,
        }),
        text,
    })
}

pub fn props(file: &Path, set: Option<&str>) -> Result<Outcome, Failure> {
    let space = load_space(file)?;
    let report = space.verify();
    if !report.is_topology {
        return Ok(Outcome {
            passed: false,
            text: "input family is not a topology; run `topo check` for witnesses\n".into(),
            json: json!({
                "command": "topo props",
                "file": file.display().to_string(),
                "is_topology": false,
                "violations": violations_json(&space),
                "arithmetic": "exact",
                "passed": false,
            }),
        });
    }
    let hausdorff_witness = space.hausdorff_violation();
    let connected = space.is_connected();
    let mut text = String::new();
    writeln!(text, "space: {space}").unwrap();
    match hausdorff_witness {
        None => writeln!(text, "hausdorff: yes").unwrap(),
        Some((x, y)) => writeln!(
            text,
            "hausdorff: no (witness pair {}, {})",
            space.points()[x],
            space.points()[y]
        )
        .unwrap(),
    }
    writeln!(text, "connected: {}", if connected { "yes" } else { "no" }).unwrap();
    writeln!(text, "compact: yes ({COMPACTNESS_NOTE})").unwrap();
    let mut set_json = serde_json::Value::Null;
    if let Some(set) = set {
        let a = parse_label_set(&space, set)?;
        let interior = space.interior(a);
        let closure = space.closure(a);
        let boundary = space.boundary(a);
        writeln!(text, "set: {}", space.format_subset(a)).unwrap();
        writeln!(text, "  interior: {}", space.format_subset(interior)).unwrap();
        writeln!(text, "  closure:  {}", space.format_subset(closure)).unwrap();
        writeln!(text, "  boundary: {}", space.format_subset(boundary)).unwrap();
        writeln!(
            text,
            "  dense in X: {}",
            if closure == space.full() { "yes" } else { "no" }
        )
        .unwrap();
        set_json = json!({
            "set": labels_json(&space, a),
            "interior": labels_json(&space, interior),
            "closure": labels_json(&space, closure),
            "boundary": labels_json(&space, boundary),
            "dense_in_space": closure == space.full(),
        });
    }
    writeln!(text, "arithmetic: exact bitset operations, no tolerances").unwrap();
    Ok(Outcome {
        passed: true,
        json: json!({
            "command": "topo props",
            "file": file.display().to_string(),
            "is_topology": true,
            "hausdorff": hausdorff_witness.is_none(),
            "hausdorff_witness": hausdorff_witness
                .map(|(x, y)| json!([space.points()[x], space.points()[y]])),
            "connected": connected,
            "compact": true,
            "compact_note": COMPACTNESS_NOTE,
            "set_report": set_json,
            "arithmetic": "exact",
            "passed": true,
        }),
        text,
    })
}

pub fn enumerate(n: usize, count_only: bool) -> Result<Outcome, Failure> {
    let count = count_topologies(n).map_err(|e| Failure::usage(e.to_string()))?;
    let mut text = String::new();
    let mut listing = serde_json::Value::Null;
    if count_only {
        writeln!(text, "{count}").unwrap();
    } else {
        writeln!(text, "topologies on {n} labeled points: {count}").unwrap();
        let spaces = enumerate_topologies(n).expect("count already validated n");
        let rendered: Vec<serde_json::Value> = spaces
            .iter()
            .map(|s| {
                json!(s
                    .opens()
                    .iter()
                    .map(|&w| s.labels_of(w))
                    .collect::<Vec<_>>())
            })
            .collect();
        for s in &spaces {
            writeln!(text, "  {s}").unwrap();
        }
        listing = json!(rendered);
    }
    Ok(Outcome {
        passed: true,
        json: json!({
            "command": "topo enumerate",
            "n": n,
            "count": count,
            "count_only": count_only,
            "topologies": listing,
            "arithmetic": "exact",
            "passed": true,
        }),
        text,
    })
}

fn parse_assignment(assign: &str) -> Result<Vec<(String, String)>, Failure> {
    assign
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            pair.split_once(':')
                .map(|(a, b)| (a.trim().to_owned(), b.trim().to_owned()))
                .ok_or_else(|| {
                    Failure::usage(format!("assignment `{pair}` is not of the form from:to"))
                })
        })
        .collect()
}

pub fn map(file1: &Path, file2: &Path, assign: &str) -> Result<Outcome, Failure> {
    let source = load_space(file1)?;
    let target = load_space(file2)?;
    let pairs = parse_assignment(assign)?;
    let map = FiniteMap::from_label_pairs(source, target, &pairs)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let continuous = map.is_continuous();
    let open_map = map.is_open_map();
    let closed_map = map.is_closed_map();
    let homeomorphism = map.is_homeomorphism();
    let mut text = String::new();
    writeln!(text, "continuous:    {continuous}").unwrap();
    writeln!(text, "open map:      {open_map}").unwrap();
    writeln!(text, "closed map:    {closed_map}").unwrap();
    writeln!(text, "bijective:     {}", map.is_bijective()).unwrap();
    writeln!(text, "homeomorphism: {homeomorphism}").unwrap();
    writeln!(text, "arithmetic: exact bitset operations, no tolerances").unwrap();
    Ok(Outcome {
        passed: continuous,
        json: json!({
            "command": "topo map",
            "continuous": continuous,
            "open_map": open_map,
            "closed_map": closed_map,
            "bijective": map.is_bijective(),
            "homeomorphism": homeomorphism,
            "arithmetic": "exact",
            "passed": continuous,
        }),
        text,
    })
}
