//! The on-disk space format: a JSON document with a list of point labels
//! and a list of opens, each an array of labels. Bitmask encoding is an
//! implementation detail of the core; files stay human-readable.
//!
//! ```json
//! {"points":["1","2","3"],"opens":[[],["1"],["2","3"],["1","2","3"]]}
//! ```

use std::path::Path;

use serde::Deserialize;
use topoatlas_core::topology::{FiniteSpace, Subset};

use crate::Failure;

#[derive(Debug, Deserialize)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

/// Loads and validates a space file. Parse and validation problems are
/// usage failures (exit 2) carrying the location or offending label.
pub fn load_space(path: &Path) -> Result<FiniteSpace, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let file: SpaceFile = serde_json::from_str(&text).map_err(|e| {
        Failure::usage(format!(
            "{}: parse error at line {}, column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    space_from_parts(&file.points, &file.opens)
        .map_err(|msg| Failure::usage(format!("{}: {msg}", path.display())))
}

fn space_from_parts(points: &[String], opens: &[Vec<String>]) -> Result<FiniteSpace, String> {
    let space = FiniteSpace::new(points.to_vec(), vec![]).map_err(|e| e.to_string())?;
    let mut masks: Vec<Subset> = Vec::with_capacity(opens.len());
    for (k, labels) in opens.iter().enumerate() {
        let mask = space
            .subset_of_labels(labels)
            .map_err(|e| format!("open set #{k}: {e}"))?;
        masks.push(mask);
    }
    FiniteSpace::new(points.to_vec(), masks).map_err(|e| e.to_string())
}

/// Parses a comma-separated label list against a space.
pub fn parse_label_set(space: &FiniteSpace, set: &str) -> Result<Subset, Failure> {
    let labels: Vec<&str> = set
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    space
        .subset_of_labels(&labels)
        .map_err(|e| Failure::usage(e.to_string()))
}
