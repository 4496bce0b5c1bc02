//! Command-line surface for the topology and atlas workbench.
//!
//! Exit codes partition into 0 (verified pass), 1 (verified failure), and
//! 2 (usage or parse error). With `--json` each run emits one structured
//! document carrying every numeric field and the tolerances used; identical
//! inputs and seeds produce byte-identical output.

mod geom;
mod space_file;
mod topo;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// A usage or parse failure (exit code 2).
#[derive(Debug)]
pub struct Failure {
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }
}

/// The outcome of a well-formed command: a report plus its verdict.
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub json: serde_json::Value,
}

#[derive(Parser)]
#[command(
    name = "topoatlas",
    version,
    about = "Decision procedures for finite topologies and a verified chart/atlas/tangent workbench"
)]
struct Cli {
    /// Emit one machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite topological spaces: axioms, properties, enumeration, maps.
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Atlas verification over the builtin manifold zoo.
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Tangent-vector operations.
    #[command(subcommand)]
    Tangent(TangentCmd),
    /// The catalog of explicit Euclidean homeomorphisms.
    #[command(subcommand)]
    Homeo(HomeoCmd),
}

#[derive(Subcommand)]
enum TopoCmd {
    /// Check the topology axioms for a space file.
    Check { file: PathBuf },
    /// Report Hausdorff, connectedness, compactness, and set operators.
    Props {
        file: PathBuf,
        /// Comma-separated labels: also print interior/closure/boundary.
        #[arg(long)]
        set: Option<String>,
    },
    /// Count (and list) all topologies on n labeled points, n <= 4.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
    },
    /// Check continuity/openness/closedness of a labeled point assignment.
    /// The exit code reflects continuity; the report carries all flags.
    Map {
        file1: PathBuf,
        file2: PathBuf,
        /// Assignment `a:x,b:y,...` from source labels to target labels.
        #[arg(long)]
        assign: String,
    },
}

#[derive(Subcommand)]
enum AtlasCmd {
    /// Verify chart covering and pairwise compatibility of a builtin atlas.
    Verify {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Override the transition round-trip tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Accept only overlap samples with every |coordinate| at least this.
        #[arg(long)]
        coord_floor: Option<f64>,
    },
    /// Evaluate a transition function and its Jacobian at one point.
    Transition {
        name: String,
        /// Chart supplying the input coordinates.
        #[arg(long)]
        from: String,
        /// Chart receiving the output coordinates.
        #[arg(long)]
        to: String,
        /// Comma-separated coordinates in the from-chart.
        #[arg(long)]
        point: String,
    },
    /// List the builtin manifold zoo.
    List,
}

#[derive(Subcommand)]
enum TangentCmd {
    /// Push tangent components from one chart into another.
    Transform {
        name: String,
        /// Ambient coordinates of the base point.
        #[arg(long)]
        point: String,
        /// Components in the from-chart basis.
        #[arg(long)]
        components: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Subcommand)]
enum HomeoCmd {
    /// Round-trip (and seam, where applicable) checks for a catalog map.
    Check {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Round-trip tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// List the homeomorphism catalog.
    List,
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Topo(cmd) => match cmd {
            TopoCmd::Check { file } => topo::check(file),
            TopoCmd::Props { file, set } => topo::props(file, set.as_deref()),
            TopoCmd::Enumerate { n, count_only } => topo::enumerate(*n, *count_only),
            TopoCmd::Map {
                file1,
                file2,
                assign,
            } => topo::map(file1, file2, assign),
        },
        Command::Atlas(cmd) => match cmd {
            AtlasCmd::Verify {
                name,
                seed,
                samples,
                tol,
                coord_floor,
            } => geom::atlas_verify(name, *seed, *samples, *tol, *coord_floor),
            AtlasCmd::Transition {
                name,
                from,
                to,
                point,
            } => geom::atlas_transition(name, from, to, point),
            AtlasCmd::List => geom::atlas_list(),
        },
        Command::Tangent(cmd) => match cmd {
            TangentCmd::Transform {
                name,
                point,
                components,
                from,
                to,
            } => geom::tangent_transform(name, point, components, from, to),
        },
        Command::Homeo(cmd) => match cmd {
            HomeoCmd::Check {
                name,
                seed,
                samples,
                tol,
            } => geom::homeo_check(name, *seed, *samples, *tol),
            HomeoCmd::List => geom::homeo_list(),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(outcome) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json)
                        .expect("reports are serializable")
                );
            } else {
                print!("{}", outcome.text);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(2)
        }
    }
}

/// Parses `0.5,-1.25` into coordinates.
pub fn parse_coords(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Failure::usage(format!("`{s}` is not a number")))
        })
        .collect()
}
