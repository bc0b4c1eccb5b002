//! `flowpart` command-line front end. Graph and clutter inputs come from a
//! file argument or stdin; results are a JSON envelope on stdout.

mod commands;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use flowpart::Limits;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "flowpart", version, about = "Flow-partitionability, clutter algebra and exact correlation clustering")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Shorthand for `--format pretty`.
    #[arg(long, global = true)]
    pretty: bool,
    /// Cap on clutter ground sets for vertex enumeration, blockers and isomorphism.
    #[arg(long, global = true)]
    max_ground: Option<usize>,
    /// Cap on explored states per strong-minor search.
    #[arg(long, global = true)]
    max_minors: Option<usize>,
    /// Largest family parameter tried by the forbidden-minor detectors.
    #[arg(long, global = true)]
    max_family_k: Option<usize>,
    /// Wall-clock budget in milliseconds; expiry exits with code 3.
    #[arg(long, global = true)]
    deadline_ms: Option<u64>,
    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall time in the envelope (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args, Clone)]
struct GraphInput {
    /// Graph file (`u v s [w]` lines); stdin when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ClutterInput {
    /// Clutter file (`ground:` line, then one member per line).
    #[arg(long)]
    clutter: Option<PathBuf>,
    /// Named clutter such as `fano-f7`, `circulant-8-3` or `dpp-3`.
    #[arg(long, conflicts_with = "clutter")]
    known: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum DetectTarget {
    Star,
    Circuit,
    SplitK5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Experiment {
    Planar,
}

#[derive(Subcommand)]
enum Command {
    /// List the flows (circuits with one negative edge).
    Flows(GraphInput),
    /// Balance and weak balance.
    Balance(GraphInput),
    /// Exact correlation clustering.
    Solve(GraphInput),
    /// Cycle relaxation.
    Lp(GraphInput),
    /// Integrality of the flow covering polyhedron.
    Partitionable(GraphInput),
    /// Idealness of a clutter, or of a graph's flow clutter.
    Ideal {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        clutter: ClutterInput,
    },
    /// Minimal non-idealness of a clutter, or of a graph's flow clutter.
    Mni {
        #[command(flatten)]
        graph: GraphInput,
        #[command(flatten)]
        clutter: ClutterInput,
    },
    /// Non-ideal flow clutter whose proper strong minors are all ideal.
    WeaklyMni(GraphInput),
    /// Structure checks for a minimally non-ideal clutter.
    Lehman(ClutterInput),
    /// Blocker of a clutter.
    Blocker(ClutterInput),
    /// Apply deletions and contractions, e.g. `--ops d3,c0`.
    Minor {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_delimiter = ',')]
        ops: Vec<String>,
    },
    /// Search for a forbidden strong minor.
    Detect {
        target: DetectTarget,
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Print a graph family member or named clutter in text format.
    Gen {
        /// Family name followed by its parameters, e.g. `flow-star 3`.
        #[arg(required = true, num_args = 1..)]
        family: Vec<String>,
    },
    /// Clutter of positive paths between negative-edge ends.
    TerminalPaths(GraphInput),
    /// Fat-core classification of a weakly MNI graph.
    Fatcore(GraphInput),
    /// Positive-tree idealness with its odd flow-star certificate.
    Tree(GraphInput),
    /// Positive-circuit idealness with its odd flow-circuit certificate.
    Circuit(GraphInput),
    /// Randomized experiments.
    Experiment {
        which: Experiment,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Flows(_) => "flows",
            Command::Balance(_) => "balance",
            Command::Solve(_) => "solve",
            Command::Lp(_) => "lp",
            Command::Partitionable(_) => "partitionable",
            Command::Ideal { .. } => "ideal",
            Command::Mni { .. } => "mni",
            Command::WeaklyMni(_) => "weakly-mni",
            Command::Lehman(_) => "lehman",
            Command::Blocker(_) => "blocker",
            Command::Minor { .. } => "minor",
            Command::Detect { .. } => "detect",
            Command::Gen { .. } => "gen",
            Command::TerminalPaths(_) => "terminal-paths",
            Command::Fatcore(_) => "fatcore",
            Command::Tree(_) => "tree",
            Command::Circuit(_) => "circuit",
            Command::Experiment { .. } => "experiment",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub(crate) enum CliError {
    #[error(transparent)]
    Core(#[from] flowpart::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(flowpart::Error::Falsification { .. }) => 4,
            CliError::Core(e) if e.is_inconclusive() => 3,
            _ => 2,
        }
    }
}

/// What a command produced: a JSON payload, or raw text for data producers
/// such as `gen`.
pub(crate) enum Output {
    Payload(serde_json::Value),
    Text(String),
}

/// Reads command inputs and remembers their bytes for the digest.
pub(crate) struct Inputs {
    digest: Sha256,
}

impl Inputs {
    fn read_path(&mut self, path: Option<&PathBuf>) -> Result<String, CliError> {
        let text = match path {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        self.digest.update(text.as_bytes());
        Ok(text)
    }

    pub(crate) fn note(&mut self, bytes: &[u8]) {
        self.digest.update(bytes);
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    input_digest: String,
    payload: serde_json::Value,
    caps: &'a Limits,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

fn limits(opts: &GlobalOpts) -> Limits {
    let mut l = Limits::default();
    if let Some(g) = opts.max_ground {
        l.max_vertex_ground = g;
        l.max_blocker_ground = g;
        l.max_iso_ground = g;
    }
    if let Some(m) = opts.max_minors {
        l.max_minor_states = m;
    }
    if let Some(k) = opts.max_family_k {
        l.max_family_k = k;
    }
    if let Some(ms) = opts.deadline_ms {
        l = l.with_deadline(Duration::from_millis(ms));
    }
    l
}

fn pretty(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) if s.contains('\n') => format!("{k}:\n{s}"),
                serde_json::Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = if cli.opts.pretty {
        Format::Pretty
    } else if cli.opts.json {
        Format::Json
    } else {
        cli.opts.format
    };
    let caps = limits(&cli.opts);
    let mut inputs = Inputs { digest: Sha256::new() };
    let start = Instant::now();
    let result = commands::run(&cli.command, &cli.opts, &caps, &mut inputs);
    let elapsed = start.elapsed();
    match result {
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Payload(payload)) => {
            if format == Format::Pretty {
                println!("{}", pretty(&payload));
                return ExitCode::SUCCESS;
            }
            let env = Envelope {
                command: cli.command.name(),
                input_digest: format!("{:x}", inputs.digest.finalize()),
                payload,
                caps: &caps,
                wall_time_ms: cli.opts.timing.then_some(elapsed.as_secs_f64() * 1e3),
            };
            println!("{}", serde_json::to_string_pretty(&env).expect("envelope serializes"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let CliError::Core(flowpart::Error::Falsification { bundle, .. }) = &e {
                println!("{bundle}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_classes() {
        let fals = flowpart::Error::Falsification {
            claim: "c".into(),
            bundle: "{}".into(),
        };
        assert_eq!(CliError::Core(fals).exit_code(), 4);
        assert_eq!(CliError::Core(flowpart::Error::Deadline(Duration::from_millis(1))).exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
