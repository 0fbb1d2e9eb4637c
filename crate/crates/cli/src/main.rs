//! `rnp-kit`: reproducible experiments around the recursive neighborhood
//! pooling encoder.
//!
//! Exit codes: 0 success, 1 internal error, 2 user or input error.

mod commands;
mod error;
mod experiment;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::CliError;

#[derive(Parser)]
#[command(name = "rnp-kit", version, about = "Recursive neighborhood pooling toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Covering sequence with small r1 for a connected pattern
    Cover { graph: PathBuf },
    /// Exact subgraph count of PATTERN in GRAPH
    Count {
        graph: PathBuf,
        pattern: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Induced)]
        mode: Mode,
    },
    /// Compare two graphs under the encoder and under 1-WL
    Distinguish {
        first: PathBuf,
        second: PathBuf,
        /// Comma-separated radii, e.g. 2,1
        #[arg(long)]
        radii: String,
    },
    /// Node-update count of one encoding run against n*c^t
    Complexity {
        graph: PathBuf,
        #[arg(long)]
        radii: String,
    },
    /// Encode a graph and print its digest
    Encode {
        graph: PathBuf,
        #[arg(long)]
        radii: String,
    },
    /// Generate a graph in the text format
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a batch experiment described by a JSON spec; writes CSV
    Experiment {
        spec: PathBuf,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Erdős–Rényi G(n, p)
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random d-regular graph with random edges deleted
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        /// Edges to delete; defaults to n
        #[arg(long = "delete")]
        deletions: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complete multipartite graph on prime-sized parts plus isolated filler
    PrimePartite {
        /// Comma-separated distinct primes
        #[arg(long)]
        primes: String,
        #[arg(long)]
        n: usize,
    },
    /// Named pattern graph
    Pattern {
        #[arg(long, value_enum)]
        name: PatternKind,
        /// Size parameter (nodes for cycle/complete/path, leaves for star)
        #[arg(long)]
        k: Option<usize>,
        /// For figure2_pair: print only graph 1 or 2
        #[arg(long)]
        part: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Induced,
    Noninduced,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum PatternKind {
    Cycle,
    Complete,
    Path,
    Star,
    Figure2Pair,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("rnp-kit: writing output: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("rnp-kit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Cover { graph } => commands::cover(&graph),
        Command::Count { graph, pattern, mode } => {
            let mode = match mode {
                Mode::Induced => rnp_core::CountMode::Induced,
                Mode::Noninduced => rnp_core::CountMode::NonInduced,
            };
            commands::count(&graph, &pattern, mode)
        }
        Command::Distinguish { first, second, radii } => commands::distinguish(&first, &second, &radii),
        Command::Complexity { graph, radii } => commands::complexity(&graph, &radii),
        Command::Encode { graph, radii } => commands::encode(&graph, &radii),
        Command::Gen(gen) => match gen {
            GenCommand::Er { n, p, seed } => commands::gen_er(n, p, seed),
            GenCommand::Regular { n, d, deletions, seed } => commands::gen_regular(n, d, deletions.unwrap_or(n), seed),
            GenCommand::PrimePartite { primes, n } => commands::gen_prime_partite(&primes, n),
            GenCommand::Pattern { name, k, part } => {
                use rnp_core::generators::PatternName;
                let need_k = || k.ok_or_else(|| CliError::usage("--k is required for this pattern"));
                let name = match name {
                    PatternKind::Cycle => PatternName::Cycle(need_k()?),
                    PatternKind::Complete => PatternName::Complete(need_k()?),
                    PatternKind::Path => PatternName::Path(need_k()?),
                    PatternKind::Star => PatternName::Star(need_k()?),
                    PatternKind::Figure2Pair => return commands::gen_figure2(part),
                };
                commands::gen_pattern(name)
            }
        },
        Command::Experiment { spec, output } => {
            let csv = experiment::run_file(&spec)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, csv).map_err(|e| CliError::io(&path, e))?;
                    Ok(String::new())
                }
                None => Ok(csv),
            }
        }
    }
}
