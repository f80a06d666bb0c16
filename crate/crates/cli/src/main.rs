mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use rainbow_core::constructive::{run_constructive_with, ConstructError, RunOptions};
use rainbow_core::{
    find_fan, gen_family, is_rainbow_connected, parse_coloring, parse_graph, rc_exact, serialize_coloring,
    serialize_graph, vertex_connectivity, ExactError, Graph, Verdict, DEFAULT_NODE_BUDGET,
};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow connection colorings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family as an edge list
    Gen {
        /// cycle, complete, wheel, prism, petersen, path or random3c
        family: String,
        params: Vec<usize>,
        /// Extra random edges (random3c)
        #[arg(long)]
        extra: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Color a 3-connected graph with at most floor((3n+3)/5) colors
    Construct {
        graph: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Print one line per construction step
        #[arg(long)]
        trace: bool,
        /// Run on graphs with connectivity below 3 (no bound guarantee)
        #[arg(long)]
        force: bool,
    },
    /// Check whether a coloring is rainbow connected
    Check { graph: PathBuf, coloring: PathBuf },
    /// Compute the rainbow connection number exactly
    Exact {
        graph: PathBuf,
        #[arg(long)]
        max_colors: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        node_budget: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the vertex connectivity
    Kappa { graph: PathBuf },
    /// Find k internally disjoint paths from x to distinct target vertices
    Fan {
        graph: PathBuf,
        x: usize,
        #[arg(required = true)]
        targets: Vec<usize>,
        #[arg(short, default_value_t = 3)]
        k: usize,
    },
    /// Run every solver over a corpus and write a CSV report
    Bench {
        /// "builtin" or a directory of edge-list files
        #[arg(long, default_value = "builtin")]
        corpus: String,
        #[arg(long, default_value_t = rainbow_core::corpus::DEFAULT_SEED)]
        seed: u64,
        /// Run the exact solver only up to this many vertices
        #[arg(long, default_value_t = 8)]
        exact_max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Negative(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Construction(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Input(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Construction(_) => 4,
            CliError::Budget(_) => 5,
        }
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construct(graph: &Path, out: Option<&Path>, trace: bool, force: bool) -> Result<(), CliError> {
    let g = read_graph(graph)?;
    let result = run_constructive_with(&g, RunOptions { force }).map_err(|e| match e {
        ConstructError::NotThreeConnected { kappa } => {
            CliError::Precondition(format!("vertex connectivity κ={kappa} < 3; pass --force to run anyway"))
        }
        e @ (ConstructError::Disconnected | ConstructError::TooSmall(_)) => CliError::Precondition(e.to_string()),
        ConstructError::RepairFailed { ref trace, .. } | ConstructError::Stuck { ref trace, .. } => {
            CliError::Construction(format!("{e}\ntrace:\n{}", trace.join("\n")))
        }
        e => CliError::Construction(e.to_string()),
    })?;
    if trace {
        for step in &result.trace {
            println!("{step}");
        }
    }
    if let Some(path) = out {
        emit(Some(path), &serialize_coloring(&g, &result.coloring))?;
    }
    let bound = if result.bound_guaranteed {
        result.bound.to_string()
    } else {
        "n/a".into()
    };
    println!("k={} bound={bound} ok", result.colors_used);
    Ok(())
}

fn check(graph: &Path, coloring: &Path) -> Result<(), CliError> {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(coloring).map_err(|e| CliError::Input(format!("{}: {e}", coloring.display())))?;
    let c = parse_coloring(&text, &g).map_err(|e| CliError::Input(format!("{}: {e}", coloring.display())))?;
    match is_rainbow_connected(&g, &c).map_err(|e| CliError::Input(e.to_string()))? {
        Verdict::RainbowConnected => {
            println!("rainbow-connected");
            Ok(())
        }
        Verdict::NotRainbowConnected(w) => Err(CliError::Negative(format!(
            "NOT rainbow-connected: witness {} {}",
            w.u, w.v
        ))),
    }
}

fn exact(graph: &Path, max_colors: Option<usize>, node_budget: u64, out: Option<&Path>) -> Result<(), CliError> {
    let g = read_graph(graph)?;
    let r = rc_exact(&g, max_colors.unwrap_or(g.m()), node_budget).map_err(|e| match e {
        ExactError::Disconnected => CliError::Input(e.to_string()),
        ExactError::BudgetExhausted { .. } => CliError::Budget(e.to_string()),
        ExactError::MaxColorsExceeded { .. } => CliError::Negative(e.to_string()),
    })?;
    println!("k={}", r.k);
    if let Some(path) = out {
        emit(Some(path), &serialize_coloring(&g, &r.coloring))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen {
            family,
            mut params,
            extra,
            seed,
            out,
        } => {
            params.extend(extra);
            let g = gen_family(&family, &params, seed).map_err(|e| CliError::Input(e.to_string()))?;
            emit(out.as_deref(), &serialize_graph(&g))
        }
        Command::Construct {
            graph,
            out,
            trace,
            force,
        } => construct(&graph, out.as_deref(), trace, force),
        Command::Check { graph, coloring } => check(&graph, &coloring),
        Command::Exact {
            graph,
            max_colors,
            node_budget,
            out,
        } => exact(&graph, max_colors, node_budget, out.as_deref()),
        Command::Kappa { graph } => {
            let g = read_graph(&graph)?;
            let kappa = vertex_connectivity(&g).map_err(|e| CliError::Input(e.to_string()))?;
            println!("{kappa}");
            Ok(())
        }
        Command::Fan { graph, x, targets, k } => {
            let g = read_graph(&graph)?;
            match find_fan(&g, x, &targets, k).map_err(|e| CliError::Input(e.to_string()))? {
                Some(fan) => {
                    for p in &fan.paths {
                        println!("{p}");
                    }
                    Ok(())
                }
                None => Err(CliError::Negative("insufficient".into())),
            }
        }
        Command::Bench {
            corpus,
            seed,
            exact_max_n,
            out,
        } => bench::run(&corpus, seed, exact_max_n, out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Negative(msg) => println!("{msg}"),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(e.code())
        }
    }
}
