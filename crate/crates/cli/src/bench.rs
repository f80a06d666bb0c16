use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use rainbow_core::constructive::{color_bound, run_constructive};
use rainbow_core::corpus::builtin;
use rainbow_core::{
    is_rainbow_connected, parse_graph, rc_exact, vertex_connectivity, ExactError, Graph, DEFAULT_NODE_BUDGET,
};

use crate::CliError;

pub const HEADER: &str = "graph_id,n,m,kappa,constructive_k,bound,exact_k,checker_ok,gen_ms,construct_ms,exact_ms";

struct Input {
    id: String,
    graph: Result<Graph, String>,
    gen_ms: u128,
}

struct Row {
    id: String,
    n: usize,
    m: usize,
    kappa: usize,
    constructive_k: usize,
    bound: usize,
    exact_k: String,
    checker_ok: bool,
    gen_ms: u128,
    construct_ms: u128,
    exact_ms: u128,
}

/// Why a graph produced no row.
enum Rejection {
    Input(String),
    Kappa(String),
    Failed(String),
}

fn load(corpus: &str, seed: u64) -> Result<Vec<Input>, CliError> {
    if corpus == "builtin" {
        let started = Instant::now();
        let entries = builtin(seed).map_err(|e| CliError::Input(e.to_string()))?;
        let per_graph = started.elapsed().as_millis() / entries.len().max(1) as u128;
        return Ok(entries
            .into_iter()
            .map(|e| Input {
                id: e.id,
                graph: Ok(e.graph),
                gen_ms: per_graph,
            })
            .collect());
    }
    let dir = Path::new(corpus);
    let mut paths: Vec<_> = fs::read_dir(dir)
        .map_err(|e| CliError::Input(format!("{corpus}: {e}")))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|path| {
            let started = Instant::now();
            let graph = fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|text| parse_graph(&text).map_err(|e| e.to_string()));
            Input {
                id: path
                    .file_stem()
                    .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned()),
                graph: graph.map_err(|e| format!("{}: {e}", path.display())),
                gen_ms: started.elapsed().as_millis(),
            }
        })
        .collect())
}

fn measure(input: &Input, exact_max_n: usize) -> Result<Row, Rejection> {
    let g = input.graph.as_ref().map_err(|e| Rejection::Input(e.clone()))?;
    let id = &input.id;
    if !g.is_connected() || g.n() < 4 {
        return Err(Rejection::Kappa(format!(
            "{id}: needs a connected graph on at least 4 vertices"
        )));
    }
    let kappa = vertex_connectivity(g).map_err(|e| Rejection::Input(format!("{id}: {e}")))?;
    if kappa < 3 {
        return Err(Rejection::Kappa(format!("{id}: vertex connectivity {kappa} < 3")));
    }
    let started = Instant::now();
    let result = run_constructive(g).map_err(|e| Rejection::Failed(format!("{id}: {e}")))?;
    let construct_ms = started.elapsed().as_millis();
    let checker_ok = is_rainbow_connected(g, &result.coloring).is_ok_and(|v| v.is_ok());
    let bound = color_bound(g.n());
    if !checker_ok || result.colors_used > bound {
        return Err(Rejection::Failed(format!(
            "{id}: constructive k={} bound={bound} checker_ok={checker_ok}",
            result.colors_used
        )));
    }
    let started = Instant::now();
    let exact_k = if g.n() > exact_max_n {
        "skipped".to_string()
    } else {
        match rc_exact(g, g.m(), DEFAULT_NODE_BUDGET) {
            Ok(r) if r.k > result.colors_used => {
                return Err(Rejection::Failed(format!(
                    "{id}: exact {} above constructive {}",
                    r.k, result.colors_used
                )))
            }
            Ok(r) => r.k.to_string(),
            Err(ExactError::BudgetExhausted { .. }) => "budget-exhausted".to_string(),
            Err(e) => return Err(Rejection::Failed(format!("{id}: {e}"))),
        }
    };
    Ok(Row {
        id: id.clone(),
        n: g.n(),
        m: g.m(),
        kappa,
        constructive_k: result.colors_used,
        bound,
        exact_k,
        checker_ok,
        gen_ms: input.gen_ms,
        construct_ms,
        exact_ms: started.elapsed().as_millis(),
    })
}

pub fn run(corpus: &str, seed: u64, exact_max_n: usize, out: Option<&Path>) -> Result<(), CliError> {
    let inputs = load(corpus, seed)?;
    let results: Vec<Result<Row, Rejection>> = inputs.par_iter().map(|i| measure(i, exact_max_n)).collect();
    let mut csv = format!("{HEADER}\n");
    let mut worst: Option<CliError> = None;
    for result in results {
        match result {
            Ok(r) => {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.id,
                    r.n,
                    r.m,
                    r.kappa,
                    r.constructive_k,
                    r.bound,
                    r.exact_k,
                    r.checker_ok,
                    r.gen_ms,
                    r.construct_ms,
                    r.exact_ms
                )
                .unwrap();
            }
            Err(rejection) => {
                let err = match rejection {
                    Rejection::Input(msg) => CliError::Input(msg),
                    Rejection::Kappa(msg) => CliError::Precondition(msg),
                    Rejection::Failed(msg) => CliError::Construction(msg),
                };
                eprintln!("rejected: {err}");
                if worst.as_ref().is_none_or(|w| err.code() > w.code()) {
                    worst = Some(err);
                }
            }
        }
    }
    match out {
        Some(path) => fs::write(path, &csv).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{csv}"),
    }
    worst.map_or(Ok(()), Err)
}
