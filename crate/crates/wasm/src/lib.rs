//! Browser bindings: generate a graph, color it constructively, and re-check
//! a coloring after the user edits it. All values cross the boundary as
//! JSON strings.

use serde::{Deserialize, Serialize};
use wasm_bindgen::prelude::*;

use rainbow_core::constructive::{run_constructive_with, RunOptions};
use rainbow_core::{gen_family, is_rainbow_connected, rc_exact, EdgeColoring, Graph, Verdict};

/// Exact search is cut off here so the page stays responsive.
const EXACT_NODE_BUDGET: u64 = 2_000_000;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphJson {
    fn of(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|e| [e.0, e.1]).collect(),
        }
    }

    fn build(&self) -> Result<Graph, String> {
        Graph::from_edges(self.n, self.edges.iter().map(|e| (e[0], e[1]))).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub k: usize,
    pub bound: Option<usize>,
    pub kappa: usize,
    pub trace: Vec<String>,
}

#[derive(Debug, Serialize, PartialEq)]
pub struct CheckResult {
    pub ok: bool,
    pub witness: Option<[usize; 2]>,
    pub k: usize,
}

#[derive(Debug, Serialize)]
pub struct ExactJson {
    pub k: usize,
    pub colors: Vec<u32>,
}

pub fn generate_graph(family: &str, params: &[usize], seed: u64) -> Result<GraphJson, String> {
    gen_family(family, params, seed)
        .map(|g| GraphJson::of(&g))
        .map_err(|e| e.to_string())
}

/// Constructive coloring; graphs below 3-connectivity are colored anyway
/// and reported with no bound.
pub fn construct_coloring(graph: &GraphJson) -> Result<Coloring, String> {
    let g = graph.build()?;
    let r = run_constructive_with(&g, RunOptions { force: true }).map_err(|e| e.to_string())?;
    Ok(Coloring {
        colors: r.coloring.colors().to_vec(),
        k: r.colors_used,
        bound: r.bound_guaranteed.then_some(r.bound),
        kappa: r.kappa,
        trace: r.trace.iter().map(ToString::to_string).collect(),
    })
}

pub fn check_coloring(graph: &GraphJson, colors: Vec<u32>) -> Result<CheckResult, String> {
    let g = graph.build()?;
    let c = EdgeColoring::new(&g, colors).map_err(|e| e.to_string())?;
    let verdict = is_rainbow_connected(&g, &c).map_err(|e| e.to_string())?;
    Ok(CheckResult {
        ok: verdict.is_ok(),
        witness: match verdict {
            Verdict::RainbowConnected => None,
            Verdict::NotRainbowConnected(w) => Some([w.u, w.v]),
        },
        k: c.num_colors(),
    })
}

pub fn exact_coloring(graph: &GraphJson) -> Result<ExactJson, String> {
    let g = graph.build()?;
    let r = rc_exact(&g, g.m(), EXACT_NODE_BUDGET).map_err(|e| e.to_string())?;
    Ok(ExactJson {
        k: r.k,
        colors: r.coloring.colors().to_vec(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|v| serde_json::to_string(&v).map_err(|e| e.to_string()))
        .map_err(|e| JsValue::from_str(&e))
}

fn parse_graph_json(text: &str) -> Result<GraphJson, String> {
    serde_json::from_str(text).map_err(|e| format!("bad graph JSON: {e}"))
}

/// `params` is a comma or space separated list of integers.
#[wasm_bindgen]
pub fn generate(family: &str, params: &str, seed: u32) -> Result<String, JsValue> {
    let parsed: Result<Vec<usize>, String> = params
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("bad parameter {s:?}")))
        .collect();
    to_js(parsed.and_then(|p| generate_graph(family, &p, seed.into())))
}

#[wasm_bindgen]
pub fn construct(graph_json: &str) -> Result<String, JsValue> {
    to_js(parse_graph_json(graph_json).and_then(|g| construct_coloring(&g)))
}

/// `colors_json` is a JSON array with one color per edge, in edge order.
#[wasm_bindgen]
pub fn check(graph_json: &str, colors_json: &str) -> Result<String, JsValue> {
    let colors: Result<Vec<u32>, String> =
        serde_json::from_str(colors_json).map_err(|e| format!("bad colors JSON: {e}"));
    to_js(parse_graph_json(graph_json).and_then(|g| colors.and_then(|c| check_coloring(&g, c))))
}

#[wasm_bindgen]
pub fn exact(graph_json: &str) -> Result<String, JsValue> {
    to_js(parse_graph_json(graph_json).and_then(|g| exact_coloring(&g)))
}
