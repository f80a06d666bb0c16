//! Exact rainbow connection number for small graphs.
//!
//! For each candidate `k`, starting at the diameter, a depth-first search
//! assigns colors to edges in a fixed order. Colorings are enumerated in
//! canonical form (an edge may use at most one more than the largest color
//! seen so far), which removes color permutations. Any rainbow path uses at
//! most `k` edges, so every vertex pair keeps the list of its simple paths of
//! length `<= k`; once the last edge of all those paths is colored the pair
//! is decided, and a pair with no rainbow candidate cuts the branch.

use thiserror::Error;

use crate::graph::{diameter, Graph};
use crate::rainbow::{Color, EdgeColoring};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Above this many candidate paths the solver checks only complete colorings.
const PATH_TABLE_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("rc_exact requires a connected graph")]
    Disconnected,
    #[error("budget-exhausted at k={k} after {nodes} search nodes")]
    BudgetExhausted { k: usize, nodes: u64 },
    #[error("no rainbow coloring with at most {max_colors} colors")]
    MaxColorsExceeded { max_colors: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub k: usize,
    pub coloring: EdgeColoring,
    /// Search nodes spent across all values of k.
    pub nodes: u64,
}

/// Smallest `k` for which `g` has a rainbow-connected `k`-coloring, with the
/// first such coloring in the canonical enumeration order.
pub fn rc_exact(g: &Graph, max_colors: usize, node_budget: u64) -> Result<ExactResult, ExactError> {
    let diam = diameter(g).map_err(|_| ExactError::Disconnected)?;
    if g.m() == 0 {
        // a single vertex
        return Ok(ExactResult {
            k: 0,
            coloring: EdgeColoring::new(g, Vec::new()).unwrap(),
            nodes: 0,
        });
    }
    let order = edge_order(g);
    let mut nodes = 0u64;
    for k in diam.max(1)..=max_colors.min(g.m()) {
        let mut search = Search::new(g, &order, k, node_budget - nodes.min(node_budget));
        let outcome = search.run();
        nodes += search.nodes;
        match outcome {
            Outcome::Found(colors) => {
                let coloring = EdgeColoring::new(g, colors).expect("search colors every edge");
                return Ok(ExactResult { k, coloring, nodes });
            }
            Outcome::Exhausted => return Err(ExactError::BudgetExhausted { k, nodes }),
            Outcome::NoColoring => {}
        }
    }
    Err(ExactError::MaxColorsExceeded { max_colors })
}

/// Edges sorted by the BFS rank of their endpoints, so short paths near the
/// start are completed early.
fn edge_order(g: &Graph) -> Vec<usize> {
    let dist = g.bfs_distances(0);
    let mut rank = vec![0usize; g.n()];
    let mut by_dist: Vec<usize> = (0..g.n()).collect();
    by_dist.sort_by_key(|&v| (dist[v], v));
    for (r, &v) in by_dist.iter().enumerate() {
        rank[v] = r;
    }
    let mut ids: Vec<usize> = (0..g.m()).collect();
    ids.sort_by_key(|&i| {
        let e = g.edges()[i];
        let (a, b) = (rank[e.0], rank[e.1]);
        (a.max(b), a.min(b))
    });
    ids
}

enum Outcome {
    Found(Vec<Color>),
    NoColoring,
    Exhausted,
}

struct Search<'a> {
    k: usize,
    /// edge id at each position
    order: &'a [usize],
    /// position -> pairs decided once that position is colored
    decided_at: Vec<Vec<usize>>,
    /// per pair: candidate paths as lists of positions
    pair_paths: Vec<Vec<Vec<usize>>>,
    /// true when the path table was too big and only leaves are checked
    leaf_only: bool,
    leaf_check: Option<(&'a Graph, Vec<usize>)>,
    colors_by_pos: Vec<Color>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, order: &'a [usize], k: usize, budget: u64) -> Self {
        let m = g.m();
        let mut pos_of = vec![0; m];
        for (p, &e) in order.iter().enumerate() {
            pos_of[e] = p;
        }
        let mut pair_paths = Vec::new();
        let mut decided_at = vec![Vec::new(); m];
        let mut total = 0usize;
        let mut leaf_only = false;
        'pairs: for u in 0..g.n() {
            for v in u + 1..g.n() {
                let paths = paths_up_to(g, u, v, k, &pos_of);
                total += paths.iter().map(Vec::len).sum::<usize>();
                if total > PATH_TABLE_LIMIT {
                    leaf_only = true;
                    break 'pairs;
                }
                let last = paths.iter().flat_map(|p| p.iter().copied()).max().unwrap_or(0);
                decided_at[last].push(pair_paths.len());
                pair_paths.push(paths);
            }
        }
        let leaf_check = leaf_only.then(|| (g, pos_of.clone()));
        if leaf_only {
            pair_paths.clear();
            decided_at.iter_mut().for_each(Vec::clear);
        }
        Search {
            k,
            order,
            decided_at,
            pair_paths,
            leaf_only,
            leaf_check,
            colors_by_pos: vec![0; m],
            nodes: 0,
            budget,
        }
    }

    fn run(&mut self) -> Outcome {
        match self.dfs(0, 0) {
            Some(true) => {
                let mut colors = vec![0; self.order.len()];
                for (p, &e) in self.order.iter().enumerate() {
                    colors[e] = self.colors_by_pos[p];
                }
                Outcome::Found(colors)
            }
            Some(false) => Outcome::NoColoring,
            None => Outcome::Exhausted,
        }
    }

    /// `Some(true)` on success, `Some(false)` when the subtree is empty,
    /// `None` when the node budget runs out.
    fn dfs(&mut self, pos: usize, max_used: Color) -> Option<bool> {
        if pos == self.order.len() {
            return Some(!self.leaf_only || self.leaf_ok());
        }
        let top = (max_used + 1).min(self.k as Color);
        for c in 1..=top {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            self.colors_by_pos[pos] = c;
            if !self.pairs_ok(pos) {
                continue;
            }
            if self.dfs(pos + 1, max_used.max(c))? {
                return Some(true);
            }
        }
        Some(false)
    }

    fn pairs_ok(&self, pos: usize) -> bool {
        self.decided_at[pos].iter().all(|&pair| {
            self.pair_paths[pair].iter().any(|path| {
                let mut seen = 0u128;
                path.iter().all(|&p| {
                    let bit = 1u128 << (self.colors_by_pos[p] - 1);
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
        })
    }

    fn leaf_ok(&self) -> bool {
        let (g, pos_of) = self.leaf_check.as_ref().unwrap();
        let colors = (0..g.m()).map(|e| self.colors_by_pos[pos_of[e]]).collect();
        let c = EdgeColoring::new(g, colors).unwrap();
        crate::rainbow::is_rainbow_connected(g, &c).is_ok_and(|v| v.is_ok())
    }
}

/// All simple `u`–`v` paths with at most `k` edges, as edge positions.
fn paths_up_to(g: &Graph, u: usize, v: usize, k: usize, pos_of: &[usize]) -> Vec<Vec<usize>> {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        g: &Graph,
        at: usize,
        target: usize,
        left: usize,
        on_path: &mut [bool],
        edges: &mut Vec<usize>,
        pos_of: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        for &w in g.neighbors(at) {
            if on_path[w] {
                continue;
            }
            edges.push(pos_of[g.edge_id(at, w).unwrap()]);
            if w == target {
                out.push(edges.clone());
            } else if left > 1 {
                on_path[w] = true;
                walk(g, w, target, left - 1, on_path, edges, pos_of, out);
                on_path[w] = false;
            }
            edges.pop();
        }
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    walk(g, u, v, k, &mut on_path, &mut Vec::new(), pos_of, &mut out);
    out
}
