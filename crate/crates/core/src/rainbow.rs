//! Edge colorings and rainbow-connectivity checking.
//!
//! The checker explores states `(vertex, colors used so far)` breadth-first
//! from each source. A state is dropped when the same vertex was already
//! reached with a subset of its colors, since every continuation of the
//! larger set is also available to the smaller one.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::graph::{parse_ints, Edge, Graph, GraphError};

pub type Color = u32;

/// Distinct colors the checker can track in one search.
pub const MAX_CHECKER_COLORS: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {m} edges")]
    LengthMismatch { got: usize, m: usize },
    #[error("edge {edge} has color 0; colors start at 1")]
    ZeroColor { edge: Edge },
    #[error("{0} distinct colors exceed the checker limit of {MAX_CHECKER_COLORS}")]
    TooManyColors(usize),
    #[error("{op} requires a connected graph")]
    Disconnected { op: &'static str },
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: edge {u} {v} is not in the graph")]
    UnknownEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge {u} {v} colored twice")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: color {color} outside 1..={k}")]
    ColorOutOfRange { line: usize, color: Color, k: Color },
    #[error("graph edge {edge} has no color")]
    MissingEdge { edge: Edge },
}

/// A color for every edge of a host graph, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<Color>,
    k: usize,
}

impl EdgeColoring {
    pub fn new(g: &Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != g.m() {
            return Err(ColoringError::LengthMismatch {
                got: colors.len(),
                m: g.m(),
            });
        }
        if let Some(i) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor { edge: g.edges()[i] });
        }
        let mut distinct = colors.clone();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(EdgeColoring {
            k: distinct.len(),
            colors,
        })
    }

    /// Every edge gets `color`.
    pub fn uniform(g: &Graph, color: Color) -> Self {
        Self::new(g, vec![color; g.m()]).expect("uniform coloring is valid")
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, edge_id: usize) -> Color {
        self.colors[edge_id]
    }

    pub fn color_of(&self, g: &Graph, u: usize, v: usize) -> Option<Color> {
        g.edge_id(u, v).map(|e| self.colors[e])
    }

    /// Number of distinct colors in use.
    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn max_color(&self) -> Color {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// A vertex pair with no rainbow path between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    RainbowConnected,
    NotRainbowConnected(Witness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::RainbowConnected)
    }
}

type ColorSet = u128;

/// Adjacency with colors remapped to dense bit positions.
///
/// Edges may be a subset of a host graph's edges, which is how partial
/// colorings of a growing subgraph are checked.
#[derive(Debug, Clone)]
pub(crate) struct ColoredAdjacency {
    adj: Vec<Vec<(usize, u8)>>,
}

impl ColoredAdjacency {
    pub(crate) fn from_colored_edges(
        n: usize,
        edges: impl IntoIterator<Item = (Edge, Color)>,
    ) -> Result<Self, ColoringError> {
        let mut bits: BTreeMap<Color, u8> = BTreeMap::new();
        let mut adj = vec![Vec::new(); n];
        for (e, c) in edges {
            let next = bits.len();
            let bit = *bits.entry(c).or_insert(next.min(u8::MAX as usize) as u8);
            if bits.len() > MAX_CHECKER_COLORS {
                return Err(ColoringError::TooManyColors(bits.len()));
            }
            adj[e.0].push((e.1, bit));
            adj[e.1].push((e.0, bit));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(ColoredAdjacency { adj })
    }

    pub(crate) fn from_coloring(g: &Graph, c: &EdgeColoring) -> Result<Self, ColoringError> {
        Self::from_colored_edges(g.n(), g.edges().iter().copied().zip(c.colors().iter().copied()))
    }

    /// Marks every vertex reachable from `src` by a rainbow path. Stops as
    /// soon as all vertices flagged in `wanted` are found.
    pub(crate) fn rainbow_reach(&self, src: usize, wanted: &[bool]) -> Vec<bool> {
        let n = self.adj.len();
        let mut found = vec![false; n];
        found[src] = true;
        let mut missing = wanted.iter().enumerate().filter(|&(v, &w)| w && v != src).count();
        if missing == 0 {
            return found;
        }
        let mut frontier: Vec<Vec<ColorSet>> = vec![Vec::new(); n];
        frontier[src].push(0);
        let mut queue = VecDeque::from([(src, 0 as ColorSet)]);
        while let Some((u, used)) = queue.pop_front() {
            for &(w, bit) in &self.adj[u] {
                let mask = 1u128 << bit;
                if used & mask != 0 {
                    continue;
                }
                let next = used | mask;
                let seen = &mut frontier[w];
                if seen.iter().any(|&s| s & !next == 0) {
                    continue;
                }
                seen.retain(|&s| s & next != next);
                seen.push(next);
                if !found[w] {
                    found[w] = true;
                    if wanted[w] {
                        missing -= 1;
                        if missing == 0 {
                            return found;
                        }
                    }
                }
                queue.push_back((w, next));
            }
        }
        found
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), ColoringError> {
    if v >= g.n() {
        Err(ColoringError::OutOfRange { vertex: v, n: g.n() })
    } else {
        Ok(())
    }
}

/// Is there a path from `u` to `v` whose edge colors are pairwise distinct?
/// `u == v` is trivially true.
pub fn rainbow_path_exists(g: &Graph, c: &EdgeColoring, u: usize, v: usize) -> Result<bool, ColoringError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if u == v {
        return Ok(true);
    }
    let adj = ColoredAdjacency::from_coloring(g, c)?;
    let mut wanted = vec![false; g.n()];
    wanted[v] = true;
    Ok(adj.rainbow_reach(u, &wanted)[v])
}

/// Checks all pairs; on failure reports the lexicographically smallest pair
/// `(u, v)`, `u < v`, that has no rainbow path.
pub fn is_rainbow_connected(g: &Graph, c: &EdgeColoring) -> Result<Verdict, ColoringError> {
    if !g.is_connected() {
        return Err(ColoringError::Disconnected {
            op: "is_rainbow_connected",
        });
    }
    let adj = ColoredAdjacency::from_coloring(g, c)?;
    Ok(first_failure(&adj, g.n(), &vec![true; g.n()]).map_or(Verdict::RainbowConnected, Verdict::NotRainbowConnected))
}

/// Smallest failing pair among the `members`, or `None`.
pub(crate) fn first_failure(adj: &ColoredAdjacency, n: usize, members: &[bool]) -> Option<Witness> {
    let mut wanted = vec![false; n];
    for u in 0..n {
        if !members[u] {
            continue;
        }
        wanted
            .iter_mut()
            .enumerate()
            .for_each(|(v, w)| *w = v > u && members[v]);
        if !wanted.iter().any(|&w| w) {
            break;
        }
        let found = adj.rainbow_reach(u, &wanted);
        if let Some(v) = (u + 1..n).find(|&v| wanted[v] && !found[v]) {
            return Some(Witness { u, v });
        }
    }
    None
}

/// Colors along `C_n` in cycle order (edge `j` joins `j` and `j+1 mod n`):
/// `1..m, 1..m` for `n = 2m` and `1..m+1, 1..m` for `n = 2m + 1`.
pub fn cycle_color_sequence(n: usize) -> Vec<Color> {
    let half = n / 2;
    let first = n.div_ceil(2);
    (1..=first as Color).chain(1..=half as Color).collect()
}

/// The standard ⌈n/2⌉-coloring of `C_n`, on the graph `Family::Cycle(n)`.
pub fn cycle_coloring(n: usize) -> Result<(Graph, EdgeColoring), GraphError> {
    if n < 3 {
        return Err(GraphError::Syntax {
            line: 0,
            message: format!("cycle_coloring needs n >= 3, got {n}"),
        });
    }
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?;
    let mut colors = vec![0; n];
    for (j, c) in cycle_color_sequence(n).into_iter().enumerate() {
        colors[g.edge_id(j, (j + 1) % n).unwrap()] = c;
    }
    let coloring = EdgeColoring::new(&g, colors).expect("one color per cycle edge");
    Ok((g, coloring))
}

/// Parses the coloring format: a line `k`, then one `u v c` line for every
/// edge of `g`, with `1 <= c <= k`.
pub fn parse_coloring(text: &str, g: &Graph) -> Result<EdgeColoring, ColoringError> {
    let syntax = |e: GraphError| match e {
        GraphError::Syntax { line, message } => ColoringError::Syntax { line, message },
        other => ColoringError::Syntax {
            line: 0,
            message: other.to_string(),
        },
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(ColoringError::Syntax {
        line: 1,
        message: "missing header \"k\"".into(),
    })?;
    let k = parse_ints(hline, header, 1).map_err(syntax)?[0] as Color;
    let mut colors: Vec<Option<Color>> = vec![None; g.m()];
    for (line, body) in lines {
        let f = parse_ints(line, body, 3).map_err(syntax)?;
        let (u, v, c) = (f[0], f[1], f[2] as Color);
        let id = g.edge_id(u, v).ok_or(ColoringError::UnknownEdge { line, u, v })?;
        if c == 0 || c > k {
            return Err(ColoringError::ColorOutOfRange { line, color: c, k });
        }
        if colors[id].replace(c).is_some() {
            return Err(ColoringError::DuplicateEdge { line, u, v });
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or(ColoringError::MissingEdge { edge: g.edges()[i] }))
        .collect::<Result<Vec<_>, _>>()?;
    EdgeColoring::new(g, colors)
}

/// Writes the coloring format; `k` is the largest color id.
pub fn serialize_coloring(g: &Graph, c: &EdgeColoring) -> String {
    let mut out = format!("{}\n", c.max_color());
    for (e, col) in g.edges().iter().zip(c.colors()) {
        out.push_str(&format!("{} {} {}\n", e.0, e.1, col));
    }
    out
}
