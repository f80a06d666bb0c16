//! Simple undirected graphs on dense vertex ids, the edge-list text format,
//! and the structural queries (girth, shortest cycle, diameter) the solvers
//! rely on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// An unordered vertex pair stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    /// Builds the normalized edge `{u, v}`. Panics on a self-loop.
    pub fn new(u: usize, v: usize) -> Self {
        assert_ne!(u, v, "self-loop {u}-{u}");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn other(&self, w: usize) -> usize {
        if self.0 == w {
            self.1
        } else {
            self.0
        }
    }

    pub fn contains(&self, w: usize) -> bool {
        self.0 == w || self.1 == w
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    Duplicate(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    BadEdge { line: usize, source: EdgeError },
    #[error(transparent)]
    Edge(#[from] EdgeError),
    #[error("{op} requires a connected graph")]
    Disconnected { op: &'static str },
    #[error("graph is acyclic")]
    Acyclic,
}

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted, so an edge's index is stable and edge iteration is
/// deterministic. Neighbor lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting out-of-range endpoints, self-loops and
    /// parallel edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, EdgeError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            list.push(check_edge(n, u, v)?);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(EdgeError::Duplicate(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending order; the position of an edge is its edge id.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return None;
        }
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Returns a copy with one extra edge; errors if it is invalid or present.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, EdgeError> {
        let e = check_edge(self.n, u, v)?;
        match self.edges.binary_search(&e) {
            Ok(_) => Err(EdgeError::Duplicate(e.0, e.1)),
            Err(pos) => {
                let mut edges = self.edges.clone();
                edges.insert(pos, e);
                Ok(Self::from_sorted_unique(self.n, edges))
            }
        }
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }
}

fn check_edge(n: usize, u: usize, v: usize) -> Result<Edge, EdgeError> {
    for w in [u, v] {
        if w >= n {
            return Err(EdgeError::OutOfRange { vertex: w, n });
        }
    }
    if u == v {
        return Err(EdgeError::SelfLoop(u));
    }
    Ok(Edge::new(u, v))
}

/// A simple path `v0 .. vl`, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexPath(Vec<usize>);

impl VertexPath {
    pub fn new(vertices: Vec<usize>) -> Self {
        VertexPath(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("path has at least one vertex")
    }

    /// Vertices strictly between the two ends.
    pub fn internal(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    pub fn reversed(&self) -> Self {
        VertexPath(self.0.iter().rev().copied().collect())
    }

    /// Consecutive vertices adjacent in `g` and no vertex repeated.
    pub fn is_simple_path_in(&self, g: &Graph) -> bool {
        if self.0.is_empty() || self.0.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in &self.0 {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses the edge-list format: a header `n m` followed by exactly `m`
/// lines `u v`. Blank lines and lines starting with `#` are skipped; line
/// numbers in errors count every physical line.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(GraphError::Syntax {
        line: 1,
        message: "missing header \"n m\"".into(),
    })?;
    let nums = parse_ints(hline, header, 2)?;
    let (n, m) = (nums[0], nums[1]);

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        if edges.len() == m {
            return Err(GraphError::Syntax {
                line,
                message: format!("more than the {m} edges declared in the header"),
            });
        }
        let uv = parse_ints(line, body, 2)?;
        let e = check_edge(n, uv[0], uv[1]).map_err(|source| GraphError::BadEdge { line, source })?;
        if !seen.insert(e) {
            return Err(GraphError::BadEdge {
                line,
                source: EdgeError::Duplicate(e.0, e.1),
            });
        }
        edges.push(e);
    }
    if edges.len() != m {
        return Err(GraphError::Syntax {
            line: last_line,
            message: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    edges.sort_unstable();
    Ok(Graph::from_sorted_unique(n, edges))
}

pub(crate) fn parse_ints(line: usize, body: &str, count: usize) -> Result<Vec<usize>, GraphError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    if fields.len() != count {
        return Err(GraphError::Syntax {
            line,
            message: format!("expected {count} integers, found {:?}", body),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| GraphError::Syntax {
                line,
                message: format!("not a non-negative integer: {f:?}"),
            })
        })
        .collect()
}

/// Writes the edge-list format with edges in sorted order.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.0, e.1));
    }
    out
}

/// Length of a shortest cycle, or `None` for a forest.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// A shortest cycle, as its vertex sequence `v0 .. v(k-1)` (the closing edge
/// `v(k-1) v0` is implicit).
///
/// Among all shortest cycles the result starts at the lowest possible vertex
/// and is the lexicographically smallest sequence, with the direction chosen
/// so that `v1 < v(k-1)`.
pub fn shortest_cycle(g: &Graph) -> Result<Vec<usize>, GraphError> {
    let len = girth(g).ok_or(GraphError::Acyclic)?;
    for start in 0..g.n() {
        // distances back to `start` inside the subgraph of vertices >= start
        let mut back = vec![usize::MAX; g.n()];
        back[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if w > start && back[w] == usize::MAX {
                    back[w] = back[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let mut path = vec![start];
        let mut on_path = vec![false; g.n()];
        on_path[start] = true;
        if cycle_dfs(g, start, len, &back, &mut path, &mut on_path) {
            return Ok(path);
        }
    }
    unreachable!("girth {len} reported but no cycle found")
}

fn cycle_dfs(g: &Graph, start: usize, len: usize, back: &[usize], path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
    let u = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(u, start) && path[1] < path[len - 1];
    }
    for &w in g.neighbors(u) {
        if w <= start || on_path[w] {
            continue;
        }
        // after stepping to w, len - path.len() edges remain to get home
        if back[w] == usize::MAX || back[w] > len - path.len() {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        if cycle_dfs(g, start, len, back, path, on_path) {
            return true;
        }
        on_path[w] = false;
        path.pop();
    }
    false
}

/// Largest shortest-path distance over all vertex pairs.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    let mut diam = 0;
    for v in 0..g.n() {
        let dist = g.bfs_distances(v);
        for &d in &dist {
            if d == usize::MAX {
                return Err(GraphError::Disconnected { op: "diameter" });
            }
            diam = diam.max(d);
        }
    }
    Ok(diam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;

    fn gen(f: Family) -> Graph {
        f.generate(0).unwrap()
    }

    #[test]
    fn parses_triangle_and_path() {
        let t = parse_graph("3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(t.n(), 3);
        assert_eq!(t.edges(), &[Edge(0, 1), Edge(0, 2), Edge(1, 2)]);
        let p = parse_graph("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(p.m(), 3);
        assert_eq!(p.neighbors(1), &[0, 2]);
    }

    #[test]
    fn duplicate_edge_reports_line() {
        let err = parse_graph("3 2\n0 1\n0 1\n").unwrap_err();
        assert_eq!(
            err,
            GraphError::BadEdge {
                line: 3,
                source: EdgeError::Duplicate(0, 1)
            }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_graph("3\n"), Err(GraphError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_graph("# c\n3 1\n0 3\n"),
            Err(GraphError::BadEdge {
                line: 3,
                source: EdgeError::OutOfRange { vertex: 3, n: 3 }
            })
        ));
        assert!(matches!(
            parse_graph("3 1\n\n2 2\n"),
            Err(GraphError::BadEdge {
                line: 3,
                source: EdgeError::SelfLoop(2)
            })
        ));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(GraphError::Syntax { .. })));
        assert!(matches!(
            parse_graph("3 1\n0 1\n1 2\n"),
            Err(GraphError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("3 1\n0 x\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = parse_graph("# tri\n\n3 3\n# edges\n0 1\n\n1 2\n0 2\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn serializes_sorted() {
        let t = Graph::from_edges(3, [(1, 2), (0, 2), (0, 1)]).unwrap();
        assert_eq!(serialize_graph(&t), "3 3\n0 1\n0 2\n1 2\n");
        assert_eq!(serialize_graph(&Graph::empty(1)), "1 0\n");
        let c5 = serialize_graph(&gen(Family::Cycle(5)));
        assert!(c5.starts_with("5 5\n"));
        assert_eq!(c5.lines().count(), 6);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&gen(Family::Complete(3))), Some(3));
        assert_eq!(girth(&gen(Family::Petersen)), Some(5));
        assert_eq!(girth(&gen(Family::Path(4))), None);
        for n in 3..=12 {
            assert_eq!(girth(&gen(Family::Cycle(n))), Some(n));
        }
    }

    #[test]
    fn shortest_cycle_examples() {
        assert_eq!(shortest_cycle(&gen(Family::Complete(4))).unwrap(), vec![0, 1, 2]);
        assert_eq!(
            shortest_cycle(&gen(Family::Cycle(7))).unwrap(),
            vec![0, 1, 2, 3, 4, 5, 6]
        );
        assert_eq!(shortest_cycle(&gen(Family::Prism(3))).unwrap(), vec![0, 1, 2]);
        assert_eq!(shortest_cycle(&gen(Family::Prism(4))).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(shortest_cycle(&gen(Family::Path(4))), Err(GraphError::Acyclic));
        let pet = shortest_cycle(&gen(Family::Petersen)).unwrap();
        assert_eq!(pet, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn shortest_cycle_prefers_lexicographic_order() {
        // two 4-cycles through 0 and 1
        let g = Graph::from_edges(6, [(0, 1), (1, 3), (3, 2), (2, 0), (1, 5), (5, 4), (4, 0)]).unwrap();
        assert_eq!(shortest_cycle(&g).unwrap(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&gen(Family::Complete(5))), Ok(1));
        assert_eq!(diameter(&gen(Family::Cycle(6))), Ok(3));
        assert_eq!(diameter(&gen(Family::Petersen)), Ok(2));
        for n in 3..=10 {
            assert_eq!(diameter(&gen(Family::Cycle(n))), Ok(n / 2));
        }
        let two = Graph::empty(2);
        assert_eq!(diameter(&two), Err(GraphError::Disconnected { op: "diameter" }));
    }

    #[test]
    fn vertex_path_checks() {
        let c = gen(Family::Cycle(5));
        assert!(VertexPath::new(vec![0, 1, 2]).is_simple_path_in(&c));
        assert!(!VertexPath::new(vec![0, 2]).is_simple_path_in(&c));
        assert!(!VertexPath::new(vec![0, 1, 0]).is_simple_path_in(&c));
        let p = VertexPath::new(vec![3, 4, 0]);
        assert_eq!(p.len(), 2);
        assert_eq!(p.internal(), &[4]);
        assert_eq!(p.reversed().vertices(), &[0, 4, 3]);
    }
}
