//! Vertex connectivity, Menger paths and k-fans.
//!
//! Every query runs on the vertex-split network: each vertex `v` becomes an
//! arc `in(v) -> out(v)` of capacity 1 and each edge `{u, v}` becomes the two
//! arcs `out(u) -> in(v)` and `out(v) -> in(u)` of cost 1. Successive
//! shortest augmenting paths give a maximum family of internally disjoint
//! paths with the fewest total edges.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexPath};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("vertex connectivity needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("source and target coincide at vertex {0}")]
    SameEndpoints(usize),
    #[error("fan source {0} lies in the target set")]
    SourceInTargets(usize),
    #[error("target set has {size} vertices, fewer than k = {k}")]
    TargetSetTooSmall { size: usize, k: usize },
}

/// A k-fan: internally disjoint paths from `source` to distinct vertices of
/// `targets`, each meeting the target set only at its last vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanPaths {
    pub source: usize,
    pub targets: Vec<usize>,
    /// Sorted by length, then by vertex sequence.
    pub paths: Vec<VertexPath>,
}

impl FanPaths {
    /// Path lengths in edges, ascending.
    pub fn lengths(&self) -> Vec<usize> {
        self.paths.iter().map(VertexPath::len).collect()
    }

    pub fn total_len(&self) -> usize {
        self.paths.iter().map(VertexPath::len).sum()
    }

    /// Checks every fan invariant against `g`; returns the first violation.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        let mut in_y = vec![false; g.n()];
        for &y in &self.targets {
            in_y[y] = true;
        }
        let mut used = vec![false; g.n()];
        let mut terminals = Vec::new();
        for p in &self.paths {
            if !p.is_simple_path_in(g) || p.is_empty() {
                return Err(format!("{p} is not a simple path"));
            }
            if p.first() != self.source {
                return Err(format!("{p} does not start at {}", self.source));
            }
            if !in_y[p.last()] {
                return Err(format!("{p} does not end in the target set"));
            }
            if p.vertices()[..p.vertices().len() - 1].iter().any(|&v| in_y[v]) {
                return Err(format!("{p} meets the target set before its end"));
            }
            for &v in &p.vertices()[1..] {
                if std::mem::replace(&mut used[v], true) {
                    return Err(format!("vertex {v} is shared by two paths"));
                }
            }
            terminals.push(p.last());
        }
        terminals.sort_unstable();
        terminals.dedup();
        if terminals.len() != self.paths.len() {
            return Err("terminals are not distinct".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i32,
    cost: i32,
}

/// Unit-capacity flow network over the split graph.
struct SplitNetwork {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    source: usize,
    sink: usize,
}

const fn node_in(v: usize) -> usize {
    2 * v
}

const fn node_out(v: usize) -> usize {
    2 * v + 1
}

impl SplitNetwork {
    /// `sink_cap[v] > 0` makes `v` a terminal that feeds the sink; terminals
    /// and `blocked` vertices are never passed through.
    fn build(g: &Graph, source: usize, sink_cap: &[i32], blocked: &[bool]) -> Self {
        let nodes = 2 * g.n() + 1;
        let mut net = SplitNetwork {
            arcs: Vec::new(),
            out: vec![Vec::new(); nodes],
            source: node_out(source),
            sink: nodes - 1,
        };
        for v in 0..g.n() {
            if v != source && sink_cap[v] == 0 && !blocked[v] {
                net.add(node_in(v), node_out(v), 1, 0);
            }
            if sink_cap[v] > 0 && !blocked[v] {
                net.add(node_in(v), net.sink, sink_cap[v], 0);
            }
        }
        for e in g.edges() {
            net.add(node_out(e.0), node_in(e.1), 1, 1);
            net.add(node_out(e.1), node_in(e.0), 1, 1);
        }
        net
    }

    fn add(&mut self, from: usize, to: usize, cap: i32, cost: i32) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap, cost });
        self.out[to].push(self.arcs.len());
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            cost: -cost,
        });
    }

    /// One cheapest augmenting path (Bellman-Ford/SPFA on the residual graph).
    fn augment_cheapest(&mut self) -> bool {
        let nodes = self.out.len();
        let mut dist = vec![i32::MAX; nodes];
        let mut via = vec![usize::MAX; nodes];
        let mut queued = vec![false; nodes];
        let mut queue = VecDeque::new();
        dist[self.source] = 0;
        queue.push_back(self.source);
        queued[self.source] = true;
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && dist[u] + arc.cost < dist[arc.to] {
                    dist[arc.to] = dist[u] + arc.cost;
                    via[arc.to] = a;
                    if !queued[arc.to] {
                        queued[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if dist[self.sink] == i32::MAX {
            return false;
        }
        let mut v = self.sink;
        while v != self.source {
            let a = via[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        true
    }

    /// Plain BFS augmentation, used when only the flow value matters.
    fn augment_any(&mut self) -> bool {
        let nodes = self.out.len();
        let mut via = vec![usize::MAX; nodes];
        let mut seen = vec![false; nodes];
        let mut queue = VecDeque::from([self.source]);
        seen[self.source] = true;
        while let Some(u) = queue.pop_front() {
            if u == self.sink {
                break;
            }
            for &a in &self.out[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut v = self.sink;
        while v != self.source {
            let a = via[v];
            self.arcs[a].cap -= 1;
            self.arcs[a ^ 1].cap += 1;
            v = self.arcs[a ^ 1].to;
        }
        true
    }

    /// Reads the flow back as vertex paths from the source vertex.
    fn paths(&self, source_vertex: usize) -> Vec<VertexPath> {
        // flow on an edge arc: its forward arc (even index) has cap 0
        let mut next: Vec<Vec<usize>> = vec![Vec::new(); self.out.len()];
        for (node, arcs) in self.out.iter().enumerate() {
            for &a in arcs {
                if a % 2 == 0 && self.arcs[a].cap == 0 && self.arcs[a].cost == 1 {
                    next[node].push(self.arcs[a].to);
                }
            }
        }
        let mut paths = Vec::new();
        while let Some(first) = next[self.source].pop() {
            let mut verts = vec![source_vertex];
            let mut node = first;
            loop {
                let v = node / 2;
                verts.push(v);
                match next[node_out(v)].pop() {
                    Some(n) => node = n,
                    None => break,
                }
            }
            paths.push(VertexPath::new(verts));
        }
        paths
    }
}

fn check_vertex(g: &Graph, v: usize) -> Result<(), ConnectivityError> {
    if v >= g.n() {
        Err(ConnectivityError::OutOfRange { vertex: v, n: g.n() })
    } else {
        Ok(())
    }
}

/// Maximum number of internally disjoint `x`–`y` paths, stopping at `cap`.
pub fn local_connectivity(g: &Graph, x: usize, y: usize, cap: usize) -> usize {
    let mut sink_cap = vec![0; g.n()];
    sink_cap[y] = g.n() as i32;
    let mut net = SplitNetwork::build(g, x, &sink_cap, &vec![false; g.n()]);
    let mut flow = 0;
    while flow < cap && net.augment_any() {
        flow += 1;
    }
    flow
}

/// κ(g): `n - 1` for complete graphs, otherwise the least local
/// connectivity over non-adjacent pairs (0 when disconnected).
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    let n = g.n();
    if n < 2 {
        return Err(ConnectivityError::TooFewVertices(n));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut best = g.min_degree();
    // some vertex among the first best + 1 lies outside a minimum cut
    let mut u = 0;
    while u <= best && u < n {
        for v in u + 1..n {
            if !g.has_edge(u, v) {
                best = best.min(local_connectivity(g, u, v, best));
            }
        }
        u += 1;
    }
    Ok(best)
}

/// `k` internally disjoint `x`–`y` paths with the fewest total edges, or
/// `None` when no such family exists.
pub fn internally_disjoint_paths(
    g: &Graph,
    x: usize,
    y: usize,
    k: usize,
) -> Result<Option<Vec<VertexPath>>, ConnectivityError> {
    check_vertex(g, x)?;
    check_vertex(g, y)?;
    if x == y {
        return Err(ConnectivityError::SameEndpoints(x));
    }
    let mut sink_cap = vec![0; g.n()];
    sink_cap[y] = k as i32;
    let mut net = SplitNetwork::build(g, x, &sink_cap, &vec![false; g.n()]);
    for _ in 0..k {
        if !net.augment_cheapest() {
            return Ok(None);
        }
    }
    let mut paths = net.paths(x);
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(Some(paths))
}

/// A k-fan from `x` to `targets` with the fewest total edges, or `None` when
/// none exists.
pub fn find_fan(g: &Graph, x: usize, targets: &[usize], k: usize) -> Result<Option<FanPaths>, ConnectivityError> {
    find_fan_avoiding(g, x, targets, k, &[])
}

/// [`find_fan`] in `g` with the `avoid` vertices deleted.
pub fn find_fan_avoiding(
    g: &Graph,
    x: usize,
    targets: &[usize],
    k: usize,
    avoid: &[usize],
) -> Result<Option<FanPaths>, ConnectivityError> {
    check_vertex(g, x)?;
    let mut sink_cap = vec![0; g.n()];
    for &y in targets {
        check_vertex(g, y)?;
        sink_cap[y] = 1;
    }
    if sink_cap[x] > 0 {
        return Err(ConnectivityError::SourceInTargets(x));
    }
    let size = sink_cap.iter().filter(|&&c| c > 0).count();
    if size < k {
        return Err(ConnectivityError::TargetSetTooSmall { size, k });
    }
    let mut blocked = vec![false; g.n()];
    for &v in avoid {
        check_vertex(g, v)?;
        blocked[v] = true;
    }
    let mut net = SplitNetwork::build(g, x, &sink_cap, &blocked);
    for _ in 0..k {
        if !net.augment_cheapest() {
            return Ok(None);
        }
    }
    let mut paths = net.paths(x);
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut sorted_targets = targets.to_vec();
    sorted_targets.sort_unstable();
    sorted_targets.dedup();
    Ok(Some(FanPaths {
        source: x,
        targets: sorted_targets,
        paths,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;

    fn gen(f: Family) -> Graph {
        f.generate(0).unwrap()
    }

    fn paths_of(ps: &[VertexPath]) -> Vec<Vec<usize>> {
        ps.iter().map(|p| p.vertices().to_vec()).collect()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(vertex_connectivity(&gen(Family::Complete(4))), Ok(3));
        assert_eq!(vertex_connectivity(&gen(Family::Cycle(5))), Ok(2));
        assert_eq!(vertex_connectivity(&gen(Family::Petersen)), Ok(3));
        assert_eq!(vertex_connectivity(&gen(Family::Path(4))), Ok(1));
        assert_eq!(vertex_connectivity(&gen(Family::Wheel(7))), Ok(3));
        assert_eq!(vertex_connectivity(&Graph::empty(3)), Ok(0));
        assert_eq!(
            vertex_connectivity(&Graph::empty(1)),
            Err(ConnectivityError::TooFewVertices(1))
        );
    }

    #[test]
    fn disjoint_paths_in_k4() {
        let k4 = gen(Family::Complete(4));
        let ps = internally_disjoint_paths(&k4, 0, 1, 3).unwrap().unwrap();
        assert_eq!(paths_of(&ps), vec![vec![0, 1], vec![0, 2, 1], vec![0, 3, 1]]);
    }

    #[test]
    fn disjoint_paths_insufficient_and_errors() {
        let c6 = gen(Family::Cycle(6));
        assert_eq!(internally_disjoint_paths(&c6, 0, 3, 3), Ok(None));
        assert_eq!(internally_disjoint_paths(&c6, 0, 3, 2).unwrap().unwrap().len(), 2);
        assert_eq!(
            internally_disjoint_paths(&c6, 2, 2, 1),
            Err(ConnectivityError::SameEndpoints(2))
        );
    }

    #[test]
    fn petersen_pairs_have_three_paths() {
        let p = gen(Family::Petersen);
        for x in 0..10 {
            for y in x + 1..10 {
                let ps = internally_disjoint_paths(&p, x, y, 3).unwrap().unwrap();
                assert_eq!(ps.len(), 3);
                let mut inner: Vec<usize> = ps.iter().flat_map(|q| q.internal().to_vec()).collect();
                let total = inner.len();
                inner.sort_unstable();
                inner.dedup();
                assert_eq!(inner.len(), total);
                assert!(ps
                    .iter()
                    .all(|q| q.first() == x && q.last() == y && q.is_simple_path_in(&p)));
            }
        }
    }

    #[test]
    fn fan_in_k4() {
        let k4 = gen(Family::Complete(4));
        let fan = find_fan(&k4, 0, &[1, 2, 3], 3).unwrap().unwrap();
        assert_eq!(paths_of(&fan.paths), vec![vec![0, 1], vec![0, 2], vec![0, 3]]);
        fan.validate(&k4).unwrap();
    }

    #[test]
    fn fan_in_wheel() {
        let w6 = gen(Family::Wheel(6));
        let fan = find_fan(&w6, 1, &[3, 4], 2).unwrap().unwrap();
        fan.validate(&w6).unwrap();
        let mut ends: Vec<usize> = fan.paths.iter().map(VertexPath::last).collect();
        ends.sort_unstable();
        assert_eq!(ends, vec![3, 4]);
        assert_eq!(fan.total_len(), 4);
    }

    #[test]
    fn fan_insufficient_and_errors() {
        let c5 = gen(Family::Cycle(5));
        assert_eq!(
            find_fan(&c5, 0, &[2, 3], 3),
            Err(ConnectivityError::TargetSetTooSmall { size: 2, k: 3 })
        );
        assert_eq!(find_fan(&c5, 0, &[1, 2, 3], 3), Ok(None));
        assert_eq!(find_fan(&c5, 0, &[0, 2], 1), Err(ConnectivityError::SourceInTargets(0)));
    }

    #[test]
    fn fan_prefers_short_paths() {
        // x=0 reaches {3,4,5} directly or through 1/2
        let g = Graph::from_edges(6, [(0, 1), (1, 3), (0, 2), (2, 4), (0, 5), (0, 4), (1, 5)]).unwrap();
        let fan = find_fan(&g, 0, &[3, 4, 5], 3).unwrap().unwrap();
        fan.validate(&g).unwrap();
        assert_eq!(fan.total_len(), 4);
        assert_eq!(fan.lengths(), vec![1, 1, 2]);
    }

    #[test]
    fn avoiding_removes_vertices() {
        let w6 = gen(Family::Wheel(6));
        // without the hub, rim vertex 1 reaches {3} only around the rim
        let fan = find_fan_avoiding(&w6, 1, &[3], 1, &[0]).unwrap().unwrap();
        assert_eq!(fan.paths[0].vertices(), &[1, 2, 3]);
        assert_eq!(find_fan_avoiding(&w6, 1, &[3, 4], 2, &[0, 2]).unwrap(), None);
    }
}
