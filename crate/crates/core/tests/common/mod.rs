//! Brute-force oracles shared by the integration tests. None of these use the
//! library's algorithms beyond the graph container.

#![allow(dead_code)]

use rainbow_core::graph::Graph;
use rainbow_core::Edge;

/// Every simple path between every pair, checked for distinct colors.
pub fn brute_rainbow_connected(g: &Graph, colors: &[u32]) -> bool {
    (0..g.n()).all(|u| (u + 1..g.n()).all(|v| brute_rainbow_path(g, colors, u, v)))
}

pub fn brute_rainbow_path(g: &Graph, colors: &[u32], u: usize, v: usize) -> bool {
    fn walk(g: &Graph, colors: &[u32], at: usize, target: usize, on: &mut Vec<bool>, used: &mut Vec<u32>) -> bool {
        if at == target {
            return true;
        }
        for &w in g.neighbors(at) {
            if on[w] {
                continue;
            }
            let c = colors[g.edge_id(at, w).unwrap()];
            if used.contains(&c) {
                continue;
            }
            on[w] = true;
            used.push(c);
            let found = walk(g, colors, w, target, on, used);
            used.pop();
            on[w] = false;
            if found {
                return true;
            }
        }
        false
    }
    let mut on = vec![false; g.n()];
    on[u] = true;
    walk(g, colors, u, v, &mut on, &mut Vec::new())
}

fn connected_without(g: &Graph, removed: u64) -> bool {
    let alive: Vec<usize> = (0..g.n()).filter(|&v| removed >> v & 1 == 0).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = removed | 1 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if seen >> w & 1 == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    alive.iter().all(|&v| seen >> v & 1 == 1)
}

/// Size of the smallest vertex cut, or `n - 1` for complete graphs.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.n();
    if !connected_without(g, 0) {
        return 0;
    }
    for size in 1..n.saturating_sub(1) {
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize == size && !connected_without(g, mask) {
                return size;
            }
        }
    }
    n.saturating_sub(1)
}

/// Largest number of internally disjoint `x`–`y` paths, by trying every
/// family of paths (tiny graphs only).
pub fn brute_disjoint_paths(g: &Graph, x: usize, y: usize) -> usize {
    fn all_paths(g: &Graph, at: usize, y: usize, on: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<u64>) {
        if at == y {
            let internal = cur[1..cur.len() - 1].iter().fold(0u64, |m, &v| m | 1 << v);
            out.push(internal);
            return;
        }
        for &w in g.neighbors(at) {
            if !on[w] {
                on[w] = true;
                cur.push(w);
                all_paths(g, w, y, on, cur, out);
                cur.pop();
                on[w] = false;
            }
        }
    }
    let mut on = vec![false; g.n()];
    on[x] = true;
    let mut internals = Vec::new();
    all_paths(g, x, y, &mut on, &mut vec![x], &mut internals);
    // the direct edge is the only path with no internal vertex
    let direct = internals.iter().filter(|&&m| m == 0).count().min(1);
    internals.retain(|&m| m != 0);
    internals.sort_unstable();
    internals.dedup();
    fn best(sets: &[u64], used: u64) -> usize {
        sets.iter()
            .enumerate()
            .filter(|&(_, &s)| s & used == 0)
            .map(|(i, &s)| 1 + best(&sets[i + 1..], used | s))
            .max()
            .unwrap_or(0)
    }
    direct + best(&internals, 0)
}

/// Structural check of a fan: simple paths from `x`, ending in `targets`,
/// touching `targets` only at the end, pairwise sharing only `x`.
pub fn fan_is_valid(g: &Graph, x: usize, targets: &[usize], paths: &[Vec<usize>], k: usize) -> Result<(), String> {
    if paths.len() != k {
        return Err(format!("{} paths, wanted {k}", paths.len()));
    }
    let mut seen = vec![false; g.n()];
    for p in paths {
        if p.first() != Some(&x) || p.len() < 2 {
            return Err(format!("{p:?} does not start at {x}"));
        }
        for w in p.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(format!("{p:?} uses a non-edge"));
            }
        }
        let last = *p.last().unwrap();
        if !targets.contains(&last) {
            return Err(format!("{p:?} ends outside the target set"));
        }
        if p[..p.len() - 1].iter().any(|v| targets.contains(v)) {
            return Err(format!("{p:?} meets the target set early"));
        }
        for &v in &p[1..] {
            if std::mem::replace(&mut seen[v], true) {
                return Err(format!("vertex {v} shared between paths"));
            }
        }
    }
    Ok(())
}

/// All graphs on `n` vertices given by the bits of `mask` over the pairs in
/// lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    Graph::from_edges(n, edges).unwrap()
}

/// Ear attached to a colored K5 on 0..5: `x` (vertex 5) joins vertex 0
/// directly, reaches vertex 1 through `s` new vertices and vertex 2 through
/// `t` new vertices.
pub fn k5_with_ear(s: usize, t: usize) -> (Graph, Vec<usize>) {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    let x = 5;
    edges.push((x, 0));
    let mut next = 6;
    for (len, end) in [(s, 1), (t, 2)] {
        let mut prev = x;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, end));
    }
    (Graph::from_edges(next, edges).unwrap(), (0..5).collect())
}

pub fn k5_edges() -> Vec<(Edge, u32)> {
    (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| (Edge::new(u, v), 1)))
        .collect()
}

/// K5 on 0..5 plus the given extra edges on higher vertices.
pub fn k5_plus(n: usize, extra: &[(usize, usize)]) -> Graph {
    let mut edges: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    edges.extend_from_slice(extra);
    Graph::from_edges(n, edges).unwrap()
}
