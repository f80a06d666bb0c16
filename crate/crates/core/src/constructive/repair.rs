use super::{GrowState, REUSE_COLOR};
use crate::rainbow::Color;

/// Edges searched exhaustively; the rest take the reuse color.
const MAX_FREE_EDGES: usize = 10;
/// Complete assignments tried before giving up.
const MAX_LEAVES: u64 = 60_000;

/// Colors for every new edge of a repaired step, as `(edge id, color)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairPatch {
    pub colors: Vec<(usize, Color)>,
    /// Fresh colors the patch introduces.
    pub new_colors: u32,
}

/// Searches colorings of the edges joining `added` to H (and to each other)
/// using fresh colors `1..=budget` above H's colors plus the reuse color.
///
/// Edges among the added vertices come first, then each added vertex's
/// edges into H in turn, up to a fixed number of free edges. Fresh colors are
/// enumerated in canonical order before the reuse color, so a step that
/// needs only one color on every edge is found first. Returns `None` when no
/// assignment passes.
pub fn repair_step(state: &GrowState<'_>, added: &[usize], budget: u32) -> Option<RepairPatch> {
    if added.is_empty() || added.iter().any(|&v| state.contains(v)) {
        return None;
    }
    let host = state.host();
    let ids = state.new_edge_ids(added);
    let is_added = |v: usize| added.contains(&v);
    let mut free: Vec<usize> = ids
        .iter()
        .copied()
        .filter(|&id| {
            let e = host.edges()[id];
            is_added(e.0) && is_added(e.1)
        })
        .collect();
    let mut queues: Vec<Vec<usize>> = added
        .iter()
        .map(|&v| {
            ids.iter()
                .copied()
                .filter(|&id| host.edges()[id].contains(v) && !is_added(host.edges()[id].other(v)))
                .collect()
        })
        .collect();
    let mut round = 0;
    while free.len() < MAX_FREE_EDGES && queues.iter().any(|q| round < q.len()) {
        for q in &mut queues {
            if round < q.len() && free.len() < MAX_FREE_EDGES {
                free.push(q[round]);
            }
        }
        round += 1;
    }
    let mut search = Search {
        state,
        added,
        base: state.colors_used(),
        budget,
        patch: ids.iter().map(|&id| (id, REUSE_COLOR)).collect(),
        slot_of: free
            .iter()
            .map(|id| ids.iter().position(|x| x == id).unwrap())
            .collect(),
        leaves: 0,
    };
    if search.dfs(0, 0) {
        let new_colors = search
            .patch
            .iter()
            .map(|&(_, c)| c.saturating_sub(search.base))
            .max()
            .unwrap_or(0);
        Some(RepairPatch {
            colors: search.patch,
            new_colors,
        })
    } else {
        None
    }
}

struct Search<'s, 'g> {
    state: &'s GrowState<'g>,
    added: &'s [usize],
    base: Color,
    budget: u32,
    patch: Vec<(usize, Color)>,
    /// index into `patch` for each free edge
    slot_of: Vec<usize>,
    leaves: u64,
}

impl Search<'_, '_> {
    fn dfs(&mut self, i: usize, max_fresh: u32) -> bool {
        if self.leaves >= MAX_LEAVES {
            return false;
        }
        if i == self.slot_of.len() {
            self.leaves += 1;
            return self.state.check_extension(self.added, &self.patch).is_none();
        }
        let top = (max_fresh + 1).min(self.budget);
        let slot = self.slot_of[i];
        for fresh in 1..=top {
            self.patch[slot].1 = self.base + fresh;
            if self.dfs(i + 1, max_fresh.max(fresh)) {
                return true;
            }
        }
        self.patch[slot].1 = REUSE_COLOR;
        self.dfs(i + 1, max_fresh)
    }
}
