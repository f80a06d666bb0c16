use log::warn;

use super::{
    budget_row, repair_step, ColorSlot, ConstructError, ExtensionPlan, PlanKind, StepKind, StepRecord, REUSE_COLOR,
};
use crate::connectivity::vertex_connectivity;
use crate::graph::{girth, shortest_cycle, Edge, Graph};
use crate::rainbow::{cycle_color_sequence, first_failure, Color, ColoredAdjacency, EdgeColoring, Witness};

/// The subgraph H grown so far: its vertices, its colored edges and the
/// step trace.
///
/// H is always an induced subgraph of the host: whenever a vertex joins, every
/// host edge to the rest of H joins with it.
#[derive(Debug, Clone)]
pub struct GrowState<'g> {
    host: &'g Graph,
    in_h: Vec<bool>,
    colors: Vec<Option<Color>>,
    k: Color,
    trace: Vec<StepRecord>,
    /// Budget checks off (forced run on a graph with κ < 3).
    unbounded: bool,
}

impl<'g> GrowState<'g> {
    /// A state over an explicit H: `colored` lists every host edge inside
    /// `vertices` with its color. Fails unless H is connected, induced,
    /// rainbow connected and within budget.
    pub fn from_parts(host: &'g Graph, vertices: &[usize], colored: &[(Edge, Color)]) -> Result<Self, ConstructError> {
        let mut state = GrowState {
            host,
            in_h: vec![false; host.n()],
            colors: vec![None; host.m()],
            k: 0,
            trace: Vec::new(),
            unbounded: false,
        };
        for &v in vertices {
            if v >= host.n() {
                return Err(ConstructError::PlanMismatch(format!("vertex {v} not in host")));
            }
            state.in_h[v] = true;
        }
        for &(e, c) in colored {
            let id = host
                .edge_id(e.0, e.1)
                .filter(|_| state.in_h[e.0] && state.in_h[e.1] && c > 0)
                .ok_or_else(|| ConstructError::PlanMismatch(format!("edge {e} is not an H edge")))?;
            state.colors[id] = Some(c);
        }
        if let Some(e) = host
            .edges()
            .iter()
            .enumerate()
            .find(|&(id, e)| state.in_h[e.0] && state.in_h[e.1] && state.colors[id].is_none())
        {
            return Err(ConstructError::PlanMismatch(format!("H edge {} has no color", e.1)));
        }
        let mut used: Vec<Color> = state.colors.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        if used.iter().enumerate().any(|(i, &c)| c != i as Color + 1) {
            return Err(ConstructError::PlanMismatch("colors must be 1..k".into()));
        }
        state.k = used.len() as Color;
        if !state.h_is_connected() {
            return Err(ConstructError::PlanMismatch("H is not connected".into()));
        }
        if let Some(w) = state.find_failure() {
            return Err(ConstructError::PlanMismatch(format!(
                "H is not rainbow connected at {w:?}"
            )));
        }
        if !state.within_budget() {
            return Err(ConstructError::PlanMismatch(format!(
                "5k = {} exceeds 3h - 1 = {}",
                5 * state.k,
                3 * state.h() as i64 - 1
            )));
        }
        state.push_record(StepKind::Seed, Vec::new(), 0, false, false, false);
        Ok(state)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn h(&self) -> usize {
        self.in_h.iter().filter(|&&b| b).count()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_h[v]
    }

    pub fn h_vertices(&self) -> Vec<usize> {
        (0..self.host.n()).filter(|&v| self.in_h[v]).collect()
    }

    pub fn outside(&self) -> Vec<usize> {
        (0..self.host.n()).filter(|&v| !self.in_h[v]).collect()
    }

    pub fn outside_count(&self) -> usize {
        self.host.n() - self.h()
    }

    pub fn colors_used(&self) -> Color {
        self.k
    }

    pub fn trace(&self) -> &[StepRecord] {
        &self.trace
    }

    pub fn edge_color(&self, u: usize, v: usize) -> Option<Color> {
        self.host.edge_id(u, v).and_then(|id| self.colors[id])
    }

    /// Colored edges of H.
    pub fn h_edges(&self) -> Vec<(Edge, Color)> {
        self.host
            .edges()
            .iter()
            .zip(&self.colors)
            .filter_map(|(&e, c)| c.map(|c| (e, c)))
            .collect()
    }

    /// Neighbors of `v` inside H.
    pub fn h_neighbors(&self, v: usize) -> Vec<usize> {
        self.host
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.in_h[w])
            .collect()
    }

    #[allow(clippy::int_plus_one)]
    pub fn within_budget(&self) -> bool {
        self.unbounded || 5 * self.k as i64 <= 3 * self.h() as i64 - 1
    }

    /// Budget left for a step adding `vertices` with `fresh` colors.
    #[allow(clippy::int_plus_one)]
    pub(crate) fn step_fits(&self, vertices: usize, fresh: u32) -> bool {
        self.unbounded || 5 * (self.k + fresh) as i64 <= 3 * (self.h() + vertices) as i64 - 1
    }

    pub(crate) fn unbounded(&self) -> bool {
        self.unbounded
    }

    fn h_is_connected(&self) -> bool {
        let verts = self.h_vertices();
        let Some(&start) = verts.first() else {
            return true;
        };
        let mut seen = vec![false; self.host.n()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in self.host.neighbors(u) {
                if self.in_h[w] && !seen[w] && self.edge_color(u, w).is_some() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        verts.iter().all(|&v| seen[v])
    }

    /// Smallest pair of H with no rainbow path inside H.
    pub fn find_failure(&self) -> Option<Witness> {
        let adj = ColoredAdjacency::from_colored_edges(self.host.n(), self.h_edges()).ok()?;
        first_failure(&adj, self.host.n(), &self.in_h)
    }

    /// Checks H plus `added` with the new edge colors `patch`. Pairs inside
    /// the old H keep their rainbow paths, so only pairs touching `added`
    /// are searched.
    pub(crate) fn check_extension(&self, added: &[usize], patch: &[(usize, Color)]) -> Option<Witness> {
        let mut members = self.in_h.clone();
        for &v in added {
            members[v] = true;
        }
        let edges = self
            .h_edges()
            .into_iter()
            .chain(patch.iter().map(|&(id, c)| (self.host.edges()[id], c)));
        let adj = ColoredAdjacency::from_colored_edges(self.host.n(), edges).ok()?;
        let mut sources = added.to_vec();
        sources.sort_unstable();
        for &u in &sources {
            let found = adj.rainbow_reach(u, &members);
            if let Some(v) = (0..self.host.n()).find(|&v| members[v] && !found[v]) {
                return Some(Witness {
                    u: u.min(v),
                    v: u.max(v),
                });
            }
        }
        None
    }

    /// Host edges joining `added` to H or to each other.
    pub(crate) fn new_edge_ids(&self, added: &[usize]) -> Vec<usize> {
        let mut joins = vec![false; self.host.n()];
        for &v in added {
            joins[v] = true;
        }
        self.host
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                (joins[e.0] || joins[e.1]) && (joins[e.0] || self.in_h[e.0]) && (joins[e.1] || self.in_h[e.1])
            })
            .map(|(id, _)| id)
            .collect()
    }

    fn validate_plan(&self, plan: &ExtensionPlan) -> Result<(), ConstructError> {
        let mut joins = vec![false; self.host.n()];
        for &v in &plan.vertices_added {
            if v >= self.host.n() || self.in_h[v] || std::mem::replace(&mut joins[v], true) {
                return Err(ConstructError::PlanMismatch(format!(
                    "vertex {v} is not a distinct outside vertex"
                )));
            }
        }
        for &(e, slot) in &plan.edges_colored {
            let inside = |w: usize| joins[w] || self.in_h[w];
            if self.host.edge_id(e.0, e.1).is_none() || !inside(e.0) || !inside(e.1) || !(joins[e.0] || joins[e.1]) {
                return Err(ConstructError::PlanMismatch(format!("edge {e} is not a new edge of H")));
            }
            if slot == ColorSlot::Fresh(0) {
                return Err(ConstructError::PlanMismatch("fresh slots are 1-based".into()));
            }
        }
        Ok(())
    }

    fn slot_color(&self, slot: ColorSlot) -> Color {
        match slot {
            ColorSlot::Fresh(i) => self.k + i,
            ColorSlot::Reuse => REUSE_COLOR,
        }
    }

    /// Colors the plan gives to every new edge.
    pub(crate) fn plan_patch(&self, plan: &ExtensionPlan) -> Vec<(usize, Color)> {
        self.new_edge_ids(&plan.vertices_added)
            .into_iter()
            .map(|id| {
                let e = self.host.edges()[id];
                (id, self.slot_color(plan.slot_of(e).unwrap_or(ColorSlot::Reuse)))
            })
            .collect()
    }

    /// True when the plan's own coloring passes the checker.
    pub(crate) fn plan_passes(&self, plan: &ExtensionPlan) -> bool {
        self.validate_plan(plan).is_ok()
            && self
                .check_extension(&plan.vertices_added, &self.plan_patch(plan))
                .is_none()
    }

    /// Absorbs `plan` into H after checking it; a failing coloring is
    /// replaced by [`repair_step`] within the plan's fresh-color count.
    pub fn apply_extension(&mut self, plan: &ExtensionPlan) -> Result<(), ConstructError> {
        self.validate_plan(plan)?;
        let added = &plan.vertices_added;
        let mut patch = self.plan_patch(plan);
        let mut repaired = false;
        if let Some(witness) = self.check_extension(added, &patch) {
            warn!(
                "{} step adding {:?} fails the checker at {:?}; repairing",
                plan.kind, added, witness
            );
            let budget = plan.new_colors();
            match repair_step(self, added, budget) {
                Some(fix) => {
                    patch = fix.colors;
                    repaired = true;
                }
                None => {
                    return Err(ConstructError::RepairFailed {
                        kind: plan.kind,
                        added: added.clone(),
                        witness,
                        budget,
                        trace: self.trace.iter().map(ToString::to_string).collect(),
                    })
                }
            }
        }
        self.commit(plan, patch, repaired)
    }

    fn commit(
        &mut self,
        plan: &ExtensionPlan,
        patch: Vec<(usize, Color)>,
        repaired: bool,
    ) -> Result<(), ConstructError> {
        let old_h = self.h();
        let old_k = self.k;
        for &v in &plan.vertices_added {
            self.in_h[v] = true;
        }
        for (id, c) in patch {
            self.colors[id] = Some(c);
            self.k = self.k.max(c);
        }
        let new_colors = self.k - old_k;
        let record = self.push_record(
            StepKind::Plan(plan.kind),
            plan.vertices_added.clone(),
            new_colors,
            plan.fallback,
            plan.recentered,
            repaired,
        );
        if self.unbounded {
            return Ok(());
        }
        if !record.within_budget() {
            return Err(ConstructError::BudgetViolation {
                step: record.step,
                detail: record.to_string(),
            });
        }
        if let Some((dh, dk)) = budget_row(plan) {
            if self.h() - old_h != dh || new_colors > dk {
                return Err(ConstructError::BudgetViolation {
                    step: record.step,
                    detail: format!(
                        "{} added {} vertices and {} colors, table allows ({dh}, {dk})",
                        plan.kind,
                        self.h() - old_h,
                        new_colors
                    ),
                });
            }
        }
        Ok(())
    }

    fn push_record(
        &mut self,
        kind: StepKind,
        added: Vec<usize>,
        new_colors: u32,
        fallback: bool,
        recentered: bool,
        repaired: bool,
    ) -> StepRecord {
        let h = self.h();
        let budget_rhs = if kind == StepKind::Plan(PlanKind::FinalAbsorb) {
            3 * self.host.n() as i64 + 3
        } else {
            3 * h as i64 - 1
        };
        let record = StepRecord {
            step: self.trace.len(),
            kind,
            added,
            new_colors,
            h,
            k: self.k,
            budget_rhs,
            fallback,
            recentered,
            repaired,
        };
        self.trace.push(record.clone());
        record
    }

    /// The host coloring once H spans every vertex.
    pub fn total_coloring(&self) -> Result<EdgeColoring, ConstructError> {
        let colors = self
            .colors
            .iter()
            .enumerate()
            .map(|(id, c)| {
                c.ok_or_else(|| ConstructError::PlanMismatch(format!("edge {} uncolored", self.host.edges()[id])))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EdgeColoring::new(self.host, colors)?)
    }
}

/// The starting H: a triangle with one color, a shortest cycle `C_k`
/// (`k != 5`) with ⌈k/2⌉ colors, or a 5-cycle plus a pendant edge with
/// three colors.
pub fn seed_subgraph(g: &Graph) -> Result<GrowState<'_>, ConstructError> {
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    if g.n() < 4 {
        return Err(ConstructError::TooSmall(g.n()));
    }
    let kappa = vertex_connectivity(g).expect("n >= 4");
    if kappa < 3 {
        return Err(ConstructError::NotThreeConnected { kappa });
    }
    seed(g, false)
}

pub(crate) fn seed(g: &Graph, unbounded: bool) -> Result<GrowState<'_>, ConstructError> {
    let mut state = GrowState {
        host: g,
        in_h: vec![false; g.n()],
        colors: vec![None; g.m()],
        k: 0,
        trace: Vec::new(),
        unbounded,
    };
    let Some(len) = girth(g) else {
        // forced run on a tree: start from a single vertex
        state.in_h[0] = true;
        state.push_record(StepKind::Seed, vec![0], 0, false, false, false);
        return Ok(state);
    };
    let cycle = shortest_cycle(g).expect("graph has a cycle");
    let sequence: Vec<Color> = if len == 3 {
        vec![1, 1, 1]
    } else {
        cycle_color_sequence(len)
    };
    let paint = |state: &mut GrowState<'_>, rotation: usize| {
        for j in 0..len {
            let (u, v) = (cycle[j], cycle[(j + 1) % len]);
            state.in_h[u] = true;
            state.colors[g.edge_id(u, v).unwrap()] = Some(sequence[(j + rotation) % len]);
        }
        state.k = sequence.iter().copied().max().unwrap_or(0);
    };
    paint(&mut state, 0);
    let mut added = cycle.clone();
    if len == 5 {
        if let Some((on_cycle, pendant)) = cycle
            .iter()
            .flat_map(|&c| g.neighbors(c).iter().map(move |&w| (c, w)))
            .filter(|&(_, w)| !state.in_h[w])
            .min_by_key(|&(c, w)| (w, c))
        {
            // the pendant color depends on where the pendant sits relative to
            // the cycle's colors, so rotations of the cycle coloring are tried too
            let id = g.edge_id(on_cycle, pendant).unwrap();
            let (rotation, color) = (0..len)
                .flat_map(|r| (1..=3).map(move |c| (r, c)))
                .find(|&(r, c)| {
                    paint(&mut state, r);
                    state.check_extension(&[pendant], &[(id, c)]).is_none()
                })
                .expect("C5 plus a pendant edge has a rainbow 3-coloring");
            paint(&mut state, rotation);
            state.in_h[pendant] = true;
            state.colors[id] = Some(color);
            added.push(pendant);
        }
    }
    // H must be induced; a shortest cycle has no chords, so this is a no-op
    // except on forced runs
    for (id, e) in g.edges().iter().enumerate() {
        if state.in_h[e.0] && state.in_h[e.1] && state.colors[id].is_none() {
            state.colors[id] = Some(REUSE_COLOR);
        }
    }
    state.push_record(StepKind::Seed, added, state.k, false, false, false);
    if !state.within_budget() {
        return Err(ConstructError::BudgetViolation {
            step: 0,
            detail: state.trace[0].to_string(),
        });
    }
    Ok(state)
}

/// Final step for `r <= 3` outside vertices with at most `min(r, 2)` fresh
/// colors.
///
/// A vertex with one neighbor in H gets fresh color 1 on that edge; a vertex
/// with several gets fresh color 1 on the first and fresh color 2 on the
/// rest. Two vertices with two H-colors each meet through H via colors 1 and
/// 2. With three vertices, a vertex with a single H-neighbor has both other
/// outside vertices as neighbors (degree at least 3), so those pairs are
/// adjacent. For `r = 2` the two vertices simply get fresh colors 1 and 2.
pub fn final_absorb_plan(state: &GrowState<'_>) -> Result<ExtensionPlan, ConstructError> {
    let rest = state.outside();
    if rest.len() > 3 {
        return Err(ConstructError::TooManyOutside(rest.len()));
    }
    let mut edges = Vec::new();
    for (i, &v) in rest.iter().enumerate() {
        let nbrs = state.h_neighbors(v);
        for (j, &w) in nbrs.iter().enumerate() {
            let slot = match rest.len() {
                1 => ColorSlot::Fresh(1),
                2 => ColorSlot::Fresh(i as u32 + 1),
                _ if j == 0 => ColorSlot::Fresh(1),
                _ => ColorSlot::Fresh(2),
            };
            edges.push((Edge::new(v, w), slot));
        }
    }
    // fresh slots must be contiguous from 1
    if !edges.iter().any(|&(_, s)| s == ColorSlot::Fresh(1)) {
        for (_, s) in edges.iter_mut() {
            *s = ColorSlot::Fresh(1);
        }
    }
    Ok(ExtensionPlan::new(PlanKind::FinalAbsorb, rest, edges))
}

/// Absorbs the last `r <= 3` outside vertices, completing the coloring.
pub fn final_absorb(state: &mut GrowState<'_>) -> Result<(), ConstructError> {
    let plan = final_absorb_plan(state)?;
    match state.apply_extension(&plan) {
        Err(ConstructError::RepairFailed { .. }) if state.unbounded() => {
            // forced runs may have a leftover vertex with no H-neighbor
            while state.outside_count() > 0 {
                let v = state
                    .outside()
                    .into_iter()
                    .find(|&v| !state.h_neighbors(v).is_empty())
                    .expect("host is connected");
                let edges = state
                    .h_neighbors(v)
                    .into_iter()
                    .map(|w| (Edge::new(v, w), ColorSlot::Fresh(1)))
                    .collect();
                let mut single = ExtensionPlan::new(PlanKind::Fallback, vec![v], edges);
                single.fallback = true;
                state.apply_extension(&single)?;
            }
            Ok(())
        }
        other => other,
    }
}
