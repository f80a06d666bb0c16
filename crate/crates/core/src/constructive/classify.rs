//! Picks the next absorption step for a grown subgraph H.
//!
//! Every outside vertex has a 3-fan into H (shortest total length). Vertices
//! whose fan mixes a direct edge with longer paths are the candidates; the
//! one with the longest pair of non-trivial paths decides the rule:
//! `s + t >= 3` is an ear, `s = t = 1` is Case 1, `s = 0, t = 2` is Case 2
//! (re-centered on the first internal vertex) and `s + t = 1` is Case 3.
//! Four outside vertices with three neighbors in H each are absorbed
//! together before the Case rules are tried.

use log::debug;

use super::{ear_slots, repair_step, ColorSlot, ConstructError, ExtensionPlan, GrowState, PlanKind};
use crate::connectivity::{find_fan, find_fan_avoiding, FanPaths};
use crate::graph::{Edge, VertexPath};

const F1: ColorSlot = ColorSlot::Fresh(1);
const F2: ColorSlot = ColorSlot::Fresh(2);
const F3: ColorSlot = ColorSlot::Fresh(3);
const R: ColorSlot = ColorSlot::Reuse;

/// Largest vertex set tried by the repair fallback.
const REPAIR_SET_LIMIT: usize = 6;

/// How the four-leaves step spreads its two colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FourLeavesStyle {
    /// Each vertex: first edge color 1, other two color 2.
    #[default]
    Symmetric,
    /// First edge color 1 for three of the vertices only; all nine other
    /// edges color 2.
    Literal,
}

#[derive(Default)]
struct Slots(Vec<(Edge, ColorSlot)>);

impl Slots {
    fn put(&mut self, u: usize, v: usize, slot: ColorSlot) -> &mut Self {
        self.0.push((Edge::new(u, v), slot));
        self
    }

    fn path(&mut self, p: &VertexPath, slots: &[ColorSlot]) -> &mut Self {
        for (e, &s) in p.edges().zip(slots) {
            self.0.push((e, s));
        }
        self
    }

    fn plan(&mut self, kind: PlanKind, added: Vec<usize>) -> ExtensionPlan {
        ExtensionPlan::new(kind, added, std::mem::take(&mut self.0))
    }
}

/// Four outside vertices with at least three neighbors in H each, absorbed
/// with two fresh colors on their first three H-edges.
pub fn four_leaves_plan(
    state: &GrowState<'_>,
    leaves: [usize; 4],
    style: FourLeavesStyle,
) -> Result<ExtensionPlan, ConstructError> {
    let mut slots = Slots::default();
    for (i, &x) in leaves.iter().enumerate() {
        let nbrs = state.h_neighbors(x);
        if nbrs.len() < 3 {
            return Err(ConstructError::PlanMismatch(format!(
                "vertex {x} has fewer than 3 neighbors in H"
            )));
        }
        for (j, &w) in nbrs.iter().take(3).enumerate() {
            let first = j == 0 && (style == FourLeavesStyle::Symmetric || i < 3);
            slots.put(x, w, if first { F1 } else { F2 });
        }
    }
    Ok(slots.plan(PlanKind::FourLeaves, leaves.to_vec()))
}

struct Candidate {
    x: usize,
    fan: FanPaths,
    /// internal vertices of the two longer paths
    s: usize,
    t: usize,
}

/// The next step for `state`, which must have at least four outside
/// vertices.
pub fn classify_extension(state: &GrowState<'_>) -> Result<ExtensionPlan, ConstructError> {
    let outside = state.outside();
    if outside.len() < 4 {
        return Err(ConstructError::TooFewOutside(outside.len()));
    }
    let h_vertices = state.h_vertices();
    let fans: Vec<(usize, Option<FanPaths>)> = outside
        .iter()
        .map(|&x| (x, find_fan(state.host(), x, &h_vertices, 3).ok().flatten()))
        .collect();
    let mut candidates: Vec<Candidate> = fans
        .iter()
        .filter_map(|(x, fan)| {
            let fan = fan.as_ref()?;
            let lens = fan.lengths();
            (lens[0] == 1 && lens[2] >= 2).then(|| Candidate {
                x: *x,
                fan: fan.clone(),
                s: lens[1] - 1,
                t: lens[2] - 1,
            })
        })
        .collect();
    candidates.sort_by_key(|c| (std::cmp::Reverse(c.s + c.t), c.x));

    if let Some(c) = candidates.first().filter(|c| c.s + c.t >= 3) {
        return Ok(ear_plan(c));
    }
    let leaves: Vec<usize> = outside
        .iter()
        .copied()
        .filter(|&x| state.h_neighbors(x).len() >= 3)
        .collect();
    if leaves.len() >= 4 {
        return four_leaves_plan(
            state,
            [leaves[0], leaves[1], leaves[2], leaves[3]],
            FourLeavesStyle::Symmetric,
        );
    }
    for c in &candidates {
        let plan = match (c.s, c.t) {
            (1, 1) => case1(state, &Case1::from_fan(&c.fan), false),
            (0, 2) => case2(state, &c.fan),
            (0, 1) => case3(state, &c.fan, &leaves),
            _ => None,
        };
        if let Some(plan) = plan {
            return Ok(plan);
        }
    }
    fallback(state, &fans)
}

fn ear_plan(c: &Candidate) -> ExtensionPlan {
    let (p1, p2) = (&c.fan.paths[1], &c.fan.paths[2]);
    let mut vertices = p1.reversed().vertices().to_vec();
    vertices.extend_from_slice(&p2.vertices()[1..]);
    let ear = VertexPath::new(vertices);
    let slots = ear_slots(ear.len());
    let mut plan = Slots::default()
        .path(&ear, &slots)
        .plan(PlanKind::Ear, ear.internal().to_vec());
    plan.ear = Some((c.s, c.t));
    plan
}

/// Center `x` joined to H by `a u1 x`, `x v1 b` and the edge `x c0`.
struct Case1 {
    x: usize,
    u1: usize,
    v1: usize,
    a: usize,
    b: usize,
    c0: usize,
}

impl Case1 {
    fn from_fan(fan: &FanPaths) -> Self {
        let (p1, p2) = (fan.paths[1].vertices(), fan.paths[2].vertices());
        Case1 {
            x: fan.source,
            u1: p1[1],
            v1: p2[1],
            a: p1[2],
            b: p2[2],
            c0: fan.paths[0].last(),
        }
    }

    fn core(&self) -> [usize; 3] {
        [self.x, self.u1, self.v1]
    }

    /// The colors shared by the four subcases.
    fn base(&self) -> Slots {
        let mut slots = Slots::default();
        slots
            .put(self.a, self.u1, F1)
            .put(self.x, self.c0, F1)
            .put(self.x, self.v1, F1)
            .put(self.u1, self.x, F2)
            .put(self.v1, self.b, F2);
        slots
    }

    fn with(&self, more: &[usize]) -> Vec<usize> {
        let mut v = self.core().to_vec();
        v.extend_from_slice(more);
        v
    }
}

/// A second route `x x1 c` from the center through another outside vertex.
fn fig2a(ctx: &Case1, x1: usize, c: usize) -> ExtensionPlan {
    Slots::default()
        .put(ctx.a, ctx.u1, F1)
        .put(ctx.b, ctx.v1, F1)
        .put(ctx.u1, ctx.x, F2)
        .put(c, x1, F2)
        .put(ctx.v1, ctx.x, R)
        .put(ctx.x, x1, R)
        .plan(PlanKind::Case1Fig2A, ctx.with(&[x1]))
}

/// H-neighbor of `v`, preferring ones away from the given vertices.
fn pick_h_neighbor(state: &GrowState<'_>, v: usize, away: &[usize]) -> Option<usize> {
    state.h_neighbors(v).into_iter().min_by_key(|w| (away.contains(w), *w))
}

fn case1(state: &GrowState<'_>, ctx: &Case1, recentered: bool) -> Option<ExtensionPlan> {
    let core = ctx.core();
    let mark = |mut p: ExtensionPlan| {
        p.recentered = recentered;
        p
    };
    for &x1 in state.host().neighbors(ctx.x) {
        if state.contains(x1) || core.contains(&x1) {
            continue;
        }
        if let Some(c) = pick_h_neighbor(state, x1, &[ctx.a, ctx.b]) {
            return Some(mark(fig2a(ctx, x1, c)));
        }
    }
    let h_vertices = state.h_vertices();
    for x1 in state.outside() {
        if core.contains(&x1) {
            continue;
        }
        let Some(fan) = find_fan_avoiding(state.host(), x1, &h_vertices, 3, &core)
            .ok()
            .flatten()
        else {
            continue;
        };
        let p = &fan.paths;
        let mut slots = ctx.base();
        let plan = match fan.lengths()[..] {
            [1, 1, 1] => slots
                .path(&p[0], &[F1])
                .path(&p[1], &[F1])
                .path(&p[2], &[F2])
                .plan(PlanKind::Case1Sub11, ctx.with(&[x1])),
            [1, 1, 2] => slots
                .path(&p[0], &[F1])
                .path(&p[1], &[F2])
                .path(&p[2], &[F1, F3])
                .plan(PlanKind::Case1Sub12, ctx.with(&[x1, p[2].vertices()[1]])),
            [1, 2, 2] => slots
                .path(&p[0], &[F3])
                .path(&p[1], &[F2, F1])
                .path(&p[2], &[F1, F3])
                .plan(
                    PlanKind::Case1Sub13,
                    ctx.with(&[x1, p[1].vertices()[1], p[2].vertices()[1]]),
                ),
            [1, 1, 3] => slots
                .path(&p[0], &[F3])
                .path(&p[1], &[F3])
                .path(&p[2], &[F2, F1, F3])
                .plan(
                    PlanKind::Case1Sub14,
                    ctx.with(&[x1, p[2].vertices()[1], p[2].vertices()[2]]),
                ),
            _ => continue,
        };
        return Some(mark(plan));
    }
    None
}

/// `x a` and `x c0` are edges, `x v1 v2 b` is the long path. A third route
/// from `v1` into H turns `v1` into the center of a Case 1 configuration.
fn case2(state: &GrowState<'_>, fan: &FanPaths) -> Option<ExtensionPlan> {
    let x = fan.source;
    let a = fan.paths[1].last();
    let long = fan.paths[2].vertices();
    let (v1, v2, b) = (long[1], long[2], long[3]);
    let host = state.host();
    if let Some(c) = state.h_neighbors(v1).into_iter().find(|&c| c != a && c != b) {
        let ctx = Case1 {
            x: v1,
            u1: x,
            v1: v2,
            a,
            b,
            c0: c,
        };
        return case1(state, &ctx, true);
    }
    for &y in host.neighbors(v1) {
        if state.contains(y) || y == x || y == v2 {
            continue;
        }
        if let Some(c) = state.h_neighbors(y).into_iter().find(|&c| c != a && c != b) {
            let ctx = Case1 {
                x: v1,
                u1: x,
                v1: v2,
                a,
                b,
                c0: c,
            };
            let mut plan = fig2a(&ctx, y, c);
            plan.recentered = true;
            return Some(plan);
        }
    }
    None
}

/// `x c0`, `x a` are edges and `x v1 b` is the only longer path.
fn case3(state: &GrowState<'_>, fan: &FanPaths, leaves: &[usize]) -> Option<ExtensionPlan> {
    let x = fan.source;
    let c0 = fan.paths[0].last();
    let a = fan.paths[1].last();
    let long = fan.paths[2].vertices();
    let (v1, b) = (long[1], long[2]);
    let others: Vec<usize> = leaves.iter().copied().filter(|&w| w != x && w != v1).collect();
    if let [x1, x2, ..] = others[..] {
        let mut slots = Slots::default();
        slots.put(x, c0, F1).put(x, v1, F1).put(x, a, F2).put(v1, b, F2);
        for xi in [x1, x2] {
            let nbrs = state.h_neighbors(xi);
            slots.put(xi, nbrs[0], F1).put(xi, nbrs[1], F1).put(xi, nbrs[2], F2);
        }
        return Some(slots.plan(PlanKind::Case3AllShort, vec![x, v1, x1, x2]));
    }
    let h_vertices = state.h_vertices();
    for x1 in state.outside() {
        if x1 == x || x1 == v1 {
            continue;
        }
        let Some(f) = find_fan_avoiding(state.host(), x1, &h_vertices, 3, &[x, v1])
            .ok()
            .flatten()
        else {
            continue;
        };
        if f.lengths() != [1, 1, 2] {
            continue;
        }
        let v1p = f.paths[2].vertices()[1];
        let plan = Slots::default()
            .put(x, c0, F1)
            .put(x, a, F1)
            .put(x, v1, F1)
            .put(v1, b, F1)
            .path(&f.paths[0], &[F2])
            .path(&f.paths[1], &[F2])
            .path(&f.paths[2], &[F2, F2])
            .plan(PlanKind::Case3OneLong, vec![x, v1, x1, v1p]);
        return Some(plan);
    }
    None
}

fn flagged(mut plan: ExtensionPlan) -> ExtensionPlan {
    plan.kind = PlanKind::Fallback;
    plan.fallback = true;
    plan
}

/// Steps for configurations the rules above do not cover. Each candidate is
/// checked before it is returned, and must keep the running budget.
fn fallback(state: &GrowState<'_>, fans: &[(usize, Option<FanPaths>)]) -> Result<ExtensionPlan, ConstructError> {
    let fits =
        |plan: &ExtensionPlan| state.step_fits(plan.vertices_added.len(), plan.new_colors()) && state.plan_passes(plan);
    // an ear through two paths of some fan
    for (_, fan) in fans {
        let Some(fan) = fan else { continue };
        let p = &fan.paths;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                let internal = p[i].len() + p[j].len() - 1;
                if internal == 1 || internal == 3 {
                    continue;
                }
                let mut vertices = p[i].reversed().vertices().to_vec();
                vertices.extend_from_slice(&p[j].vertices()[1..]);
                let ear = VertexPath::new(vertices);
                let plan = flagged(
                    Slots::default()
                        .path(&ear, &ear_slots(ear.len()))
                        .plan(PlanKind::Ear, ear.internal().to_vec()),
                );
                if fits(&plan) {
                    debug!("fallback ear through {}", fan.source);
                    return Ok(plan);
                }
            }
        }
    }
    let outside = state.outside();
    // two adjacent outside vertices hanging between distinct H vertices
    for &y in &outside {
        for &z in state.host().neighbors(y) {
            if z < y || state.contains(z) {
                continue;
            }
            let (ny, nz) = (state.h_neighbors(y), state.h_neighbors(z));
            let Some((a, b)) = ny
                .iter()
                .flat_map(|&a| nz.iter().map(move |&b| (a, b)))
                .find(|(a, b)| a != b)
            else {
                continue;
            };
            let plan = flagged(
                Slots::default()
                    .put(a, y, F1)
                    .put(y, z, R)
                    .put(z, b, F1)
                    .plan(PlanKind::Ear, vec![y, z]),
            );
            if fits(&plan) {
                return Ok(plan);
            }
        }
    }
    // four vertices with two H-neighbors: first edge color 1, rest color 2
    let doubles: Vec<usize> = outside
        .iter()
        .copied()
        .filter(|&v| state.h_neighbors(v).len() >= 2)
        .collect();
    if doubles.len() >= 4 {
        let mut slots = Slots::default();
        for &v in &doubles[..4] {
            for (j, w) in state.h_neighbors(v).into_iter().enumerate() {
                slots.put(v, w, if j == 0 { F1 } else { F2 });
            }
        }
        let plan = flagged(slots.plan(PlanKind::FourLeaves, doubles[..4].to_vec()));
        if fits(&plan) {
            return Ok(plan);
        }
    }
    // a single vertex, when the budget has slack for it
    for &v in &outside {
        let nbrs = state.h_neighbors(v);
        if nbrs.is_empty() {
            continue;
        }
        let mut slots = Slots::default();
        for w in nbrs {
            slots.put(v, w, F1);
        }
        let plan = flagged(slots.plan(PlanKind::Fallback, vec![v]));
        if fits(&plan) {
            return Ok(plan);
        }
    }
    // exhaustive search over a vertex and its fan
    for (x, fan) in fans {
        let mut set = vec![*x];
        if let Some(fan) = fan {
            set.extend(fan.paths.iter().flat_map(|p| p.internal().iter().copied()));
        }
        if set.len() > REPAIR_SET_LIMIT {
            continue;
        }
        let q = (3 * (state.h() + set.len()) as i64 - 1) / 5 - state.colors_used() as i64;
        if q < 0 {
            continue;
        }
        if let Some(patch) = repair_step(state, &set, q as u32) {
            let base = state.colors_used();
            let edges = patch
                .colors
                .iter()
                .map(|&(id, c)| {
                    let slot = if c > base { ColorSlot::Fresh(c - base) } else { R };
                    (state.host().edges()[id], slot)
                })
                .collect();
            return Ok(flagged(ExtensionPlan::new(PlanKind::Fallback, set, edges)));
        }
    }
    Err(ConstructError::Stuck {
        outside: outside.len(),
        trace: state.trace().iter().map(ToString::to_string).collect(),
    })
}
