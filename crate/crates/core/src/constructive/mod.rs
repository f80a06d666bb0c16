//! Constructive rainbow coloring of 3-connected graphs with at most
//! ⌊(3n+3)/5⌋ colors.
//!
//! A rainbow-connected subgraph H is grown from a short seed cycle. Each step
//! absorbs a few outside vertices with a small number of fresh colors so that
//! `5·k <= 3·h - 1` keeps holding for H's color count `k` and order `h`.
//! Once at most three outside vertices remain they are absorbed with at most
//! two more colors, which lands on `5·k <= 3n + 3`.
//!
//! Every step is re-checked with the rainbow checker before it is committed.
//! A step whose written-down coloring fails the check goes through
//! [`repair_step`], an exhaustive search within the same color budget.

mod classify;
mod ear;
mod repair;
mod state;

use std::fmt;

use thiserror::Error;

use crate::connectivity::vertex_connectivity;
use crate::graph::{Edge, Graph};
use crate::rainbow::{is_rainbow_connected, Color, ColoringError, EdgeColoring, Verdict, Witness};

pub use classify::{classify_extension, four_leaves_plan, FourLeavesStyle};
pub use ear::{ear_color_sequence, ear_fresh_colors, ear_slots, EarError};
pub use repair::{repair_step, RepairPatch};
pub use state::{final_absorb, final_absorb_plan, seed_subgraph, GrowState};

/// Which absorption rule produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanKind {
    FourLeaves,
    Ear,
    Case1Fig2A,
    Case1Sub11,
    Case1Sub12,
    Case1Sub13,
    Case1Sub14,
    Case3AllShort,
    Case3OneLong,
    FinalAbsorb,
    /// A configuration none of the rules above covers.
    Fallback,
}

impl PlanKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlanKind::FourLeaves => "FourLeaves",
            PlanKind::Ear => "Ear",
            PlanKind::Case1Fig2A => "Case1_Fig2A",
            PlanKind::Case1Sub11 => "Case1_Sub11",
            PlanKind::Case1Sub12 => "Case1_Sub12",
            PlanKind::Case1Sub13 => "Case1_Sub13",
            PlanKind::Case1Sub14 => "Case1_Sub14",
            PlanKind::Case3AllShort => "Case3_AllShort",
            PlanKind::Case3OneLong => "Case3_OneLong",
            PlanKind::FinalAbsorb => "FinalAbsorb",
            PlanKind::Fallback => "Fallback",
        }
    }
}

impl fmt::Display for PlanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Color of a new edge relative to H: the i-th fresh color (1-based) or the
/// reuse color, which is always color 1 of H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ColorSlot {
    Fresh(u32),
    Reuse,
}

pub const REUSE_COLOR: Color = 1;

/// One absorption step: the vertices it adds and the colors of the edges
/// it names. Every other host edge from an added vertex into the grown H is
/// colored with the reuse color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionPlan {
    pub kind: PlanKind,
    pub vertices_added: Vec<usize>,
    pub edges_colored: Vec<(Edge, ColorSlot)>,
    /// `(s, t)` for ears.
    pub ear: Option<(usize, usize)>,
    /// Case 2: the plan is centered on `v1` instead of `x`.
    pub recentered: bool,
    pub fallback: bool,
}

impl ExtensionPlan {
    pub(crate) fn new(kind: PlanKind, vertices_added: Vec<usize>, edges: Vec<(Edge, ColorSlot)>) -> Self {
        ExtensionPlan {
            kind,
            vertices_added,
            edges_colored: edges,
            ear: None,
            recentered: false,
            fallback: false,
        }
    }

    /// Number of fresh colors the plan introduces.
    pub fn new_colors(&self) -> u32 {
        self.edges_colored
            .iter()
            .filter_map(|(_, s)| match s {
                ColorSlot::Fresh(i) => Some(*i),
                ColorSlot::Reuse => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn slot_of(&self, e: Edge) -> Option<ColorSlot> {
        self.edges_colored.iter().find(|(f, _)| *f == e).map(|&(_, s)| s)
    }
}

/// `(vertices added, fresh colors)` allowed for a step of this kind, or
/// `None` for fallback steps, which are held to the running budget only.
pub fn budget_row(plan: &ExtensionPlan) -> Option<(usize, u32)> {
    let row = match plan.kind {
        PlanKind::FourLeaves
        | PlanKind::Case1Fig2A
        | PlanKind::Case1Sub11
        | PlanKind::Case3AllShort
        | PlanKind::Case3OneLong => (4, 2),
        PlanKind::Case1Sub12 => (5, 3),
        PlanKind::Case1Sub13 | PlanKind::Case1Sub14 => (6, 3),
        PlanKind::Ear => {
            let (s, t) = plan.ear?;
            (s + t + 1, ear_fresh_colors(s + t + 1))
        }
        PlanKind::FinalAbsorb => {
            let r = plan.vertices_added.len();
            (r, r.min(2) as u32)
        }
        PlanKind::Fallback => return None,
    };
    Some(row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Seed,
    Plan(PlanKind),
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Seed => f.write_str("Seed"),
            StepKind::Plan(k) => f.write_str(k.name()),
        }
    }
}

/// One line of the construction trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub kind: StepKind,
    pub added: Vec<usize>,
    pub new_colors: u32,
    /// Order and color count of H after the step.
    pub h: usize,
    pub k: u32,
    /// Right-hand side the step is held to: `3h - 1`, or `3n + 3` for the
    /// final absorption.
    pub budget_rhs: i64,
    pub fallback: bool,
    pub recentered: bool,
    pub repaired: bool,
}

impl StepRecord {
    pub fn budget_lhs(&self) -> i64 {
        5 * self.k as i64
    }

    pub fn within_budget(&self) -> bool {
        self.budget_lhs() <= self.budget_rhs
    }
}

impl fmt::Display for StepRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let added: Vec<String> = self.added.iter().map(ToString::to_string).collect();
        write!(
            f,
            "step={} kind={} added={} new_colors={} h={} k={} budget_lhs={} budget_rhs={}",
            self.step,
            self.kind,
            added.join(","),
            self.new_colors,
            self.h,
            self.k,
            self.budget_lhs(),
            self.budget_rhs
        )?;
        if self.fallback {
            f.write_str(" fallback")?;
        }
        if self.repaired {
            f.write_str(" repaired")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph needs at least 4 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex connectivity is {kappa} < 3")]
    NotThreeConnected { kappa: usize },
    #[error("{0} outside vertices remain; extension steps need at least 4")]
    TooFewOutside(usize),
    #[error("{0} outside vertices remain; final absorption handles at most 3")]
    TooManyOutside(usize),
    #[error("plan does not fit the current state: {0}")]
    PlanMismatch(String),
    #[error("{kind} step adding {added:?} fails the checker at {witness:?} and no repair exists within {budget} fresh colors")]
    RepairFailed {
        kind: PlanKind,
        added: Vec<usize>,
        witness: Witness,
        budget: u32,
        trace: Vec<String>,
    },
    #[error("no absorption rule applies with {outside} outside vertices")]
    Stuck { outside: usize, trace: Vec<String> },
    #[error("step {step} breaks the color budget: {detail}")]
    BudgetViolation { step: usize, detail: String },
    #[error("final coloring is not rainbow connected: witness {0:?}")]
    FinalCheck(Witness),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// Colors, trace and bound of a finished run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub coloring: EdgeColoring,
    pub colors_used: usize,
    pub trace: Vec<StepRecord>,
    /// ⌊(3n+3)/5⌋
    pub bound: usize,
    pub kappa: usize,
    /// False when the run was forced on a graph with κ < 3.
    pub bound_guaranteed: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Run even when κ < 3. Only checker validity is promised then.
    pub force: bool,
}

pub fn color_bound(n: usize) -> usize {
    (3 * n + 3) / 5
}

/// Colors a 3-connected graph with at most ⌊(3n+3)/5⌋ colors.
pub fn run_constructive(g: &Graph) -> Result<ConstructionResult, ConstructError> {
    run_constructive_with(g, RunOptions::default())
}

pub fn run_constructive_with(g: &Graph, opts: RunOptions) -> Result<ConstructionResult, ConstructError> {
    if !g.is_connected() {
        return Err(ConstructError::Disconnected);
    }
    if g.n() < 2 {
        return Err(ConstructError::TooSmall(g.n()));
    }
    let kappa = vertex_connectivity(g).expect("n >= 2");
    if kappa < 3 && !opts.force {
        return Err(ConstructError::NotThreeConnected { kappa });
    }
    let guaranteed = kappa >= 3;
    let mut state = state::seed(g, !guaranteed)?;
    while state.outside_count() >= 4 {
        let before = state.h();
        let plan = classify_extension(&state)?;
        state.apply_extension(&plan)?;
        assert!(state.h() > before, "step did not grow H");
    }
    final_absorb(&mut state)?;
    let coloring = state.total_coloring()?;
    if let Verdict::NotRainbowConnected(w) = is_rainbow_connected(g, &coloring)? {
        return Err(ConstructError::FinalCheck(w));
    }
    let colors_used = coloring.num_colors();
    let bound = color_bound(g.n());
    if guaranteed && 5 * colors_used > 3 * g.n() + 3 {
        return Err(ConstructError::BudgetViolation {
            step: state.trace().len(),
            detail: format!("{colors_used} colors exceed the bound {bound}"),
        });
    }
    Ok(ConstructionResult {
        coloring,
        colors_used,
        trace: state.trace().to_vec(),
        bound,
        kappa,
        bound_guaranteed: guaranteed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::Family;

    #[test]
    fn k4_uses_two_colors() {
        let g = Family::Complete(4).generate(0).unwrap();
        let r = run_constructive(&g).unwrap();
        assert_eq!(r.colors_used, 2);
        assert_eq!(r.bound, 3);
        let kinds: Vec<String> = r.trace.iter().map(|s| s.kind.to_string()).collect();
        assert_eq!(kinds, ["Seed", "FinalAbsorb"]);
    }

    #[test]
    fn refuses_low_connectivity() {
        let c5 = Family::Cycle(5).generate(0).unwrap();
        assert_eq!(
            run_constructive(&c5),
            Err(ConstructError::NotThreeConnected { kappa: 2 })
        );
        let forced = run_constructive_with(&c5, RunOptions { force: true }).unwrap();
        assert!(!forced.bound_guaranteed);
        assert!(is_rainbow_connected(&c5, &forced.coloring).unwrap().is_ok());
    }

    #[test]
    fn forced_runs_on_trees_and_low_connectivity() {
        for f in [Family::Path(2), Family::Path(5), Family::Cycle(4), Family::Cycle(9)] {
            let g = f.generate(0).unwrap();
            let r = run_constructive_with(&g, RunOptions { force: true }).unwrap();
            assert!(is_rainbow_connected(&g, &r.coloring).unwrap().is_ok(), "{f}");
        }
    }

    #[test]
    fn small_families_meet_the_bound() {
        for f in [
            Family::Complete(5),
            Family::Complete(8),
            Family::Wheel(6),
            Family::Wheel(9),
            Family::Prism(3),
            Family::Prism(4),
            Family::Prism(5),
            Family::Petersen,
        ] {
            let g = f.generate(0).unwrap();
            let r = run_constructive(&g).unwrap();
            assert!(5 * r.colors_used <= 3 * g.n() + 3, "{f}: {}", r.colors_used);
            assert!(r.trace.iter().all(StepRecord::within_budget), "{f}");
        }
    }

    #[test]
    fn trace_line_format() {
        let rec = StepRecord {
            step: 1,
            kind: StepKind::Plan(PlanKind::FourLeaves),
            added: vec![3, 4, 5, 6],
            new_colors: 2,
            h: 7,
            k: 3,
            budget_rhs: 20,
            fallback: false,
            recentered: false,
            repaired: false,
        };
        assert_eq!(
            rec.to_string(),
            "step=1 kind=FourLeaves added=3,4,5,6 new_colors=2 h=7 k=3 budget_lhs=15 budget_rhs=20"
        );
    }
}
