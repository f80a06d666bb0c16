//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always shown. Set
//! `RAINBOW_ACCEPTANCE_SAMPLE=<count>` to check a random subset of the
//! 6-vertex graphs in criterion 2 instead of all of them.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use rainbow_core::constructive::{
    classify_extension, four_leaves_plan, run_constructive, FourLeavesStyle, GrowState, PlanKind, StepKind, StepRecord,
};
use rainbow_core::corpus::{builtin, DEFAULT_SEED};
use rainbow_core::graph::Graph;
use rainbow_core::{find_fan, is_rainbow_connected, rc_exact, Edge, EdgeColoring, Family, DEFAULT_NODE_BUDGET};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let corpus = builtin(DEFAULT_SEED).expect("builtin corpus");
    let mut bad = Vec::new();
    for entry in &corpus {
        let g = &entry.graph;
        match run_constructive(g) {
            Ok(r) => {
                let ok = is_rainbow_connected(g, &r.coloring).unwrap().is_ok();
                if 5 * r.colors_used > 3 * g.n() + 3 || !ok {
                    bad.push(format!("{}: k={} checker_ok={ok}", entry.id, r.colors_used));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", entry.id)),
        }
    }
    if bad.is_empty() {
        pass(format!(
            "{} corpus graphs within 5k <= 3n+3 and rainbow connected",
            corpus.len()
        ))
    } else {
        fail(bad.join("; "))
    }
}

fn criterion_2() -> Outcome {
    let mut graphs: Vec<Graph> = (0u64..1 << 15)
        .map(|mask| graph_from_mask(6, mask))
        .filter(|g| g.min_degree() >= 3 && brute_kappa(g) >= 3)
        .collect();
    let total = graphs.len();
    if let Some(sample) = std::env::var("RAINBOW_ACCEPTANCE_SAMPLE")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
        graphs.shuffle(&mut rng);
        graphs.truncate(sample);
    }
    let mut violations = Vec::new();
    let mut histogram = BTreeMap::new();
    for g in &graphs {
        let exact = match rc_exact(g, g.m(), DEFAULT_NODE_BUDGET) {
            Ok(r) => r.k,
            Err(e) => {
                violations.push(format!("{:?}: {e}", g.edges()));
                continue;
            }
        };
        let constructive = match run_constructive(g) {
            Ok(r) => r.colors_used,
            Err(e) => {
                violations.push(format!("{:?}: {e}", g.edges()));
                continue;
            }
        };
        *histogram.entry((exact, constructive)).or_insert(0usize) += 1;
        if exact > 4 || exact > constructive {
            violations.push(format!("{:?}: exact {exact}, constructive {constructive}", g.edges()));
        }
    }
    if violations.is_empty() {
        pass(format!(
            "{} of {total} labeled 3-connected graphs on 6 vertices checked; (rc, constructive k) counts {histogram:?}",
            graphs.len()
        ))
    } else {
        fail(format!("{} violations, first: {}", violations.len(), violations[0]))
    }
}

/// Returns the outcome and the sub-checks that failed.
fn criterion_3() -> (Outcome, Vec<String>) {
    let rc = |f: Family| {
        let g = f.generate(0).unwrap();
        rc_exact(&g, g.m(), DEFAULT_NODE_BUDGET)
            .map(|r| r.k)
            .map_err(|e| e.to_string())
    };
    let mut failed = Vec::new();
    let mut check = |name: String, got: Result<usize, String>, want: usize| {
        if got != Ok(want) {
            failed.push(format!("{name}: got {got:?}, formula {want}"));
        }
    };
    for n in 2..=6 {
        check(format!("K{n}"), rc(Family::Complete(n)), 1);
    }
    for n in 3..=8 {
        check(format!("C{n}"), rc(Family::Cycle(n)), n.div_ceil(2));
    }
    for n in 3..=6 {
        check(format!("P{n}"), rc(Family::Path(n)), n - 1);
    }
    if failed.is_empty() {
        (pass("complete graphs, cycles and paths match"), failed)
    } else {
        (fail(failed.join("; ")), failed)
    }
}

fn criterion_4() -> Outcome {
    let corpus = builtin(DEFAULT_SEED).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    for trial in 0..1000 {
        let entry = corpus.choose(&mut rng).unwrap();
        let g = &entry.graph;
        let x = rng.gen_range(0..g.n());
        let others: Vec<usize> = (0..g.n()).filter(|&v| v != x).collect();
        let size = rng.gen_range(3..=others.len());
        let mut targets: Vec<usize> = index::sample(&mut rng, others.len(), size)
            .into_iter()
            .map(|i| others[i])
            .collect();
        targets.sort_unstable();
        let result = match find_fan(g, x, &targets, 3) {
            Ok(Some(fan)) => {
                let paths: Vec<Vec<usize>> = fan.paths.iter().map(|p| p.vertices().to_vec()).collect();
                fan_is_valid(g, x, &targets, &paths, 3)
            }
            Ok(None) => Err("no fan found".into()),
            Err(e) => Err(e.to_string()),
        };
        if let Err(e) = result {
            failures.push(format!("trial {trial} on {} x={x} Y={targets:?}: {e}", entry.id));
        }
    }
    if failures.is_empty() {
        pass("1000 random 3-fans valid")
    } else {
        fail(format!("{} failures, first: {}", failures.len(), failures[0]))
    }
}

fn criterion_5() -> Outcome {
    let corpus = builtin(DEFAULT_SEED).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut compared, mut positive) = (0, 0);
    let mut disagreements = Vec::new();
    for entry in corpus.iter().filter(|e| e.graph.n() <= 7) {
        let g = &entry.graph;
        for _ in 0..50 {
            let k = rng.gen_range(1..=4u32);
            let colors: Vec<u32> = (0..g.m()).map(|_| rng.gen_range(1..=k)).collect();
            let coloring = EdgeColoring::new(g, colors.clone()).unwrap();
            let fast = is_rainbow_connected(g, &coloring).unwrap().is_ok();
            let slow = brute_rainbow_connected(g, &colors);
            compared += 1;
            positive += usize::from(slow);
            if fast != slow {
                disagreements.push(format!("{} {colors:?}: checker {fast}, enumeration {slow}", entry.id));
            }
        }
    }
    if disagreements.is_empty() {
        pass(format!("{compared} colorings agree ({positive} rainbow connected)"))
    } else {
        fail(format!(
            "{} disagreements, first: {}",
            disagreements.len(),
            disagreements[0]
        ))
    }
}

/// `(added, new colors)` allowed by the budget table, with `None` for
/// fallback steps.
fn table_row(rec: &StepRecord) -> Option<(usize, usize)> {
    let added = rec.added.len();
    match rec.kind {
        StepKind::Seed => None,
        StepKind::Plan(kind) => match kind {
            PlanKind::FourLeaves
            | PlanKind::Case1Fig2A
            | PlanKind::Case1Sub11
            | PlanKind::Case3AllShort
            | PlanKind::Case3OneLong => Some((4, 2)),
            PlanKind::Case1Sub12 => Some((5, 3)),
            PlanKind::Case1Sub13 | PlanKind::Case1Sub14 => Some((6, 3)),
            PlanKind::Ear if added >= 4 => Some((added, added.div_ceil(2))),
            PlanKind::Ear => Some((usize::MAX, 0)),
            PlanKind::FinalAbsorb => Some((added, added.min(2))),
            PlanKind::Fallback => None,
        },
    }
}

fn audit(n: usize, trace: &[StepRecord]) -> Result<(), String> {
    for pair in trace.windows(2) {
        let (prev, rec) = (&pair[0], &pair[1]);
        let dh = rec.h - prev.h;
        let dk = (rec.k - prev.k) as usize;
        let last = rec.kind == StepKind::Plan(PlanKind::FinalAbsorb);
        if dh != rec.added.len() || (dh == 0 && !last) {
            return Err(format!("step {} grew h by {dh}", rec.step));
        }
        if let Some((rows_h, rows_k)) = table_row(rec) {
            if dh != rows_h || dk > rows_k {
                return Err(format!(
                    "step {}: {rec} outside the table row ({rows_h}, {rows_k})",
                    rec.step
                ));
            }
        }
        let rhs = if last { 3 * n + 3 } else { 3 * rec.h - 1 };
        if 5 * rec.k as usize > rhs {
            return Err(format!("step {}: 5k = {} > {rhs}", rec.step, 5 * rec.k));
        }
    }
    let seed = &trace[0];
    if 5 * seed.k as usize > 3 * seed.h - 1 {
        return Err(format!("seed {seed} over budget"));
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = builtin(DEFAULT_SEED)
        .unwrap()
        .into_iter()
        .map(|e| (e.id, e.graph))
        .collect();
    for i in 0..200u64 {
        let n = 8 + (i as usize * 7) % 50;
        let f = Family::Random3c {
            n,
            extra: (i % 5) as usize,
        };
        graphs.push((format!("{f}#{i}"), f.generate(i).unwrap()));
    }
    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    let mut problems = Vec::new();
    for (id, g) in &graphs {
        match run_constructive(g) {
            Ok(r) => {
                for rec in &r.trace {
                    *kinds.entry(rec.kind.to_string()).or_default() += 1;
                }
                if let Err(e) = audit(g.n(), &r.trace) {
                    problems.push(format!("{id}: {e}"));
                }
            }
            Err(e) => problems.push(format!("{id}: {e}")),
        }
    }
    if problems.is_empty() {
        pass(format!("{} runs audited; steps by kind {kinds:?}", graphs.len()))
    } else {
        fail(format!("{} problems, first: {}", problems.len(), problems[0]))
    }
}

struct Synthetic {
    name: &'static str,
    host: Graph,
    h: Vec<usize>,
    h_edges: Vec<(Edge, u32)>,
    expect: PlanKind,
    ear: Option<(usize, usize)>,
}

fn synthetic_instances() -> Vec<Synthetic> {
    let k5 = |name, host, expect| Synthetic {
        name,
        host,
        h: (0..5).collect(),
        h_edges: k5_edges(),
        expect,
        ear: None,
    };
    let centre = [(5, 0), (5, 6), (6, 1), (5, 7), (7, 2)];
    let with = |extra: &[(usize, usize)]| -> Vec<(usize, usize)> { centre.iter().chain(extra).copied().collect() };
    let mut out = vec![Synthetic {
        name: "triangle inside K7",
        host: Family::Complete(7).generate(0).unwrap(),
        h: vec![0, 1, 2],
        h_edges: vec![(Edge(0, 1), 1), (Edge(0, 2), 1), (Edge(1, 2), 1)],
        expect: PlanKind::FourLeaves,
        ear: None,
    }];
    for (s, t) in [(1, 2), (2, 2), (2, 3)] {
        let (host, _) = k5_with_ear(s, t);
        out.push(Synthetic {
            ear: Some((s, t)),
            ..k5(["ear s+t=3", "ear s+t=4", "ear s+t=5"][s + t - 3], host, PlanKind::Ear)
        });
    }
    out.push(k5(
        "x-x1-c route",
        k5_plus(9, &with(&[(5, 8), (8, 3)])),
        PlanKind::Case1Fig2A,
    ));
    out.push(k5(
        "x1 fan 1,1,1",
        k5_plus(9, &with(&[(8, 2), (8, 3), (8, 4)])),
        PlanKind::Case1Sub11,
    ));
    out.push(k5(
        "x1 fan 1,1,2",
        k5_plus(10, &with(&[(8, 3), (8, 4), (8, 9), (9, 1)])),
        PlanKind::Case1Sub12,
    ));
    out.push(k5(
        "x1 fan 1,2,2",
        k5_plus(11, &with(&[(8, 3), (8, 9), (9, 4), (8, 10), (10, 2)])),
        PlanKind::Case1Sub13,
    ));
    out.push(k5(
        "x1 fan 1,1,3",
        k5_plus(11, &with(&[(8, 3), (8, 4), (8, 9), (9, 10), (10, 1)])),
        PlanKind::Case1Sub14,
    ));
    out.push(k5(
        "two more leaves",
        k5_plus(
            9,
            &[
                (5, 0),
                (5, 1),
                (5, 6),
                (6, 2),
                (7, 2),
                (7, 3),
                (7, 4),
                (8, 0),
                (8, 3),
                (8, 4),
            ],
        ),
        PlanKind::Case3AllShort,
    ));
    out.push(k5(
        "second vertex with a length-2 path",
        k5_plus(9, &[(5, 0), (5, 1), (5, 6), (6, 2), (7, 3), (7, 4), (7, 8), (8, 0)]),
        PlanKind::Case3OneLong,
    ));
    out
}

/// The grown H checked pair by pair with the enumeration oracle.
fn h_is_rainbow(state: &GrowState<'_>) -> bool {
    let host = state.host();
    let colors: Vec<u32> = (0..host.m())
        .map(|id| {
            let e = host.edges()[id];
            state.edge_color(e.0, e.1).unwrap_or(0)
        })
        .collect();
    let h_edges = state.h_edges();
    let sub = Graph::from_edges(host.n(), h_edges.iter().map(|(e, _)| (e.0, e.1))).unwrap();
    let sub_colors: Vec<u32> = sub
        .edges()
        .iter()
        .map(|e| colors[host.edge_id(e.0, e.1).unwrap()])
        .collect();
    let hv = state.h_vertices();
    hv.iter().all(|&u| {
        hv.iter()
            .all(|&v| u >= v || brute_rainbow_path(&sub, &sub_colors, u, v))
    })
}

fn criterion_7() -> Outcome {
    let mut problems = Vec::new();
    let mut done = Vec::new();
    for inst in synthetic_instances() {
        let mut state = GrowState::from_parts(&inst.host, &inst.h, &inst.h_edges).expect(inst.name);
        let plan = match classify_extension(&state) {
            Ok(p) => p,
            Err(e) => {
                problems.push(format!("{}: {e}", inst.name));
                continue;
            }
        };
        if plan.kind != inst.expect || (inst.ear.is_some() && plan.ear != inst.ear) || plan.fallback {
            problems.push(format!("{}: classified as {} {:?}", inst.name, plan.kind, plan.ear));
            continue;
        }
        if let Err(e) = state.apply_extension(&plan) {
            problems.push(format!("{}: {e}", inst.name));
            continue;
        }
        let last = state.trace().last().unwrap();
        if last.repaired {
            problems.push(format!("{}: needed repair", inst.name));
        }
        if !h_is_rainbow(&state) {
            problems.push(format!(
                "{}: enumeration finds a pair without a rainbow path",
                inst.name
            ));
        }
        done.push(plan.kind.to_string());
    }
    // the literal four-leaves coloring, applied directly
    let k7 = Family::Complete(7).generate(0).unwrap();
    let mut state =
        GrowState::from_parts(&k7, &[0, 1, 2], &[(Edge(0, 1), 1), (Edge(0, 2), 1), (Edge(1, 2), 1)]).unwrap();
    let plan = four_leaves_plan(&state, [3, 4, 5, 6], FourLeavesStyle::Literal).unwrap();
    match state.apply_extension(&plan) {
        Ok(()) if !state.trace().last().unwrap().repaired && h_is_rainbow(&state) => {
            done.push("FourLeaves(literal)".into())
        }
        Ok(()) => problems.push("literal four leaves needed repair or failed enumeration".into()),
        Err(e) => problems.push(format!("literal four leaves: {e}")),
    }
    if problems.is_empty() {
        pass(format!("{} instances, no repairs: {}", done.len(), done.join(", ")))
    } else {
        fail(problems.join("; "))
    }
}

fn main() {
    // C3 is K3, so the cycle formula and the complete-graph value cannot
    // both hold at n = 3.
    const KNOWN_UNATTAINABLE: &[&str] = &["C3"];

    let mut unexpected = 0;
    let mut report = |n: usize, name: &str, started: Instant, outcome: Outcome, known: bool| {
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {n} [{name}]: {verdict} ({:.2}s) {}",
            started.elapsed().as_secs_f64(),
            outcome.detail
        );
        if !outcome.pass && !known {
            unexpected += 1;
        }
    };
    let t = Instant::now();
    report(1, "color bound on builtin corpus", t, criterion_1(), false);
    let t = Instant::now();
    report(2, "exhaustive 6-vertex check", t, criterion_2(), false);
    let t = Instant::now();
    let (outcome, failed) = criterion_3();
    let known = failed
        .iter()
        .all(|f| KNOWN_UNATTAINABLE.iter().any(|k| f.starts_with(&format!("{k}:"))));
    report(3, "closed-form values", t, outcome, known);
    let t = Instant::now();
    report(4, "fan paths", t, criterion_4(), false);
    let t = Instant::now();
    report(5, "checker vs enumeration", t, criterion_5(), false);
    let t = Instant::now();
    report(6, "budget audit", t, criterion_6(), false);
    let t = Instant::now();
    report(7, "step validity", t, criterion_7(), false);
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}
