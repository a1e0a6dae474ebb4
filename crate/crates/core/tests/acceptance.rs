//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed in order. The
//! process exits non-zero when any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use hampath_core::oracle::{bend_count_simple, build_hp_graph, enumerate_st_hamiltonian, HPGraph};
use hampath_core::reconfig::reconfigure_with;
use hampath_core::switching::all_switches;
use hampath_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Largest grid, in vertices, covered by exhaustive checks.
const EXHAUSTIVE_CAP: usize = 36;
/// Square grid sides for the scaling check.
const SCALING_SIDES: [usize; 4] = [11, 21, 41, 81];
/// Allowed growth of reconfigure time per side step in the scaling check.
const SCALING_RATIO_MAX: f64 = 5.0;
const SCALING_REPEATS: usize = 25;
const REPLAY_PAIRS: usize = 1000;
const REPLAY_SEED: u64 = 0x5eed_0009;
/// Grid dimensions used for random replay pairs are at most this.
const REPLAY_MAX_SIDE: usize = 6;
/// Fixed grid for the reachability check.
const REACH_DIMS: (usize, usize) = (4, 5);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

struct Grid {
    dims: GridDims,
    paths: Vec<HamPath>,
}

fn dims(m: usize, n: usize) -> GridDims {
    GridDims::new(m, n).expect("positive dims")
}

/// Every grid with at most `cap` vertices that has a simple path.
fn simple_grids(cap: usize) -> Vec<Grid> {
    let mut out = Vec::new();
    for m in 1..=cap {
        for n in 1..=cap / m {
            let d = dims(m, n);
            let paths = enumerate_simple(d).expect("within cap");
            if !paths.is_empty() {
                out.push(Grid { dims: d, paths });
            }
        }
    }
    out
}

fn criterion_1(grids: &[Grid]) -> Outcome {
    let results: Vec<(usize, usize, Vec<String>)> = grids
        .par_iter()
        .map(|g| {
            let mut states = 0;
            let mut runs = 0;
            let mut bad = Vec::new();
            for p in &g.paths {
                runs += 1;
                match reconfig_to_canonical(p).and_then(|t| t.states()) {
                    Ok(all) => {
                        states += all.len();
                        if let Some(q) = all.iter().find(|q| !is_simple(q)) {
                            bad.push(format!("{} {}: reached non-simple {}", g.dims, p, q));
                        }
                    }
                    Err(e) => bad.push(format!("{} {}: {e}", g.dims, p)),
                }
            }
            (runs, states, bad)
        })
        .collect();
    let runs: usize = results.iter().map(|r| r.0).sum();
    let states: usize = results.iter().map(|r| r.1).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.2).collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{runs} runs on {} grids, {states} states checked, {} violations{}",
            grids.len(),
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn first_of(bad: &[&String]) -> String {
    bad.first()
        .map(|s| format!(" (first: {s})"))
        .unwrap_or_default()
}

fn canonical_pair(d: GridDims) -> Option<(HamPath, HamPath)> {
    let ns = make_canonical(d, CanonicalKind::Ns).ok()?;
    let ew = make_canonical(d, CanonicalKind::Ew).ok()?;
    (ns != ew).then_some((ns, ew))
}

fn criterion_2(grids: &[Grid]) -> Outcome {
    let mut bad: Vec<String> = Vec::new();
    let mut to_canon = 0;
    let mut canon_pairs = 0;
    let mut pairs = 0;
    let mut worst = (0.0f64, String::new());
    for g in grids {
        let (m, n) = (g.dims.rows(), g.dims.cols());
        let mn = m * n;
        for p in &g.paths {
            to_canon += 1;
            match reconfig_to_canonical(p) {
                Ok(t) if t.switch_count() <= mn / 2 => {}
                Ok(t) => bad.push(format!("{} {p}: {} > {}", g.dims, t.switch_count(), mn / 2)),
                Err(e) => bad.push(format!("{} {p}: {e}", g.dims)),
            }
        }
        if let Some((ns, ew)) = canonical_pair(g.dims) {
            for (a, b) in [(&ns, &ew), (&ew, &ns)] {
                canon_pairs += 1;
                match reconfig_canonical_to_canonical(a, b) {
                    Ok(t) if t.switch_count() <= mn / 4 => {}
                    Ok(t) => bad.push(format!(
                        "{} canonical: {} > {}",
                        g.dims,
                        t.switch_count(),
                        mn / 4
                    )),
                    Err(e) => bad.push(format!("{} canonical: {e}", g.dims)),
                }
            }
        }
        let all_pairs = m <= 5 && n <= 5;
        let sampled = (m, n) == (6, 5) || (m, n) == (5, 6);
        if !(all_pairs || sampled) {
            continue;
        }
        let bound = 5 * mn / 4;
        let results: Vec<std::result::Result<usize, String>> = g
            .paths
            .par_iter()
            .flat_map(|p| g.paths.par_iter().map(move |q| (p, q)))
            .map(|(p, q)| {
                reconfigure(p, q)
                    .map(|t| t.switch_count())
                    .map_err(|e| format!("{} {p} -> {q}: {e}", g.dims))
            })
            .collect();
        for r in results {
            pairs += 1;
            match r {
                Ok(len) if len <= bound => {
                    let ratio = len as f64 / bound as f64;
                    if ratio > worst.0 {
                        worst = (ratio, format!("{len}/{bound} on {}", g.dims));
                    }
                }
                Ok(len) => bad.push(format!("{}: {len} > {bound}", g.dims)),
                Err(e) => bad.push(e),
            }
        }
    }
    let bad: Vec<&String> = bad.iter().collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{to_canon} to-canonical runs, {canon_pairs} canonical sweeps, {pairs} ordered pairs; \
             tightest pair {}; {} violations{}",
            worst.1,
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn criterion_3(graphs: &[(HPGraph, GraphStats)]) -> Outcome {
    let bad: Vec<String> = graphs
        .iter()
        .filter(|(_, s)| s.components != 1)
        .map(|(g, s)| format!("{} has {} components", g.dims, s.components))
        .collect();
    let largest = graphs.iter().map(|(_, s)| s.nodes).max().unwrap_or(0);
    let bad: Vec<&String> = bad.iter().collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} graphs, largest {largest} nodes, {} disconnected{}",
            graphs.len(),
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn canonical_distance(g: &HPGraph) -> Option<usize> {
    let (ns, ew) = canonical_pair(g.dims)?;
    let a = g.index_of(&ns)?;
    let b = g.index_of(&ew)?;
    g.distances(a)[b]
}

fn criterion_4(graphs: &[(HPGraph, GraphStats)]) -> Outcome {
    let mut bad = Vec::new();
    let mut max_ratio = (0.0f64, String::new());
    for (g, s) in graphs {
        let mn = g.dims.size();
        match s.diameter {
            Some(d) if d <= 5 * mn / 4 => {
                let r = d as f64 / (5 * mn / 4) as f64;
                if r > max_ratio.0 {
                    max_ratio = (r, format!("{d}/{} on {}", 5 * mn / 4, g.dims));
                }
            }
            Some(d) => bad.push(format!("{}: diameter {d} > {}", g.dims, 5 * mn / 4)),
            None => bad.push(format!("{}: no diameter", g.dims)),
        }
    }
    let mut lower = Vec::new();
    let mut checked = 0;
    for (g, _) in graphs {
        if let Some(dist) = canonical_distance(g) {
            checked += 1;
            let need = g.dims.size().div_ceil(4);
            if dist < need {
                lower.push(format!("{}: NS-EW distance {dist} < {need}", g.dims));
            }
        }
    }
    let pass = bad.is_empty() && lower.is_empty();
    let diameter_ok = graphs.len() - bad.len();
    let bad: Vec<&String> = bad.iter().chain(&lower).collect();
    Outcome::new(
        pass,
        format!(
            "diameter bound holds on {}/{} graphs (tightest {}); canonical distance lower bound \
             ceil(mn/4) fails on {}/{checked} grids{}",
            diameter_ok,
            graphs.len(),
            max_ratio.1,
            lower.len(),
            first_of(&bad)
        ),
    )
}

/// Companion to criterion 4: the canonical distance equals (m-1)(n-1)/4.
fn criterion_4_exact(graphs: &[(HPGraph, GraphStats)]) -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (g, _) in graphs {
        if let Some(dist) = canonical_distance(g) {
            checked += 1;
            let want = (g.dims.rows() - 1) * (g.dims.cols() - 1) / 4;
            if dist != want {
                bad.push(format!("{}: distance {dist}, expected {want}", g.dims));
            }
        }
    }
    let bad: Vec<&String> = bad.iter().collect();
    Outcome::new(
        bad.is_empty() && checked > 0,
        format!(
            "NS-EW distance = (m-1)(n-1)/4 on {checked} grids, {} mismatches{}",
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn criterion_5(grids: &[Grid]) -> Outcome {
    let mut sn = 0;
    let mut we = 0;
    let mut bad = Vec::new();
    for g in grids {
        for p in &g.paths {
            if let Ok(frame) = locate_eta1_frame(p) {
                sn += 1;
                let before = decompose(p)
                    .separator_span()
                    .expect("frame implies separators");
                let check = find_delta_segments(p, &frame).and_then(|delta| {
                    let r = zip_s_to_n(p)?;
                    let after = decompose(&r.path).separator_span();
                    Ok((delta, r, after))
                });
                match check {
                    Ok((delta, r, after)) => {
                        if r.squares_switched != delta.k_perp.div_ceil(2) {
                            bad.push(format!(
                                "{p}: S-N zip made {} switches, k_perp {}",
                                r.squares_switched, delta.k_perp
                            ));
                        }
                        match after {
                            Some(a)
                                if a.count == before.count + 2 && a.first + 2 == before.first => {}
                            other => bad.push(format!(
                                "{p}: separators {}@{} became {other:?}",
                                before.count, before.first
                            )),
                        }
                    }
                    Err(e) => bad.push(format!("{p}: {e}")),
                }
            }
            let dec = decompose(p);
            let almost = classify_form(p) == PathForm::AlmostCanonical;
            let columns = dec
                .separator_span()
                .filter(|s| s.axis == SeparatorAxis::Columns);
            if let (true, Some(span)) = (almost, columns) {
                we += 1;
                match zip_w_to_e(p) {
                    Ok(r) if r.squares_switched == span.count.div_ceil(2) => {}
                    Ok(r) => bad.push(format!(
                        "{p}: W-E zip made {} switches, k {}",
                        r.squares_switched, span.count
                    )),
                    Err(e) => bad.push(format!("{p}: {e}")),
                }
            }
        }
    }
    let bad: Vec<&String> = bad.iter().collect();
    Outcome::new(
        bad.is_empty() && sn > 0 && we > 0,
        format!(
            "{sn} S-N zips, {we} W-E zips, {} violations{}",
            bad.len(),
            first_of(&bad)
        ),
    )
}

fn criterion_6(grids: &[Grid]) -> Outcome {
    let mut frames = 0;
    let mut fired = Vec::new();
    for g in grids {
        for p in &g.paths {
            let frame = match locate_eta1_frame(p) {
                Ok(f) => f,
                Err(Error::StructureViolation(msg)) => {
                    fired.push(format!("{p}: {msg}"));
                    continue;
                }
                Err(_) => continue,
            };
            frames += 1;
            if let Err(e) = find_delta_segments(p, &frame) {
                fired.push(format!("{p}: {e}"));
            }
        }
    }
    let fired: Vec<&String> = fired.iter().collect();
    Outcome::new(
        fired.is_empty() && frames > 0,
        format!(
            "{frames} zip frames inspected, {} assertions fired{}",
            fired.len(),
            first_of(&fired)
        ),
    )
}

fn criterion_7() -> Outcome {
    let (m, n) = REACH_DIMS;
    let g = build_hp_graph(dims(m, n)).expect("within cap");
    let src = &g.nodes[0];
    let reachable: HashSet<usize> = g
        .distances(0)
        .iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|_| i))
        .collect();
    let mut seen = HashSet::new();
    let mut bad = Vec::new();
    for q in &g.nodes {
        match reconfigure(src, q).and_then(|t| t.states()) {
            Ok(states) => {
                for s in states {
                    match g.index_of(&s) {
                        Some(i) if reachable.contains(&i) => {
                            seen.insert(i);
                        }
                        _ => bad.push(format!("{s} is not reachable from {src}")),
                    }
                }
            }
            Err(e) => bad.push(format!("{src} -> {q}: {e}")),
        }
    }
    let mut ham = 0;
    let mut disagree = Vec::new();
    for m in 1..=EXHAUSTIVE_CAP {
        for n in 1..=EXHAUSTIVE_CAP / m {
            for p in enumerate_st_hamiltonian(dims(m, n)).expect("within cap") {
                ham += 1;
                if is_simple(&p) != bend_count_simple(p.dims(), p.order()) {
                    disagree.push(format!("{}: {p}", p.dims()));
                }
            }
        }
    }
    let all: Vec<&String> = bad.iter().chain(&disagree).collect();
    Outcome::new(
        all.is_empty(),
        format!(
            "{} algorithm states on {m}x{n} within {} reachable; is_simple agrees with the bend \
             counter on {}/{ham} Hamiltonian paths{}",
            seen.len(),
            reachable.len(),
            ham - disagree.len(),
            first_of(&all)
        ),
    )
}

/// Minimum reconfigure time per side, measured in interleaved rounds so
/// background load affects every size alike.
fn time_canonical_reconfigure() -> Vec<Duration> {
    let pairs: Vec<(HamPath, HamPath)> = SCALING_SIDES
        .iter()
        .map(|&s| canonical_pair(dims(s, s)).expect("odd side"))
        .collect();
    let mut best = vec![Duration::MAX; pairs.len()];
    // The first round only warms caches and the allocator.
    for round in 0..=SCALING_REPEATS {
        for (i, (ns, ew)) in pairs.iter().enumerate() {
            let start = Instant::now();
            let t = reconfigure_with(ns, ew, CheckLevel::Local).expect("canonical reconfigure");
            let elapsed = start.elapsed();
            assert_eq!(&t.final_path, ew);
            if round > 0 {
                best[i] = best[i].min(elapsed);
            }
        }
    }
    best
}

fn criterion_8() -> Outcome {
    let times = time_canonical_reconfigure();
    let mut pass = true;
    let mut parts = Vec::new();
    for (i, w) in times.windows(2).enumerate() {
        let ratio = w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9);
        pass &= ratio <= SCALING_RATIO_MAX;
        parts.push(format!(
            "{}->{}: {ratio:.2}",
            SCALING_SIDES[i],
            SCALING_SIDES[i + 1]
        ));
    }
    let shown: Vec<String> = SCALING_SIDES
        .iter()
        .zip(&times)
        .map(|(s, t)| {
            format!(
                "n={s} {:.1}us ({:.0} ns/vertex)",
                t.as_secs_f64() * 1e6,
                t.as_secs_f64() * 1e9 / (s * s) as f64
            )
        })
        .collect();
    Outcome::new(
        pass,
        format!(
            "{}; ratios {} (max {SCALING_RATIO_MAX})",
            shown.join(", "),
            parts.join(", ")
        ),
    )
}

fn criterion_9() -> Outcome {
    let graphs: Vec<HPGraph> = (1..=REPLAY_MAX_SIDE)
        .flat_map(|m| (1..=REPLAY_MAX_SIDE).map(move |n| (m, n)))
        .map(|(m, n)| build_hp_graph(dims(m, n)).expect("within cap"))
        .filter(|g| g.nodes.len() >= 2)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(REPLAY_SEED);
    let mut bad = Vec::new();
    let mut rev_steps = 0;
    let mut rev_direct = 0;
    for _ in 0..REPLAY_PAIRS {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let p = &g.nodes[rng.gen_range(0..g.nodes.len())];
        let q = &g.nodes[rng.gen_range(0..g.nodes.len())];
        let trace = match reconfigure(p, q) {
            Ok(t) => t,
            Err(e) => {
                bad.push(format!("{p} -> {q}: {e}"));
                continue;
            }
        };
        let reparsed = SwitchTrace::parse(&trace.to_text());
        match (replay(&trace, p), reparsed.as_ref().map(|t| replay(t, p))) {
            (Ok(a), Ok(Ok(b))) if &a == q && &b == q => {}
            (a, b) => bad.push(format!("{p} -> {q}: replay gave {a:?} / {b:?}")),
        }
        match check_reversed_steps(g, &trace) {
            Ok((steps, direct)) => {
                rev_steps += steps;
                rev_direct += direct;
            }
            Err(e) => bad.push(format!("{p} -> {q}: {e}")),
        }
    }
    let bad: Vec<&String> = bad.iter().collect();
    Outcome::new(
        bad.is_empty(),
        format!(
            "{REPLAY_PAIRS} pairs over {} grids; {rev_steps} reversed steps all graph edges with \
             simple results ({rev_direct} are forward switches of their start path); {} failures{}",
            graphs.len(),
            bad.len(),
            first_of(&bad)
        ),
    )
}

/// Walks the trace and checks every reversed-tail step: its start and end,
/// in the original frame, must be simple paths joined by an edge of the
/// switch graph. Returns the step count and how many steps are forward
/// switches of the square in the current frame.
fn check_reversed_steps(
    g: &HPGraph,
    trace: &SwitchTrace,
) -> std::result::Result<(usize, usize), String> {
    let states = trace.states().map_err(|e| e.to_string())?;
    let mut cur = trace.initial.clone();
    let mut k = 0;
    let (mut steps, mut direct) = (0, 0);
    for step in &trace.steps {
        match step {
            TraceStep::Frame(f) => cur = f.apply(&cur),
            TraceStep::Switch { record, phase } => {
                let next = record.apply(&cur).map_err(|e| e.to_string())?;
                if *phase == Phase::ReversedTail {
                    steps += 1;
                    let (a, b) = (&states[k], &states[k + 1]);
                    let (ia, ib) = (g.index_of(a), g.index_of(b));
                    match (ia, ib) {
                        (Some(i), Some(j)) if g.has_edge(i, j) => {}
                        _ => {
                            return Err(format!(
                                "reversed step {a} -> {b} is not a switch-graph edge"
                            ))
                        }
                    }
                    if all_switches(&cur).iter().any(|(_, r)| r == &next) {
                        direct += 1;
                    }
                }
                cur = next;
                k += 1;
            }
        }
    }
    Ok((steps, direct))
}

fn main() {
    let started = Instant::now();
    let grids = simple_grids(EXHAUSTIVE_CAP);
    let graphs: Vec<(HPGraph, GraphStats)> = grids
        .iter()
        .map(|g| {
            let graph = build_hp_graph(g.dims).expect("within cap");
            let stats = graph_stats(&graph).expect("stats");
            (graph, stats)
        })
        .collect();

    let criteria: Vec<(&str, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (
            "1",
            "simplicity preservation",
            Box::new(|| criterion_1(&grids)),
        ),
        ("2", "switch bounds", Box::new(|| criterion_2(&grids))),
        ("3", "connectivity", Box::new(|| criterion_3(&graphs))),
        (
            "4",
            "diameter and canonical lower bound",
            Box::new(|| criterion_4(&graphs)),
        ),
        (
            "4x",
            "canonical distance exact value",
            Box::new(|| criterion_4_exact(&graphs)),
        ),
        ("5", "zip arithmetic", Box::new(|| criterion_5(&grids))),
        (
            "6",
            "structural observations",
            Box::new(|| criterion_6(&grids)),
        ),
        ("7", "oracle equivalence", Box::new(criterion_7)),
        ("8", "linear scaling", Box::new(criterion_8)),
        ("9", "replay fidelity", Box::new(criterion_9)),
    ];
    let mut failed = Vec::new();
    for (id, name, run) in &criteria {
        let t = Instant::now();
        let out = run();
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:<2} {verdict} {name} [{:.2}s]: {}",
            t.elapsed().as_secs_f64(),
            out.detail
        );
        if !out.pass {
            failed.push(*id);
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed.len(),
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if !failed.is_empty() {
        println!("acceptance: failed criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
