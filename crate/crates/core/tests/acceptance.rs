//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p ppe-core --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use rayon::prelude::*;

use ppe_core::analysis::enumerate_biped;
use ppe_core::fixtures;
use ppe_core::game::{GameTree, NodeId, OutcomeSet};
use ppe_core::logic::{
    build_powerset_component, generate_equations, solve_by_enumeration, LogicBounds,
};
use ppe_core::ppe::PpeSolution;
use ppe_core::{
    is_invertible, is_pareto_optimal, solve_invertible, solve_ppe_general, solve_ppe_logic,
    solve_ppe_quick, solve_spe,
};

const AC1_BUDGET: Duration = Duration::from_millis(1);
const AC5_BUDGET: Duration = Duration::from_secs(30);
const CORPUS_MIN: usize = 1000;
const LOGIC_MIN: usize = 300;
const INVERTIBLE_COUNT: u64 = 250;

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn set(v: &[u32]) -> OutcomeSet {
    v.iter().map(|&i| NodeId(i)).collect()
}

fn ac1() -> Outcome {
    let t = fixtures::assurance();
    let run = || {
        let start = Instant::now();
        let ppe = solve_ppe_general(&t).outcome;
        let spe = solve_spe(&t).outcome;
        (start.elapsed(), ppe, spe)
    };
    run();
    let mut times: Vec<Duration> = Vec::new();
    let (mut ppe, mut spe) = (NodeId(0), NodeId(0));
    for _ in 0..101 {
        let (d, p, s) = run();
        times.push(d);
        ppe = p;
        spe = s;
    }
    times.sort();
    let median = times[times.len() / 2];
    let pp = t.payoffs(ppe).unwrap().to_vec();
    let sp = t.payoffs(spe).unwrap().to_vec();
    let improves = pp.iter().zip(&sp).all(|(a, b)| a > b);
    check(
        pp == [1, 1] && sp == [0, 0] && improves && median < AC1_BUDGET,
        format!("PPE {pp:?}, SPE {sp:?}, median {median:?}"),
        format!("PPE {pp:?}, SPE {sp:?}, improves {improves}, median {median:?}"),
    )
}

fn ac2() -> Outcome {
    let t = fixtures::gamma();
    let sol = solve_ppe_general(&t);
    let path: Vec<u32> = sol.path.nodes().iter().map(|n| n.0).collect();
    let sets: Vec<OutcomeSet> = sol
        .trace
        .steps
        .iter()
        .map(|s| s.survivors.clone())
        .collect();
    let want = vec![set(&[7, 9, 10, 11]), set(&[9, 11]), set(&[11])];
    check(
        path == [0, 2, 6, 11] && sets == want,
        "path n0 n2 n6 o11, I-sets {o7 o9 o10 o11} {o9 o11} {o11}",
        format!("path {path:?}, I-sets {sets:?}"),
    )
}

fn ac3() -> Outcome {
    let t = fixtures::take_or_leave();
    let ppe = solve_ppe_general(&t).outcome;
    let spe = solve_spe(&t).outcome;
    let peter = |o| t.payoffs(o).unwrap()[0];
    check(
        ppe == NodeId(9) && peter(ppe) == 5 && spe == NodeId(1) && peter(spe) == 1,
        "PPE o9 (5), SPE o1 (1)",
        format!("PPE o{ppe} ({}), SPE o{spe} ({})", peter(ppe), peter(spe)),
    )
}

fn ac4() -> Outcome {
    let rows = enumerate_biped();
    let equal = rows.iter().filter(|r| r.report.equal).count();
    let mut differing: Vec<[i64; 3]> = rows
        .iter()
        .filter(|r| !r.report.equal)
        .map(|r| r.game.mary)
        .collect();
    differing.sort();
    check(
        rows.len() == 18 && equal == 15 && differing == [[0, 2, 1], [1, 2, 0], [2, 1, 0]],
        "18 games, 15 equal, differing (d,e,f) = (0,2,1) (1,2,0) (2,1,0)",
        format!(
            "{} games, {equal} equal, differing {differing:?}",
            rows.len()
        ),
    )
}

fn ac5(corpus: &[GameTree]) -> (Outcome, Vec<PpeSolution>) {
    let start = Instant::now();
    let results: Vec<(PpeSolution, bool)> = corpus
        .par_iter()
        .map(|t| {
            let a = solve_ppe_general(t);
            let b = solve_ppe_general(t);
            let single = a.trace.steps.last().map_or(1, |s| s.survivors.len()) == 1
                && t.is_outcome(a.outcome);
            let ok = single && a == b;
            (a, ok)
        })
        .collect();
    let elapsed = start.elapsed();
    let failures = results.iter().filter(|(_, ok)| !ok).count();
    let sols = results.into_iter().map(|(s, _)| s).collect();
    let out = check(
        corpus.len() >= CORPUS_MIN && failures == 0 && elapsed < AC5_BUDGET,
        format!("{} games, 0 failures, {elapsed:?}", corpus.len()),
        format!("{} games, {failures} failures, {elapsed:?}", corpus.len()),
    );
    (out, sols)
}

fn ac6(corpus: &[GameTree], sols: &[PpeSolution]) -> Outcome {
    let failures = corpus
        .par_iter()
        .zip(sols)
        .filter(|(t, s)| {
            !(common::pareto_oracle(t, s.outcome) && is_pareto_optimal(t, s.outcome).unwrap())
        })
        .count();
    check(
        failures == 0,
        format!("{} games, 0 dominated equilibria", corpus.len()),
        format!("{failures} dominated equilibria"),
    )
}

fn ac7(corpus: &[GameTree], sols: &[PpeSolution]) -> Outcome {
    let quick_bad = corpus
        .par_iter()
        .zip(sols)
        .filter(|(t, s)| solve_ppe_quick(t).outcome != s.outcome)
        .count();
    let logic: Vec<Option<bool>> = corpus
        .par_iter()
        .zip(sols)
        .map(|(t, s)| match solve_ppe_logic(t, LogicBounds::default()) {
            Ok(l) => Some(l.outcome == s.outcome),
            Err(e) if e.is_bound() => None,
            Err(_) => Some(false),
        })
        .collect();
    let checked = logic.iter().flatten().count();
    let logic_bad = logic.iter().flatten().filter(|ok| !**ok).count();
    check(
        quick_bad == 0 && logic_bad == 0 && checked >= LOGIC_MIN,
        format!(
            "quick 0/{} disagreements, logic 0/{checked} disagreements",
            corpus.len()
        ),
        format!("quick {quick_bad} disagreements, logic {logic_bad}/{checked} disagreements"),
    )
}

fn ac8() -> Outcome {
    let t = fixtures::assurance();
    let (sys, _) = generate_equations(&t, 64).map_err(|e| e.to_string())?;
    let c = sys
        .equations
        .iter()
        .filter(|e| e.tag_text(&t).starts_with('C'))
        .count();
    let p1: Vec<String> = sys
        .equations
        .iter()
        .filter(|e| e.tag_text(&t).starts_with("P1"))
        .map(|e| e.to_string())
        .collect();
    let p2 = sys
        .equations
        .iter()
        .filter(|e| e.tag_text(&t).starts_with("P2"))
        .count();
    let a = solve_by_enumeration(&sys, 24).map_err(|e| e.to_string())?;
    let truth: Vec<bool> = (0..5).map(|i| a.value(NodeId(i))).collect();
    check(
        sys.equations.len() == 9
            && c == 5
            && p1 == ["S3 => S1"]
            && p2 == 3
            && truth == [true, false, true, false, true],
        "9 equations (5 C, 1 P1, 3 P2), unique model S0 !S1 S2 !S3 S4",
        format!(
            "{} equations ({c} C, {p1:?}, {p2} P2), model {truth:?}",
            sys.equations.len()
        ),
    )
}

fn ac9() -> Outcome {
    let t = fixtures::assurance();
    let g = build_powerset_component(&t, 64).map_err(|e| e.to_string())?;
    let mut got = g.vertices.clone();
    got.sort();
    let mut want = vec![set(&[]), set(&[3]), set(&[1, 3])];
    want.sort();
    check(
        got == want,
        format!("vertices {{}} {{o3}} {{o1 o3}}, {} edges", g.edges.len()),
        format!("vertices {got:?}"),
    )
}

fn step_invariants_hold(t: &GameTree, sol: &PpeSolution) -> bool {
    sol.trace.steps.iter().all(|step| {
        let before = sol.trace.before(step);
        let owner = t.owner(step.from).unwrap();
        let top = before.iter().max_by_key(|&&o| t.payoff(o, owner)).unwrap();
        step.survivors.contains(top)
            && step
                .survivors
                .iter()
                .all(|&o| t.is_descendant(o, step.chosen))
    })
}

fn ac10(corpus: &[GameTree], sols: &[PpeSolution]) -> Outcome {
    let inv = common::invertible_corpus(INVERTIBLE_COUNT);
    let inv_bad = inv
        .par_iter()
        .filter(|t| {
            !is_invertible(t) || solve_invertible(t).ok() != Some(solve_ppe_general(t).outcome)
        })
        .count();
    let step_bad = corpus
        .par_iter()
        .zip(sols)
        .filter(|(t, s)| !step_invariants_hold(t, s))
        .count()
        + inv
            .par_iter()
            .filter(|t| !step_invariants_hold(t, &solve_ppe_general(t)))
            .count();
    check(
        inv_bad == 0 && step_bad == 0,
        format!(
            "{} invertible games agree, step invariants hold on {} traces",
            inv.len(),
            corpus.len() + inv.len()
        ),
        format!("{inv_bad} invertible disagreements, {step_bad} traces break step invariants"),
    )
}

fn main() {
    let corpus = common::corpus();
    let (r5, sols) = ac5(&corpus);
    let results = [
        ("AC1", "assurance game payoffs and timing", ac1()),
        ("AC2", "gamma path and I-sets", ac2()),
        ("AC3", "take-or-leave outcomes", ac3()),
        ("AC4", "biped table", ac4()),
        ("AC5", "existence, uniqueness, determinism", r5),
        ("AC6", "Pareto optimality", ac6(&corpus, &sols)),
        ("AC7", "method equivalence", ac7(&corpus, &sols)),
        ("AC8", "assurance equation system", ac8()),
        ("AC9", "assurance powerset component", ac9()),
        (
            "AC10",
            "invertible fast path and step invariants",
            ac10(&corpus, &sols),
        ),
    ];
    let mut failed = 0;
    for (id, name, res) in &results {
        match res {
            Ok(detail) => println!("{id} PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
