//! Line-oriented `key: value` reports.

use std::fmt::Write as _;

use ppe_core::analysis::{BipedRow, ComparisonReport};
use ppe_core::game::{GameTree, NodeId, Path};
use ppe_core::logic::LogicSolution;
use ppe_core::ppe::PpeSolution;
use ppe_core::quick::QuickSolution;
use ppe_core::spe::SpeSolution;

pub fn payoffs(tree: &GameTree, outcome: NodeId) -> String {
    tree.payoffs(outcome)
        .unwrap_or(&[])
        .iter()
        .map(|p| p.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn head(out: &mut String, tree: &GameTree, method: &str, path: &Path) {
    let _ = writeln!(out, "method: {method}");
    let _ = writeln!(out, "path: {}", tree.labels(path.nodes()));
    let _ = writeln!(out, "outcome: {}", tree.label(path.last()));
    let _ = writeln!(out, "payoffs: {}", payoffs(tree, path.last()));
}

pub fn spe(tree: &GameTree, sol: &SpeSolution) -> String {
    let mut out = String::new();
    head(&mut out, tree, "spe", &sol.path);
    out
}

pub fn general(tree: &GameTree, sol: &PpeSolution, trace: bool) -> String {
    let mut out = String::new();
    head(&mut out, tree, "ppe-general", &sol.path);
    let _ = writeln!(out, "steps: {}", sol.trace.steps.len());
    if trace {
        for s in &sol.trace.steps {
            let i = s.index;
            let _ = writeln!(out, "step[{i}].from: {}", tree.label(s.from));
            let _ = writeln!(out, "step[{i}].move: {}", tree.label(s.chosen));
            for c in &s.classes {
                let _ = writeln!(
                    out,
                    "step[{i}].class: {} wp={}",
                    c.state.display(tree),
                    c.class.worst_payoff
                );
            }
            let _ = writeln!(out, "step[{i}].survivors: {}", tree.labels(&s.survivors));
            for d in &s.discards {
                let _ = writeln!(
                    out,
                    "step[{i}].discard: {} principle={} witness={}",
                    tree.label(d.outcome),
                    d.principle,
                    d.witness.display(tree)
                );
            }
        }
    }
    out
}

pub fn quick(tree: &GameTree, sol: &QuickSolution) -> String {
    let mut out = String::new();
    head(&mut out, tree, "ppe-quick", &sol.path);
    let _ = writeln!(out, "steps: {}", sol.visits.len());
    out
}

pub fn logic(tree: &GameTree, sol: &LogicSolution) -> String {
    let mut out = String::new();
    head(&mut out, tree, "ppe-logic", &sol.path);
    let _ = writeln!(out, "variables: {}", sol.system.variables.len());
    let _ = writeln!(out, "equations: {}", sol.system.equations.len());
    let _ = writeln!(out, "vertices: {}", sol.graph.vertices.len());
    out
}

pub fn equations(tree: &GameTree, sol: &LogicSolution) -> String {
    let mut out = String::new();
    for (k, e) in sol.system.equations.iter().enumerate() {
        let _ = writeln!(out, "eq[{k}]: {} {}", e.tag_text(tree), e);
    }
    let truth: Vec<String> = sol
        .system
        .variables
        .iter()
        .map(|&v| {
            if sol.assignment.value(v) {
                format!("S{v}")
            } else {
                format!("!S{v}")
            }
        })
        .collect();
    let _ = writeln!(out, "solution: {}", truth.join(" "));
    out
}

pub fn compare(tree: &GameTree, r: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spe.outcome: {}", tree.label(r.spe_outcome));
    let _ = writeln!(out, "spe.payoffs: {}", payoffs(tree, r.spe_outcome));
    let _ = writeln!(out, "ppe.outcome: {}", tree.label(r.ppe_outcome));
    let _ = writeln!(out, "ppe.payoffs: {}", payoffs(tree, r.ppe_outcome));
    let _ = writeln!(out, "equal: {}", r.equal);
    let _ = writeln!(out, "improves: {}", r.ppe_pareto_improves_spe);
    out
}

pub fn biped(rows: &[BipedRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<5} {:<23} {:<4} {:<4} equal",
        "case", "payoffs", "spe", "ppe"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<5} {:<23} {:<4} {:<4} {}",
            r.case.label(),
            r.game.to_string(),
            format!("o{}", r.report.spe_outcome),
            format!("o{}", r.report.ppe_outcome),
            r.report.equal
        );
    }
    let equal = rows.iter().filter(|r| r.report.equal).count();
    let _ = writeln!(out, "games: {}", rows.len());
    let _ = writeln!(out, "equal: {equal}");
    let _ = writeln!(out, "differing: {}", rows.len() - equal);
    out
}
