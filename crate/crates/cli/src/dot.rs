//! Graphviz export with the equilibrium path and discards marked.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ppe_core::game::{GameTree, NodeId};
use ppe_core::ppe::{PpeSolution, Principle};

pub fn render(tree: &GameTree, sol: &PpeSolution) -> String {
    let on_path: Vec<NodeId> = sol.path.nodes().to_vec();
    let mut discards: BTreeMap<NodeId, (usize, Principle)> = BTreeMap::new();
    for step in &sol.trace.steps {
        for d in &step.discards {
            discards.insert(d.outcome, (step.index, d.principle));
        }
    }

    let mut out = String::from("digraph game {\n");
    for id in tree.ids() {
        let mut attrs = Vec::new();
        match tree.owner(id) {
            Some(owner) => attrs.push(format!("label=\"n{id}:{owner}\"")),
            None => {
                let pays: Vec<String> = tree
                    .payoffs(id)
                    .unwrap_or(&[])
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                attrs.push(format!("label=\"o{id} ({})\"", pays.join(", ")));
                attrs.push("shape=box".into());
            }
        }
        if on_path.contains(&id) {
            attrs.push("ppe=true".into());
            attrs.push("color=red".into());
        }
        if let Some((step, principle)) = discards.get(&id) {
            attrs.push(format!("discarded={step}"));
            attrs.push(format!("principle={principle}"));
        }
        let _ = writeln!(out, "  {} [{}];", tree.label(id), attrs.join(", "));
    }
    for id in tree.decision_nodes() {
        for c in tree.children(id) {
            let mark = if on_path.contains(&c) {
                " [ppe=true, color=red]"
            } else {
                ""
            };
            let _ = writeln!(out, "  {} -> {}{mark};", tree.label(id), tree.label(c));
        }
    }
    out.push_str("}\n");
    out
}
