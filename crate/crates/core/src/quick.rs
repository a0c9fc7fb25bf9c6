//! The quick PPE algorithm: descend into the subtree holding the current
//! player's best surviving outcome, drop every sibling subtree, and drop
//! from the chosen subtree everything below the siblings' best payoff.
//!
//! Works on a private copy of survivor flags; the tree is never touched.

use crate::game::{GameTree, NodeId, OutcomeSet, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuickVisit {
    pub node: NodeId,
    pub chosen: NodeId,
    /// Siblings' best payoff for the current player, when there were siblings.
    pub floor: Option<i64>,
    /// Survivors after the visit.
    pub survivors: OutcomeSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuickSolution {
    pub path: Path,
    pub outcome: NodeId,
    pub visits: Vec<QuickVisit>,
    /// Survivor-flag inspections and updates, for the complexity check.
    pub work: usize,
}

pub fn solve_ppe_quick(tree: &GameTree) -> QuickSolution {
    let mut alive = tree.all_outcomes();
    let mut node = tree.root();
    let mut path = vec![node];
    let mut visits = Vec::new();
    let mut work = 0;

    while let Some(player) = tree.owner(node) {
        // subtrees that still hold a survivor; emptied ones count as cleaned away
        let mut best: Option<(i64, usize)> = None;
        let mut subtrees: Vec<(NodeId, Vec<NodeId>)> = Vec::new();
        for child in tree.children(node) {
            let outs: Vec<NodeId> = tree
                .outcomes_below(child)
                .filter(|o| alive.contains(o))
                .collect();
            work += tree.outcomes_below(child).count();
            if outs.is_empty() {
                continue;
            }
            let top = outs
                .iter()
                .map(|&o| tree.payoff(o, player))
                .max()
                .expect("non-empty");
            if best.is_none_or(|(b, _)| top > b) {
                best = Some((top, subtrees.len()));
            }
            subtrees.push((child, outs));
        }
        let (_, pick) = best.expect("a reached node keeps a survivor");
        let chosen = subtrees[pick].0;

        let floor = subtrees
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pick)
            .flat_map(|(_, (_, outs))| outs.iter().map(|&o| tree.payoff(o, player)))
            .max();
        if let Some(m) = floor {
            for (k, (_, outs)) in subtrees.iter().enumerate() {
                for o in outs {
                    work += 1;
                    if k != pick || tree.payoff(*o, player) < m {
                        alive.remove(o);
                    }
                }
            }
        }

        visits.push(QuickVisit {
            node,
            chosen,
            floor,
            survivors: alive.clone(),
        });
        node = chosen;
        path.push(node);
    }

    QuickSolution {
        path: Path(path),
        outcome: node,
        visits,
        work,
    }
}
