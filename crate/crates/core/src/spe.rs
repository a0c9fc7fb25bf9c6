//! Backward induction.

use std::collections::BTreeMap;

use crate::game::{GameTree, NodeId, Path};

/// Chosen child at every decision node, reached or not.
pub type Strategy = BTreeMap<NodeId, NodeId>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpeSolution {
    pub strategy: Strategy,
    pub path: Path,
    pub outcome: NodeId,
}

/// Subgame perfect equilibrium by backward induction.
///
/// Strict preferences make every choice unique; a tie indicates an invalid
/// tree and panics.
pub fn solve_spe(tree: &GameTree) -> SpeSolution {
    let mut strategy = Strategy::new();
    induce(tree, tree.root(), &mut strategy);
    let mut path = vec![tree.root()];
    let mut at = tree.root();
    while let Some(&next) = strategy.get(&at) {
        path.push(next);
        at = next;
    }
    SpeSolution {
        strategy,
        path: Path(path),
        outcome: at,
    }
}

/// Returns the outcome reached from `node` under the induced strategy.
fn induce(tree: &GameTree, node: NodeId, strategy: &mut Strategy) -> NodeId {
    let Some(owner) = tree.owner(node) else {
        return node;
    };
    let mut best: Option<(NodeId, NodeId, i64)> = None;
    for child in tree.children(node) {
        let reached = induce(tree, child, strategy);
        let pay = tree.payoff(reached, owner);
        match best {
            Some((_, _, b)) if b == pay => {
                panic!("tie at n{node}: payoff {pay} reached twice for {owner}")
            }
            Some((_, _, b)) if b > pay => {}
            _ => best = Some((child, reached, pay)),
        }
    }
    let (child, reached, _) = best.expect("decision node without children");
    strategy.insert(node, child);
    reached
}
