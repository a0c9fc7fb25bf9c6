#![allow(dead_code)]

use std::collections::BTreeMap;

use ppe_core::game::{GameTree, NodeId, PlayerId};
use ppe_core::random::{random_game, random_invertible_game};

pub const CORPUS_SIZE: u64 = 1200;

/// Seeded corpus: 2 or 3 players, depth at most 5, branching at most 3.
pub fn corpus_game(seed: u64) -> GameTree {
    random_game(seed, 2 + (seed % 2) as usize, 5, 3).expect("valid bounds")
}

pub fn corpus() -> Vec<GameTree> {
    (0..CORPUS_SIZE).map(corpus_game).collect()
}

pub fn invertible_corpus(count: u64) -> Vec<GameTree> {
    (0..count)
        .map(|s| {
            random_invertible_game(s, 2 + (s % 2) as usize, 1 + (s % 7) as usize)
                .expect("valid bounds")
        })
        .collect()
}

/// Outcome reached from `node` when every decision node plays `profile`.
pub fn play(profile: &BTreeMap<NodeId, NodeId>, mut node: NodeId) -> NodeId {
    while let Some(&next) = profile.get(&node) {
        node = next;
    }
    node
}

/// Every pure strategy profile of the tree, or `None` past `cap` profiles.
pub fn all_profiles(tree: &GameTree, cap: usize) -> Option<Vec<BTreeMap<NodeId, NodeId>>> {
    let mut out = vec![BTreeMap::new()];
    for n in tree.decision_nodes() {
        let kids = tree.children(n);
        if out.len() * kids.len() > cap {
            return None;
        }
        out = out
            .into_iter()
            .flat_map(|p| {
                kids.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.insert(n, c);
                    q
                })
            })
            .collect();
    }
    Some(out)
}

/// Subgame perfection by exhaustive deviation: in every subgame, no owner
/// gains by switching their move at the subgame root.
pub fn is_subgame_perfect(tree: &GameTree, profile: &BTreeMap<NodeId, NodeId>) -> bool {
    tree.decision_nodes().all(|n| {
        let owner: PlayerId = tree.owner(n).unwrap();
        let here = tree.payoff(play(profile, n), owner);
        tree.children(n)
            .into_iter()
            .all(|c| tree.payoff(play(profile, c), owner) <= here)
    })
}

/// The subgame perfect profiles found by brute force.
pub fn brute_force_spe(tree: &GameTree, cap: usize) -> Option<Vec<BTreeMap<NodeId, NodeId>>> {
    Some(
        all_profiles(tree, cap)?
            .into_iter()
            .filter(|p| is_subgame_perfect(tree, p))
            .collect(),
    )
}

/// Pareto optimality by scanning every outcome.
pub fn pareto_oracle(tree: &GameTree, outcome: NodeId) -> bool {
    let target = tree.payoffs(outcome).unwrap();
    tree.outcomes().filter(|&o| o != outcome).all(|o| {
        let p = tree.payoffs(o).unwrap();
        (0..tree.players()).any(|i| p[i] <= target[i])
    })
}
