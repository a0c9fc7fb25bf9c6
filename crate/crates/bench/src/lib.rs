//! Game families for the solver benchmarks.

use ppe_core::game::{GameNode, GameTree};
use ppe_core::random::random_invertible_game;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Complete tree with `branching^depth` outcomes. Payoffs of player `i` are
/// the affine permutation `k -> (k * m_i + i) mod leaves` for a multiplier
/// coprime to the leaf count, so preferences stay strict.
pub fn complete_game(players: usize, depth: u32, branching: usize) -> GameTree {
    let leaves = (branching as u64).pow(depth);
    let mut multipliers = Vec::new();
    let mut m = 3u64;
    while multipliers.len() < players {
        if gcd(m, leaves) == 1 {
            multipliers.push(m);
        }
        m += 2;
    }
    let mut next_id = 0u32;
    let mut leaf = 0u64;
    let root = build(
        players,
        depth,
        branching,
        0,
        &multipliers,
        leaves,
        &mut next_id,
        &mut leaf,
    );
    GameTree::new(root).expect("affine permutations are strict")
}

#[allow(clippy::too_many_arguments)]
fn build(
    players: usize,
    depth: u32,
    branching: usize,
    level: u32,
    mult: &[u64],
    leaves: u64,
    next_id: &mut u32,
    leaf: &mut u64,
) -> GameNode {
    let id = *next_id;
    *next_id += 1;
    if level == depth {
        let k = *leaf;
        *leaf += 1;
        let pays: Vec<i64> = (0..players)
            .map(|i| ((k * mult[i] + i as u64) % leaves) as i64)
            .collect();
        return GameNode::outcome(id, pays);
    }
    let children = (0..branching)
        .map(|_| {
            build(
                players,
                depth,
                branching,
                level + 1,
                mult,
                leaves,
                next_id,
                leaf,
            )
        })
        .collect();
    GameNode::decision(id, level as usize % players, children)
}

/// Take-or-Leave spine with `length` decision nodes.
pub fn spine(length: usize) -> GameTree {
    random_invertible_game(length as u64, 2, length).expect("valid bounds")
}
