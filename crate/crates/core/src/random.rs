//! Seeded generators for random games.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GameError;
use crate::game::{GameNode, GameTree, NodeId, PlayerId};

/// Probability that a child above the depth limit is a decision node.
const BRANCH_PROBABILITY: f64 = 0.55;

/// Generates a game deterministically from `seed`.
///
/// The root is always a decision node; `max_depth` bounds the number of
/// decision levels on any path. Each decision node has between one and
/// `max_branching` children and a uniformly drawn owner. Each player's
/// payoffs are a random permutation of `0..outcomes`, so preferences are
/// strict by construction.
pub fn random_game(
    seed: u64,
    players: usize,
    max_depth: usize,
    max_branching: usize,
) -> Result<GameTree, GameError> {
    check_bounds(players, max_depth, max_branching)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut next_id = 0u32;
    let shape = grow(&mut rng, 0, players, max_depth, max_branching, &mut next_id);
    let leaves = count_leaves(&shape);
    let tables = payoff_tables(&mut rng, players, leaves);
    let mut leaf = 0;
    GameTree::new(assign(shape, &tables, &mut leaf))
}

fn check_bounds(players: usize, max_depth: usize, max_branching: usize) -> Result<(), GameError> {
    if players < 2 {
        return Err(GameError::InvalidBounds(format!(
            "players must be at least 2, got {players}"
        )));
    }
    if max_depth < 1 {
        return Err(GameError::InvalidBounds("depth must be at least 1".into()));
    }
    if max_branching < 1 {
        return Err(GameError::InvalidBounds(
            "branching must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Tree shape with placeholder payoffs; leaves are filled in afterwards.
enum Shape {
    Node(NodeId, PlayerId, Vec<Shape>),
    Leaf(NodeId),
}

fn grow(
    rng: &mut ChaCha8Rng,
    depth: usize,
    players: usize,
    max_depth: usize,
    max_branching: usize,
    next_id: &mut u32,
) -> Shape {
    let id = NodeId(*next_id);
    *next_id += 1;
    let decision = depth == 0 || (depth < max_depth && rng.gen_bool(BRANCH_PROBABILITY));
    if !decision {
        return Shape::Leaf(id);
    }
    let owner = PlayerId(rng.gen_range(0..players));
    let width = rng.gen_range(1..=max_branching);
    let children = (0..width)
        .map(|_| grow(rng, depth + 1, players, max_depth, max_branching, next_id))
        .collect();
    Shape::Node(id, owner, children)
}

fn count_leaves(shape: &Shape) -> usize {
    match shape {
        Shape::Leaf(_) => 1,
        Shape::Node(_, _, children) => children.iter().map(count_leaves).sum(),
    }
}

fn payoff_tables(rng: &mut ChaCha8Rng, players: usize, leaves: usize) -> Vec<Vec<i64>> {
    (0..players)
        .map(|_| {
            let mut perm: Vec<i64> = (0..leaves as i64).collect();
            perm.shuffle(rng);
            perm
        })
        .collect()
}

fn assign(shape: Shape, tables: &[Vec<i64>], leaf: &mut usize) -> GameNode {
    match shape {
        Shape::Leaf(id) => {
            let payoffs = tables.iter().map(|t| t[*leaf]).collect();
            *leaf += 1;
            GameNode::Outcome { id, payoffs }
        }
        Shape::Node(id, owner, children) => GameNode::Decision {
            id,
            owner,
            children: children
                .into_iter()
                .map(|c| assign(c, tables, leaf))
                .collect(),
        },
    }
}

/// Generates a Take-or-Leave shaped game: a spine of `length` decision
/// nodes, each with an immediate outcome and the next spine node, ending in a
/// node with one or two outcomes. Owners along the spine never repeat twice
/// in a row.
pub fn random_invertible_game(
    seed: u64,
    players: usize,
    length: usize,
) -> Result<GameTree, GameError> {
    check_bounds(players, length, 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let last_width = rng.gen_range(1..=2);
    let leaves = (length - 1) + last_width;
    let tables = payoff_tables(&mut rng, players, leaves);
    let mut owners = Vec::with_capacity(length);
    let mut owner = rng.gen_range(0..players);
    for _ in 0..length {
        owners.push(owner);
        owner = (owner + rng.gen_range(1..players)) % players;
    }

    let mut leaf = 0;
    let take = |id: u32, leaf: &mut usize| {
        let node = GameNode::Outcome {
            id: NodeId(id),
            payoffs: tables.iter().map(|t| t[*leaf]).collect(),
        };
        *leaf += 1;
        node
    };
    // ids follow the n0, o1, n2, o3, ... numbering of a spine
    let base = 2 * (length as u32 - 1);
    let last_children = (0..last_width as u32)
        .map(|k| take(base + 1 + k, &mut leaf))
        .collect::<Vec<_>>();
    let mut node = GameNode::Decision {
        id: NodeId(base),
        owner: PlayerId(owners[length - 1]),
        children: last_children,
    };
    for level in (0..length - 1).rev() {
        let id = 2 * level as u32;
        let present = take(id + 1, &mut leaf);
        node = GameNode::Decision {
            id: NodeId(id),
            owner: PlayerId(owners[level]),
            children: vec![present, node],
        };
    }
    GameTree::new(node)
}
