//! Comparisons between the two equilibria, the biped census and the
//! closed-form rule for invertible trees.

use std::fmt;

use crate::error::{GameError, SolveError};
use crate::game::{GameNode, GameTree, NodeId, OutcomeSet};
use crate::ppe::solve_ppe_general;
use crate::spe::solve_spe;

/// True when no other outcome is strictly better for every player.
pub fn is_pareto_optimal(tree: &GameTree, outcome: NodeId) -> Result<bool, GameError> {
    let pays = tree.payoffs(outcome).ok_or(GameError::UnknownId(outcome))?;
    Ok(!tree.outcomes().any(|o| {
        tree.payoffs(o)
            .expect("outcome")
            .iter()
            .zip(pays)
            .all(|(a, b)| a > b)
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub spe_outcome: NodeId,
    pub spe_payoffs: Vec<i64>,
    pub ppe_outcome: NodeId,
    pub ppe_payoffs: Vec<i64>,
    pub equal: bool,
    /// Every player strictly prefers the PPE outcome.
    pub ppe_pareto_improves_spe: bool,
}

pub fn compare(tree: &GameTree) -> ComparisonReport {
    let spe = solve_spe(tree).outcome;
    let ppe = solve_ppe_general(tree).outcome;
    let spe_payoffs = tree.payoffs(spe).expect("outcome").to_vec();
    let ppe_payoffs = tree.payoffs(ppe).expect("outcome").to_vec();
    let improves = spe != ppe && ppe_payoffs.iter().zip(&spe_payoffs).all(|(p, s)| p > s);
    ComparisonReport {
        spe_outcome: spe,
        spe_payoffs,
        ppe_outcome: ppe,
        ppe_payoffs,
        equal: spe == ppe,
        ppe_pareto_improves_spe: improves,
    }
}

/// Peter moves first: stop at `(a, d)` or let Mary pick between `(b, e)`
/// and `(c, f)`. Payoffs are ranks in `{0, 1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipedGame {
    pub peter: [i64; 3],
    pub mary: [i64; 3],
}

impl BipedGame {
    pub fn tree(&self) -> GameTree {
        let [a, b, c] = self.peter;
        let [d, e, f] = self.mary;
        GameTree::new(GameNode::decision(
            0,
            0,
            vec![
                GameNode::outcome(1, [a, d]),
                GameNode::decision(
                    2,
                    1,
                    vec![GameNode::outcome(3, [b, e]), GameNode::outcome(4, [c, f])],
                ),
            ],
        ))
        .expect("permutation payoffs are strict")
    }

    pub fn case(&self) -> BipedCase {
        match self.peter[0] {
            0 => BipedCase::Zero,
            2 => BipedCase::Two,
            _ if self.mary[1] < self.mary[2] => BipedCase::OneEqual,
            _ => BipedCase::OneDiffer,
        }
    }
}

impl fmt::Display for BipedGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.peter;
        let [d, e, g] = self.mary;
        write!(f, "({a},{d}) ({b},{e}) ({c},{g})")
    }
}

/// Peter's rank for stopping; with rank 1, whether Mary's favourite among
/// her two outcomes is also Peter's.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BipedCase {
    Zero,
    OneEqual,
    OneDiffer,
    Two,
}

impl BipedCase {
    pub fn label(self) -> &'static str {
        match self {
            BipedCase::Zero => "0",
            BipedCase::OneEqual => "1=",
            BipedCase::OneDiffer => "1≠",
            BipedCase::Two => "2",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipedRow {
    pub game: BipedGame,
    pub case: BipedCase,
    pub report: ComparisonReport,
}

fn permutations() -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// The 18 biped games up to swapping Mary's two moves, ordered by case.
///
/// From each swapped pair the representative keeps `b < c` when Peter's
/// stop rank is 1 and `e < f` otherwise.
pub fn enumerate_biped() -> Vec<BipedRow> {
    let mut rows = Vec::new();
    for peter in permutations() {
        for mary in permutations() {
            let keep = if peter[0] == 1 {
                peter[1] < peter[2]
            } else {
                mary[1] < mary[2]
            };
            if !keep {
                continue;
            }
            let game = BipedGame { peter, mary };
            rows.push(BipedRow {
                game,
                case: game.case(),
                report: compare(&game.tree()),
            });
        }
    }
    rows.sort_by_key(|r| (r.case, r.game));
    rows
}

/// Spine trees where every move but the last offers one outcome and one
/// continuation, and the mover changes at each step.
pub fn is_invertible(tree: &GameTree) -> bool {
    let mut node = tree.root();
    while let Some(owner) = tree.owner(node) {
        let kids = tree.children(node);
        let inner: Vec<NodeId> = kids
            .iter()
            .copied()
            .filter(|&c| !tree.is_outcome(c))
            .collect();
        match (kids.len(), inner.as_slice()) {
            (1 | 2, []) => return true,
            (2, [next]) => {
                if tree.owner(*next) == Some(owner) {
                    return false;
                }
                node = *next;
            }
            _ => return false,
        }
    }
    true
}

/// Equilibrium of an invertible tree, walking the spine once: stop when the
/// present outcome beats every surviving future one, otherwise preempt the
/// worse future outcomes and continue.
pub fn solve_invertible(tree: &GameTree) -> Result<NodeId, SolveError> {
    if !is_invertible(tree) {
        return Err(SolveError::NotInvertible);
    }
    let mut removed = OutcomeSet::new();
    let mut node = tree.root();
    while let Some(owner) = tree.owner(node) {
        let kids = tree.children(node);
        let Some(&next) = kids.iter().find(|&&c| !tree.is_outcome(c)) else {
            return kids
                .into_iter()
                .filter(|o| !removed.contains(o))
                .max_by_key(|&o| tree.payoff(o, owner))
                .ok_or(SolveError::EmptySurvivors);
        };
        let present = *kids
            .iter()
            .find(|&&c| tree.is_outcome(c))
            .expect("spine node");
        let future: Vec<NodeId> = tree
            .outcomes_below(next)
            .filter(|o| !removed.contains(o))
            .collect();
        if removed.contains(&present) {
            node = next;
            continue;
        }
        let here = tree.payoff(present, owner);
        if future.iter().all(|&o| tree.payoff(o, owner) < here) {
            return Ok(present);
        }
        removed.extend(future.into_iter().filter(|&o| tree.payoff(o, owner) < here));
        node = next;
    }
    Ok(node)
}
