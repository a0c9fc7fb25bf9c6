//! Forward elimination of outcomes, step by step.
//!
//! At each reached node `c` with surviving outcomes `I`, the current player
//! builds Newcombian states: sequences of children of `c` where each element
//! after the first is a witness that discards outcomes of the first. The
//! target function gives the outcomes a state still aims at, and the best
//! Newcombian class (the one whose worst payoff beats every outcome of the
//! sibling subtrees) names the next move and the next surviving set.
//!
//! Classes are kept as `(pure part, worst payoff, targeted set)`; the explicit
//! state sequences are kept only as witnesses in the trace.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::SolveError;
use crate::game::{GameTree, NodeId, OutcomeSet, Path, PlayerId};

/// A sequence of children of the current node with no two consecutive
/// elements equal. The first element is the pure part, the rest the discard
/// part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NewcombianState(Vec<NodeId>);

impl NewcombianState {
    pub fn new(moves: Vec<NodeId>) -> Result<Self, SolveError> {
        if moves.is_empty() {
            return Err(SolveError::InvalidState("empty state".into()));
        }
        if let Some(w) = moves.windows(2).find(|w| w[0] == w[1]) {
            return Err(SolveError::InvalidState(format!(
                "{} appears twice in a row",
                w[0]
            )));
        }
        Ok(NewcombianState(moves))
    }

    pub fn pure(&self) -> NodeId {
        self.0[0]
    }

    pub fn discard(&self) -> Option<NewcombianState> {
        (self.0.len() > 1).then(|| NewcombianState(self.0[1..].to_vec()))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn moves(&self) -> &[NodeId] {
        &self.0
    }

    /// `m` followed by this state.
    fn prepend(&self, m: NodeId) -> NewcombianState {
        let mut moves = Vec::with_capacity(self.0.len() + 1);
        moves.push(m);
        moves.extend_from_slice(&self.0);
        NewcombianState(moves)
    }

    /// `(n1, n2, ...)` using tree labels.
    pub fn display(&self, tree: &GameTree) -> String {
        let parts: Vec<String> = self.0.iter().map(|&m| tree.label(m)).collect();
        format!("({})", parts.join(", "))
    }
}

/// A target-equivalence class of Newcombian states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewcombianClass {
    pub pure: NodeId,
    /// Current player's minimum payoff over `targeted`.
    pub worst_payoff: i64,
    pub targeted: OutcomeSet,
}

/// One class of the best-class iteration, with a representative state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassStep {
    pub state: NewcombianState,
    pub class: NewcombianClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Principle {
    /// Preemption: the player would deviate to a subtree that is better
    /// whatever happens there.
    Preemption,
    /// Rational choice of the only subtree left standing.
    Selection,
}

impl Principle {
    pub fn number(self) -> u8 {
        match self {
            Principle::Preemption => 1,
            Principle::Selection => 2,
        }
    }
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The non-degenerate state whose targets all beat the discarded outcome.
    State(NewcombianState),
    /// The move selected at this step.
    Move(NodeId),
}

impl Witness {
    pub fn display(&self, tree: &GameTree) -> String {
        match self {
            Witness::State(s) => s.display(tree),
            Witness::Move(m) => tree.label(*m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discard {
    pub outcome: NodeId,
    pub principle: Principle,
    pub witness: Witness,
}

/// Step `i`: from `c_{i-1}` to `c_i`, shrinking `I_{i-1}` to `I_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    pub from: NodeId,
    pub chosen: NodeId,
    pub survivors: OutcomeSet,
    pub discards: Vec<Discard>,
    /// The best-class iteration that produced `chosen`.
    pub classes: Vec<ClassStep>,
}

/// Every step from the root to the equilibrium outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationTrace {
    pub initial: OutcomeSet,
    pub steps: Vec<StepRecord>,
    pub outcome: NodeId,
}

impl EliminationTrace {
    /// `I_1, I_2, ..., I_d`.
    pub fn survivor_sets(&self) -> Vec<&OutcomeSet> {
        std::iter::once(&self.initial)
            .chain(self.steps.iter().map(|s| &s.survivors))
            .collect()
    }

    /// Surviving set before step `index` (i.e. `I_{index-1}`).
    pub fn before(&self, step: &StepRecord) -> &OutcomeSet {
        let k = step.index - 2;
        if k == 0 {
            &self.initial
        } else {
            &self.steps[k - 1].survivors
        }
    }

    /// Step index and principle under which `outcome` was discarded.
    pub fn discarded_at(&self, outcome: NodeId) -> Option<(usize, Principle)> {
        self.steps.iter().find_map(|s| {
            s.discards
                .iter()
                .find(|d| d.outcome == outcome)
                .map(|d| (s.index, d.principle))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PpeSolution {
    pub path: Path,
    pub outcome: NodeId,
    pub trace: EliminationTrace,
}

fn check_step_input(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
) -> Result<PlayerId, SolveError> {
    if !tree.contains(current) {
        return Err(crate::error::GameError::UnknownId(current).into());
    }
    let owner = tree
        .owner(current)
        .ok_or(SolveError::NotDecisionNode(current))?;
    for &o in survivors {
        if !tree.contains(o) || !tree.is_outcome(o) || !tree.is_descendant(o, current) {
            return Err(SolveError::ForeignOutcome {
                outcome: o,
                node: current,
            });
        }
    }
    Ok(owner)
}

/// Outcomes targeted by `state` at `current`, computed directly from the
/// recursive definition: the surviving descendants of the pure part, minus
/// those strictly worse than everything the discard part still targets.
pub fn target(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
    state: &NewcombianState,
) -> Result<OutcomeSet, SolveError> {
    let owner = check_step_input(tree, current, survivors)?;
    let children = tree.children(current);
    if let Some(&m) = state.moves().iter().find(|m| !children.contains(m)) {
        return Err(SolveError::ForeignMove(m));
    }
    // evaluate from the innermost suffix outwards
    let moves = state.moves();
    let mut targeted: OutcomeSet = below(tree, survivors, moves[moves.len() - 1]);
    for k in (0..moves.len() - 1).rev() {
        let preempted = preempted_by(tree, owner, survivors, moves[k + 1], &targeted);
        targeted = below(tree, survivors, moves[k])
            .difference(&preempted)
            .copied()
            .collect();
    }
    Ok(targeted)
}

/// Outcomes discarded by `state` at `current`.
pub fn discarded_by(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
    state: &NewcombianState,
) -> Result<OutcomeSet, SolveError> {
    let owner = check_step_input(tree, current, survivors)?;
    let targeted = target(tree, current, survivors, state)?;
    Ok(preempted_by(
        tree,
        owner,
        survivors,
        state.pure(),
        &targeted,
    ))
}

fn below(tree: &GameTree, survivors: &OutcomeSet, node: NodeId) -> OutcomeSet {
    tree.outcomes_below(node)
        .filter(|o| survivors.contains(o))
        .collect()
}

/// Survivors outside `pure` that are worse for `owner` than every outcome of
/// `targeted`; empty when `targeted` is empty.
fn preempted_by(
    tree: &GameTree,
    owner: PlayerId,
    survivors: &OutcomeSet,
    pure: NodeId,
    targeted: &OutcomeSet,
) -> OutcomeSet {
    let Some(worst) = targeted.iter().map(|&o| tree.payoff(o, owner)).min() else {
        return OutcomeSet::new();
    };
    survivors
        .iter()
        .copied()
        .filter(|&o| !tree.is_descendant(o, pure) && tree.payoff(o, owner) < worst)
        .collect()
}

/// Minimum payoff of `player` over `targeted`.
pub fn worst_payoff(
    tree: &GameTree,
    player: PlayerId,
    targeted: &OutcomeSet,
) -> Result<i64, SolveError> {
    targeted
        .iter()
        .map(|&o| tree.payoff(o, player))
        .min()
        .ok_or(SolveError::EmptyTarget)
}

/// The iteration `η̂(1), η̂(2), ...` of best classes of increasing order at
/// `current`; the last element is the best Newcombian class.
pub fn best_class_sequence(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
) -> Result<Vec<ClassStep>, SolveError> {
    let owner = check_step_input(tree, current, survivors)?;
    if survivors.is_empty() {
        return Err(SolveError::EmptySurvivors);
    }
    // surviving (payoff, outcome) pairs per child
    let subtrees: Vec<(NodeId, Vec<(i64, NodeId)>)> = tree
        .children(current)
        .into_iter()
        .map(|c| {
            let mut outs: Vec<(i64, NodeId)> = tree
                .outcomes_below(c)
                .filter(|o| survivors.contains(o))
                .map(|o| (tree.payoff(o, owner), o))
                .collect();
            outs.sort_unstable();
            (c, outs)
        })
        .collect();

    let class_above = |child: NodeId, outs: &[(i64, NodeId)], floor: Option<i64>| {
        let kept: Vec<&(i64, NodeId)> = outs
            .iter()
            .filter(|(p, _)| floor.is_none_or(|f| *p > f))
            .collect();
        let worst = kept.first()?.0;
        Some(NewcombianClass {
            pure: child,
            worst_payoff: worst,
            targeted: kept.iter().map(|(_, o)| *o).collect(),
        })
    };

    let first = subtrees
        .iter()
        .filter_map(|(c, outs)| class_above(*c, outs, None))
        .max_by_key(|cl| cl.worst_payoff)
        .expect("some child keeps a survivor");
    let mut sequence = vec![ClassStep {
        state: NewcombianState(vec![first.pure]),
        class: first,
    }];

    loop {
        let last = sequence.last().expect("non-empty");
        let floor = last.class.worst_payoff;
        let next = subtrees
            .iter()
            .filter(|(c, _)| *c != last.class.pure)
            .filter_map(|(c, outs)| class_above(*c, outs, Some(floor)))
            .max_by_key(|cl| cl.worst_payoff);
        match next {
            Some(class) => {
                debug_assert!(class.worst_payoff > floor);
                let state = last.state.prepend(class.pure);
                sequence.push(ClassStep { state, class });
            }
            None => break,
        }
    }
    Ok(sequence)
}

/// The best Newcombian class at `current`.
pub fn best_class(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
) -> Result<NewcombianClass, SolveError> {
    let mut seq = best_class_sequence(tree, current, survivors)?;
    Ok(seq.pop().expect("non-empty").class)
}

/// One step of the elimination from `current` with survivors `survivors`.
///
/// Outcomes discarded by an intermediate class of the iteration are labelled
/// as preempted, with that class's state as witness; outcomes that only fall
/// with the final class are labelled as dropped by the selection of the move.
pub fn ppe_step(
    tree: &GameTree,
    current: NodeId,
    survivors: &OutcomeSet,
) -> Result<StepRecord, SolveError> {
    let owner = check_step_input(tree, current, survivors)?;
    let classes = best_class_sequence(tree, current, survivors)?;
    let best = &classes.last().expect("non-empty").class;
    let chosen = best.pure;
    let next = best.targeted.clone();

    let mut gone: BTreeSet<NodeId> = BTreeSet::new();
    let mut discards = Vec::new();
    let last = classes.len() - 1;
    for (k, step) in classes.iter().enumerate() {
        for &o in survivors {
            if gone.contains(&o)
                || tree.is_descendant(o, step.class.pure)
                || tree.payoff(o, owner) >= step.class.worst_payoff
            {
                continue;
            }
            gone.insert(o);
            let (principle, witness) = if k == last {
                (Principle::Selection, Witness::Move(chosen))
            } else {
                (Principle::Preemption, Witness::State(step.state.clone()))
            };
            discards.push(Discard {
                outcome: o,
                principle,
                witness,
            });
        }
    }
    debug_assert!(survivors
        .iter()
        .all(|o| gone.contains(o) != next.contains(o)));

    Ok(StepRecord {
        index: tree.path_to(current)?.len() + 1,
        from: current,
        chosen,
        survivors: next,
        discards,
        classes,
    })
}

/// The Perfect Prediction Equilibrium with its full elimination trace.
pub fn solve_ppe_general(tree: &GameTree) -> PpeSolution {
    let initial = tree.all_outcomes();
    let mut survivors = initial.clone();
    let mut current = tree.root();
    let mut path = vec![current];
    let mut steps = Vec::new();
    while !tree.is_outcome(current) {
        let step = ppe_step(tree, current, &survivors).expect("preconditions hold by induction");
        current = step.chosen;
        survivors = step.survivors.clone();
        path.push(current);
        steps.push(step);
    }
    debug_assert_eq!(survivors.len(), 1);
    PpeSolution {
        path: Path(path),
        outcome: current,
        trace: EliminationTrace {
            initial,
            steps,
            outcome: current,
        },
    }
}
