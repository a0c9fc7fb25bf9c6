use thiserror::Error;

use crate::game::{NodeId, PlayerId};

/// Structural problems with a game tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("duplicate id {0}")]
    DuplicateId(NodeId),
    #[error("outcome o{outcome} has {found} payoffs, expected {expected}")]
    PayoffArity {
        outcome: NodeId,
        expected: usize,
        found: usize,
    },
    #[error(
        "strict preferences violated for player {player}: o{first} and o{second} both pay {payoff}"
    )]
    TiedPayoffs {
        player: PlayerId,
        first: NodeId,
        second: NodeId,
        payoff: i64,
    },
    #[error("decision node n{0} has no children")]
    EmptyNode(NodeId),
    #[error("a game needs at least 2 players, found {0}")]
    TooFewPlayers(usize),
    #[error("node n{node} is owned by player {player} but the game has {players} players")]
    UnknownOwner {
        node: NodeId,
        player: PlayerId,
        players: usize,
    },
    #[error("unknown id {0}")]
    UnknownId(NodeId),
    #[error("invalid generator bounds: {0}")]
    InvalidBounds(String),
}

/// Failure to read the textual game format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] GameError),
}

/// Errors raised by the equilibrium solvers when called outside their domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("n{0} is an outcome, not a decision node")]
    NotDecisionNode(NodeId),
    #[error("the surviving outcome set is empty")]
    EmptySurvivors,
    #[error("outcome o{outcome} does not descend from n{node}")]
    ForeignOutcome { outcome: NodeId, node: NodeId },
    #[error("{0} is not a child of the current node")]
    ForeignMove(NodeId),
    #[error("invalid Newcombian state: {0}")]
    InvalidState(String),
    #[error("cannot take the worst payoff of an empty target set")]
    EmptyTarget,
    #[error("the tree is not invertible")]
    NotInvertible,
}

/// Errors from the equation-system route.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("every outcome has been removed")]
    NoSurvivors,
    #[error("powerset component exceeds {limit} vertices")]
    ComponentTooLarge { limit: usize },
    #[error("equation system has {vars} variables, above the enumeration bound of {limit}")]
    TooManyVariables { vars: usize, limit: usize },
    #[error("equation system has no solution")]
    NoSolution,
    #[error("equation system has more than one solution")]
    MultipleSolutions,
    #[error("the satisfying assignment is not a root-to-outcome path")]
    NotAPath,
}

impl LogicError {
    /// Resource-bound failures, as opposed to malformed input or solver bugs.
    pub fn is_bound(&self) -> bool {
        matches!(
            self,
            LogicError::ComponentTooLarge { .. } | LogicError::TooManyVariables { .. }
        )
    }
}
