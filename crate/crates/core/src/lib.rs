//! Solvers for finite extensive-form games with perfect information and
//! strict preferences.
//!
//! * [`spe`]: backward induction (subgame perfect equilibrium).
//! * [`ppe`]: the Perfect Prediction Equilibrium by forward elimination over
//!   Newcombian states, with a full elimination trace.
//! * [`quick`]: the same equilibrium by a single top-down pass.
//! * [`logic`]: the same equilibrium as the unique model of an implication
//!   system, solved by enumeration on small trees.
//! * [`analysis`]: comparisons, Pareto checks, biped census, invertible trees.

pub mod analysis;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod game;
pub mod logic;
pub mod ppe;
pub mod quick;
pub mod random;
pub mod spe;

pub use analysis::{compare, enumerate_biped, is_invertible, is_pareto_optimal, solve_invertible};
pub use error::{GameError, LogicError, ParseError, SolveError};
pub use format::{parse_game, parse_games, serialize_game};
pub use game::{GameNode, GameTree, NodeId, OutcomeSet, Path, PlayerId};
pub use logic::{solve_ppe_logic, LogicBounds};
pub use ppe::{solve_ppe_general, EliminationTrace, PpeSolution, Principle};
pub use quick::solve_ppe_quick;
pub use random::{random_game, random_invertible_game};
pub use spe::solve_spe;
