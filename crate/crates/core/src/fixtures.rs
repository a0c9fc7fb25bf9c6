//! The worked example games.
//!
//! The Γ-game and Take-or-Leave payoffs for the second player are one
//! completion consistent with every stated step of the worked solutions;
//! only the first player's payoffs are fixed by them.

use crate::format::parse_game;
use crate::game::GameTree;

pub const ASSURANCE: &str = include_str!("../fixtures/assurance.efg");
pub const GAMMA: &str = include_str!("../fixtures/gamma.efg");
pub const TAKE_OR_LEAVE: &str = include_str!("../fixtures/take_or_leave.efg");
pub const SINGLE: &str = include_str!("../fixtures/single.efg");

/// Peter trusts (n2) or not (o1); Mary then cooperates (o4) or defects (o3).
pub fn assurance() -> GameTree {
    parse_game(ASSURANCE).expect("assurance fixture")
}

pub fn gamma() -> GameTree {
    parse_game(GAMMA).expect("gamma fixture")
}

/// Five-outcome Take-or-Leave spine.
pub fn take_or_leave() -> GameTree {
    parse_game(TAKE_OR_LEAVE).expect("take-or-leave fixture")
}

pub fn single() -> GameTree {
    parse_game(SINGLE).expect("single-outcome fixture")
}

/// Looks a fixture up by name (`assurance`, `gamma`, `tol`, `single`).
pub fn by_name(name: &str) -> Option<GameTree> {
    match name {
        "assurance" => Some(assurance()),
        "gamma" => Some(gamma()),
        "tol" | "take-or-leave" => Some(take_or_leave()),
        "single" => Some(single()),
        _ => None,
    }
}
