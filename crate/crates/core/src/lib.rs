//! Responsibility in extensive-form games: game trees with imperfect
//! information, coalition-induced two-player games, exact solving, backward
//! responsibility notions, Shapley-style attribution, causal models and
//! concurrent game structures.

pub mod causal;
pub mod cegs;
pub mod coalition;
pub mod error;
pub mod game;
pub mod gen;
pub mod rational;
pub mod responsibility;
pub mod shapley;
pub mod solver;

pub use coalition::{induce, induce_with, Coalition, InduceOptions, InducedGame, Side};
pub use error::{Error, Result};
pub use game::{GameTree, InfoSetId, Label, NodeId, Owner, Play, StrategyProfile};
pub use rational::Rational;
pub use responsibility::{BackwardContext, Kind};

/// Default cap on the size of generated game trees.
pub const DEFAULT_NODE_CAP: usize = 100_000;

/// The node cap in effect: `RESPGAMES_NODE_CAP` if set to a positive
/// integer, [`DEFAULT_NODE_CAP`] otherwise.
pub fn node_cap() -> usize {
    std::env::var("RESPGAMES_NODE_CAP")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_NODE_CAP)
}
