#![allow(dead_code)]

use respgames_core::game::GameBuilder;
use respgames_core::{GameTree, Label, Play, Rational, StrategyProfile};

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn matching_pennies() -> GameTree {
    GameBuilder::new(2)
        .player("s0", 1, &[("h1", "s1"), ("t1", "s2")])
        .player("s1", 2, &[("h2", "s3"), ("t2", "s4")])
        .player("s2", 2, &[("h2", "s5"), ("t2", "s6")])
        .leaf("s3", Label::NotE)
        .leaf("s4", Label::E)
        .leaf("s5", Label::E)
        .leaf("s6", Label::NotE)
        .info_set("I2", 2, &["s1", "s2"])
        .build()
        .unwrap()
}

/// Three players, a chance node under B, and player 3 unable to tell s3
/// from s4.
pub fn running_example() -> GameTree {
    GameBuilder::new(3)
        .player("s0", 1, &[("A", "s1"), ("B", "s2")])
        .player("s1", 2, &[("h2", "s3"), ("t2", "s4")])
        .chance("s2", &[("h2'", "s5", r(1, 2)), ("t2'", "s6", r(1, 2))])
        .player("s3", 3, &[("h3", "s7"), ("t3", "s8")])
        .player("s4", 3, &[("h3", "s9"), ("t3", "s10")])
        .player("s5", 3, &[("h3", "s11"), ("t3", "s12")])
        .player("s6", 3, &[("h3", "s13"), ("t3", "s14")])
        .leaf("s7", Label::NotE)
        .leaf("s8", Label::E)
        .leaf("s9", Label::E)
        .leaf("s10", Label::NotE)
        .leaf("s11", Label::NotE)
        .leaf("s12", Label::E)
        .leaf("s13", Label::E)
        .leaf("s14", Label::NotE)
        .info_set("I3", 3, &["s3", "s4"])
        .build()
        .unwrap()
}

pub fn sigma1(g: &GameTree) -> StrategyProfile {
    StrategyProfile::pure_by_name(g, &[("s0", "B"), ("s1", "h2"), ("I3", "h3"), ("s5", "t3"), ("s6", "t3")]).unwrap()
}

pub fn sigma2(g: &GameTree) -> StrategyProfile {
    StrategyProfile::pure_by_name(g, &[("s0", "A"), ("s1", "h2"), ("I3", "t3"), ("s5", "h3"), ("s6", "t3")]).unwrap()
}

pub fn play(g: &GameTree, actions: &[&str]) -> Play {
    Play::from_actions(g, actions).unwrap()
}

/// Player 3 cannot tell s3 from s4, but player 2's move can.
pub fn refinement_counterexample() -> GameTree {
    GameBuilder::new(3)
        .player("s0", 1, &[("A", "s1"), ("B", "s2")])
        .player("s1", 2, &[("a", "s5"), ("b", "s3")])
        .player("s2", 2, &[("c", "s4"), ("d", "s10")])
        .player("s3", 3, &[("x", "s6"), ("y", "s7")])
        .player("s4", 3, &[("x", "s8"), ("y", "s9")])
        .leaf("s5", Label::E)
        .leaf("s6", Label::NotE)
        .leaf("s7", Label::E)
        .leaf("s8", Label::E)
        .leaf("s9", Label::NotE)
        .leaf("s10", Label::E)
        .info_set("I3", 3, &["s3", "s4"])
        .build()
        .unwrap()
}

/// Player 1 forgets their own first move.
pub fn forgetful() -> GameTree {
    GameBuilder::new(2)
        .player("s0", 1, &[("L", "s1"), ("R", "s2")])
        .player("s1", 2, &[("x", "s3")])
        .player("s2", 2, &[("x", "s4")])
        .player("s3", 1, &[("l", "s5"), ("r", "s6")])
        .player("s4", 1, &[("l", "s7"), ("r", "s8")])
        .leaf("s5", Label::NotE)
        .leaf("s6", Label::E)
        .leaf("s7", Label::E)
        .leaf("s8", Label::NotE)
        .info_set("J", 1, &["s3", "s4"])
        .build()
        .unwrap()
}
